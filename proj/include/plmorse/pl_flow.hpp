#pragma once

// Piecewise linear gradient flow on X1: critical vertices, trajectories
// between them, the PL Morse complex, the reversed flow and the stable and
// unstable complexes of critical vertices.

#include "plmorse/discrete_gradient.hpp"
#include "plmorse/subdivision.hpp"

#include <cstdint>
#include <memory>
#include <vector>

namespace plmorse {

/// Everything the PL flow depends on. The base complex of `subdivision` is
/// X, or the opposite complex of X for a reversed flow.
struct FlowContext {
  Subdivision subdivision;
  PiecewiseMetric metric;
  bool reversed = false;

  const CellComplex& complex() const { return subdivision.base(); }
  const MorseFunction& function() const { return subdivision.function(); }
};

FlowContext make_flow(const CellComplex& complex, const MorseFunction& f,
                      PiecewiseMetric metric = PiecewiseMetric::equilateral());

/// The flow of -f on the same X1 and metric. It is realized on the opposite
/// complex, whose cellular chain complex is the cochain complex of X, with the
/// function transferred by cell id. Reversing twice gives back the original.
FlowContext reversed_flow(const FlowContext& ctx);

/// Critical vertices per dimension of the corresponding cells.
std::vector<std::vector<CellIndex>> critical_vertices(const FlowContext& ctx);

/// p_0 -> q_0 -> p_1 -> ... -> p_r -> q_r, alternating (i+1)- and
/// i-dimensional vertices of X1.
struct PLTrajectory {
  std::vector<CellIndex> vertices;
  int sign = 1;

  friend bool operator==(const PLTrajectory&, const PLTrajectory&) = default;
  friend auto operator<=>(const PLTrajectory&, const PLTrajectory&) = default;
};

/// All trajectories from the critical (i+1)-vertex p to the critical i-vertex
/// q, found by descending along X1 edges between (i+1)- and i-dimensional
/// vertices. Sorted. Throws Error(NotTame), Error(NotCritical) or
/// Error(BadDegree).
std::vector<PLTrajectory> pl_trajectories(const FlowContext& ctx, CellIndex p, CellIndex q);

/// Sign by orientation transport: the first step takes the induced boundary
/// orientation, every later (i+1)-vertex r between s and s' contributes
/// -<d r, s><d r, s'>.
int pl_sign(const FlowContext& ctx, const PLTrajectory& trajectory);

/// The same sign computed from the metric: orientations are carried on flag
/// simplices of X1, pushed to a facet by contracting with the outward normal
/// and pulled up by wedging with minus the outward normal. Every flag is
/// checked; throws std::logic_error if two flags disagree.
int pl_sign_geometric(const FlowContext& ctx, const PLTrajectory& trajectory);

/// The discrete gradient path (from the first facet) a trajectory encodes.
GradientPath discrete_path(const FlowContext& ctx, const PLTrajectory& trajectory);

/// The trajectory of a path alpha_0, ..., alpha_r started from the coface
/// beta_0 of alpha_0, with sign <d beta_0, alpha_0> m(path).
PLTrajectory trajectory_from_path(const FlowContext& ctx, CellIndex beta0, const GradientPath& path);

using PLMorseComplexData = MorseComplexData;

/// d_PL from signed trajectory counts. Throws Error(NotTame) and
/// Error(DifferentialNotSquareZero); with `verify`, also compares against the
/// discrete Morse differential and throws Error(MatrixMismatch).
PLMorseComplexData pl_differential(const FlowContext& ctx, bool verify = true);

/// Throws Error(MatrixMismatch) naming the first differing entry.
void compare_differentials(const CellComplex& complex, const MorseComplexData& pl, const MorseComplexData& discrete);

struct SweptComplex {
  CellIndex origin;
  std::vector<CellIndex> cells;  // face-closed, sorted; indices into the context's complex
  SimplexSet simplices;          // the X1-simplices spanned by `cells`
};

/// Union of the trajectories leaving the critical vertex p, by the recursion
/// on closed cells: a critical cell sweeps its closure and whatever its
/// facets sweep; a cell paired with a higher-valued facet sweeps what that
/// facet sweeps; a cell paired with a lower-valued coface D sweeps both
/// closures and what the other facets of D sweep. Throws Error(NotTame) or
/// Error(NotCritical).
SweptComplex unstable_complex(const FlowContext& ctx, CellIndex p);

/// Unstable complex of p for the reversed flow, reported in this context's
/// cell indices. The cell set is closed under cofaces.
SweptComplex stable_complex(const FlowContext& ctx, CellIndex p);

/// Vertices reached from p by following X1 edges to lower values of f. A
/// simplex is swept from its highest vertex, so this is the set of vertices
/// of simplices swept from p by repeated application of that rule.
std::vector<CellIndex> sweep_reachability(const FlowContext& ctx, CellIndex p);

/// Monotone edge paths of X1 from p down to q, over edges of any dimensions.
struct DescentCensus {
  std::uint64_t monotone_paths = 0;
  std::size_t edges = 0;           // distinct edges lying on such a path
  std::size_t stray_edges = 0;     // of those, edges not joining dims i+1 and i
  std::size_t trajectories = 0;    // |pl_trajectories(ctx, p, q)|
};

/// Throws like pl_trajectories.
DescentCensus descent_census(const FlowContext& ctx, CellIndex p, CellIndex q);

bool is_face_closed(const CellComplex& complex, const std::vector<CellIndex>& cells);

}  // namespace plmorse

#pragma once

// Barycentric subdivision X1 of a cell complex, the piecewise linear
// function it carries, piecewise affine metrics and the facet flow
// classification of the resulting constant gradient fields.

#include "plmorse/cell_complex.hpp"
#include "plmorse/exact.hpp"
#include "plmorse/morse_function.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace plmorse {

/// A simplex of X1: a chain of base cells, each a strict face of the next.
/// Vertex order is increasing dimension.
using Chain = std::vector<CellIndex>;

class Subdivision {
 public:
  Subdivision() = default;

  std::shared_ptr<const CellComplex> base_ptr() const { return base_; }
  const CellComplex& base() const { return *base_; }
  const MorseFunction& function() const { return f_; }

  /// Same simplices, different vertex values. Cheap: the chain lists are shared.
  Subdivision with_function(MorseFunction f) const;

  int dim() const { return base_->dim(); }
  std::size_t vertex_count() const { return base_->size(); }
  int vertex_dim(CellIndex v) const { return base_->dim_of(v); }
  const Rational& f(CellIndex v) const { return f_[v]; }

  /// k-simplices, sorted lexicographically by vertex index.
  std::span<const Chain> simplices(int k) const;
  std::size_t simplex_count(int k) const { return simplices(k).size(); }
  std::optional<std::size_t> find(const Chain& chain) const;

  /// Simplices that are not a face of any other simplex.
  std::vector<Chain> maximal_simplices() const;

  /// X1-neighbours of a vertex: every cell comparable to it.
  std::vector<CellIndex> neighbours(CellIndex v) const;

  /// Vertex ids joined with '<'.
  std::string key(const Chain& chain) const;

  friend Subdivision barycentric_subdivide(const CellComplex& complex, const MorseFunction& f);
  friend Subdivision barycentric_subdivide(std::shared_ptr<const CellComplex> complex, const MorseFunction& f);

 private:
  struct Structure {
    std::vector<std::vector<Chain>> by_dim;
    std::vector<std::map<Chain, std::size_t>> index;
  };
  std::shared_ptr<const CellComplex> base_;
  std::shared_ptr<const Structure> structure_;
  MorseFunction f_;
};

/// Simplices are the chains of the face poset; f at the vertex of a cell is
/// its value. Throws Error(MissingValue) if f is not total.
Subdivision barycentric_subdivide(const CellComplex& complex, const MorseFunction& f);
Subdivision barycentric_subdivide(std::shared_ptr<const CellComplex> complex, const MorseFunction& f);

/// X1 as a simplicial cell complex in its own right, vertex labels being the
/// base cell indices.
CellComplex subdivision_complex(const Subdivision& s);

/// A set of X1-simplices grouped by dimension.
struct SimplexSet {
  std::vector<std::vector<Chain>> by_dim;

  std::size_t count(int k) const { return k < 0 || k >= static_cast<int>(by_dim.size()) ? 0 : by_dim[k].size(); }
  std::size_t total() const;
  bool contains(const Chain& chain) const;
};

/// Subdivision of the i-skeleton: chains whose cells all have dim <= i.
/// Throws Error(BadDegree) unless 0 <= i <= dim.
SimplexSet rib(const Subdivision& s, int i);

/// Chains all of whose cells belong to `cells` (given as a sorted list).
SimplexSet induced_simplices(const Subdivision& s, const std::vector<CellIndex>& cells);

/// A piecewise affine metric on X1, stored as squared edge lengths keyed by
/// the ids of the edge's endpoints. Edges without an entry have length 1.
class PiecewiseMetric {
 public:
  /// Unit edges everywhere.
  static PiecewiseMetric equilateral() { return {}; }

  /// Gram matrices of edge vectors v_l - v_0 per maximal simplex, keyed by
  /// `Subdivision::key`. Throws Error(UnknownCell) for keys that are not
  /// simplices and Error(IncompatibleMetric) when two simplices induce
  /// different lengths on a shared edge or a matrix is not symmetric.
  static PiecewiseMetric from_grams(const Subdivision& s, const std::vector<std::pair<std::string, RatMatrix>>& grams);

  bool is_equilateral() const { return lengths_.empty(); }
  Rational squared_length(const std::string& a, const std::string& b) const;

  /// Gram matrix of e_l = v_l - v_0 (l = 1..k) for the vertices in the order
  /// given.
  RatMatrix gram(const CellComplex& complex, const Chain& vertices) const;

  const std::map<std::pair<std::string, std::string>, Rational>& lengths() const { return lengths_; }

 private:
  std::map<std::pair<std::string, std::string>, Rational> lengths_;
};

struct MetricSimplex {
  Chain vertices;
  RatMatrix gram;      // k x k
  RatVector f_diffs;   // f(v_l) - f(v_0), l = 1..k
};

MetricSimplex metric_simplex(const Subdivision& s, const PiecewiseMetric& metric, const Chain& vertices);
std::vector<MetricSimplex> maximal_metric_simplices(const Subdivision& s, const PiecewiseMetric& metric);

bool positive_definite(const RatMatrix& gram);

/// Steepest descent direction d = -gram^{-1} f_diffs in edge coordinates.
/// Throws Error(SingularGram) unless the Gram matrix is positive definite.
RatVector simplex_gradient(const MetricSimplex& ms);

/// Rates of change of the barycentric coordinates along an edge-coordinate
/// direction: (-sum d, d_1, ..., d_k).
RatVector barycentric_rates(const RatVector& direction);

/// Inverse Gram matrices of every positive-dimensional simplex, reusable
/// across functions on the same subdivision and metric.
class FlowGeometry {
 public:
  /// Throws Error(SingularGram).
  static FlowGeometry build(const Subdivision& s, const PiecewiseMetric& metric);
  const RatMatrix& inverse_gram(int k, std::size_t index) const { return inverse_[k][index]; }

 private:
  std::vector<std::vector<RatMatrix>> inverse_;
};

enum class Flow { in_flow, out_flow };

/// The facet of simplex (dim, index) opposite vertex position `omitted`.
struct FacetFlow {
  int dim;
  std::size_t simplex;
  std::size_t omitted;
  Flow flow;
};

struct FlowClassification {
  std::vector<FacetFlow> facets;

  std::size_t count(Flow kind) const;
};

/// A facet has an out-flow when descent increases the barycentric coordinate
/// of the opposite vertex, an in-flow when it decreases it. Throws
/// Error(DegenerateDirection) when the rate is zero.
FlowClassification classify_flows(const Subdivision& s, const PiecewiseMetric& metric);
FlowClassification classify_flows(const Subdivision& s, const FlowGeometry& geometry);

/// A point of X1: its carrier simplex and barycentric coordinates in the
/// carrier's vertex order.
struct PointX1 {
  Chain carrier;
  std::vector<Rational> coordinates;
};

struct TangentDirection {
  Chain simplex;
  RatVector direction;                  // edge coordinates of `simplex`
  std::map<CellIndex, Rational> rates;  // nonzero barycentric rates by vertex
};

/// One descent direction for each simplex containing the carrier (the carrier
/// itself included when it is not a vertex). Throws Error(InvalidPoint) for
/// a malformed point and Error(DegenerateDirection) for a zero direction.
std::vector<TangentDirection> gradient_vector_set(const Subdivision& s, const PiecewiseMetric& metric,
                                                  const PointX1& x);

/// True when no two directions coincide after inclusion into a common simplex.
bool directions_distinct(const std::vector<TangentDirection>& set);

struct SharpnessWitness {
  std::size_t simplex;     // position in the audited list
  std::size_t apex;        // vertex position of a
  std::vector<Rational> b;  // barycentric coordinates
  std::vector<Rational> c;
  char corner;             // 'a', 'b' or 'c': the angle that is not acute
};

struct SharpnessReport {
  std::size_t sections = 0;
  std::size_t failures = 0;
  std::vector<SharpnessWitness> witnesses;  // first few failures
};

/// Samples triangles a, b, c where a is a vertex and b, c are random points of
/// disjoint faces of the opposite facet, and checks that all three angles
/// are acute. Simplices of dimension below 2 are skipped.
SharpnessReport audit_sharpness(const std::vector<MetricSimplex>& simplices, std::size_t samples, std::uint64_t seed);

}  // namespace plmorse

#pragma once

// Finite regular cell complexes as graded face posets with signed facet
// incidence, plus the cellular chain complex they carry.

#include "plmorse/exact.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <ranges>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace plmorse {

/// Position of a cell in a complex. Cells are stored sorted by (dim, id).
using CellIndex = std::size_t;

struct Incidence {
  CellIndex cell;
  int sign;  // +1 or -1
};

struct Cell {
  std::string id;
  int dim = 0;
  std::vector<Incidence> facets;
  std::string label;
};

/// Unvalidated cell description, as read from input.
struct RawCell {
  std::string id;
  int dim = 0;
  std::vector<std::pair<std::string, int>> facets;
  std::string label;
};

class CellComplex {
 public:
  CellComplex() = default;

  /// Validates and indexes a cell list. Throws Error with DanglingFacet,
  /// DimensionMismatch, DuplicateFacet, DuplicateCell, EmptyInput or
  /// NonSquareZeroBoundary.
  static CellComplex build(std::vector<RawCell> raw);

  std::size_t size() const { return cells_.size(); }
  /// Maximal cell dimension; -1 for the empty complex.
  int dim() const { return static_cast<int>(dim_offset_.size()) - 2; }

  const Cell& cell(CellIndex c) const { return cells_[c]; }
  const std::string& id(CellIndex c) const { return cells_[c].id; }
  int dim_of(CellIndex c) const { return cells_[c].dim; }
  std::span<const Cell> cells() const { return cells_; }

  std::optional<CellIndex> find(std::string_view id) const;
  /// Throws Error(UnknownCell).
  CellIndex index_of(std::string_view id) const;

  auto cells_of_dim(int d) const {
    if (d < 0 || d > dim()) return std::views::iota(CellIndex{0}, CellIndex{0});
    return std::views::iota(dim_offset_[d], dim_offset_[d + 1]);
  }
  std::size_t count_of_dim(int d) const {
    return (d < 0 || d > dim()) ? 0 : dim_offset_[d + 1] - dim_offset_[d];
  }
  /// Position of `c` among the cells of its dimension.
  std::size_t rank_in_dim(CellIndex c) const { return c - dim_offset_[cells_[c].dim]; }

  std::span<const Incidence> facets(CellIndex c) const { return cells_[c].facets; }
  std::span<const Incidence> cofacets(CellIndex c) const { return cofacets_[c]; }

  /// Signed incidence <d beta, alpha>; zero unless alpha is a facet of beta.
  int incidence(CellIndex beta, CellIndex alpha) const;

  /// Reflexive face order: alpha <= beta.
  bool is_face(CellIndex alpha, CellIndex beta) const {
    return face_order_[alpha * cells_.size() + beta] != 0;
  }
  bool comparable(CellIndex a, CellIndex b) const { return is_face(a, b) || is_face(b, a); }
  /// All strict faces of `beta`, in index order.
  std::span<const CellIndex> faces(CellIndex beta) const { return faces_[beta]; }
  /// All strict cofaces of `alpha`, in index order.
  std::span<const CellIndex> cofaces(CellIndex alpha) const { return cofaces_[alpha]; }

  /// Sorted cells forming the smallest face-closed set containing `seeds`.
  std::vector<CellIndex> closure(std::span<const CellIndex> seeds) const;

  std::int64_t euler_characteristic() const;

  /// The same poset with reversed grading (dim' = n - dim) and transposed
  /// incidence. Its boundary is the coboundary of this complex, so its
  /// cellular homology is the cohomology of this complex.
  CellComplex opposite() const;

  /// The raw description this complex was built from (sorted by dim, id).
  std::vector<RawCell> to_raw() const;

 private:
  std::vector<Cell> cells_;
  std::vector<std::vector<Incidence>> cofacets_;
  std::vector<std::vector<CellIndex>> faces_;
  std::vector<std::vector<CellIndex>> cofaces_;
  std::vector<std::uint8_t> face_order_;
  std::vector<std::size_t> dim_offset_{0};
  std::map<std::string, CellIndex, std::less<>> index_;
};

/// An integer i-chain. Coefficients are keyed by cell index.
struct ChainVector {
  int degree = 0;
  std::map<CellIndex, std::int64_t> coefficients;

  bool is_zero() const;
  friend bool operator==(const ChainVector&, const ChainVector&) = default;
};

/// The chain consisting of one oriented cell.
ChainVector elementary_chain(const CellComplex& complex, CellIndex c, std::int64_t coefficient = 1);

/// Cellular boundary. A degree-zero chain maps to the empty chain of degree -1.
ChainVector boundary(const ChainVector& chain, const CellComplex& complex);

/// Orthonormal-basis inner product on chains.
std::int64_t inner_product(const ChainVector& a, const ChainVector& b);

struct IncidenceMatrix {
  int degree = 0;
  std::vector<CellIndex> rows;  // (degree-1)-cells
  std::vector<CellIndex> cols;  // degree-cells
  IntMatrix entries;
};

/// Matrix of d: C_degree -> C_{degree-1} in the sorted-id bases. For degree
/// 0 or above dim() the matrix has an empty side.
IncidenceMatrix incidence_matrix(const CellComplex& complex, int degree);

/// All simplices spanned by the given vertex lists and their faces. Each
/// simplex is oriented by sorted vertex order; the face omitting position l
/// has sign (-1)^l. Throws Error(EmptyInput) on an empty list.
CellComplex simplicial_from_vertex_lists(const std::vector<std::vector<long>>& simplices);

/// Id used by `simplicial_from_vertex_lists` for a simplex (sorted labels).
std::string simplex_id(const std::vector<long>& sorted_vertices, bool wide_labels);

/// Builtin test battery: point, interval, circle_3, sphere_0 ... sphere_4,
/// torus_7, klein_bottle, rp2_6. Throws Error(UnknownName).
CellComplex builtin(std::string_view name);

/// Names of the complexes used by the acceptance battery.
std::vector<std::string> battery_names();

}  // namespace plmorse

#pragma once

// Integer homology of bounded chain complexes of free abelian groups via
// Smith normal form.

#include "plmorse/cell_complex.hpp"
#include "plmorse/exact.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace plmorse {

template <typename Int>
struct SmithForm {
  std::vector<Int> factors;  // d_1 | d_2 | ... | d_rank, all positive
  Eigen::Index rank = 0;
};

namespace detail {

template <typename Int>
Int magnitude(const Int& x) {
  return x < 0 ? Int(-x) : x;
}

template <typename Int>
void swap_rows(MatrixX<Int>& m, Eigen::Index a, Eigen::Index b) {
  if (a != b) m.row(a).swap(m.row(b));
}

template <typename Int>
void swap_cols(MatrixX<Int>& m, Eigen::Index a, Eigen::Index b) {
  if (a != b) m.col(a).swap(m.col(b));
}

}  // namespace detail

/// Smith normal form by unimodular row and column operations. Pivots on the
/// nonzero entry of least absolute value in the active block.
template <typename Int>
SmithForm<Int> smith_normal_form(MatrixX<Int> m) {
  using detail::magnitude;
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  Eigen::Index t = 0;
  while (t < rows && t < cols) {
    Eigen::Index pi = -1, pj = -1;
    for (Eigen::Index j = t; j < cols; ++j)
      for (Eigen::Index i = t; i < rows; ++i)
        if (m(i, j) != 0 && (pi < 0 || magnitude(m(i, j)) < magnitude(m(pi, pj)))) {
          pi = i;
          pj = j;
        }
    if (pi < 0) break;
    detail::swap_rows(m, t, pi);
    detail::swap_cols(m, t, pj);

    for (;;) {
      bool dirty = false;
      for (Eigen::Index i = t + 1; i < rows; ++i) {
        if (m(i, t) == 0) continue;
        const Int q = m(i, t) / m(t, t);
        for (Eigen::Index j = t; j < cols; ++j) m(i, j) -= q * m(t, j);
        dirty = dirty || m(i, t) != 0;
      }
      for (Eigen::Index j = t + 1; j < cols; ++j) {
        if (m(t, j) == 0) continue;
        const Int q = m(t, j) / m(t, t);
        for (Eigen::Index i = t; i < rows; ++i) m(i, j) -= q * m(i, t);
        dirty = dirty || m(t, j) != 0;
      }
      if (dirty) {
        // A remainder smaller than the pivot survived; move it to the pivot.
        Eigen::Index bi = t, bj = t;
        for (Eigen::Index i = t + 1; i < rows; ++i)
          if (m(i, t) != 0 && magnitude(m(i, t)) < magnitude(m(bi, bj))) {
            bi = i;
            bj = t;
          }
        for (Eigen::Index j = t + 1; j < cols; ++j)
          if (m(t, j) != 0 && magnitude(m(t, j)) < magnitude(m(bi, bj))) {
            bi = t;
            bj = j;
          }
        detail::swap_rows(m, t, bi);
        detail::swap_cols(m, t, bj);
        continue;
      }
      Eigen::Index bad = -1;
      for (Eigen::Index i = t + 1; i < rows && bad < 0; ++i)
        for (Eigen::Index j = t + 1; j < cols; ++j)
          if (m(i, j) % m(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      for (Eigen::Index j = t; j < cols; ++j) m(t, j) += m(bad, j);
    }
    ++t;
  }
  SmithForm<Int> out;
  out.rank = t;
  for (Eigen::Index k = 0; k < t; ++k) out.factors.push_back(magnitude(m(k, k)));
  return out;
}

/// A bounded complex 0 -> C_top -> ... -> C_0 -> 0 of free abelian groups.
/// `differentials[i]` is the matrix of d_i : C_i -> C_{i-1}; entry 0 has
/// zero rows.
struct IntegerChainComplex {
  std::vector<std::vector<std::string>> basis;
  std::vector<IntMatrix> differentials;

  int top_degree() const { return static_cast<int>(basis.size()) - 1; }
  Eigen::Index rank(int degree) const {
    return (degree < 0 || degree > top_degree()) ? 0 : static_cast<Eigen::Index>(basis[degree].size());
  }

  /// Cellular chain complex with the sorted-id basis in each degree.
  static IntegerChainComplex cellular(const CellComplex& complex);
};

/// Throws Error(NotAComplex) on a shape mismatch or a nonzero d_i d_{i+1}.
void validate_chain_complex(const IntegerChainComplex& complex);

struct HomologyGroup {
  int degree = 0;
  std::int64_t betti = 0;
  std::vector<BigInt> torsion;  // invariant factors > 1

  friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;
};

struct HomologySummary {
  std::vector<HomologyGroup> groups;

  std::vector<std::int64_t> betti_numbers() const;
  std::int64_t euler_characteristic() const;
  /// Group in `degree`; zero outside the stored range.
  HomologyGroup group(int degree) const;
  /// E.g. "ℤ, ℤ⊕ℤ/2, 0".
  std::string to_string() const;
};

HomologySummary homology(const IntegerChainComplex& complex);

struct HomologyComparison {
  bool isomorphic = true;
  std::vector<int> mismatched_degrees;
  std::vector<std::string> report;  // one line per degree
};

HomologyComparison compare_homology(const HomologySummary& a, const HomologySummary& b);
HomologyComparison complexes_isomorphic_in_homology(const IntegerChainComplex& a, const IntegerChainComplex& b);

}  // namespace plmorse

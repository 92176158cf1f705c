#pragma once

// Seeded generators and small fixtures shared by the unit tests.

#include "plmorse/cell_complex.hpp"
#include "plmorse/morse_function.hpp"

#include <map>
#include <random>
#include <string>

namespace plmorse::testing {

inline MorseFunction values(const CellComplex& x, const std::map<std::string, Rational>& m) {
  return MorseFunction::from_map(x, m);
}

/// F(a)=0, F(b)=1, F(e)=1/2: e collapses onto b, a is the only critical cell.
inline MorseFunction interval_collapsed(const CellComplex& interval) {
  return values(interval, {{"a", 0}, {"b", 1}, {"e", Rational(1, 2)}});
}

/// v0=0, v1=2, v2=4, e01=1, e12=3, e02=5: critical v0 and e02.
inline MorseFunction circle_collapsed(const CellComplex& circle) {
  return values(circle, {{"v0", 0}, {"v1", 2}, {"v2", 4}, {"e01", 1}, {"e12", 3}, {"e02", 5}});
}

inline CellComplex solid_triangle() { return simplicial_from_vertex_lists({{0, 1, 2}}); }

/// Random integer matrix with entries in [-bound, bound].
inline IntMatrix random_int_matrix(std::mt19937_64& rng, int rows, int cols, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  IntMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = d(rng);
  return m;
}

/// Product of random elementary row operations: unimodular by construction.
inline IntMatrix random_unimodular(std::mt19937_64& rng, int n, int steps) {
  IntMatrix u = IntMatrix::Identity(n, n);
  if (n < 2) return u;
  std::uniform_int_distribution<int> pick(0, n - 1), mult(-3, 3), coin(0, 2);
  for (int s = 0; s < steps; ++s) {
    const int a = pick(rng);
    int b = pick(rng);
    if (a == b) b = (a + 1) % n;
    switch (coin(rng)) {
      case 0: u.row(a) += BigInt(mult(rng)) * u.row(b); break;
      case 1: u.row(a).swap(u.row(b)); break;
      default: u.row(a) *= BigInt(-1); break;
    }
  }
  return u;
}

}  // namespace plmorse::testing

#include "plmorse/error.hpp"

#include <optional>

namespace plmorse::testing {

/// The Error code thrown by `f`, or nullopt if it returns normally.
template <typename F>
std::optional<Errc> thrown(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace plmorse::testing

namespace plmorse::testing {

inline bool same_matrices(const std::vector<IntMatrix>& a, const std::vector<IntMatrix>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k].rows() != b[k].rows() || a[k].cols() != b[k].cols()) return false;
    if (a[k].size() && a[k] != b[k]) return false;
  }
  return true;
}

}  // namespace plmorse::testing

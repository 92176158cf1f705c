#pragma once

// Discrete gradient vector field, gradient paths with propagated orientation
// signs, and the Morse complex they define.

#include "plmorse/cell_complex.hpp"
#include "plmorse/homology.hpp"
#include "plmorse/morse_function.hpp"

#include <optional>
#include <vector>

namespace plmorse {

/// V(alpha) = sign * target.
struct GradientArrow {
  CellIndex target;
  int sign;
};

class GradientField {
 public:
  GradientField() = default;
  explicit GradientField(std::vector<std::optional<GradientArrow>> arrows) : arrows_(std::move(arrows)) {}

  const std::optional<GradientArrow>& operator[](CellIndex c) const { return arrows_[c]; }
  std::size_t size() const { return arrows_.size(); }
  std::size_t arrow_count() const;

 private:
  std::vector<std::optional<GradientArrow>> arrows_;
};

/// V(alpha) = -<d beta, alpha> beta for the exceptional coface beta of alpha,
/// zero otherwise. Throws Error(NotMorse).
GradientField gradient_field(const CellComplex& complex, const MorseFunction& f);

/// alpha_0, ..., alpha_r with beta_l the (i+1)-cell used for the step
/// alpha_{l-1} -> alpha_l, or nullopt on a stabilized step.
struct GradientPath {
  int dim = 0;
  std::vector<CellIndex> cells;
  std::vector<std::optional<CellIndex>> betas;
  int sign = 1;

  /// The path with trailing stabilized steps removed.
  GradientPath core() const;
};

/// Default path length: one more than the number of i-cells, long enough for
/// every path to stabilize.
std::size_t default_path_length(const CellComplex& complex, int dim);

/// All gradient paths of exactly `max_len` steps from `from` to `to`, with
/// their signs. `max_len` defaults to `default_path_length`.
std::vector<GradientPath> enumerate_paths(const CellComplex& complex, const MorseFunction& f, CellIndex from,
                                          CellIndex to, std::optional<std::size_t> max_len = std::nullopt);

/// Orientation of alpha_r induced from +alpha_0: each step through beta
/// enforces <d beta, alpha_l><d beta, alpha_{l+1}> = -1; stabilized steps
/// keep the orientation. The result is the sign of that orientation against
/// the fixed orientation of alpha_r.
int path_sign(const CellComplex& complex, const GradientPath& path);

struct MorseComplexData {
  std::vector<std::vector<CellIndex>> critical;  // basis per degree
  std::vector<IntMatrix> differentials;           // [i]: M_i -> M_{i-1}

  IntegerChainComplex chain_complex(const CellComplex& complex) const;
};

/// Entry (alpha, beta) = sum over facets a of beta of <d beta, a> times the
/// signed count of gradient paths from a to alpha. Throws
/// Error(DifferentialNotSquareZero) if the result is not a complex.
MorseComplexData morse_differential(const CellComplex& complex, const MorseFunction& f);

/// The same entries computed by explicit path enumeration; exponential in the
/// worst case and meant as a cross-check.
MorseComplexData morse_differential_by_enumeration(const CellComplex& complex, const MorseFunction& f);

/// Throws Error(DifferentialNotSquareZero) with the first nonzero entry.
void check_square_zero(const CellComplex& complex, const MorseComplexData& data);

}  // namespace plmorse

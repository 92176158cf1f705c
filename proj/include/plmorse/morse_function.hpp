#pragma once

// Discrete Morse functions on cell complexes: validation of the Morse,
// generic and tame conditions, critical cells, tame-ification and random
// generation.

#include "plmorse/cell_complex.hpp"
#include "plmorse/exact.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace plmorse {

/// Exact rational values indexed by the cells of one complex.
class MorseFunction {
 public:
  MorseFunction() = default;
  explicit MorseFunction(std::vector<Rational> values) : values_(std::move(values)) {}

  /// Throws Error(MissingValue) if a cell of `complex` has no value and
  /// Error(UnknownCell) for a value on a nonexistent cell.
  static MorseFunction from_map(const CellComplex& complex, const std::map<std::string, Rational>& values);

  /// F(cell) = dim(cell).
  static MorseFunction trivial(const CellComplex& complex);

  std::size_t size() const { return values_.size(); }
  const Rational& operator[](CellIndex c) const { return values_[c]; }
  const std::vector<Rational>& values() const { return values_; }

  MorseFunction with_value(CellIndex c, Rational v) const;
  MorseFunction negated() const;

  /// Values keyed by cell id.
  std::map<std::string, Rational> to_map(const CellComplex& complex) const;

  friend bool operator==(const MorseFunction&, const MorseFunction&) = default;

 private:
  std::vector<Rational> values_;
};

/// Reindexes a function by cell id onto another complex with the same ids
/// (e.g. the opposite complex).
MorseFunction transfer(const CellComplex& from, const MorseFunction& f, const CellComplex& to);

struct MorseViolation {
  CellIndex cell;
  std::vector<CellIndex> low_cofacets;  // cofacets with F <= F(cell), listed when more than one
  std::vector<CellIndex> high_facets;   // facets with F >= F(cell), listed when more than one
};

struct MorseValidation {
  bool ok = true;
  std::vector<MorseViolation> violations;
};

/// (face, coface) pairs that break a condition.
struct PairValidation {
  bool ok = true;
  std::vector<std::pair<CellIndex, CellIndex>> pairs;
};

/// Counting conditions: each cell has at most one cofacet with lower-or-equal
/// value and at most one facet with higher-or-equal value.
MorseValidation validate_morse(const CellComplex& complex, const MorseFunction& f);

/// F(alpha) != F(beta) for every comparable pair, in every codimension.
PairValidation validate_generic(const CellComplex& complex, const MorseFunction& f);

/// No pair alpha < beta with codimension >= 2 and F(beta) < F(alpha).
PairValidation validate_tame(const CellComplex& complex, const MorseFunction& f);

struct MorseFlags {
  bool morse = false;
  bool generic = false;
  bool tame = false;
};

MorseFlags morse_flags(const CellComplex& complex, const MorseFunction& f);

struct CriticalReport {
  std::vector<std::vector<CellIndex>> critical;   // per dimension
  std::vector<std::optional<CellIndex>> partner;  // exceptional partner per cell
  std::vector<std::pair<CellIndex, CellIndex>> pairs;  // (i-cell, (i+1)-cell)

  bool is_critical(CellIndex c) const { return !partner[c].has_value(); }
  std::size_t critical_count() const;
};

/// Throws Error(NotMorse).
CriticalReport critical_cells(const CellComplex& complex, const MorseFunction& f);

/// One modification made by `tameify`.
struct TameifyStep {
  CellIndex face;     // alpha, the lower member of the chosen violating pair
  CellIndex coface;   // beta, whose value changes
  CellIndex ceiling;  // epsilon, the (dim beta - 1)-face bounding the new value
  Rational old_value;
  Rational new_value;
  std::size_t violations_before = 0;
  std::size_t violations_after = 0;
};

/// Removes tameness violations one maximal pair at a time: F(beta) moves into
/// the open interval (F(alpha), F(epsilon)). Critical cells and the pairing
/// are unchanged. Throws Error(NotMorse) or Error(NotGeneric).
MorseFunction tameify(const CellComplex& complex, const MorseFunction& f, std::vector<TameifyStep>* trace = nullptr);

/// A generic discrete Morse function built from a random acyclic matching.
/// Deterministic per seed.
MorseFunction random_generic_morse(const CellComplex& complex, std::uint64_t seed);

}  // namespace plmorse

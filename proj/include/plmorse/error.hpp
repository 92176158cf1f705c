#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace plmorse {

enum class Errc {
  DanglingFacet,
  DimensionMismatch,
  NonSquareZeroBoundary,
  DuplicateFacet,
  DuplicateCell,
  EmptyInput,
  UnknownName,
  UnknownCell,
  NotAComplex,
  MissingValue,
  NotMorse,
  NotGeneric,
  NotTame,
  NotCritical,
  BadDegree,
  SingularGram,
  DegenerateDirection,
  IncompatibleMetric,
  InvalidPoint,
  DifferentialNotSquareZero,
  MatrixMismatch,
  ParseError,
};

std::string_view errc_name(Errc code);

/// Every recoverable failure in the library is reported through this type;
/// `code()` identifies the condition, `what()` carries a witness.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace plmorse

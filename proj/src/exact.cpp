#include "plmorse/exact.hpp"

#include "plmorse/error.hpp"

#include <cctype>

namespace plmorse {

namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char ch : s)
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den.front() == '-' || den.front() == '+')
    throw Error(Errc::ParseError, "not a rational: '" + std::string(text) + "'");
  if (num.front() == '+') num.remove_prefix(1);
  BigInt p(std::string{num});
  BigInt q(std::string{den});
  if (q == 0) throw Error(Errc::ParseError, "zero denominator in '" + std::string(text) + "'");
  return Rational(p, q);
}

std::string format_rational(const Rational& value) {
  const BigInt p = numerator(value);
  const BigInt q = denominator(value);
  if (q == 1) return p.str();
  return p.str() + "/" + q.str();
}

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::DanglingFacet: return "DanglingFacet";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NonSquareZeroBoundary: return "NonSquareZeroBoundary";
    case Errc::DuplicateFacet: return "DuplicateFacet";
    case Errc::DuplicateCell: return "DuplicateCell";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::UnknownName: return "UnknownName";
    case Errc::UnknownCell: return "UnknownCell";
    case Errc::NotAComplex: return "NotAComplex";
    case Errc::MissingValue: return "MissingValue";
    case Errc::NotMorse: return "NotMorse";
    case Errc::NotGeneric: return "NotGeneric";
    case Errc::NotTame: return "NotTame";
    case Errc::NotCritical: return "NotCritical";
    case Errc::BadDegree: return "BadDegree";
    case Errc::SingularGram: return "SingularGram";
    case Errc::DegenerateDirection: return "DegenerateDirection";
    case Errc::IncompatibleMetric: return "IncompatibleMetric";
    case Errc::InvalidPoint: return "InvalidPoint";
    case Errc::DifferentialNotSquareZero: return "DifferentialNotSquareZero";
    case Errc::MatrixMismatch: return "MatrixMismatch";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace plmorse

#pragma once

// Exact scalar types and dense Eigen aliases used throughout the library.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <string>
#include <string_view>

namespace plmorse {

using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = MatrixX<BigInt>;
using RatMatrix = MatrixX<Rational>;
using RatVector = VectorX<Rational>;

/// Parses "p/q", "p" or "-p/q". Throws Error(ParseError) on malformed input
/// or a zero denominator.
Rational parse_rational(std::string_view text);

/// Renders "p/q", or "p" when the denominator is one.
std::string format_rational(const Rational& value);

inline int sign_of(const Rational& value) { return value.sign(); }

}  // namespace plmorse

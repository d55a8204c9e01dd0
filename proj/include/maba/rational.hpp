#pragma once

// Exact rational scalar used throughout the library, plus the dense Eigen
// aliases built on it. GMP-backed, expression templates off so Eigen sees a
// plain value type.

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>
#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace maba {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using RowVectorX = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;

using MatrixQ = MatrixX<Rational>;
using VectorQ = VectorX<Rational>;
using RowVectorQ = RowVectorX<Rational>;

/// "p/q", with "/q" omitted when q == 1.
std::string to_string(const Rational& x);

/// Parses "p", "p/q" or "-p/q". Throws std::invalid_argument on malformed input
/// or a zero denominator.
Rational parse_rational(std::string_view text);

/// x^k for any integer k. Negative k requires x != 0 (throws DomainError).
template <typename Scalar>
Scalar ipow(const Scalar& x, int k);

extern template Rational ipow<Rational>(const Rational&, int);

inline bool is_zero(const Rational& x) { return x == 0; }

}  // namespace maba

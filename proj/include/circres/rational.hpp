#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>

namespace circres {

/// Exact arbitrary-precision fraction, always kept in lowest terms with a
/// positive denominator. Expression templates are disabled so that `auto`
/// and lambdas see plain values.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

inline Integer numerator_of(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator_of(const Rational& q) { return boost::multiprecision::denominator(q); }

inline bool is_integral(const Rational& q) { return denominator_of(q) == 1; }

/// "n" for integers, "n/d" otherwise.
std::string to_string(const Rational& q);

/// Parses "n" or "n/d" (optional leading sign on n). Throws std::invalid_argument
/// on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// Bit length of |numerator| plus bit length of the denominator.
std::size_t bit_size(const Rational& q);

}  // namespace circres

#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace facloc {

// Exact fraction, always kept in lowest terms with a positive denominator.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

// Parses "p", "-p", "p/q" (q != 0). Whitespace around the token is ignored.
// Throws ParseError on anything else.
Rational parse_rational(std::string_view text);

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& value);

Integer numerator_of(const Rational& value);
Integer denominator_of(const Rational& value);

// Fixed-point rendering with `digits` fractional digits, rounded half away
// from zero. Computed with integer arithmetic, so output is reproducible.
std::string to_decimal(const Rational& value, int digits = 6);

inline Rational abs(const Rational& value) {
  return value < 0 ? Rational(-value) : value;
}

}  // namespace facloc

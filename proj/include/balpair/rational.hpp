#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace balpair {

using Integer = mpz_class;
/// Canonical arbitrary-precision fraction; gmp keeps it reduced with a positive denominator.
using Rational = mpq_class;

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

/// Accepts "p", "-p", "p/q". Throws InvalidLength on malformed text or zero denominator.
Rational parse_rational(std::string_view text);

/// Decimal rendering with `digits` fractional digits, rounded half away from zero.
std::string to_decimal(const Rational& q, int digits);

double to_double(const Rational& q);

Integer lcm(const Integer& a, const Integer& b);
Integer gcd(const Integer& a, const Integer& b);

}  // namespace balpair

#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace cmh {

using Integer = mpz_class;
using Rational = mpq_class;

// Parses "p", "-p" or "p/q"; throws Error(Parse) on anything else.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

Integer floor(const Rational& q);
Integer ceil(const Rational& q);
// Nearest integer, ties away from zero.
Integer round(const Rational& q);
Rational abs(const Rational& q);
Integer abs(const Integer& z);
Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);
// Least common multiple of all denominators.
Integer common_denominator(const std::vector<Rational>& values);

struct ExtendedGcd {
    Integer g, s, t;  // g = s*a + t*b, g >= 0
};
ExtendedGcd extended_gcd(const Integer& a, const Integer& b);

}  // namespace cmh

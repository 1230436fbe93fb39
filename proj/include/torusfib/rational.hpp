#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace torusfib {

using Integer = mpz_class;
using Rational = mpq_class;

using ExponentVector = std::vector<Integer>;
using IntegerVector = std::vector<Integer>;
using RationalVector = std::vector<Rational>;

// Canonical "p/q" form, q >= 1 (integers are written "p/1").
std::string to_string(const Rational& r);
std::string to_string(const Integer& z);
// Accepts "p", "p/q" and "-p/q"; the result is canonicalized.
Rational parse_rational(std::string_view text);

Integer floor_div(const Rational& r);
Integer ceil_div(const Rational& r);
bool is_integer(const Rational& r);

Rational dot(const RationalVector& a, const RationalVector& b);
Rational dot(const IntegerVector& a, const RationalVector& b);
Integer dot(const IntegerVector& a, const IntegerVector& b);

RationalVector to_rational(const IntegerVector& v);

// gcd of all entries (0 for the zero vector).
Integer content(const IntegerVector& v);
// Scales a nonzero rational vector to the unique primitive integer vector pointing the same way.
IntegerVector primitive_integer(const RationalVector& v);

std::string to_string(const IntegerVector& v);
std::string to_string(const RationalVector& v);

}  // namespace torusfib

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace hypercone {

using Integer = mpz_class;
using Rational = mpq_class;

// Parses "3", "-3/4"; unreduced or negative-denominator inputs are canonicalized.
Rational parse_rational(const std::string& text);

// Canonical form: "n" when the denominator is 1, otherwise "n/d" with d > 0.
std::string rational_str(const Rational& r);

inline int sign_of(const Rational& r) { return sgn(r); }

Integer floor_of(const Rational& r);

// Exact binary value of the double.
Rational rational_from_double(double x);
double to_double(const Rational& r);

// Best rational approximation with denominator <= max_den, via continued fractions.
Rational best_approx(const Rational& x, const Integer& max_den);

Integer pow_integer(const Integer& base, unsigned long exp);

// 2^-k as an exact rational.
Rational pow2_inv(unsigned k);

}  // namespace hypercone

#pragma once

#include <initializer_list>
#include <utility>
#include <vector>

#include "hypercone/rational.hpp"

namespace hypercone {

// Univariate polynomial over Q; coefficients ascending by power of t, no
// trailing zeros (the zero polynomial has an empty coefficient list).
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> coeffs);
  static UniPoly constant(const Rational& c);
  static UniPoly from_ints(std::initializer_list<long> ascending);

  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const Rational& leading() const;
  Rational coeff(int k) const;
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  Rational operator()(const Rational& t) const;
  // Sign of the value at a/b; pure integer arithmetic when the coefficients
  // are integral (the Sturm chains keep them that way).
  int sign_at(const Rational& t) const;

  UniPoly operator+(const UniPoly& o) const;
  UniPoly operator-(const UniPoly& o) const;
  UniPoly operator*(const UniPoly& o) const;
  UniPoly operator-() const;
  UniPoly scaled(const Rational& c) const;

  UniPoly derivative() const;
  // Quotient and remainder over Q; divisor must be nonzero.
  static std::pair<UniPoly, UniPoly> divrem(const UniPoly& a, const UniPoly& b);

  // Positive rational multiple with integer coefficients of gcd 1.
  UniPoly primitive_integer() const;
  // Leading coefficient scaled to 1.
  UniPoly monic() const;
  bool all_coeffs_integral() const;

  bool operator==(const UniPoly& o) const { return coeffs_ == o.coeffs_; }

 private:
  std::vector<Rational> coeffs_;
  void trim();
};

// Primitive gcd with positive leading coefficient (gcd(0,b) = primitive b).
UniPoly unipoly_gcd(const UniPoly& a, const UniPoly& b);

// Positive scalar multiple of rem(a, b) computed in pure integer arithmetic;
// inputs must have integer coefficients. Sign-safe for Sturm chains.
UniPoly pseudo_remainder_positive(const UniPoly& a, const UniPoly& b);

}  // namespace hypercone

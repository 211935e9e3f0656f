#include "hypercone/unipoly.hpp"

#include <stdexcept>

namespace hypercone {

UniPoly::UniPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void UniPoly::trim() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

UniPoly UniPoly::constant(const Rational& c) {
  UniPoly p;
  if (sgn(c) != 0) p.coeffs_.push_back(c);
  return p;
}

UniPoly UniPoly::from_ints(std::initializer_list<long> ascending) {
  std::vector<Rational> cs;
  cs.reserve(ascending.size());
  for (long v : ascending) cs.emplace_back(v);
  return UniPoly(std::move(cs));
}

const Rational& UniPoly::leading() const {
  if (is_zero()) throw std::logic_error("leading coefficient of zero polynomial");
  return coeffs_.back();
}

Rational UniPoly::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return Rational(0);
  return coeffs_[k];
}

Rational UniPoly::operator()(const Rational& t) const {
  Rational acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= t;
    acc += *it;
  }
  return acc;
}

int UniPoly::sign_at(const Rational& t) const {
  if (is_zero()) return 0;
  if (all_coeffs_integral()) {
    // sign of sum c_i a^i b^(d-i) for t = a/b, b > 0
    const Integer a = t.get_num();
    const Integer b = t.get_den();
    Integer acc = coeffs_.back().get_num();
    Integer bpow(1);
    for (int i = static_cast<int>(coeffs_.size()) - 2; i >= 0; --i) {
      bpow *= b;
      acc = acc * a + coeffs_[i].get_num() * bpow;
    }
    return sgn(acc);
  }
  return sgn((*this)(t));
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
  std::vector<Rational> cs(std::max(coeffs_.size(), o.coeffs_.size()), Rational(0));
  for (size_t i = 0; i < coeffs_.size(); ++i) cs[i] += coeffs_[i];
  for (size_t i = 0; i < o.coeffs_.size(); ++i) cs[i] += o.coeffs_[i];
  return UniPoly(std::move(cs));
}

UniPoly UniPoly::operator-(const UniPoly& o) const { return *this + (-o); }

UniPoly UniPoly::operator-() const {
  std::vector<Rational> cs = coeffs_;
  for (auto& c : cs) c = -c;
  return UniPoly(std::move(cs));
}

UniPoly UniPoly::scaled(const Rational& c) const {
  std::vector<Rational> cs = coeffs_;
  for (auto& x : cs) x *= c;
  return UniPoly(std::move(cs));
}

UniPoly UniPoly::operator*(const UniPoly& o) const {
  if (is_zero() || o.is_zero()) return UniPoly();
  std::vector<Rational> cs(coeffs_.size() + o.coeffs_.size() - 1, Rational(0));
  for (size_t i = 0; i < coeffs_.size(); ++i)
    for (size_t j = 0; j < o.coeffs_.size(); ++j) cs[i + j] += coeffs_[i] * o.coeffs_[j];
  return UniPoly(std::move(cs));
}

UniPoly UniPoly::derivative() const {
  if (coeffs_.size() <= 1) return UniPoly();
  std::vector<Rational> cs(coeffs_.size() - 1);
  for (size_t i = 1; i < coeffs_.size(); ++i) cs[i - 1] = coeffs_[i] * Rational(static_cast<long>(i));
  return UniPoly(std::move(cs));
}

std::pair<UniPoly, UniPoly> UniPoly::divrem(const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) throw std::invalid_argument("division by zero polynomial");
  std::vector<Rational> rem = a.coeffs_;
  const int db = b.degree();
  if (a.degree() < db) return {UniPoly(), a};
  std::vector<Rational> quo(a.degree() - db + 1, Rational(0));
  for (int k = a.degree(); k >= db; --k) {
    Rational c = rem[k];
    if (sgn(c) == 0) continue;
    Rational f = c / b.coeffs_.back();
    quo[k - db] = f;
    for (int i = 0; i <= db; ++i) rem[k - db + i] -= f * b.coeffs_[i];
    rem[k] = 0;
  }
  return {UniPoly(std::move(quo)), UniPoly(std::move(rem))};
}

bool UniPoly::all_coeffs_integral() const {
  for (const auto& c : coeffs_)
    if (c.get_den() != 1) return false;
  return true;
}

UniPoly UniPoly::primitive_integer() const {
  if (is_zero()) return UniPoly();
  Integer den_lcm(1);
  for (const auto& c : coeffs_) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
  Integer num_gcd(0);
  for (const auto& c : coeffs_) {
    Integer scaled = c.get_num() * (den_lcm / c.get_den());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), scaled.get_mpz_t());
  }
  Rational factor(den_lcm, num_gcd);
  factor.canonicalize();
  return scaled(factor);
}

UniPoly UniPoly::monic() const {
  if (is_zero()) return UniPoly();
  return scaled(Rational(1) / leading());
}

UniPoly pseudo_remainder_positive(const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) throw std::invalid_argument("division by zero polynomial");
  if (!a.all_coeffs_integral() || !b.all_coeffs_integral())
    throw std::invalid_argument("pseudo remainder needs integer coefficients");
  const int db = b.degree();
  if (a.degree() < db) return a;
  std::vector<Integer> rem(a.coeffs().size());
  for (size_t i = 0; i < rem.size(); ++i) rem[i] = a.coeffs()[i].get_num();
  std::vector<Integer> bc(b.coeffs().size());
  for (size_t i = 0; i < bc.size(); ++i) bc[i] = b.coeffs()[i].get_num();
  const Integer lead_abs = abs(bc.back());
  const int lead_sign = sgn(bc.back());
  int dr = static_cast<int>(rem.size()) - 1;
  while (dr >= db) {
    // rem <- rem * |lc(b)| - lc(rem) * sgn(lc(b)) * x^(dr-db) * b
    Integer top = rem[dr];
    if (lead_sign < 0) top = -top;
    for (int i = 0; i <= dr; ++i) rem[i] *= lead_abs;
    for (int i = 0; i <= db; ++i) rem[dr - db + i] -= top * bc[i];
    --dr;
    while (dr >= 0 && rem[dr] == 0) --dr;
  }
  std::vector<Rational> out;
  out.reserve(dr + 1);
  for (int i = 0; i <= dr; ++i) out.emplace_back(rem[i]);
  return UniPoly(std::move(out));
}

UniPoly unipoly_gcd(const UniPoly& a, const UniPoly& b) {
  UniPoly r0 = a.is_zero() ? UniPoly() : a.primitive_integer();
  UniPoly r1 = b.is_zero() ? UniPoly() : b.primitive_integer();
  while (!r1.is_zero()) {
    UniPoly rem = pseudo_remainder_positive(r0, r1);
    r0 = std::move(r1);
    r1 = rem.is_zero() ? UniPoly() : rem.primitive_integer();
  }
  if (r0.is_zero()) return r0;
  if (sgn(r0.leading()) < 0) return -r0;
  return r0;
}

}  // namespace hypercone

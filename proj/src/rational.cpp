#include "hypercone/rational.hpp"

#include <stdexcept>

namespace hypercone {

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  Rational r;
  if (mpq_set_str(r.get_mpq_t(), text.c_str(), 10) != 0)
    throw std::invalid_argument("bad rational literal: " + text);
  if (sgn(Rational(r.get_den())) == 0)
    throw std::invalid_argument("zero denominator: " + text);
  r.canonicalize();
  return r;
}

std::string rational_str(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Integer floor_of(const Rational& r) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return q;
}

Rational rational_from_double(double x) {
  Rational r;
  mpq_set_d(r.get_mpq_t(), x);
  return r;
}

double to_double(const Rational& r) { return mpq_get_d(r.get_mpq_t()); }

Rational best_approx(const Rational& x, const Integer& max_den) {
  if (max_den < 1) throw std::invalid_argument("best_approx: bound must be >= 1");
  if (x.get_den() <= max_den) return x;

  // Convergents p/q of the continued fraction of x; stop before q exceeds the bound,
  // then compare the last convergent against the best semiconvergent.
  Integer p_prev(1), q_prev(0);
  Integer a = floor_of(x);
  Integer p_cur = a, q_cur = 1;
  Rational rem = x - Rational(a);
  while (rem != 0) {
    Rational inv = Rational(1) / rem;
    a = floor_of(inv);
    rem = inv - Rational(a);
    Integer p_next = a * p_cur + p_prev;
    Integer q_next = a * q_cur + q_prev;
    if (q_next > max_den) {
      Integer k = (max_den - q_prev) / q_cur;
      Rational convergent(p_cur, q_cur);
      convergent.canonicalize();
      if (k <= 0) return convergent;
      Rational semi(k * p_cur + p_prev, k * q_cur + q_prev);
      semi.canonicalize();
      Rational d_semi = abs(x - semi);
      Rational d_conv = abs(x - convergent);
      return d_semi < d_conv ? semi : convergent;
    }
    p_prev = p_cur;
    q_prev = q_cur;
    p_cur = p_next;
    q_cur = q_next;
  }
  Rational exact(p_cur, q_cur);
  exact.canonicalize();
  return exact;
}

Integer pow_integer(const Integer& base, unsigned long exp) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

Rational pow2_inv(unsigned k) {
  Integer den(1);
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), k);
  Rational r(Integer(1), den);
  r.canonicalize();
  return r;
}

}  // namespace hypercone

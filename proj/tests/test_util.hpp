#pragma once

#include <string>
#include <vector>

#include "hypercone/poly.hpp"
#include "hypercone/rng.hpp"
#include "hypercone/unipoly.hpp"

namespace hypercone::testutil {

inline Rational Q(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline std::vector<Rational> point(std::initializer_list<long> xs) {
  std::vector<Rational> v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

struct Term {
  long c;
  std::vector<int> e;
};

inline Poly make_poly(int nvars, std::initializer_list<Term> terms) {
  Poly p(nvars);
  for (const auto& t : terms) p.add_term(t.e, Rational(t.c));
  return p;
}

inline Rational small_rational(SplitMix64& rng, long bound = 10) {
  long num = static_cast<long>(rng.next() % (2 * bound + 1)) - bound;
  long den = static_cast<long>(rng.next() % bound) + 1;
  return Q(num, den);
}

// Random polynomial with integer coefficients, up to the given total degree.
inline Poly random_poly(SplitMix64& rng, int nvars, int max_degree, int terms, long coeff_bound = 9) {
  Poly p(nvars);
  for (int t = 0; t < terms; ++t) {
    Monomial m(nvars, 0);
    int budget = static_cast<int>(rng.next() % (max_degree + 1));
    for (int i = 0; i < nvars && budget > 0; ++i) {
      int take = static_cast<int>(rng.next() % (budget + 1));
      m[i] = take;
      budget -= take;
    }
    long c = static_cast<long>(rng.next() % (2 * coeff_bound + 1)) - coeff_bound;
    p.add_term(m, Rational(c));
  }
  return p;
}

// Random homogeneous polynomial of exact degree d (possibly zero).
inline Poly random_homogeneous(SplitMix64& rng, int nvars, int degree, int terms,
                               long coeff_bound = 9) {
  Poly p(nvars);
  for (int t = 0; t < terms; ++t) {
    Monomial m(nvars, 0);
    int budget = degree;
    for (int i = 0; i < nvars - 1; ++i) {
      int take = static_cast<int>(rng.next() % (budget + 1));
      m[i] = take;
      budget -= take;
    }
    m[nvars - 1] = budget;
    long c = static_cast<long>(rng.next() % (2 * coeff_bound + 1)) - coeff_bound;
    p.add_term(m, Rational(c));
  }
  return p;
}

inline UniPoly unipoly(std::initializer_list<long> ascending) {
  return UniPoly::from_ints(ascending);
}

}  // namespace hypercone::testutil

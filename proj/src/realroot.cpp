#include "hypercone/realroot.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace hypercone {

UniPoly squarefree_part(const UniPoly& u) {
  if (u.is_zero()) throw std::invalid_argument("squarefree_part of zero polynomial");
  if (u.degree() == 0) return UniPoly::constant(Rational(1));
  UniPoly g = unipoly_gcd(u, u.derivative());
  UniPoly q = UniPoly::divrem(u, g).first;
  q = q.primitive_integer();
  if (sgn(q.leading()) < 0) q = -q;
  return q;
}

std::vector<std::pair<UniPoly, int>> squarefree_decomposition(const UniPoly& u) {
  if (u.is_zero()) throw std::invalid_argument("squarefree decomposition of zero polynomial");
  std::vector<std::pair<UniPoly, int>> out;
  if (u.degree() == 0) return out;
  // Yun's algorithm on the primitive part.
  UniPoly p = u.primitive_integer();
  UniPoly g = unipoly_gcd(p, p.derivative());
  if (g.degree() == 0) {
    out.emplace_back(squarefree_part(p), 1);
    return out;
  }
  UniPoly w = UniPoly::divrem(p, g).first;
  UniPoly y = UniPoly::divrem(p.derivative(), g).first;
  UniPoly z = y - w.derivative();
  int i = 1;
  while (w.degree() > 0) {
    UniPoly fi = unipoly_gcd(w, z);
    if (fi.degree() > 0) out.emplace_back(fi.primitive_integer(), i);
    w = UniPoly::divrem(w, fi).first;
    y = UniPoly::divrem(z, fi).first;
    z = y - w.derivative();
    ++i;
  }
  return out;
}

SturmChain sturm_sequence(const UniPoly& u) {
  if (u.is_zero() || u.degree() == 0)
    throw std::invalid_argument("sturm_sequence needs a nonconstant polynomial");
  SturmChain chain;
  chain.seq.push_back(u.primitive_integer());
  chain.seq.push_back(chain.seq.front().derivative());  // content stripping is for remainders
  while (!chain.seq.back().is_zero() && chain.seq.back().degree() > 0) {
    const UniPoly& a = chain.seq[chain.seq.size() - 2];
    const UniPoly& b = chain.seq.back();
    UniPoly rem = pseudo_remainder_positive(a, b);
    if (rem.is_zero()) break;  // input was not squarefree; chain ends at the gcd level
    chain.seq.push_back((-rem).primitive_integer());
  }
  return chain;
}

namespace {

int count_variations(const std::vector<int>& signs) {
  int v = 0, prev = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++v;
    prev = s;
  }
  return v;
}

}  // namespace

int sign_variations_at(const SturmChain& chain, const Rational& x) {
  std::vector<int> signs;
  signs.reserve(chain.seq.size());
  for (const auto& p : chain.seq) signs.push_back(p.sign_at(x));
  return count_variations(signs);
}

int sign_variations_neg_inf(const SturmChain& chain) {
  std::vector<int> signs;
  signs.reserve(chain.seq.size());
  for (const auto& p : chain.seq) {
    if (p.is_zero()) {
      signs.push_back(0);
      continue;
    }
    int s = sgn(p.leading());
    if (p.degree() % 2 == 1) s = -s;
    signs.push_back(s);
  }
  return count_variations(signs);
}

int sign_variations_pos_inf(const SturmChain& chain) {
  std::vector<int> signs;
  signs.reserve(chain.seq.size());
  for (const auto& p : chain.seq) signs.push_back(p.is_zero() ? 0 : sgn(p.leading()));
  return count_variations(signs);
}

namespace {

// Distinct roots of squarefree sf in the open interval; endpoints where sf
// vanishes are divided out first so the classical count applies.
int count_open(UniPoly sf, const std::optional<Rational>& lo, const std::optional<Rational>& hi) {
  if (lo && sf.sign_at(*lo) == 0) {
    UniPoly lin(std::vector<Rational>{-*lo, Rational(1)});
    sf = UniPoly::divrem(sf, lin).first;
  }
  if (hi && sf.sign_at(*hi) == 0) {
    UniPoly lin(std::vector<Rational>{-*hi, Rational(1)});
    sf = UniPoly::divrem(sf, lin).first;
  }
  if (sf.degree() <= 0) return 0;
  SturmChain chain = sturm_sequence(sf.primitive_integer());
  int va = lo ? sign_variations_at(chain, *lo) : sign_variations_neg_inf(chain);
  int vb = hi ? sign_variations_at(chain, *hi) : sign_variations_pos_inf(chain);
  return va - vb;
}

}  // namespace

int count_real_roots(const UniPoly& u, const Interval& iv) {
  if (u.is_zero()) throw std::invalid_argument("count_real_roots of zero polynomial");
  if (iv.lo && iv.hi && *iv.lo > *iv.hi) throw std::invalid_argument("malformed interval");
  UniPoly sf = squarefree_part(u);
  if (iv.lo && iv.hi && *iv.lo == *iv.hi)
    return (iv.include_lo && iv.include_hi && sf.sign_at(*iv.lo) == 0) ? 1 : 0;
  int extra = 0;
  if (iv.lo && iv.include_lo && sf.sign_at(*iv.lo) == 0) ++extra;
  if (iv.hi && iv.include_hi && sf.sign_at(*iv.hi) == 0) ++extra;
  return extra + count_open(sf, iv.lo, iv.hi);
}

bool is_real_rooted(const UniPoly& u) {
  if (u.is_zero()) throw std::invalid_argument("is_real_rooted of zero polynomial");
  UniPoly sf = squarefree_part(u);
  if (sf.degree() <= 0) return true;
  return count_real_roots(sf, Interval::whole()) == sf.degree();
}

bool no_positive_root(const UniPoly& u) {
  if (u.is_zero()) throw std::invalid_argument("no_positive_root of zero polynomial");
  return count_real_roots(u, Interval::above(Rational(0))) == 0;
}

CoeffTest nonneg_coeff_shortcut(const UniPoly& u) {
  if (u.is_zero()) throw std::invalid_argument("nonneg_coeff_shortcut of zero polynomial");
  if (sgn(u.leading()) <= 0)
    throw std::invalid_argument("nonneg_coeff_shortcut needs a positive leading coefficient");
  for (const auto& c : u.coeffs())
    if (sgn(c) < 0) return CoeffTest::inconclusive;
  return CoeffTest::all_nonnegative;
}

Rational cauchy_root_bound(const UniPoly& u) {
  if (u.is_zero()) throw std::invalid_argument("cauchy bound of zero polynomial");
  Rational m(0);
  const Rational& lead = u.leading();
  for (int i = 0; i < u.degree(); ++i) {
    Rational r = abs(u.coeff(i) / lead);
    if (r > m) m = r;
  }
  return m + 1;
}

namespace {

struct IsolationState {
  UniPoly sf;  // current squarefree polynomial, exact roots found so far removed
  SturmChain chain;
  std::vector<Rational> exact_roots;
  std::vector<std::pair<Rational, Rational>> brackets;  // open intervals with one root
};

// Splits [lo,hi] (no root at either end) until every piece holds one root.
void isolate_range(IsolationState& st, const Rational& lo, const Rational& hi, int nroots) {
  if (nroots == 0) return;
  if (nroots == 1) {
    st.brackets.emplace_back(lo, hi);
    return;
  }
  Rational mid = (lo + hi) / 2;
  if (st.sf.sign_at(mid) == 0) {
    st.exact_roots.push_back(mid);
    UniPoly lin(std::vector<Rational>{-mid, Rational(1)});
    st.sf = UniPoly::divrem(st.sf, lin).first.primitive_integer();
    if (st.sf.degree() > 0) st.chain = sturm_sequence(st.sf);
    int left = st.sf.degree() > 0
                   ? sign_variations_at(st.chain, lo) - sign_variations_at(st.chain, mid)
                   : 0;
    int right = st.sf.degree() > 0
                    ? sign_variations_at(st.chain, mid) - sign_variations_at(st.chain, hi)
                    : 0;
    isolate_range(st, lo, mid, left);
    isolate_range(st, mid, hi, right);
    return;
  }
  int left = sign_variations_at(st.chain, lo) - sign_variations_at(st.chain, mid);
  isolate_range(st, lo, mid, left);
  isolate_range(st, mid, hi, nroots - left);
}

}  // namespace

std::vector<RootInterval> isolate_real_roots(const UniPoly& u, unsigned refine_log2) {
  if (u.is_zero()) throw std::invalid_argument("isolate_real_roots of zero polynomial");
  std::vector<RootInterval> out;
  UniPoly sf = squarefree_part(u);
  if (sf.degree() <= 0) return out;

  IsolationState st{sf, sturm_sequence(sf), {}, {}};
  Rational bound = cauchy_root_bound(sf);
  int total = sign_variations_at(st.chain, -bound) - sign_variations_at(st.chain, bound);
  isolate_range(st, -bound, bound, total);

  // st.sf has the exact roots divided out; every bracket holds exactly one of
  // its roots and no bracket endpoint is a root, so refine against it.
  const Rational width_target = pow2_inv(refine_log2);
  if (!st.brackets.empty()) {
    SturmChain chain = sturm_sequence(st.sf);
    for (auto& [lo, hi] : st.brackets) {
      Rational a = lo, b = hi;
      while (b - a > width_target) {
        Rational mid = (a + b) / 2;
        if (st.sf.sign_at(mid) == 0) {
          a = b = mid;
          break;
        }
        if (sign_variations_at(chain, a) - sign_variations_at(chain, mid) >= 1)
          b = mid;
        else
          a = mid;
      }
      out.push_back(RootInterval{a, b, 0});
    }
  }
  for (const auto& r : st.exact_roots) out.push_back(RootInterval{r, r, 0});

  // Multiplicities: each isolated root belongs to exactly one Yun factor.
  auto factors = squarefree_decomposition(u);
  for (auto& ri : out) {
    int mult = 0;
    for (const auto& [f, m] : factors) {
      if (f.degree() <= 0) continue;
      if (ri.lo == ri.hi) {
        if (f.sign_at(ri.lo) == 0) mult = m;
      } else if (count_real_roots(f, Interval::open(ri.lo, ri.hi)) == 1) {
        mult = m;
      }
    }
    if (mult == 0) throw std::logic_error("root multiplicity resolution failed");
    ri.multiplicity = mult;
  }
  std::sort(out.begin(), out.end(),
            [](const RootInterval& a, const RootInterval& b) { return a.lo < b.lo; });
  return out;
}

LineRootOracle::LineRootOracle(const UniPoly& u) : sf_(squarefree_part(u)) {
  if (sf_.degree() > 0) {
    chain_ = sturm_sequence(sf_);
    distinct_roots_ = sign_variations_neg_inf(chain_) - sign_variations_pos_inf(chain_);
  }
}

namespace {

// Durand-Kerner in doubles; only a hint, every consequence is verified with
// exact Sturm counts afterwards. Roots are rescaled to O(1) internally via
// base-2 exponents so huge integer coefficients stay representable.
bool dk_extreme_estimate(const UniPoly& sf, bool largest, double& out) {
  const int d = sf.degree();
  if (d < 1) return false;
  std::vector<double> mant(d + 1, 0.0);
  std::vector<double> lg(d + 1, 0.0);  // log2 |coeff|, mantissa sign kept separately
  for (int i = 0; i <= d; ++i) {
    Rational ci = sf.coeff(i);
    if (sgn(ci) == 0) continue;
    long en = 0, ed = 0;
    double mn = mpz_get_d_2exp(&en, ci.get_num().get_mpz_t());
    double md = mpz_get_d_2exp(&ed, ci.get_den().get_mpz_t());
    mant[i] = mn;  // sign carrier
    lg[i] = std::log2(std::abs(mn)) - std::log2(md) + static_cast<double>(en - ed);
  }
  // Root scale estimate: max of (|c_i/c_d|)^(1/(d-i)).
  double log2_scale = 0;
  for (int i = 0; i < d; ++i) {
    if (mant[i] == 0) continue;
    log2_scale = std::max(log2_scale, (lg[i] - lg[d]) / (d - i));
  }
  std::vector<double> c(d + 1, 0.0);
  for (int i = 0; i <= d; ++i) {
    if (mant[i] == 0) continue;
    double e2 = lg[i] - lg[d] - (d - i) * log2_scale;
    c[i] = (mant[i] < 0 ? -1.0 : 1.0) * std::exp2(e2);
    if (!std::isfinite(c[i])) return false;
  }
  const double root_scale = std::exp2(log2_scale);
  if (!std::isfinite(root_scale)) return false;
  std::vector<std::complex<double>> z(d);
  std::complex<double> seed(0.4, 0.9);
  z[0] = seed;
  for (int i = 1; i < d; ++i) z[i] = z[i - 1] * seed;
  for (int it = 0; it < 80; ++it) {
    double moved = 0;
    for (int i = 0; i < d; ++i) {
      std::complex<double> val(c[d], 0);
      for (int k = d - 1; k >= 0; --k) val = val * z[i] + c[k];
      std::complex<double> den(1, 0);
      for (int j = 0; j < d; ++j)
        if (j != i) den *= (z[i] - z[j]);
      if (den == std::complex<double>(0, 0)) return false;
      std::complex<double> delta = val / den;
      z[i] -= delta;
      moved = std::max(moved, std::abs(delta));
    }
    if (moved < 1e-13) break;
  }
  double spread = 1;
  for (auto& r : z) spread = std::max(spread, std::abs(r));
  bool found = false;
  double best = 0;
  for (auto& r : z) {
    if (std::abs(r.imag()) > 1e-7 * spread) continue;
    if (!found || (largest ? r.real() > best : r.real() < best)) {
      best = r.real();
      found = true;
    }
  }
  if (!found) return false;
  out = best * root_scale;
  return std::isfinite(out);
}

}  // namespace

// Number of distinct roots at or beyond x (>= x for largest, <= x otherwise),
// clamped at 1 when x itself is a root.
int LineRootOracle::count_beyond(const Rational& x, bool largest) const {
  if (sf_.sign_at(x) == 0) return 1;
  return largest ? sign_variations_at(chain_, x) - sign_variations_pos_inf(chain_)
                 : sign_variations_neg_inf(chain_) - sign_variations_at(chain_, x);
}

Rational LineRootOracle::bisect(unsigned tol_log2, bool largest) const {
  if (sf_.degree() <= 0 || distinct_roots_ == 0) throw std::invalid_argument("no real roots");

  // Fast path: double estimate, then exact certification of a dyadic bracket.
  double est;
  if (dk_extreme_estimate(sf_, largest, est) && std::abs(est) < 1e15) {
    const unsigned k = tol_log2 + 1;
    const Rational step = pow2_inv(k);
    const double stepd = to_double(step);
    double based = largest ? std::ceil(est / stepd) : std::floor(est / stepd);
    Integer base;
    mpz_set_d(base.get_mpz_t(), based);
    const long widen[] = {1, 2, 8, 64, 4096};
    for (long off : widen) {
      Rational cand = (largest ? Rational(base + off) : Rational(base - off)) * step;
      if (count_beyond(cand, largest) != 0) continue;  // not yet past the extreme root
      Rational inner = largest ? Rational(cand - step - step) : Rational(cand + step + step);
      if (count_beyond(inner, largest) >= 1) return cand;  // extreme root within 2^-tol
      break;  // estimate too far out; use the plain bisection
    }
  }

  Rational bound = cauchy_root_bound(sf_);
  Rational lo = -bound, hi = bound;
  const Rational width_target = pow2_inv(tol_log2);
  while (hi - lo > width_target) {
    Rational mid = (lo + hi) / 2;
    if (sf_.sign_at(mid) == 0) {
      // mid is a root; decide whether a more extreme one remains.
      UniPoly lin(std::vector<Rational>{-mid, Rational(1)});
      UniPoly rest = UniPoly::divrem(sf_, lin).first;
      int beyond = 0;
      if (rest.degree() > 0) {
        SturmChain rc = sturm_sequence(rest.primitive_integer());
        beyond = largest ? sign_variations_at(rc, mid) - sign_variations_pos_inf(rc)
                         : sign_variations_neg_inf(rc) - sign_variations_at(rc, mid);
      }
      if (beyond == 0) return mid;
      if (largest)
        lo = mid;
      else
        hi = mid;
      continue;
    }
    int beyond = largest ? sign_variations_at(chain_, mid) - sign_variations_pos_inf(chain_)
                         : sign_variations_neg_inf(chain_) - sign_variations_at(chain_, mid);
    if (beyond > 0) {
      if (largest)
        lo = mid;
      else
        hi = mid;
    } else {
      if (largest)
        hi = mid;
      else
        lo = mid;
    }
  }
  return largest ? hi : lo;
}

Rational LineRootOracle::largest_upper(unsigned tol_log2) const { return bisect(tol_log2, true); }

Rational LineRootOracle::smallest_lower(unsigned tol_log2) const { return bisect(tol_log2, false); }

Rational largest_root_upper_bound(const UniPoly& u, unsigned tol_log2) {
  return LineRootOracle(u).largest_upper(tol_log2);
}

Rational smallest_root_lower_bound(const UniPoly& u, unsigned tol_log2) {
  return LineRootOracle(u).smallest_lower(tol_log2);
}

}  // namespace hypercone

#include "hypercone/poly.hpp"

#include <numeric>
#include <stdexcept>

namespace hypercone {

int total_degree(const Monomial& m) { return std::accumulate(m.begin(), m.end(), 0); }

bool GrevlexGreater::operator()(const Monomial& a, const Monomial& b) const {
  int da = total_degree(a), db = total_degree(b);
  if (da != db) return da > db;
  // a > b iff the last nonzero entry of a - b is negative
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

Poly::Poly(int nvars) : nvars_(nvars) {
  if (nvars < 0) throw std::invalid_argument("negative variable count");
}

Poly Poly::constant(int nvars, const Rational& c) {
  Poly p(nvars);
  p.add_term(Monomial(nvars, 0), c);
  return p;
}

Poly Poly::variable(int nvars, int var) {
  if (var < 0 || var >= nvars) throw std::invalid_argument("variable index out of range");
  Monomial m(nvars, 0);
  m[var] = 1;
  return monomial(nvars, std::move(m), Rational(1));
}

Poly Poly::monomial(int nvars, Monomial exps, const Rational& c) {
  Poly p(nvars);
  p.add_term(exps, c);
  return p;
}

Rational Poly::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Poly::add_term(const Monomial& exps, const Rational& c) {
  if (static_cast<int>(exps.size()) != nvars_)
    throw std::invalid_argument("exponent vector length mismatch");
  for (int e : exps)
    if (e < 0) throw std::invalid_argument("negative exponent");
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.emplace(exps, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

void Poly::check_same_ring(const Poly& o) const {
  if (nvars_ != o.nvars_) throw std::invalid_argument("nvars mismatch");
}

Poly& Poly::operator+=(const Poly& o) {
  check_same_ring(o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  check_same_ring(o);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly Poly::operator+(const Poly& o) const {
  Poly r = *this;
  r += o;
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  Poly r = *this;
  r -= o;
  return r;
}

Poly Poly::operator-() const {
  Poly r(nvars_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

Poly Poly::scaled(const Rational& c) const {
  Poly r(nvars_);
  if (sgn(c) == 0) return r;
  for (const auto& [m, v] : terms_) r.terms_.emplace(m, v * c);
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  check_same_ring(o);
  Poly r(nvars_);
  Monomial m(nvars_);
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) {
      for (int i = 0; i < nvars_; ++i) m[i] = ma[i] + mb[i];
      Rational prod = ca * cb;
      auto [it, inserted] = r.terms_.emplace(m, prod);
      if (!inserted) {
        it->second += prod;
        if (sgn(it->second) == 0) r.terms_.erase(it);
      }
    }
  }
  return r;
}

Poly Poly::derivative(int var) const {
  if (var < 0 || var >= nvars_) throw std::invalid_argument("variable index out of range");
  Poly r(nvars_);
  for (const auto& [m, c] : terms_) {
    if (m[var] == 0) continue;
    Monomial d = m;
    d[var] -= 1;
    r.terms_.emplace(std::move(d), c * Rational(m[var]));
  }
  return r;
}

Rational Poly::operator()(std::span<const Rational> point) const {
  if (static_cast<int>(point.size()) != nvars_) throw std::invalid_argument("dimension mismatch");
  // Cache powers per variable up to the maximum exponent used.
  std::vector<std::vector<Rational>> pows(nvars_);
  for (int i = 0; i < nvars_; ++i) pows[i].push_back(Rational(1));
  Rational acc(0);
  for (const auto& [m, c] : terms_) {
    Rational term = c;
    for (int i = 0; i < nvars_; ++i) {
      while (static_cast<int>(pows[i].size()) <= m[i]) pows[i].push_back(pows[i].back() * point[i]);
      if (m[i] > 0) term *= pows[i][m[i]];
    }
    acc += term;
  }
  return acc;
}

int Poly::total_deg() const {
  if (terms_.empty()) return -1;
  return total_degree(terms_.begin()->first);  // leading term has the top degree
}

Homogeneity homogeneity(const Poly& p) {
  if (p.is_zero()) return {Homogeneity::Kind::zero, 0};
  int d = total_degree(p.terms().begin()->first);
  for (const auto& [m, c] : p.terms())
    if (total_degree(m) != d) return {Homogeneity::Kind::not_homogeneous, 0};
  return {Homogeneity::Kind::homogeneous, d};
}

bool is_homogeneous_of_degree(const Poly& p, int d) {
  Homogeneity h = homogeneity(p);
  if (h.kind == Homogeneity::Kind::zero) return true;
  return h.kind == Homogeneity::Kind::homogeneous && h.degree == d;
}

UniPoly restrict_to_line(const Poly& h, std::span<const Rational> e, std::span<const Rational> v) {
  const int n = h.nvars();
  if (static_cast<int>(e.size()) != n || static_cast<int>(v.size()) != n)
    throw std::invalid_argument("dimension mismatch");
  // Power table: pows[i][a] = coefficients of (t e_i + v_i)^a, shared by terms.
  std::vector<int> max_exp(n, 0);
  for (const auto& [m, c] : h.terms())
    for (int i = 0; i < n; ++i) max_exp[i] = std::max(max_exp[i], m[i]);
  std::vector<std::vector<std::vector<Rational>>> pows(n);
  for (int i = 0; i < n; ++i) {
    pows[i].push_back({Rational(1)});
    for (int a = 1; a <= max_exp[i]; ++a) {
      const auto& prev = pows[i].back();
      std::vector<Rational> cur(prev.size() + 1, Rational(0));
      for (size_t k = 0; k < prev.size(); ++k) {
        cur[k] += prev[k] * v[i];
        cur[k + 1] += prev[k] * e[i];
      }
      pows[i].push_back(std::move(cur));
    }
  }
  std::vector<Rational> acc(static_cast<size_t>(std::max(h.total_deg(), 0)) + 1, Rational(0));
  std::vector<Rational> term, next;
  for (const auto& [m, c] : h.terms()) {
    term.assign(1, c);
    for (int i = 0; i < n; ++i) {
      if (m[i] == 0) continue;
      const auto& factor = pows[i][m[i]];
      next.assign(term.size() + factor.size() - 1, Rational(0));
      for (size_t k = 0; k < term.size(); ++k) {
        if (sgn(term[k]) == 0) continue;
        for (size_t j = 0; j < factor.size(); ++j) next[k + j] += term[k] * factor[j];
      }
      term.swap(next);
    }
    for (size_t k = 0; k < term.size(); ++k) acc[k] += term[k];
  }
  return UniPoly(std::move(acc));
}

std::optional<Poly> divide_exact(const Poly& a, const Poly& b) {
  if (a.nvars() != b.nvars()) throw std::invalid_argument("nvars mismatch");
  if (b.is_zero()) throw std::invalid_argument("division by zero polynomial");
  Poly quotient(a.nvars());
  Poly rem = a;
  const auto& [lead_m, lead_c] = *b.terms().begin();
  const int n = a.nvars();
  while (!rem.is_zero()) {
    const auto& [rm, rc] = *rem.terms().begin();
    Monomial q(n);
    for (int i = 0; i < n; ++i) {
      q[i] = rm[i] - lead_m[i];
      if (q[i] < 0) return std::nullopt;
    }
    Poly t = Poly::monomial(n, std::move(q), rc / lead_c);
    quotient += t;
    rem -= t * b;
  }
  return quotient;
}

bool uniform_nvars(const PolyVec& v) {
  if (v.empty()) return false;
  for (const auto& p : v)
    if (p.nvars() != v.front().nvars()) return false;
  return true;
}

bool homogeneous_entries(const PolyVec& v, int degree) {
  for (const auto& p : v)
    if (!is_homogeneous_of_degree(p, degree)) return false;
  return true;
}

Poly directional_derivative(const Poly& h, std::span<const Rational> a) {
  if (static_cast<int>(a.size()) != h.nvars()) throw std::invalid_argument("dimension mismatch");
  Poly r(h.nvars());
  for (int i = 0; i < h.nvars(); ++i) {
    if (sgn(a[i]) == 0) continue;
    r += h.derivative(i).scaled(a[i]);
  }
  return r;
}

}  // namespace hypercone

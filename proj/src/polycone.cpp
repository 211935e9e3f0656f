#include "hypercone/polycone.hpp"

#include <algorithm>
#include <stdexcept>

namespace hypercone {

bool LinForm::is_zero() const {
  for (const auto& c : coeffs)
    if (sgn(c) != 0) return false;
  return true;
}

namespace {

// Positive rational factor making the entries primitive integers.
std::vector<Rational> primitive_scale(std::span<const Rational> v) {
  Integer den_lcm(1);
  for (const auto& c : v) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
  Integer num_gcd(0);
  for (const auto& c : v) {
    Integer scaled = c.get_num() * (den_lcm / c.get_den());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), scaled.get_mpz_t());
  }
  std::vector<Rational> out(v.begin(), v.end());
  if (num_gcd == 0) return out;  // zero vector
  Rational factor(den_lcm, num_gcd);
  factor.canonicalize();
  for (auto& c : out) c *= factor;
  return out;
}

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  Rational acc(0);
  for (size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

bool lex_less(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return a.size() < b.size();
}

// Rank of a set of rational vectors, by Gaussian elimination.
int rank_of(std::vector<std::vector<Rational>> rows) {
  int rank = 0;
  const int n = rows.empty() ? 0 : static_cast<int>(rows.front().size());
  size_t r = 0;
  for (int c = 0; c < n && r < rows.size(); ++c) {
    size_t pivot = r;
    while (pivot < rows.size() && sgn(rows[pivot][c]) == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[r]);
    for (size_t i = r + 1; i < rows.size(); ++i) {
      if (sgn(rows[i][c]) == 0) continue;
      Rational f = rows[i][c] / rows[r][c];
      for (int j = c; j < n; ++j) rows[i][j] -= f * rows[r][j];
    }
    ++r;
    ++rank;
  }
  return rank;
}

}  // namespace

LinForm canonicalize_form(const LinForm& f) {
  if (f.is_zero()) return f;
  return LinForm{primitive_scale(f.coeffs)};
}

Rational apply_form(const LinForm& f, std::span<const Rational> v) {
  if (f.coeffs.size() != v.size()) throw std::invalid_argument("dimension mismatch");
  return dot(f.coeffs, v);
}

std::vector<Rational> canonicalize_ray(std::span<const Rational> r) {
  std::vector<Rational> out = primitive_scale(r);
  bool zero = true;
  for (const auto& c : out)
    if (sgn(c) != 0) zero = false;
  if (zero) throw std::invalid_argument("zero ray");
  return out;
}

RayCone RayCone::make(int dim, std::vector<std::vector<Rational>> rays) {
  if (dim < 1) throw std::invalid_argument("cone dimension must be positive");
  RayCone c;
  c.dim = dim;
  c.rays.reserve(rays.size());
  for (auto& r : rays) {
    if (static_cast<int>(r.size()) != dim) throw std::invalid_argument("ray dimension mismatch");
    c.rays.push_back(canonicalize_ray(r));
  }
  return c;
}

namespace {

// Incremental double description state in the dual space: the cone of all
// forms nonnegative on the inequalities processed so far, kept as a lineality
// basis plus extreme rays of the pointed part.
struct DDState {
  int n;
  std::vector<std::vector<Rational>> lin;
  std::vector<std::vector<Rational>> rays;
  std::vector<std::vector<Rational>> processed;

  bool adjacent(const std::vector<Rational>& u, const std::vector<Rational>& w) const {
    std::vector<std::vector<Rational>> active;
    for (const auto& p : processed)
      if (sgn(dot(p, u)) == 0 && sgn(dot(p, w)) == 0) active.push_back(p);
    int pointed_dim = n - static_cast<int>(lin.size());
    if (pointed_dim < 2) return false;
    return rank_of(std::move(active)) == pointed_dim - 2;
  }

  void insert(const std::vector<Rational>& a) {
    // If some lineality direction sees a, pivot it out.
    int pivot = -1;
    for (size_t i = 0; i < lin.size(); ++i) {
      if (sgn(dot(a, lin[i])) != 0) {
        pivot = static_cast<int>(i);
        break;
      }
    }
    if (pivot >= 0) {
      std::vector<Rational> l0 = lin[pivot];
      Rational al0 = dot(a, l0);
      if (sgn(al0) < 0) {
        for (auto& c : l0) c = -c;
        al0 = -al0;
      }
      std::vector<std::vector<Rational>> nlin;
      for (size_t i = 0; i < lin.size(); ++i) {
        if (static_cast<int>(i) == pivot) continue;
        Rational f = dot(a, lin[i]) / al0;
        std::vector<Rational> l = lin[i];
        for (int j = 0; j < n; ++j) l[j] -= f * l0[j];
        nlin.push_back(primitive_scale(l));
      }
      std::vector<std::vector<Rational>> nrays;
      for (const auto& r : rays) {
        Rational f = dot(a, r) / al0;
        std::vector<Rational> v = r;
        for (int j = 0; j < n; ++j) v[j] -= f * l0[j];
        nrays.push_back(canonicalize_ray(v));
      }
      nrays.push_back(canonicalize_ray(l0));
      lin = std::move(nlin);
      rays = std::move(nrays);
      dedup();
      processed.push_back(a);
      return;
    }
    // Classic DD step: split by sign, combine adjacent pairs across the hyperplane.
    std::vector<std::vector<Rational>> pos, zero, neg;
    for (const auto& r : rays) {
      int s = sgn(dot(a, r));
      (s > 0 ? pos : s == 0 ? zero : neg).push_back(r);
    }
    if (!neg.empty()) {
      std::vector<std::vector<Rational>> news;
      for (const auto& u : pos)
        for (const auto& w : neg) {
          if (!adjacent(u, w)) continue;
          Rational au = dot(a, u), aw = dot(a, w);
          std::vector<Rational> v(n);
          for (int j = 0; j < n; ++j) v[j] = au * w[j] - aw * u[j];
          news.push_back(canonicalize_ray(v));
        }
      rays.clear();
      for (auto& r : pos) rays.push_back(std::move(r));
      for (auto& r : zero) rays.push_back(std::move(r));
      for (auto& r : news) rays.push_back(std::move(r));
      dedup();
    }
    processed.push_back(a);
  }

  void dedup() {
    std::sort(rays.begin(), rays.end(), lex_less);
    rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
  }
};

}  // namespace

std::vector<LinForm> dual_cone(const RayCone& c) {
  if (c.dim > 12) throw std::invalid_argument("dual_cone: dimension bound exceeded");
  const int n = c.dim;

  // Deterministic insertion order: canonical rays, sorted, unique.
  std::vector<std::vector<Rational>> ineqs = c.rays;
  std::sort(ineqs.begin(), ineqs.end(), lex_less);
  ineqs.erase(std::unique(ineqs.begin(), ineqs.end()), ineqs.end());

  DDState st;
  st.n = n;
  for (int i = 0; i < n; ++i) {
    std::vector<Rational> e(n, Rational(0));
    e[i] = 1;
    st.lin.push_back(std::move(e));
  }
  for (const auto& a : ineqs) st.insert(a);

  std::vector<std::vector<Rational>> gens = st.rays;
  for (const auto& l : st.lin) {
    gens.push_back(l);
    std::vector<Rational> neg = l;
    for (auto& x : neg) x = -x;
    gens.push_back(primitive_scale(neg));
  }
  std::sort(gens.begin(), gens.end(), lex_less);
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());

  std::vector<LinForm> out;
  out.reserve(gens.size());
  for (auto& g : gens) out.push_back(LinForm{std::move(g)});
  return out;
}

bool member(std::span<const Rational> v, const std::vector<LinForm>& dual) {
  for (const auto& f : dual)
    if (sgn(apply_form(f, v)) < 0) return false;
  return true;
}

}  // namespace hypercone

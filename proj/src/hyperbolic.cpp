#include "hypercone/hyperbolic.hpp"

#include <mutex>
#include <stdexcept>

#include "hypercone/parallel.hpp"
#include "hypercone/rng.hpp"

namespace hypercone {

HyperbolicInstance HyperbolicInstance::make(Poly h, std::vector<Rational> e) {
  if (static_cast<int>(e.size()) != h.nvars()) throw std::invalid_argument("dimension mismatch");
  Homogeneity hom = homogeneity(h);
  if (hom.kind != Homogeneity::Kind::homogeneous)
    throw std::invalid_argument("h must be homogeneous and nonzero");
  if (sgn(h(e)) == 0) throw std::invalid_argument("h vanishes at e");
  int d = hom.degree;
  return HyperbolicInstance{std::move(h), std::move(e), d};
}

bool in_cone(const HyperbolicInstance& H, std::span<const Rational> v) {
  if (v.size() != H.e.size()) throw std::invalid_argument("dimension mismatch");
  return no_positive_root(restrict_to_line(H.h, H.e, v));
}

SampleReport check_hyperbolic_sampled(const HyperbolicInstance& H, uint64_t n, uint64_t seed) {
  SampleReport report;
  report.samples = n;
  report.seed = seed;
  std::vector<std::vector<Rational>> found(n);
  std::vector<uint8_t> bad(n, 0);
  parallel_for(n, [&](uint64_t i) {
    SplitMix64 rng = sample_stream(seed, i);
    std::vector<Rational> w = random_direction(rng, H.h.nvars());
    UniPoly u = restrict_to_line(H.h, H.e, w);
    if (!is_real_rooted(u)) {
      bad[i] = 1;
      found[i] = std::move(w);
    }
  });
  for (uint64_t i = 0; i < n; ++i)
    if (bad[i]) report.failures.push_back(std::move(found[i]));
  return report;
}

LineRoots eigenvalues_along(const HyperbolicInstance& H, std::span<const Rational> v) {
  UniPoly u = restrict_to_line(H.h, H.e, v);
  if (u.is_zero()) throw std::invalid_argument("restriction vanishes identically");
  LineRoots out;
  out.real_rooted = is_real_rooted(u);
  if (out.real_rooted) out.roots = isolate_real_roots(u, 20);
  return out;
}

std::vector<Rational> boundary_shift(const HyperbolicInstance& H, std::span<const Rational> w,
                                     unsigned tol_log2) {
  UniPoly u = restrict_to_line(H.h, H.e, w);
  if (u.is_zero() || !is_real_rooted(u))
    throw std::domain_error("boundary_shift: direction is not real-rooted");
  Rational mu = largest_root_upper_bound(u, tol_log2);
  std::vector<Rational> v(w.begin(), w.end());
  for (size_t i = 0; i < v.size(); ++i) v[i] += mu * H.e[i];
  return v;
}

namespace {

// Scale so the largest |component| is 1; cone membership is scale-invariant
// and this keeps evaluation magnitudes comparable across samples.
void normalize_max_one(std::vector<Rational>& v) {
  Rational m(0);
  for (const auto& c : v) {
    Rational a = abs(c);
    if (a > m) m = a;
  }
  if (sgn(m) == 0) return;
  for (auto& c : v) c /= m;
}

std::vector<Rational> one_cone_sample(std::span<const HyperbolicInstance> hs, uint64_t seed,
                                      uint64_t index, bool near_boundary) {
  const HyperbolicInstance& head = hs.front();
  const int n = head.h.nvars();
  SplitMix64 rng = sample_stream(seed, index);
  for (int attempt = 0; attempt < 16; ++attempt) {
    std::vector<Rational> w = random_direction(rng, n);
    bool all_zero = true;
    for (const auto& c : w)
      if (sgn(c) != 0) all_zero = false;
    if (all_zero) continue;
    normalize_max_one(w);  // keeps the restricted roots O(1)
    bool ok = true;
    Rational mu, span_max, span_min;
    bool have_span = false;
    for (const auto& H : hs) {
      LineRootOracle oracle(restrict_to_line(H.h, H.e, w));
      if (!oracle.real_rooted() || oracle.distinct_real_roots() == 0) {
        ok = false;
        break;
      }
      Rational hi = oracle.largest_upper(near_boundary ? 40 : 20);
      if (!have_span || hi > mu) mu = hi;
      if (!near_boundary) {
        Rational lo = oracle.smallest_lower(10);
        if (!have_span || hi > span_max) span_max = hi;
        if (!have_span || lo < span_min) span_min = lo;
      }
      have_span = true;
    }
    if (!ok) continue;
    if (!near_boundary) mu += (span_max - span_min) / 16;
    std::vector<Rational> v = w;
    for (int i = 0; i < n; ++i) v[i] += mu * head.e[i];
    normalize_max_one(v);
    bool inside = true;
    for (const auto& H : hs)
      if (!in_cone(H, v)) {
        inside = false;
        break;
      }
    if (inside) return v;
  }
  throw std::logic_error("cone sampling failed repeatedly; instance is likely not hyperbolic");
}

}  // namespace

std::vector<std::vector<Rational>> sample_intersection_points(
    std::span<const HyperbolicInstance> hs, uint64_t n, uint64_t seed, SampleMode mode) {
  if (hs.empty()) throw std::invalid_argument("no instances");
  for (const auto& H : hs)
    if (H.e != hs.front().e) throw std::invalid_argument("instances must share e");
  std::vector<std::vector<Rational>> pts(n);
  parallel_for(n, [&](uint64_t i) {
    bool nb = mode == SampleMode::near_boundary || (mode == SampleMode::mixed && i % 2 == 1);
    pts[i] = one_cone_sample(hs, seed, i, nb);
  });
  return pts;
}

std::vector<std::vector<Rational>> sample_cone_points(const HyperbolicInstance& H, uint64_t n,
                                                      uint64_t seed, SampleMode mode) {
  return sample_intersection_points(std::span(&H, 1), n, seed, mode);
}

ConeMembership membership_of(const HyperbolicInstance& H) {
  return ConeMembership{"hyperbolicity-cone",
                        [H](std::span<const Rational> v) { return in_cone(H, v); }};
}

ConeMembership membership_of(const RayCone& c, std::vector<LinForm> dual) {
  (void)c;
  return ConeMembership{"polyhedral-cone", [dual = std::move(dual)](std::span<const Rational> v) {
                          return member(v, dual);
                        }};
}

ConeMembership membership_of(const SymPencil& p) {
  return ConeMembership{"spectrahedral-cone", [p](std::span<const Rational> v) {
                          return is_positive_semidefinite(pencil_eval(p, v));
                        }};
}

SampleReport cone_inclusion_sampled(const HyperbolicInstance& inner, const ConeMembership& outer,
                                    uint64_t n, uint64_t seed) {
  SampleReport report;
  report.samples = n;
  report.seed = seed;
  std::vector<std::vector<Rational>> found(n);
  std::vector<uint8_t> bad(n, 0);
  std::span<const HyperbolicInstance> one(&inner, 1);
  parallel_for(n, [&](uint64_t i) {
    std::vector<Rational> v = one_cone_sample(one, seed, i, i % 2 == 1);
    if (!outer.contains(v)) {
      bad[i] = 1;
      found[i] = std::move(v);
    }
  });
  for (uint64_t i = 0; i < n; ++i)
    if (bad[i]) report.failures.push_back(std::move(found[i]));
  return report;
}

}  // namespace hypercone

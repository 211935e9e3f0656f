// Acceptance suite: runs every top-level criterion at its stated sample size
// and tolerance, printing one pass/fail line each. Exit code 0 iff all pass.

#include <chrono>
#include <complex>
#include <cstdio>
#include <functional>
#include <iostream>
#include <vector>

#include "hypercone/construct.hpp"
#include "hypercone/hyperbolic.hpp"
#include "hypercone/parallel.hpp"
#include "hypercone/pencil.hpp"
#include "hypercone/polycone.hpp"
#include "hypercone/realroot.hpp"
#include "hypercone/rng.hpp"
#include "hypercone/vamos.hpp"

using namespace hypercone;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void criterion(int number, const std::string& label, const std::function<bool(std::string&)>& fn) {
  auto t0 = Clock::now();
  std::string detail;
  bool pass = false;
  try {
    pass = fn(detail);
  } catch (const std::exception& ex) {
    detail = std::string("exception: ") + ex.what();
  }
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  std::printf("criterion %2d: %s  [%7.2f s]  %s%s%s\n", number, pass ? "PASS" : "FAIL", secs,
              label.c_str(), detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

// ---- criterion 10a oracle: float root counting, independent of realroot ----

int float_distinct_real_roots(const UniPoly& u, bool positive_only) {
  int d = u.degree();
  if (d < 1) return 0;
  std::vector<std::complex<double>> c(d + 1);
  for (int i = 0; i <= d; ++i) c[i] = to_double(u.coeff(i) / u.leading());
  std::vector<std::complex<double>> z(d);
  std::complex<double> seed(0.4, 0.9);
  z[0] = seed;
  for (int i = 1; i < d; ++i) z[i] = z[i - 1] * seed;
  for (int it = 0; it < 400; ++it) {
    double moved = 0;
    for (int i = 0; i < d; ++i) {
      std::complex<double> val = c[d];
      for (int k = d - 1; k >= 0; --k) val = val * z[i] + c[k];
      std::complex<double> den(1, 0);
      for (int j = 0; j < d; ++j)
        if (j != i) den *= (z[i] - z[j]);
      std::complex<double> delta = val / den;
      z[i] -= delta;
      moved = std::max(moved, std::abs(delta));
    }
    if (moved < 1e-14) break;
  }
  std::vector<double> reals;
  for (auto& r : z) {
    double scale = std::max(1.0, std::abs(r));
    if (std::abs(r.imag()) <= 1e-6 * scale) {
      if (!positive_only || r.real() > 1e-9) reals.push_back(r.real());
    }
  }
  std::sort(reals.begin(), reals.end());
  int distinct = 0;
  for (size_t i = 0; i < reals.size(); ++i)
    if (i == 0 || reals[i] - reals[i - 1] > 1e-6 * std::max(1.0, std::abs(reals[i]))) ++distinct;
  return distinct;
}

// Exact steps 1-5 of the verification, directly on a bundle.
std::vector<bool> exact_steps(const VamosBundle& b) {
  std::vector<bool> out;
  Poly det = pencil_det(b.pencil);
  out.push_back(det == (b.q * b.h4).scaled(Rational(8)));
  out.push_back(eigen_lower_bound(pencil_eval(b.pencil, b.e), Rational(1, 2)));
  bool cond1 = true;
  PolyVec image = pencil_apply(b.pencil, b.f);
  PolyVec g;
  for (int i = 0; i < 9 && cond1; ++i) {
    auto q = divide_exact(image[i], b.h4);
    if (!q || q->total_deg() > 0)
      cond1 = false;
    else
      g.push_back(*q);
  }
  out.push_back(cond1);
  bool mixed = cond1;
  if (cond1) {
    Poly p = derived_p(b.f, g);
    for (bool ok : check_mixed_identity(b.h4, p, b.f, b.pencil))
      if (!ok) mixed = false;
  }
  out.push_back(mixed);
  bool polytope = true;
  for (const auto& w : b.polytope.rays) {
    UniPoly r = restrict_to_line(b.q, b.e, w);
    if (r.is_zero() || sgn(r.leading()) <= 0 ||
        nonneg_coeff_shortcut(r) != CoeffTest::all_nonnegative)
      polytope = false;
  }
  out.push_back(polytope);
  return out;
}

}  // namespace

int main() {
  const VamosBundle& bundle = builtin_vamos();
  HyperbolicInstance h4 = HyperbolicInstance::make(bundle.h4, bundle.e);
  HyperbolicInstance q = HyperbolicInstance::make(bundle.q, bundle.e);
  Poly det(4);

  criterion(1, "determinant identity det A(x) = 8 q h4, exact", [&](std::string& detail) {
    det = pencil_det(bundle.pencil);
    Poly residual = det - (bundle.q * bundle.h4).scaled(Rational(8));
    detail = residual.is_zero() ? "zero residual polynomial" : "nonzero residual";
    return residual.is_zero();
  });

  criterion(2, "lambda_min(A1+A2) > 1/2 via exact Sturm count", [&](std::string& detail) {
    bool ok = eigen_lower_bound(pencil_eval(bundle.pencil, bundle.e), Rational(1, 2));
    detail = "char poly root count in (-inf, 1/2] is zero";
    return ok;
  });

  criterion(3, "A(x) f = h4 g with constant g; mixed identity for i=1..4", [&](std::string& detail) {
    PolyVec image = pencil_apply(bundle.pencil, bundle.f);
    PolyVec g;
    for (int i = 0; i < 9; ++i) {
      auto quotient = divide_exact(image[i], bundle.h4);
      if (!quotient || quotient->total_deg() > 0) {
        detail = "entry " + std::to_string(i) + " is not h4 times a constant";
        return false;
      }
      g.push_back(*quotient);
    }
    if (g != bundle.g) {
      detail = "recovered g differs from the frozen golden values";
      return false;
    }
    Poly p = derived_p(bundle.f, g);
    std::vector<bool> mixed = check_mixed_identity(bundle.h4, p, bundle.f, bundle.pencil);
    for (int i = 0; i < 4; ++i)
      if (!mixed[i]) {
        detail = "mixed identity fails for variable " + std::to_string(i + 1);
        return false;
      }
    detail = "g = (2,2,8,8,2,3,3,3,3), all four identities exact";
    return true;
  });

  criterion(4, "all 17 generators satisfy the coefficient test for C_q(e)", [&](std::string& detail) {
    for (size_t i = 0; i < bundle.polytope.rays.size(); ++i) {
      UniPoly r = restrict_to_line(bundle.q, bundle.e, bundle.polytope.rays[i]);
      if (nonneg_coeff_shortcut(r) != CoeffTest::all_nonnegative) {
        detail = "generator " + std::to_string(i + 1) + " fails";
        return false;
      }
    }
    detail = "q(te+w) has nonnegative coefficients for every generator";
    return true;
  });

  criterion(5, "hyperbolicity evidence for h4 and q, N=10^4, seed 0", [&](std::string& detail) {
    SampleReport rh = check_hyperbolic_sampled(h4, 10000, 0);
    SampleReport rq = check_hyperbolic_sampled(q, 10000, 0);
    detail = "h4 failures: " + std::to_string(rh.failures.size()) +
             ", q failures: " + std::to_string(rq.failures.size());
    return rh.pass() && rq.pass();
  });

  criterion(6, "inclusion C_h4(e) in P, N=10^5 sampled points, half near-boundary",
            [&](std::string& detail) {
              std::vector<LinForm> dual = dual_cone(bundle.polytope);
              SampleReport r = cone_inclusion_sampled(
                  h4, membership_of(bundle.polytope, dual), 100000, 0);
              detail = std::to_string(r.samples - r.failures.size()) + "/" +
                       std::to_string(r.samples) + " inside P (dual size " +
                       std::to_string(dual.size()) + ")";
              return r.pass();
            });

  criterion(7, "two-sided spectrahedron agreement, 10^4 + 10^4 points", [&](std::string& detail) {
    const uint64_t n = 10000;
    std::vector<uint8_t> bad(n, 0);
    parallel_for(n, [&](uint64_t i) {
      SplitMix64 rng = sample_stream(0x7ab11e57ULL, i);
      std::vector<Rational> w = random_direction(rng, 4);
      bool all_zero = true;
      for (const auto& c : w)
        if (sgn(c) != 0) all_zero = false;
      if (all_zero) w[0] = 1;
      Rational scale(0);
      for (const auto& c : w) {
        Rational a = abs(c);
        if (a > scale) scale = a;
      }
      for (auto& c : w) c /= scale;
      LineRootOracle oracle(restrict_to_line(det, bundle.e, w));
      if (!oracle.real_rooted() || oracle.distinct_real_roots() == 0) {
        bad[i] = 1;
        return;
      }
      Rational mu = oracle.largest_upper(i % 2 == 1 ? 40 : 20);
      if (i % 2 == 0) mu += (mu - oracle.smallest_lower(10)) / 16;
      std::vector<Rational> v = w;
      for (int k = 0; k < 4; ++k) v[k] += mu * bundle.e[k];
      v = canonicalize_ray(v);
      if (!is_positive_semidefinite(pencil_eval(bundle.pencil, v)) || !in_cone(h4, v) ||
          !in_cone(q, v))
        bad[i] = 1;
    });
    uint64_t fail1 = 0;
    for (auto b : bad) fail1 += b;

    std::vector<HyperbolicInstance> pair{h4, q};
    auto pts = sample_intersection_points(pair, 10000, 0x3c6ef372ULL, SampleMode::mixed);
    std::vector<uint8_t> bad2(pts.size(), 0);
    parallel_for(pts.size(), [&](uint64_t i) {
      if (!is_positive_semidefinite(pencil_eval(bundle.pencil, pts[i]))) bad2[i] = 1;
    });
    uint64_t fail2 = 0;
    for (auto b : bad2) fail2 += b;
    detail = "spectrahedron-side failures: " + std::to_string(fail1) +
             ", intersection-side failures: " + std::to_string(fail2);
    return fail1 == 0 && fail2 == 0;
  });

  criterion(8, "constructor round trip on the quadric fixture", [&](std::string& detail) {
    Poly h(3);
    h.add_term({2, 0, 0}, Rational(1));
    h.add_term({0, 2, 0}, Rational(-1));
    h.add_term({0, 0, 2}, Rational(-1));
    std::vector<Rational> e{Rational(1), Rational(0), Rational(0)};
    Poly f1(3), f2(3);
    f1.add_term({1, 0, 0}, Rational(1));
    f1.add_term({0, 1, 0}, Rational(1));
    f2.add_term({0, 0, 1}, Rational(1));
    PolyVec f{f1, f2};
    ConstraintSystem sys = assemble_constraints(h, e, f, 1);
    SolveOptions opts;
    NumericSolution sol = solve_feasibility(sys, e, opts);
    if (!sol.feasible || sol.residual > 1e-10) {
      detail = "solver did not reach the residual tolerance";
      return false;
    }
    RationalizeResult exact = rationalize(std::span<const double>(sol.u), sys, e, opts);
    if (!exact.ok()) {
      detail = "rationalization failed";
      return false;
    }
    if (!is_positive_definite(pencil_eval(exact.solution->pencil, e))) {
      detail = "A(e) not positive definite";
      return false;
    }
    Poly d = pencil_det(integer_scaled(exact.solution->pencil));
    auto quotient = divide_exact(d, h);
    if (!quotient || quotient->total_deg() != 0 || sgn(quotient->coeff(Monomial(3, 0))) <= 0) {
      detail = "det is not a positive rational multiple of h";
      return false;
    }
    detail = "residual " + std::to_string(sol.residual) + ", det = c*h with c > 0";
    return true;
  });

  criterion(9, "constructor on the Vamos fixture (189 unknowns, 315 equations)",
            [&](std::string& detail) {
              ConstraintSystem sys = assemble_constraints(bundle.h4, bundle.e, bundle.f, 3);
              if (sys.unknown_count() != 189 || sys.rows.size() != 315) {
                detail = "assembly counts are wrong";
                return false;
              }
              SolveOptions opts;
              NumericSolution sol = solve_feasibility(sys, bundle.e, opts);
              if (!sol.feasible) {
                detail = "solver reported infeasible at tolerance after " +
                         std::to_string(sol.iterations) + " iterations";
                return false;
              }
              RationalizeResult exact =
                  rationalize(std::span<const double>(sol.u), sys, bundle.e, opts);
              if (!exact.ok()) {
                detail = "rationalization failed";
                return false;
              }
              if (!is_positive_definite(pencil_eval(exact.solution->pencil, bundle.e))) {
                detail = "A(e) not positive definite";
                return false;
              }
              PolyVec image = pencil_apply(exact.solution->pencil, bundle.f);
              for (int i = 0; i < 9; ++i)
                if (image[i] != bundle.h4 * exact.solution->g[i]) {
                  detail = "condition (1) violated";
                  return false;
                }
              Poly d = pencil_det(integer_scaled(exact.solution->pencil));
              if (!divide_exact(d, bundle.h4)) {
                detail = "det not divisible by h4";
                return false;
              }
              detail = std::to_string(sol.iterations) + " iterations, exact pencil verified";
              return true;
            });

  criterion(10, "property suites (Sturm oracle, duality, adjugate, mutations)",
            [&](std::string& detail) {
              // (a) Sturm vs float oracle on 1000 random polynomials
              SplitMix64 rng{1009};
              int done = 0, agree = 0;
              while (done < 1000) {
                int d = 1 + static_cast<int>(rng.next() % 6);
                std::vector<Rational> cs;
                for (int i = 0; i <= d; ++i)
                  cs.emplace_back(static_cast<long>(rng.next() % 101) - 50);
                UniPoly p(std::move(cs));
                if (p.degree() < 1) continue;
                ++done;
                bool whole =
                    count_real_roots(p, Interval::whole()) == float_distinct_real_roots(p, false);
                bool positive = count_real_roots(p, Interval::above(Rational(0))) ==
                                float_distinct_real_roots(p, true);
                if (whole && positive) ++agree;
              }
              if (agree != 1000) {
                detail = "Sturm/footprint agreement " + std::to_string(agree) + "/1000";
                return false;
              }

              // (b) double duality on 100 random small cones
              for (int it = 0; it < 100; ++it) {
                int dim = 2 + static_cast<int>(rng.next() % 3);
                int nrays = 1 + static_cast<int>(rng.next() % 5);
                std::vector<std::vector<Rational>> rays;
                while (static_cast<int>(rays.size()) < nrays) {
                  std::vector<Rational> r(dim);
                  bool zero = true;
                  for (int i = 0; i < dim; ++i) {
                    r[i] = Rational(static_cast<long>(rng.next() % 11) - 5);
                    if (sgn(r[i]) != 0) zero = false;
                  }
                  if (!zero) rays.push_back(std::move(r));
                }
                RayCone c = RayCone::make(dim, rays);
                auto dual = dual_cone(c);
                for (const auto& f : dual)
                  for (const auto& r : c.rays)
                    if (sgn(apply_form(f, r)) < 0) {
                      detail = "dual form negative on its own cone";
                      return false;
                    }
                std::vector<std::vector<Rational>> dual_rays;
                for (const auto& f : dual) dual_rays.push_back(f.coeffs);
                if (dual_rays.empty()) continue;
                auto dd = dual_cone(RayCone::make(dim, dual_rays));
                for (const auto& g2 : dd)
                  if (!member(g2.coeffs, dual)) {
                    detail = "double dual escapes the original cone";
                    return false;
                  }
                std::vector<std::vector<Rational>> dd_rays;
                for (const auto& g2 : dd) dd_rays.push_back(g2.coeffs);
                if (dd_rays.empty()) continue;
                auto dd_dual = dual_cone(RayCone::make(dim, dd_rays));
                for (const auto& r : c.rays)
                  if (!member(r, dd_dual)) {
                    detail = "original ray outside the double dual";
                    return false;
                  }
              }

              // (c) adjugate identity on 100 random 3x3 pencils
              for (int it = 0; it < 100; ++it) {
                std::vector<SymMatrix> mats;
                for (int k = 0; k < 2; ++k) {
                  SymMatrix a(3);
                  for (int i = 0; i < 3; ++i)
                    for (int j = i; j < 3; ++j)
                      a.set(i, j, Rational(static_cast<long>(rng.next() % 11) - 5));
                  mats.push_back(std::move(a));
                }
                SymPencil p(std::move(mats));
                Poly pd = pencil_det(p);
                int row = static_cast<int>(rng.next() % 3);
                PolyVec adj = adjugate_row(p, row);
                PolyVec image = pencil_apply(p, adj);
                for (int i = 0; i < 3; ++i) {
                  const Poly& expected = (i == row) ? pd : Poly(2);
                  if (!(image[i] == expected)) {
                    detail = "adjugate identity failed";
                    return false;
                  }
                }
              }

              // (d) 50 single-entry mutations of the exactly-pinned bundle data
              for (int it = 0; it < 50; ++it) {
                VamosBundle mutated = bundle;
                long bump = 1 + static_cast<long>(rng.next() % 5);
                switch (rng.next() % 4) {
                  case 0: {
                    int k = static_cast<int>(rng.next() % 4);
                    int i = static_cast<int>(rng.next() % 9);
                    int j = static_cast<int>(rng.next() % 9);
                    std::vector<SymMatrix> mats = mutated.pencil.matrices;
                    mats[k].set(i, j, mats[k].at(i, j) + bump);
                    mutated.pencil = SymPencil(std::move(mats));
                    break;
                  }
                  case 1: {
                    size_t pick = rng.next() % mutated.q.term_count();
                    auto iter = mutated.q.terms().begin();
                    std::advance(iter, pick);
                    Monomial m = iter->first;
                    mutated.q.add_term(m, Rational(bump));
                    break;
                  }
                  case 2: {
                    size_t pick = rng.next() % mutated.h4.term_count();
                    auto iter = mutated.h4.terms().begin();
                    std::advance(iter, pick);
                    Monomial m = iter->first;
                    mutated.h4.add_term(m, Rational(bump));
                    break;
                  }
                  default: {
                    int entry = static_cast<int>(rng.next() % 9);
                    size_t pick = rng.next() % mutated.f[entry].term_count();
                    auto iter = mutated.f[entry].terms().begin();
                    std::advance(iter, pick);
                    Monomial m = iter->first;
                    mutated.f[entry].add_term(m, Rational(bump));
                    break;
                  }
                }
                std::vector<bool> steps = exact_steps(mutated);
                bool flipped = false;
                for (bool ok : steps)
                  if (!ok) flipped = true;
                if (!flipped) {
                  detail = "a mutation survived all exact steps (iteration " +
                           std::to_string(it) + ")";
                  return false;
                }
              }
              detail = "1000/1000 Sturm agreements, 100 dualities, 100 adjugates, 50 mutations";
              return true;
            });

  std::printf("%s (%d criterion failure%s)\n", g_failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
              g_failures, g_failures == 1 ? "" : "s");
  return g_failures == 0 ? 0 : 1;
}

#include <doctest.h>

#include <sstream>

#include "hypercone/json_io.hpp"
#include "hypercone/vamos.hpp"
#include "test_util.hpp"

using namespace hypercone;
using namespace hypercone::testutil;

namespace {

const CertStep* find_step(const CertReport& r, const std::string& name) {
  for (const auto& s : r.steps)
    if (s.name == name) return &s;
  return nullptr;
}

// Exact steps only, for mutation testing.
VerifyOptions exact_only_opts() {
  VerifyOptions o;
  o.samples = 1;
  o.skip_support_search = true;
  return o;
}

std::vector<bool> exact_step_results(const VamosBundle& bundle) {
  CertReport r = verify_certificate(bundle, exact_only_opts());
  std::vector<bool> out;
  for (const char* name :
       {"det-identity", "eigenvalue-margin", "condition-1", "mixed-identity", "polytope-in-q-cone"})
    out.push_back(find_step(r, name) && find_step(r, name)->pass);
  return out;
}

}  // namespace

TEST_SUITE_BEGIN("vamoslab");

TEST_CASE("bundled data sanity") {
  const VamosBundle& b = builtin_vamos();
  CHECK(b.h4(b.e) == 1);
  CHECK(b.polytope.rays.size() == 17);
  CHECK(homogeneity(b.q).degree == 5);
  CHECK(b.f.size() == 9);
  CHECK(b.g.size() == 9);
  CHECK(b.pencil.size() == 9);
  CHECK(b.pencil.nvars() == 4);
  // the generator entries reach ~1e25 and parse exactly
  CHECK(b.polytope.rays[14][0] == parse_rational("18796049082090475406192769"));
}

TEST_CASE("determinant splits as 8 q h4") {
  const VamosBundle& b = builtin_vamos();
  Poly det = pencil_det(b.pencil);
  auto q8 = divide_exact(det, b.h4);
  REQUIRE(q8.has_value());
  CHECK(*q8 == b.q.scaled(Rational(8)));
}

TEST_CASE("default verification passes") {
  VerifyOptions opts;
  opts.samples = 300;
  CertReport r = verify_certificate(builtin_vamos(), opts);
  CHECK(r.overall);
  CHECK(r.steps.size() == 10);
  for (const auto& s : r.steps)
    if (s.mandatory) CHECK(s.pass);
  const CertStep* cond1 = find_step(r, "condition-1");
  REQUIRE(cond1 != nullptr);
  CHECK(cond1->evidence.find("g = (2,2,8,8,2,3,3,3,3)") != std::string::npos);
}

TEST_CASE("skip-support-search drops the optional step") {
  VerifyOptions opts = exact_only_opts();
  CertReport r = verify_certificate(builtin_vamos(), opts);
  CHECK(r.steps.size() == 9);
  CHECK(find_step(r, "support-search") == nullptr);
  CHECK(r.overall);
}

TEST_CASE("a single pencil mutation is caught by an exact step") {
  VamosBundle mutated = builtin_vamos();
  SymMatrix a1 = mutated.pencil.matrices[0];
  a1.set(2, 3, a1.at(2, 3) + 1);
  mutated.pencil = SymPencil({a1, mutated.pencil.matrices[1], mutated.pencil.matrices[2],
                              mutated.pencil.matrices[3]});
  CertReport r = verify_certificate(mutated, exact_only_opts());
  CHECK_FALSE(r.overall);
  CHECK_FALSE(find_step(r, "det-identity")->pass);
}

TEST_CASE("a truncated generator list only hurts the inclusion step") {
  VamosBundle mutated = builtin_vamos();
  std::vector<std::vector<Rational>> rays = mutated.polytope.rays;
  rays.pop_back();  // drop (1,0,0,0)
  mutated.polytope = RayCone::make(4, rays);
  VerifyOptions opts;
  opts.samples = 300;
  opts.skip_support_search = true;
  CertReport r = verify_certificate(mutated, opts);
  for (const char* name :
       {"det-identity", "eigenvalue-margin", "condition-1", "mixed-identity",
        "polytope-in-q-cone", "hyperbolicity-sampled", "dual-cone"})
    CHECK(find_step(r, name)->pass);
  if (!r.overall) {
    // the first genuine failure is the inclusion test; later steps are skipped
    for (const auto& s : r.steps) {
      if (!s.mandatory || s.pass) continue;
      if (s.evidence.rfind("skipped:", 0) == 0) continue;
      CHECK(s.name == "inclusion-sampled");
    }
  }
}

TEST_CASE("random single-entry mutations flip an exact step") {
  SplitMix64 rng{80};
  const VamosBundle& clean = builtin_vamos();
  for (int it = 0; it < 10; ++it) {
    VamosBundle mutated = clean;
    long bump = 1 + static_cast<long>(rng.next() % 3);
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
    std::vector<bool> steps = exact_step_results(mutated);
    bool some_failed = false;
    for (bool ok : steps)
      if (!ok) some_failed = true;
    CHECK(some_failed);
  }
}

TEST_CASE("support certificates on the quadric") {
  Poly h = make_poly(3, {{1, {2, 0, 0}}, {-1, {0, 2, 0}}, {-1, {0, 0, 2}}});
  std::vector<Rational> e = point({1, 0, 0});

  SupportCertificate cert;
  cert.ell = LinForm{point({1, 1, 0})};
  cert.htilde = h;
  cert.v = point({1, -1, 0});
  cert.lambda = Q(2);
  CHECK(support_certificate(cert, e, 1e-8).result == SupportResult::exact_pass);

  SupportCertificate wrong_sign = cert;
  wrong_sign.ell = LinForm{point({-1, -1, 0})};
  wrong_sign.lambda = Q(-2);
  CHECK(support_certificate(wrong_sign, e, 1e-8).result == SupportResult::fail);

  SupportCertificate origin = cert;
  origin.v = point({0, 0, 0});
  SupportOutcome oc = support_certificate(origin, e, 1e-8);
  CHECK(oc.result == SupportResult::fail);
  CHECK(oc.reason.find("gradient") != std::string::npos);
}

TEST_CASE("support search finds the quadric tangency") {
  Poly h = make_poly(3, {{1, {2, 0, 0}}, {-1, {0, 2, 0}}, {-1, {0, 0, 2}}});
  std::vector<Rational> e = point({1, 0, 0});
  LinForm ell{point({1, 1, 0})};
  auto cert = support_search(ell, {h}, e, 0);
  REQUIRE(cert.has_value());
  SupportOutcome oc = support_certificate(*cert, e, 1e-8);
  CHECK(oc.result != SupportResult::fail);
  // tangency along the ray (1, -1, 0)
  CHECK(to_double(cert->v[0] + cert->v[1]) == doctest::Approx(0).epsilon(1e-6));
  CHECK(to_double(cert->v[2]) == doctest::Approx(0).epsilon(1e-6));
  CHECK(to_double(cert->v[0]) > 0);

  CHECK_THROWS_AS(support_search(LinForm{point({0, 0, 0})}, {h}, e, 0), std::invalid_argument);
}

TEST_CASE("certificate report serializes") {
  VerifyOptions opts;
  opts.samples = 50;
  CertReport r = verify_certificate(builtin_vamos(), opts);
  json j = certreport_to_json(r);
  CHECK(j["overall"] == "pass");
  CHECK(j["samples"] == 50);
  CHECK(j["steps"].size() == 10);
  CHECK(j["steps"][0]["name"] == "det-identity");
  CHECK(j["steps"][0]["exact"] == true);

  std::ostringstream os;
  r.print(os);
  CHECK(os.str().find("overall: PASS") != std::string::npos);
}

TEST_SUITE_END();

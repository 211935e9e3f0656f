#include <doctest.h>

#include <fstream>
#include <sstream>

#include "hypercone/construct.hpp"
#include "hypercone/hyperbolic.hpp"
#include "hypercone/vamos.hpp"
#include "test_util.hpp"

using namespace hypercone;
using namespace hypercone::testutil;

namespace {

Poly quadric_h() {
  return make_poly(3, {{1, {2, 0, 0}}, {-1, {0, 2, 0}}, {-1, {0, 0, 2}}});
}

PolyVec quadric_f() {
  return {make_poly(3, {{1, {1, 0, 0}}, {1, {0, 1, 0}}}), make_poly(3, {{1, {0, 0, 1}}})};
}

std::vector<Rational> quadric_e() { return point({1, 0, 0}); }

// The known representation [[x1-x2, -x3], [-x3, x1+x2]] with g = (1, 0),
// laid out in the unknown order of the assembled system.
std::vector<Rational> quadric_known_solution(const ConstraintSystem& sys) {
  std::vector<Rational> u(sys.unknown_count(), Rational(0));
  // A1 = I
  u[sys.col_of_pencil(0, 0, 0)] = 1;
  u[sys.col_of_pencil(0, 1, 1)] = 1;
  // A2 = diag(-1, 1)
  u[sys.col_of_pencil(1, 0, 0)] = -1;
  u[sys.col_of_pencil(1, 1, 1)] = 1;
  // A3 = [[0, -1], [-1, 0]]
  u[sys.col_of_pencil(2, 0, 1)] = -1;
  // g = (1, 0)
  u[sys.col_of_g(0, 0)] = 1;
  return u;
}

}  // namespace

TEST_SUITE_BEGIN("construct");

TEST_CASE("assembly counts match the combinatorics") {
  const VamosBundle& b = builtin_vamos();
  ConstraintSystem vs = assemble_constraints(b.h4, b.e, b.f, 3);
  CHECK(vs.unknown_count() == 189);
  CHECK(vs.pencil_unknown_count() == 180);
  CHECK(vs.g_unknown_count() == 9);
  CHECK(vs.rows.size() == 315);

  ConstraintSystem qs = assemble_constraints(quadric_h(), quadric_e(), quadric_f(), 1);
  CHECK(qs.unknown_count() == 11);
  CHECK(qs.rows.size() == 12);
}

TEST_CASE("assembly preconditions") {
  Poly h = quadric_h();
  // every entry divisible by h
  CHECK_THROWS_AS(assemble_constraints(h, quadric_e(), PolyVec{h}, 2), DivisibilityError);
  // degree mismatch
  PolyVec bad{make_poly(3, {{1, {2, 0, 0}}}), make_poly(3, {{1, {0, 0, 1}}})};
  CHECK_THROWS_AS(assemble_constraints(h, quadric_e(), bad, 1), std::invalid_argument);
  // d' below d-1
  CHECK_THROWS_AS(assemble_constraints(h, quadric_e(), quadric_f(), 0), std::invalid_argument);
}

TEST_CASE("the paper identity is a solution of the assembled system") {
  ConstraintSystem sys = assemble_constraints(quadric_h(), quadric_e(), quadric_f(), 1);
  std::vector<Rational> u = quadric_known_solution(sys);
  for (const auto& row : sys.rows) {
    Rational acc = -row.rhs;
    for (const auto& [c, v] : row.terms) acc += v * u[c];
    CHECK(acc == 0);
  }
}

TEST_CASE("quadric feasibility solve and exact round trip") {
  ConstraintSystem sys = assemble_constraints(quadric_h(), quadric_e(), quadric_f(), 1);
  SolveOptions opts;
  NumericSolution sol = solve_feasibility(sys, quadric_e(), opts);
  REQUIRE(sol.feasible);
  CHECK(sol.residual <= opts.residual_tol);
  CHECK(sol.lambda_min >= 1 - opts.residual_tol);

  RationalizeResult exact = rationalize(std::span<const double>(sol.u), sys, quadric_e(), opts);
  REQUIRE(exact.ok());
  const ExactSolution& s = *exact.solution;
  CHECK(is_positive_definite(pencil_eval(s.pencil, quadric_e())));
  PolyVec image = pencil_apply(s.pencil, quadric_f());
  for (int i = 0; i < 2; ++i) CHECK(image[i] == quadric_h() * s.g[i]);

  Poly det = pencil_det(integer_scaled(s.pencil));
  auto q = divide_exact(det, quadric_h());
  REQUIRE(q.has_value());
  CHECK(q->total_deg() == 0);  // m = d forces a constant cofactor
  CHECK(sgn(q->coeff(Monomial(3, 0))) > 0);
}

TEST_CASE("a contradictory equation makes the solver report infeasibility") {
  ConstraintSystem sys = assemble_constraints(quadric_h(), quadric_e(), quadric_f(), 1);
  ConstraintSystem::Row bad;
  bad.rhs = 1;  // 0 = 1
  sys.rows.push_back(bad);
  SolveOptions opts;
  opts.max_iter = 2000;
  NumericSolution sol = solve_feasibility(sys, quadric_e(), opts);
  CHECK_FALSE(sol.feasible);
}

TEST_CASE("rationalize is the identity on exact feasible input") {
  ConstraintSystem sys = assemble_constraints(quadric_h(), quadric_e(), quadric_f(), 1);
  std::vector<Rational> u = quadric_known_solution(sys);
  SolveOptions opts;
  RationalizeResult r = rationalize(std::span<const Rational>(u), sys, quadric_e(), opts);
  REQUIRE(r.ok());
  CHECK(r.solution->unknowns == u);
}

TEST_CASE("perturbed integral data is recovered with denominator bound 1") {
  const VamosBundle& b = builtin_vamos();
  ConstraintSystem sys = assemble_constraints(b.h4, b.e, b.f, 3);
  std::vector<double> u(sys.unknown_count(), 0.0);
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i < 9; ++i)
      for (int j = i; j < 9; ++j)
        u[sys.col_of_pencil(k, i, j)] = to_double(b.pencil.matrices[k].at(i, j));
  for (int i = 0; i < 9; ++i) u[sys.col_of_g(i, 0)] = to_double(b.g[i].coeff(Monomial(4, 0)));
  SplitMix64 rng{77};
  for (auto& x : u) x += (rng.next_unit() - 0.5) * 2e-8;

  SolveOptions opts;
  opts.denom_bound = 1;
  RationalizeResult r = rationalize(std::span<const double>(u), sys, b.e, opts);
  REQUIRE(r.ok());
  CHECK(r.solution->pencil.matrices == b.pencil.matrices);
  CHECK(r.solution->g == b.g);
}

TEST_CASE("derived p") {
  PolyVec f = quadric_f();
  PolyVec g{Poly::constant(3, Rational(1)), Poly(3)};
  Poly p = derived_p(f, g);
  CHECK(p == make_poly(3, {{1, {1, 0, 0}}, {1, {0, 1, 0}}}));

  PolyVec zero_g{Poly(3), Poly(3)};
  CHECK(derived_p(f, zero_g).is_zero());  // degenerate, flagged by the caller

  PolyVec bad_g{make_poly(3, {{1, {1, 0, 0}}}), Poly(3)};
  CHECK_THROWS_AS(derived_p(f, bad_g), std::invalid_argument);

  const VamosBundle& b = builtin_vamos();
  Poly pv = derived_p(b.f, b.g);
  CHECK(is_homogeneous_of_degree(pv, 3));
  CHECK_FALSE(pv.is_zero());
}

TEST_CASE("mixed identity on the quadric representation") {
  ConstraintSystem sys = assemble_constraints(quadric_h(), quadric_e(), quadric_f(), 1);
  std::vector<Rational> u = quadric_known_solution(sys);
  SymPencil pencil = sys.pencil_from(u);
  Poly p = derived_p(quadric_f(), sys.g_from(u));
  std::vector<bool> ok = check_mixed_identity(quadric_h(), p, quadric_f(), pencil);
  CHECK(ok == std::vector<bool>{true, true, true});

  // corrupting one entry breaks the identity in that variable
  SymMatrix a1 = pencil.matrices[0];
  a1.set(0, 0, a1.at(0, 0) + 1);
  SymPencil corrupted({a1, pencil.matrices[1], pencil.matrices[2]});
  std::vector<bool> bad = check_mixed_identity(quadric_h(), p, quadric_f(), corrupted);
  CHECK_FALSE(bad[0]);
}

TEST_CASE("derived p is hyperbolic with a larger cone, sampled") {
  const VamosBundle& b = builtin_vamos();
  Poly p = derived_p(b.f, b.g);
  HyperbolicInstance hp = HyperbolicInstance::make(p, b.e);
  HyperbolicInstance h4 = HyperbolicInstance::make(b.h4, b.e);
  CHECK(check_hyperbolic_sampled(hp, 300, 0).pass());
  CHECK(cone_inclusion_sampled(h4, membership_of(hp), 300, 0).pass());
}

TEST_CASE("sum-of-squares witness") {
  PolyVec f2{Poly::variable(2, 0), Poly::variable(2, 1)};
  SosWitness w = sos_witness_check(f2, SymMatrix::identity(2));
  CHECK(w.verified);
  CHECK(w.weights == std::vector<Rational>{Q(1), Q(1)});
  CHECK(w.squares[0] == Poly::variable(2, 0));

  SosWitness wq = sos_witness_check(quadric_f(), SymMatrix::identity(2));
  CHECK(wq.verified);

  const VamosBundle& b = builtin_vamos();
  SosWitness wv = sos_witness_check(b.f, pencil_eval(b.pencil, b.e));
  CHECK(wv.verified);
  CHECK(wv.squares.size() == 9);
  for (const auto& d : wv.weights) CHECK(sgn(d) > 0);

  SymMatrix indef(2);
  indef.set(0, 0, Q(1));
  indef.set(1, 1, Q(-1));
  CHECK_THROWS_AS(sos_witness_check(f2, indef), std::invalid_argument);
}

TEST_CASE("nonnegativity of f^T A(a) f at sampled cone points") {
  const VamosBundle& b = builtin_vamos();
  HyperbolicInstance h4 = HyperbolicInstance::make(b.h4, b.e);
  auto cone_pts = sample_cone_points(h4, 5, 21, SampleMode::mixed);
  SplitMix64 rng{21};
  for (const auto& a : cone_pts) {
    SymMatrix aa = pencil_eval(b.pencil, a);
    for (int s = 0; s < 40; ++s) {
      std::vector<Rational> x = random_direction(rng, 4);
      // f^T A(a) f evaluated at x
      std::vector<Rational> fx(9);
      for (int i = 0; i < 9; ++i) fx[i] = b.f[i](x);
      Rational val(0);
      for (int i = 0; i < 9; ++i)
        for (int j = 0; j < 9; ++j) val += fx[i] * aa.at(i, j) * fx[j];
      CHECK(sgn(val) >= 0);
    }
  }
}

TEST_CASE("solver determinism") {
  ConstraintSystem sys = assemble_constraints(quadric_h(), quadric_e(), quadric_f(), 1);
  SolveOptions opts;
  NumericSolution a = solve_feasibility(sys, quadric_e(), opts);
  NumericSolution b = solve_feasibility(sys, quadric_e(), opts);
  CHECK(a.u == b.u);
  CHECK(a.iterations == b.iterations);
}

TEST_CASE("matrix market dump and solver trace") {
  ConstraintSystem sys = assemble_constraints(quadric_h(), quadric_e(), quadric_f(), 1);
  std::ostringstream dump;
  dump_matrix_market(sys, dump);
  std::string text = dump.str();
  CHECK(text.find("12 11 ") != std::string::npos);

  SolveOptions opts;
  opts.trace_csv = "solver_trace_test.csv";
  solve_feasibility(sys, quadric_e(), opts);
  std::ifstream trace(opts.trace_csv);
  REQUIRE(trace.good());
  std::string header;
  std::getline(trace, header);
  CHECK(header == "iter,residual,lambda_min");
  std::remove(opts.trace_csv.c_str());
}

TEST_SUITE_END();

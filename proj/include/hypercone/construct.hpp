#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hypercone/pencil.hpp"
#include "hypercone/poly.hpp"

namespace hypercone {

struct DivisibilityError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Linearization of A(x)*f = h*g over the pencil entries and g-coefficients.
// Unknown order: pencil entries (k, i<=j) for k = 0..n-1, then g coefficients
// entry-major. One row per (vector entry, monomial of degree d'+1), kept raw
// (redundant and zero rows included). rhs is 0 for every assembled row; it
// exists so tests can append inconsistent equations.
struct ConstraintSystem {
  int n = 0, m = 0, d = 0, dprime = 0;
  std::vector<Monomial> g_monomials;  // degree d'-d+1, fixed term order
  struct Row {
    std::vector<std::pair<size_t, Rational>> terms;
    Rational rhs = Rational(0);
  };
  std::vector<Row> rows;

  size_t pencil_unknown_count() const;
  size_t g_unknown_count() const;
  size_t unknown_count() const;
  size_t col_of_pencil(int k, int i, int j) const;  // unordered (i, j)
  size_t col_of_g(int entry, size_t mono_index) const;

  SymPencil pencil_from(std::span<const Rational> u) const;
  PolyVec g_from(std::span<const Rational> u) const;
};

ConstraintSystem assemble_constraints(const Poly& h, std::span<const Rational> e, const PolyVec& f,
                                      int dprime);

// Sparse coordinate dump for debugging.
void dump_matrix_market(const ConstraintSystem& sys, std::ostream& os);

struct SolveOptions {
  double residual_tol = 1e-10;
  uint64_t max_iter = 100000;
  Integer denom_bound = 1000000;
  uint64_t seed = 0;
  std::string trace_csv;  // when nonempty, one line per residual check
};

struct NumericSolution {
  std::vector<double> u;
  double residual = 0;
  double lambda_min = 0;
  uint64_t iterations = 0;
  bool feasible = false;  // false = infeasible at tolerance, not a proof
};

// Alternating projections with a Dykstra correction between the affine
// solution set and {A(e) >= I} (normalization valid by homogeneity of the
// constraints in (A, g)). Deterministic for fixed (system, opts, seed).
NumericSolution solve_feasibility(const ConstraintSystem& sys, std::span<const Rational> e,
                                  const SolveOptions& opts);

enum class RationalizeStage { none, rounding, projection, definiteness };

struct ExactSolution {
  SymPencil pencil;
  PolyVec g;
  std::vector<Rational> unknowns;
};

struct RationalizeResult {
  std::optional<ExactSolution> solution;
  RationalizeStage failed_stage = RationalizeStage::none;
  bool ok() const { return solution.has_value(); }
};

// Round (continued fractions, denominators <= denom_bound), project exactly
// onto the affine solution set (minimum-norm correction over Q), then verify
// A(x)f = h*g and A(e) > 0 exactly. Retries with denom_bound * 10 (3 times)
// when definiteness fails.
RationalizeResult rationalize(std::span<const Rational> numeric, const ConstraintSystem& sys,
                              std::span<const Rational> e, const SolveOptions& opts);
RationalizeResult rationalize(std::span<const double> numeric, const ConstraintSystem& sys,
                              std::span<const Rational> e, const SolveOptions& opts);

// p = g^T f for constant g (the d' = d-1 case).
Poly derived_p(const PolyVec& f, const PolyVec& g);

// dh/dx_i * p - h * dp/dx_i == f^T A_i f, exactly, per variable.
std::vector<bool> check_mixed_identity(const Poly& h, const Poly& p, const PolyVec& f,
                                       const SymPencil& pencil);

// Weighted sum-of-squares certificate for f^T A(e) f from an exact LDL^T of
// A(e); re-expanded and compared exactly.
struct SosWitness {
  std::vector<Rational> weights;  // positive
  PolyVec squares;
  bool verified = false;
};
SosWitness sos_witness_check(const PolyVec& f, const SymMatrix& ae);

}  // namespace hypercone

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hypercone/construct.hpp"
#include "hypercone/hyperbolic.hpp"
#include "hypercone/pencil.hpp"
#include "hypercone/poly.hpp"
#include "hypercone/polycone.hpp"

namespace hypercone {

// The specialized Vamos data set: h4, its distinguished direction e, the
// 9-entry cubic vector f, the 9x9 pencil A1..A4, the degree-5 cofactor q,
// the 17-generator polyhedral cone P, and the constant vector g recovered
// from A(x)f = h4*g (derived once, frozen as golden data).
struct VamosBundle {
  Poly h4;
  std::vector<Rational> e;
  PolyVec f;
  SymPencil pencil;
  Poly q;
  RayCone polytope;
  PolyVec g;
};

// Embedded data; validation failures throw (corrupted build).
const VamosBundle& builtin_vamos();

struct CertStep {
  std::string name;
  bool pass = false;
  bool exact = false;      // exact identity vs sampled evidence
  bool mandatory = true;
  std::string evidence;
  double seconds = 0;
};

struct CertReport {
  std::vector<CertStep> steps;
  bool overall = false;
  uint64_t samples = 0;
  uint64_t seed = 0;
  void print(std::ostream& os) const;
};

struct VerifyOptions {
  uint64_t samples = 10000;
  uint64_t seed = 0;
  bool skip_support_search = false;
};

// The end-to-end verification that {v : A(v) >= 0} matches the hyperbolicity
// cone of h4 to the extent machine-checkable; see README for the step list.
CertReport verify_certificate(const VamosBundle& bundle, const VerifyOptions& opts);

// Supporting-hyperplane certificate: the hyperplane of ell is tangent to the
// cone of htilde at v, proving ell >= 0 on every cone inside C_htilde(e).
struct SupportCertificate {
  LinForm ell;
  Poly htilde;
  std::vector<Rational> v;
  Rational lambda;  // gradient(htilde)(v) = lambda * ell
};

enum class SupportResult { exact_pass, numeric_pass, fail };

struct SupportOutcome {
  SupportResult result = SupportResult::fail;
  double max_residual = 0;
  std::string reason;
};

// Checks, at v: htilde(v) = 0, grad htilde(v) = lambda*ell with lambda > 0,
// grad nonzero, v in the cone, ell(e) > 0. Exact when all checks hold in
// rational arithmetic; numeric when residuals stay within tol.
SupportOutcome support_certificate(const SupportCertificate& cert, std::span<const Rational> e,
                                   double tol);

// Newton search for a tangency point of ell against each candidate htilde,
// from seeded starts on the cone boundary. NotFound is not a refutation.
std::optional<SupportCertificate> support_search(const LinForm& ell,
                                                 const std::vector<Poly>& candidates,
                                                 std::span<const Rational> e, uint64_t seed,
                                                 double tol = 1e-8);

}  // namespace hypercone

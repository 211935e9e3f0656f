#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "hypercone/pencil.hpp"
#include "hypercone/poly.hpp"
#include "hypercone/polycone.hpp"
#include "hypercone/realroot.hpp"

namespace hypercone {

// Homogeneous h with h(e) != 0; hyperbolicity itself is only ever evidenced
// by sampling, never assumed by the constructor.
struct HyperbolicInstance {
  Poly h;
  std::vector<Rational> e;
  int degree;

  static HyperbolicInstance make(Poly h, std::vector<Rational> e);
};

struct SampleReport {
  uint64_t samples = 0;
  uint64_t seed = 0;
  std::vector<std::vector<Rational>> failures;
  bool pass() const { return failures.empty(); }
};

// No root of h(te + v) strictly positive; exact.
bool in_cone(const HyperbolicInstance& H, std::span<const Rational> v);

// Draws n random rational directions and requires h(te+v) real-rooted for
// each, exactly. A pass is evidence of hyperbolicity, not a proof.
SampleReport check_hyperbolic_sampled(const HyperbolicInstance& H, uint64_t n, uint64_t seed);

struct LineRoots {
  bool real_rooted = false;
  std::vector<RootInterval> roots;  // empty unless real_rooted
};

// Isolating intervals (width <= 2^-20) with multiplicities for the roots of
// h(te + v); reports non-real-rooted input instead of isolating.
LineRoots eigenvalues_along(const HyperbolicInstance& H, std::span<const Rational> v);

// w + mu*e with mu a rational upper bound within 2^-tol_log2 of the largest
// root of h(te+w); the result lies in the cone, near its boundary.
std::vector<Rational> boundary_shift(const HyperbolicInstance& H, std::span<const Rational> w,
                                     unsigned tol_log2 = 20);

enum class SampleMode { interior, near_boundary, mixed };

// n points of the cone, each re-checked with in_cone. Interior mode adds a
// margin of (eigenvalue spread)/16 along e; mixed alternates by index parity.
std::vector<std::vector<Rational>> sample_cone_points(const HyperbolicInstance& H, uint64_t n,
                                                      uint64_t seed, SampleMode mode);

// Points of the intersection of several cones sharing e: shifts past the
// largest root over all instances. Used for C_h ∩ C_q style sampling.
std::vector<std::vector<Rational>> sample_intersection_points(
    std::span<const HyperbolicInstance> hs, uint64_t n, uint64_t seed, SampleMode mode);

// Exact membership test for an arbitrary outer cone.
struct ConeMembership {
  std::string name;
  std::function<bool(std::span<const Rational>)> contains;
};

ConeMembership membership_of(const HyperbolicInstance& H);
ConeMembership membership_of(const RayCone& c, std::vector<LinForm> dual);
ConeMembership membership_of(const SymPencil& p);

// Samples the inner cone in mixed mode and checks each point against the
// outer membership test; failures are the sampled witnesses.
SampleReport cone_inclusion_sampled(const HyperbolicInstance& inner, const ConeMembership& outer,
                                    uint64_t n, uint64_t seed);

}  // namespace hypercone

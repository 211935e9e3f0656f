#pragma once

#include <span>
#include <vector>

#include "hypercone/rational.hpp"

namespace hypercone {

// Linear functional on R^n. Canonical form: primitive integer coefficients,
// scaled by a positive rational only (the sign pattern is the constraint and
// is never flipped). The zero form stays zero.
struct LinForm {
  std::vector<Rational> coeffs;
  bool is_zero() const;
};

LinForm canonicalize_form(const LinForm& f);

Rational apply_form(const LinForm& f, std::span<const Rational> v);

// Primitive integer vector, positive scaling only; rejects the zero vector.
std::vector<Rational> canonicalize_ray(std::span<const Rational> r);

// Finitely generated cone in R^dim.
struct RayCone {
  int dim = 0;
  std::vector<std::vector<Rational>> rays;  // canonical, paper order preserved

  static RayCone make(int dim, std::vector<std::vector<Rational>> rays);
};

// Minimal generating set of the dual cone {l : l(r) >= 0 for all rays},
// computed by incremental double description with an exact adjacency rank
// test; lineality of the dual is returned as +/- basis pairs. Deterministic
// order. dim <= 12.
std::vector<LinForm> dual_cone(const RayCone& c);

// v in cone iff every dual generator is nonnegative at v.
bool member(std::span<const Rational> v, const std::vector<LinForm>& dual);

}  // namespace hypercone

#pragma once

#include <optional>
#include <vector>

#include "hypercone/unipoly.hpp"

namespace hypercone {

// u / gcd(u, u'), normalized to a primitive integer polynomial with positive
// leading coefficient; same distinct roots as u, all simple.
UniPoly squarefree_part(const UniPoly& u);

// Yun decomposition: pairwise coprime squarefree factors with multiplicities,
// u = lc * prod f_i^{m_i}.
std::vector<std::pair<UniPoly, int>> squarefree_decomposition(const UniPoly& u);

struct SturmChain {
  std::vector<UniPoly> seq;  // seq[0] primitive squarefree input, then negated remainders
};

// Input must be squarefree and nonconstant.
SturmChain sturm_sequence(const UniPoly& u);

int sign_variations_at(const SturmChain& chain, const Rational& x);
int sign_variations_neg_inf(const SturmChain& chain);
int sign_variations_pos_inf(const SturmChain& chain);

struct Interval {
  std::optional<Rational> lo;  // nullopt = -inf
  std::optional<Rational> hi;  // nullopt = +inf
  bool include_lo = false;
  bool include_hi = false;
  static Interval whole() { return {}; }
  static Interval open(Rational a, Rational b) { return {std::move(a), std::move(b), false, false}; }
  static Interval above(Rational a) { return {std::move(a), std::nullopt, false, false}; }
  static Interval below_closed(Rational b) { return {std::nullopt, std::move(b), false, true}; }
};

// Number of distinct real roots of squarefree_part(u) in the interval.
int count_real_roots(const UniPoly& u, const Interval& iv);

// All complex roots real (counted with multiplicity).
bool is_real_rooted(const UniPoly& u);

// No real root in (0, inf).
bool no_positive_root(const UniPoly& u);

// All coefficients >= 0 implies no positive root; requires positive leading
// coefficient. For real-rooted u the converse holds as well, so Inconclusive
// then certifies a strictly positive root.
enum class CoeffTest { all_nonnegative, inconclusive };
CoeffTest nonneg_coeff_shortcut(const UniPoly& u);

// Every root lies in (-bound, bound).
Rational cauchy_root_bound(const UniPoly& u);

struct RootInterval {
  Rational lo, hi;   // lo == hi marks an exact rational root
  int multiplicity;  // in the original polynomial
};

// Disjoint isolating intervals for the distinct real roots, refined to width
// <= 2^-refine_log2, with multiplicities from the squarefree decomposition.
std::vector<RootInterval> isolate_real_roots(const UniPoly& u, unsigned refine_log2 = 20);

// Rational upper bound within 2^-tol_log2 of the largest real root.
// Input must have at least one real root.
Rational largest_root_upper_bound(const UniPoly& u, unsigned tol_log2);

// Mirror: lower bound within 2^-tol_log2 of the smallest real root.
Rational smallest_root_lower_bound(const UniPoly& u, unsigned tol_log2);

// Squarefree part and Sturm chain of one polynomial, computed once and shared
// between the real-rootedness test and extreme-root bisections. The sampling
// loops live on this.
class LineRootOracle {
 public:
  explicit LineRootOracle(const UniPoly& u);  // u != 0
  bool real_rooted() const { return distinct_roots_ == sf_.degree(); }
  int distinct_real_roots() const { return distinct_roots_; }
  // Require at least one real root.
  Rational largest_upper(unsigned tol_log2) const;
  Rational smallest_lower(unsigned tol_log2) const;

 private:
  UniPoly sf_;
  SturmChain chain_;
  int distinct_roots_ = 0;
  int count_beyond(const Rational& x, bool largest) const;
  Rational bisect(unsigned tol_log2, bool largest) const;
};

}  // namespace hypercone

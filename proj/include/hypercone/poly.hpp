#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "hypercone/rational.hpp"
#include "hypercone/unipoly.hpp"

namespace hypercone {

using Monomial = std::vector<int>;

int total_degree(const Monomial& m);

// Graded reverse lexicographic order, largest term first so that map iteration
// starts at the leading term. Fixed once for canonical serialization.
struct GrevlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

// Sparse multivariate polynomial over Q. No stored zero coefficients; all
// exponent vectors have length nvars. Immutable in spirit: operations return
// new values.
class Poly {
 public:
  using TermMap = std::map<Monomial, Rational, GrevlexGreater>;

  Poly() : nvars_(0) {}  // zero polynomial in zero variables
  explicit Poly(int nvars);
  static Poly constant(int nvars, const Rational& c);
  static Poly variable(int nvars, int var);  // 0-based
  static Poly monomial(int nvars, Monomial exps, const Rational& c);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }
  Rational coeff(const Monomial& m) const;
  void add_term(const Monomial& exps, const Rational& c);

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator-() const;
  Poly scaled(const Rational& c) const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  bool operator==(const Poly& o) const = default;

  Poly derivative(int var) const;  // formal partial, 0-based index
  Rational operator()(std::span<const Rational> point) const;
  int total_deg() const;  // max term degree, -1 for zero

 private:
  int nvars_;
  TermMap terms_;
  void check_same_ring(const Poly& o) const;
};

struct Homogeneity {
  enum class Kind { homogeneous, not_homogeneous, zero };
  Kind kind = Kind::zero;
  int degree = 0;  // meaningful for homogeneous only
};
Homogeneity homogeneity(const Poly& p);
// Zero counts as homogeneous of any degree.
bool is_homogeneous_of_degree(const Poly& p, int d);

// Coefficients of h(t*e + v) as a univariate polynomial in t.
UniPoly restrict_to_line(const Poly& h, std::span<const Rational> e, std::span<const Rational> v);

// Exact quotient a/b, or nullopt when the remainder is nonzero. Reduction
// against the single divisor under the fixed term order.
std::optional<Poly> divide_exact(const Poly& a, const Poly& b);

using PolyVec = std::vector<Poly>;

bool uniform_nvars(const PolyVec& v);
// Every nonzero entry homogeneous of the given degree.
bool homogeneous_entries(const PolyVec& v, int degree);

// sum_i a_i * dh/dx_i
Poly directional_derivative(const Poly& h, std::span<const Rational> a);

}  // namespace hypercone

#pragma once

#include <span>
#include <vector>

#include "hypercone/poly.hpp"
#include "hypercone/realroot.hpp"

namespace hypercone {

// Symmetric matrix over Q; set() writes both mirror entries.
class SymMatrix {
 public:
  explicit SymMatrix(int m);
  static SymMatrix identity(int m);

  int size() const { return m_; }
  const Rational& at(int i, int j) const;
  void set(int i, int j, const Rational& v);

  SymMatrix operator+(const SymMatrix& o) const;
  bool operator==(const SymMatrix& o) const = default;

 private:
  int m_;
  std::vector<Rational> a_;
};

// A(x) = x_1 A_1 + ... + x_n A_n with symmetric A_i of equal size.
struct SymPencil {
  std::vector<SymMatrix> matrices;

  explicit SymPencil(std::vector<SymMatrix> mats);
  int nvars() const { return static_cast<int>(matrices.size()); }
  int size() const { return matrices.front().size(); }
};

SymMatrix pencil_eval(const SymPencil& p, std::span<const Rational> v);

// Entry i of A(x) * f, exact.
PolyVec pencil_apply(const SymPencil& p, const PolyVec& f);

// Exact determinant of A(x): homogeneous of degree m in n variables.
Poly pencil_det(const SymPencil& p);

// Row i (0-based) of adj(A(x)); A(x) * row = det * unit_i.
PolyVec adjugate_row(const SymPencil& p, int row);

// Exact: all pivots of the symmetric elimination positive.
bool is_positive_definite(const SymMatrix& m);
// Exact: permits zero pivots when the matching row vanishes.
bool is_positive_semidefinite(const SymMatrix& m);

// det(M - tI), exact, via the same fraction-free elimination as pencil_det.
UniPoly char_poly(const SymMatrix& m);

// lambda_min(M) > tau, decided by a Sturm count on char_poly.
bool eigen_lower_bound(const SymMatrix& m, const Rational& tau);

// Fraction-free (Bareiss) determinant of a square polynomial matrix.
// Shared kernel behind pencil_det, adjugate_row and char_poly.
Poly det_bareiss(std::vector<std::vector<Poly>> work, int nvars);

// Positive integer rescaling (common denominator cleared); determinants and
// evaluations change by a positive factor only, so definiteness and
// divisibility conclusions carry over.
SymPencil integer_scaled(const SymPencil& p);

}  // namespace hypercone

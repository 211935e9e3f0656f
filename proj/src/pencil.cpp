#include "hypercone/pencil.hpp"

#include <stdexcept>
#include <utility>

namespace hypercone {

SymMatrix::SymMatrix(int m) : m_(m), a_(static_cast<size_t>(m) * m, Rational(0)) {
  if (m < 1) throw std::invalid_argument("matrix size must be positive");
}

SymMatrix SymMatrix::identity(int m) {
  SymMatrix r(m);
  for (int i = 0; i < m; ++i) r.set(i, i, Rational(1));
  return r;
}

const Rational& SymMatrix::at(int i, int j) const {
  if (i < 0 || j < 0 || i >= m_ || j >= m_) throw std::out_of_range("matrix index");
  return a_[static_cast<size_t>(i) * m_ + j];
}

void SymMatrix::set(int i, int j, const Rational& v) {
  if (i < 0 || j < 0 || i >= m_ || j >= m_) throw std::out_of_range("matrix index");
  a_[static_cast<size_t>(i) * m_ + j] = v;
  a_[static_cast<size_t>(j) * m_ + i] = v;
}

SymMatrix SymMatrix::operator+(const SymMatrix& o) const {
  if (m_ != o.m_) throw std::invalid_argument("matrix size mismatch");
  SymMatrix r(m_);
  for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] + o.a_[k];
  return r;
}

SymPencil::SymPencil(std::vector<SymMatrix> mats) : matrices(std::move(mats)) {
  if (matrices.empty()) throw std::invalid_argument("pencil needs at least one matrix");
  for (const auto& m : matrices)
    if (m.size() != matrices.front().size()) throw std::invalid_argument("pencil sizes differ");
}

SymMatrix pencil_eval(const SymPencil& p, std::span<const Rational> v) {
  if (static_cast<int>(v.size()) != p.nvars()) throw std::invalid_argument("dimension mismatch");
  const int m = p.size();
  SymMatrix r(m);
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) {
      Rational acc(0);
      for (int k = 0; k < p.nvars(); ++k) acc += v[k] * p.matrices[k].at(i, j);
      r.set(i, j, acc);
    }
  return r;
}

PolyVec pencil_apply(const SymPencil& p, const PolyVec& f) {
  const int m = p.size();
  const int n = p.nvars();
  if (static_cast<int>(f.size()) != m) throw std::invalid_argument("vector length mismatch");
  if (!uniform_nvars(f) || f.front().nvars() != n)
    throw std::invalid_argument("vector nvars mismatch");
  PolyVec out;
  out.reserve(m);
  for (int i = 0; i < m; ++i) {
    Poly entry(n);
    for (int j = 0; j < m; ++j) {
      Poly lin(n);  // sum_k x_k A_k[i][j]
      for (int k = 0; k < n; ++k) {
        const Rational& c = p.matrices[k].at(i, j);
        if (sgn(c) != 0) lin += Poly::variable(n, k).scaled(c);
      }
      if (!lin.is_zero() && !f[j].is_zero()) entry += lin * f[j];
    }
    out.push_back(std::move(entry));
  }
  return out;
}

Poly det_bareiss(std::vector<std::vector<Poly>> work, int nvars) {
  const int m = static_cast<int>(work.size());
  for (const auto& row : work)
    if (static_cast<int>(row.size()) != m) throw std::invalid_argument("matrix not square");
  if (m == 0) return Poly::constant(nvars, Rational(1));
  int sign = 1;
  Poly prev_pivot = Poly::constant(nvars, Rational(1));
  for (int k = 0; k < m - 1; ++k) {
    // pick a nonzero pivot with the fewest terms
    int pivot_row = -1;
    size_t best = 0;
    for (int r = k; r < m; ++r) {
      if (work[r][k].is_zero()) continue;
      size_t tc = work[r][k].term_count();
      if (pivot_row < 0 || tc < best) {
        pivot_row = r;
        best = tc;
      }
    }
    if (pivot_row < 0) return Poly(nvars);  // whole column zero
    if (pivot_row != k) {
      std::swap(work[pivot_row], work[k]);
      sign = -sign;
    }
    const Poly& pivot = work[k][k];
    for (int i = k + 1; i < m; ++i) {
      for (int j = k + 1; j < m; ++j) {
        Poly num = work[i][j] * pivot - work[i][k] * work[k][j];
        auto q = divide_exact(num, prev_pivot);
        if (!q) throw std::logic_error("fraction-free elimination: inexact division");
        work[i][j] = std::move(*q);
      }
      work[i][k] = Poly(nvars);
    }
    prev_pivot = pivot;
  }
  Poly det = work[m - 1][m - 1];
  return sign < 0 ? -det : det;
}

Poly pencil_det(const SymPencil& p) {
  const int m = p.size();
  const int n = p.nvars();
  std::vector<std::vector<Poly>> work(m, std::vector<Poly>(m, Poly(n)));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      Poly lin(n);
      for (int k = 0; k < n; ++k) {
        const Rational& c = p.matrices[k].at(i, j);
        if (sgn(c) != 0) lin += Poly::variable(n, k).scaled(c);
      }
      work[i][j] = std::move(lin);
    }
  return det_bareiss(std::move(work), n);
}

PolyVec adjugate_row(const SymPencil& p, int row) {
  const int m = p.size();
  const int n = p.nvars();
  if (row < 0 || row >= m) throw std::out_of_range("row index");
  PolyVec out;
  out.reserve(m);
  for (int j = 0; j < m; ++j) {
    // adj[row][j] = (-1)^(row+j) * minor with row j and column `row` deleted
    std::vector<std::vector<Poly>> work;
    work.reserve(m - 1);
    for (int i = 0; i < m; ++i) {
      if (i == j) continue;
      std::vector<Poly> r;
      r.reserve(m - 1);
      for (int c = 0; c < m; ++c) {
        if (c == row) continue;
        Poly lin(n);
        for (int k = 0; k < n; ++k) {
          const Rational& v = p.matrices[k].at(i, c);
          if (sgn(v) != 0) lin += Poly::variable(n, k).scaled(v);
        }
        r.push_back(std::move(lin));
      }
      work.push_back(std::move(r));
    }
    Poly minor = det_bareiss(std::move(work), n);
    out.push_back((row + j) % 2 == 0 ? minor : -minor);
  }
  return out;
}

bool is_positive_definite(const SymMatrix& m) {
  const int n = m.size();
  std::vector<std::vector<Rational>> w(n, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) w[i][j] = m.at(i, j);
  for (int k = 0; k < n; ++k) {
    if (sgn(w[k][k]) <= 0) return false;
    for (int i = k + 1; i < n; ++i) {
      Rational f = w[i][k] / w[k][k];
      for (int j = k + 1; j < n; ++j) w[i][j] -= f * w[k][j];
    }
  }
  return true;
}

bool is_positive_semidefinite(const SymMatrix& m) {
  const int n = m.size();
  std::vector<std::vector<Rational>> w(n, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) w[i][j] = m.at(i, j);
  std::vector<int> live(n);
  for (int i = 0; i < n; ++i) live[i] = i;
  while (!live.empty()) {
    int pivot = -1;
    for (int idx : live) {
      int s = sgn(w[idx][idx]);
      if (s < 0) return false;
      if (s > 0 && pivot < 0) pivot = idx;
    }
    if (pivot < 0) {
      // all remaining diagonal entries are zero: PSD iff the block is zero
      for (int i : live)
        for (int j : live)
          if (sgn(w[i][j]) != 0) return false;
      return true;
    }
    std::vector<int> rest;
    rest.reserve(live.size() - 1);
    for (int idx : live)
      if (idx != pivot) rest.push_back(idx);
    for (int i : rest) {
      Rational f = w[i][pivot] / w[pivot][pivot];
      for (int j : rest) w[i][j] -= f * w[pivot][j];
    }
    live = std::move(rest);
  }
  return true;
}

UniPoly char_poly(const SymMatrix& m) {
  // det(x1*M + x2*(-I)) at x1 = 1, x2 = t, reusing the polynomial kernel.
  const int n = m.size();
  SymMatrix neg_id(n);
  for (int i = 0; i < n; ++i) neg_id.set(i, i, Rational(-1));
  SymPencil pencil({m, neg_id});
  Poly det = pencil_det(pencil);
  std::vector<Rational> coeffs(static_cast<size_t>(n) + 1, Rational(0));
  for (const auto& [mono, c] : det.terms()) coeffs[mono[1]] = c;
  return UniPoly(std::move(coeffs));
}

bool eigen_lower_bound(const SymMatrix& m, const Rational& tau) {
  UniPoly p = char_poly(m);
  return count_real_roots(p, Interval::below_closed(tau)) == 0;
}

SymPencil integer_scaled(const SymPencil& p) {
  Integer den(1);
  for (const auto& mat : p.matrices)
    for (int i = 0; i < mat.size(); ++i)
      for (int j = i; j < mat.size(); ++j)
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), mat.at(i, j).get_den().get_mpz_t());
  if (den == 1) return p;
  std::vector<SymMatrix> mats;
  mats.reserve(p.matrices.size());
  for (const auto& mat : p.matrices) {
    SymMatrix s(mat.size());
    for (int i = 0; i < mat.size(); ++i)
      for (int j = i; j < mat.size(); ++j) s.set(i, j, Rational(mat.at(i, j) * den));
    mats.push_back(std::move(s));
  }
  return SymPencil(std::move(mats));
}

}  // namespace hypercone

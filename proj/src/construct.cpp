#include "hypercone/construct.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <stdexcept>

#include "hypercone/rng.hpp"

namespace hypercone {

namespace {

std::vector<Monomial> monomials_of_degree(int nvars, int degree) {
  std::vector<Monomial> out;
  Monomial cur(nvars, 0);
  // lexicographic fill, then sort into the fixed term order
  std::function<void(int, int)> rec = [&](int var, int rem) {
    if (var == nvars - 1) {
      cur[var] = rem;
      out.push_back(cur);
      return;
    }
    for (int k = rem; k >= 0; --k) {
      cur[var] = k;
      rec(var + 1, rem - k);
    }
    cur[var] = 0;
  };
  if (nvars == 0) {
    if (degree == 0) out.push_back({});
    return out;
  }
  rec(0, degree);
  std::sort(out.begin(), out.end(), GrevlexGreater{});
  return out;
}

}  // namespace

size_t ConstraintSystem::pencil_unknown_count() const {
  return static_cast<size_t>(n) * m * (m + 1) / 2;
}

size_t ConstraintSystem::g_unknown_count() const { return g_monomials.size() * m; }

size_t ConstraintSystem::unknown_count() const {
  return pencil_unknown_count() + g_unknown_count();
}

size_t ConstraintSystem::col_of_pencil(int k, int i, int j) const {
  if (i > j) std::swap(i, j);
  // triangle index for (i, j), i <= j
  size_t tri = static_cast<size_t>(i) * m - static_cast<size_t>(i) * (i - 1) / 2 + (j - i);
  return static_cast<size_t>(k) * m * (m + 1) / 2 + tri;
}

size_t ConstraintSystem::col_of_g(int entry, size_t mono_index) const {
  return pencil_unknown_count() + static_cast<size_t>(entry) * g_monomials.size() + mono_index;
}

SymPencil ConstraintSystem::pencil_from(std::span<const Rational> u) const {
  std::vector<SymMatrix> mats;
  mats.reserve(n);
  for (int k = 0; k < n; ++k) {
    SymMatrix a(m);
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j) a.set(i, j, u[col_of_pencil(k, i, j)]);
    mats.push_back(std::move(a));
  }
  return SymPencil(std::move(mats));
}

PolyVec ConstraintSystem::g_from(std::span<const Rational> u) const {
  PolyVec g;
  g.reserve(m);
  for (int i = 0; i < m; ++i) {
    Poly p(n);
    for (size_t t = 0; t < g_monomials.size(); ++t) p.add_term(g_monomials[t], u[col_of_g(i, t)]);
    g.push_back(std::move(p));
  }
  return g;
}

ConstraintSystem assemble_constraints(const Poly& h, std::span<const Rational> e, const PolyVec& f,
                                      int dprime) {
  const int n = h.nvars();
  if (static_cast<int>(e.size()) != n) throw std::invalid_argument("dimension mismatch");
  Homogeneity hom = homogeneity(h);
  if (hom.kind != Homogeneity::Kind::homogeneous)
    throw std::invalid_argument("h must be homogeneous and nonzero");
  const int d = hom.degree;
  if (sgn(h(e)) == 0) throw std::invalid_argument("h vanishes at e");
  if (dprime < d - 1) throw std::invalid_argument("d' must be at least d-1");
  if (f.empty() || !uniform_nvars(f) || f.front().nvars() != n)
    throw std::invalid_argument("f entries must share the ring of h");
  if (!homogeneous_entries(f, dprime))
    throw std::invalid_argument("f entries must be homogeneous of degree d'");
  bool some_indivisible = false;
  for (const auto& entry : f)
    if (!entry.is_zero() && !divide_exact(entry, h)) some_indivisible = true;
  if (!some_indivisible)
    throw DivisibilityError("every entry of f is divisible by h");

  ConstraintSystem sys;
  sys.n = n;
  sys.m = static_cast<int>(f.size());
  sys.d = d;
  sys.dprime = dprime;
  sys.g_monomials = monomials_of_degree(n, dprime - d + 1);

  const std::vector<Monomial> eq_monomials = monomials_of_degree(n, dprime + 1);
  Monomial gamma(n);
  for (int i = 0; i < sys.m; ++i) {
    for (const Monomial& beta : eq_monomials) {
      std::map<size_t, Rational> acc;
      // coefficient of beta in sum_j (sum_k x_k A_k[i][j]) f_j
      for (int j = 0; j < sys.m; ++j) {
        const Poly& fj = f[j];
        if (fj.is_zero()) continue;
        for (int k = 0; k < n; ++k) {
          if (beta[k] == 0) continue;
          gamma = beta;
          gamma[k] -= 1;
          Rational c = fj.coeff(gamma);
          if (sgn(c) == 0) continue;
          acc[sys.col_of_pencil(k, i, j)] += c;
        }
      }
      // minus coefficient of beta in h * g_i
      for (size_t t = 0; t < sys.g_monomials.size(); ++t) {
        const Monomial& gm = sys.g_monomials[t];
        bool fits = true;
        gamma = beta;
        for (int k = 0; k < n; ++k) {
          gamma[k] -= gm[k];
          if (gamma[k] < 0) {
            fits = false;
            break;
          }
        }
        if (!fits) continue;
        Rational c = h.coeff(gamma);
        if (sgn(c) == 0) continue;
        acc[sys.col_of_g(i, t)] -= c;
      }
      ConstraintSystem::Row row;
      row.terms.reserve(acc.size());
      for (auto& [col, val] : acc)
        if (sgn(val) != 0) row.terms.emplace_back(col, val);
      sys.rows.push_back(std::move(row));
    }
  }
  return sys;
}

void dump_matrix_market(const ConstraintSystem& sys, std::ostream& os) {
  size_t nnz = 0;
  for (const auto& r : sys.rows) nnz += r.terms.size();
  os << "%% constraint system: coordinate format, rational entries\n";
  os << "% unknowns: " << sys.n << "*" << sys.m << "(" << sys.m << "+1)/2 pencil + " << sys.m
     << "*" << sys.g_monomials.size() << " g-coefficients\n";
  os << sys.rows.size() << " " << sys.unknown_count() << " " << nnz << "\n";
  for (size_t r = 0; r < sys.rows.size(); ++r)
    for (const auto& [c, v] : sys.rows[r].terms)
      os << (r + 1) << " " << (c + 1) << " " << rational_str(v) << "\n";
  for (size_t r = 0; r < sys.rows.size(); ++r)
    if (sgn(sys.rows[r].rhs) != 0) os << "rhs " << (r + 1) << " " << rational_str(sys.rows[r].rhs) << "\n";
}

namespace {

// Cyclic Jacobi eigendecomposition for small symmetric matrices; a, v are
// k x k row-major, v's columns end up as eigenvectors.
void jacobi_eigen(std::vector<double>& a, int k, std::vector<double>& v, std::vector<double>& w,
                  double tol = 1e-12, int max_sweeps = 64) {
  v.assign(static_cast<size_t>(k) * k, 0.0);
  for (int i = 0; i < k; ++i) v[static_cast<size_t>(i) * k + i] = 1.0;
  auto at = [&](std::vector<double>& m, int i, int j) -> double& {
    return m[static_cast<size_t>(i) * k + j];
  };
  double norm = 0;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) norm += at(a, i, j) * at(a, i, j);
  norm = std::sqrt(norm);
  if (norm == 0) norm = 1;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0;
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j) off += 2 * at(a, i, j) * at(a, i, j);
    if (std::sqrt(off) <= tol * norm) break;
    for (int p = 0; p < k - 1; ++p) {
      for (int q = p + 1; q < k; ++q) {
        double apq = at(a, p, q);
        if (apq == 0) continue;
        double app = at(a, p, p), aqq = at(a, q, q);
        double theta = (aqq - app) / (2 * apq);
        double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        double c = 1 / std::sqrt(t * t + 1);
        double s = t * c;
        for (int i = 0; i < k; ++i) {
          double aip = at(a, i, p), aiq = at(a, i, q);
          at(a, i, p) = c * aip - s * aiq;
          at(a, i, q) = s * aip + c * aiq;
        }
        for (int j = 0; j < k; ++j) {
          double apj = at(a, p, j), aqj = at(a, q, j);
          at(a, p, j) = c * apj - s * aqj;
          at(a, q, j) = s * apj + c * aqj;
        }
        for (int i = 0; i < k; ++i) {
          double vip = at(v, i, p), viq = at(v, i, q);
          at(v, i, p) = c * vip - s * viq;
          at(v, i, q) = s * vip + c * viq;
        }
      }
    }
  }
  w.resize(k);
  for (int i = 0; i < k; ++i) w[i] = at(a, i, i);
}

// Exact affine data shared by the solver and the rationalization step:
// reduced row echelon form of [R | b] over Q with partial pivoting by
// absolute numerator size, yielding an exact null-space basis and an exact
// particular solution (free variables zero).
struct ExactAffineData {
  bool consistent = true;
  std::vector<std::vector<Rational>> null_basis;  // each of length K
  std::vector<Rational> particular;               // length K
};

ExactAffineData exact_affine_data(const ConstraintSystem& sys) {
  const size_t K = sys.unknown_count();
  std::vector<std::vector<Rational>> rows;
  for (const auto& r : sys.rows) {
    if (r.terms.empty() && sgn(r.rhs) == 0) continue;
    std::vector<Rational> dense(K + 1, Rational(0));
    for (const auto& [c, v] : r.terms) dense[c] = v;
    dense[K] = r.rhs;
    rows.push_back(std::move(dense));
  }
  ExactAffineData out;
  out.particular.assign(K, Rational(0));
  std::vector<size_t> pivot_col;
  size_t r = 0;
  for (size_t c = 0; c < K && r < rows.size(); ++c) {
    size_t best = SIZE_MAX;
    Integer best_num(0);
    for (size_t i = r; i < rows.size(); ++i) {
      if (sgn(rows[i][c]) == 0) continue;
      Integer num = abs(rows[i][c].get_num());
      if (best == SIZE_MAX || num > best_num) {
        best = i;
        best_num = num;
      }
    }
    if (best == SIZE_MAX) continue;
    std::swap(rows[best], rows[r]);
    Rational inv = Rational(1) / rows[r][c];
    for (size_t j = c; j <= K; ++j) rows[r][j] *= inv;
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i == r || sgn(rows[i][c]) == 0) continue;
      Rational f = rows[i][c];
      for (size_t j = c; j <= K; ++j) rows[i][j] -= f * rows[r][j];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (size_t i = r; i < rows.size(); ++i)
    if (sgn(rows[i][K]) != 0) out.consistent = false;

  std::vector<uint8_t> is_pivot(K, 0);
  for (size_t c : pivot_col) is_pivot[c] = 1;
  if (out.consistent)
    for (size_t i = 0; i < pivot_col.size(); ++i) out.particular[pivot_col[i]] = rows[i][K];
  for (size_t fc = 0; fc < K; ++fc) {
    if (is_pivot[fc]) continue;
    std::vector<Rational> v(K, Rational(0));
    v[fc] = 1;
    for (size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -rows[i][fc];
    out.null_basis.push_back(std::move(v));
  }
  return out;
}

// Everything the iteration needs, precomputed once. Coordinates are svec
// scaled (off-diagonal pencil entries carry sqrt(2)) so both projections are
// orthogonal in the same inner product. The affine projector rests on the
// exact null-space basis, orthonormalized in doubles.
struct SolverWorkspace {
  size_t K;
  int n, m;
  std::vector<double> scale;                                 // per unknown
  std::vector<std::vector<std::pair<size_t, double>>> rows;  // scaled coefficients
  std::vector<double> rhs;
  bool consistent = true;
  std::vector<std::vector<double>> null_ortho;  // orthonormal, scaled coords
  std::vector<double> ustar;                    // particular solution, scaled coords
  std::vector<double> e;                        // e as doubles
  double e_norm2 = 0;

  SolverWorkspace(const ConstraintSystem& sys, std::span<const Rational> epoint,
                  const ExactAffineData& affine) {
    K = sys.unknown_count();
    n = sys.n;
    m = sys.m;
    scale.assign(K, 1.0);
    const double rt2 = std::sqrt(2.0);
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) scale[sys.col_of_pencil(k, i, j)] = rt2;
    for (const auto& r : sys.rows) {
      std::vector<std::pair<size_t, double>> row;
      row.reserve(r.terms.size());
      for (const auto& [c, v] : r.terms) row.emplace_back(c, to_double(v) / scale[c]);
      rows.push_back(std::move(row));
      rhs.push_back(to_double(r.rhs));
    }
    e.reserve(epoint.size());
    for (const auto& c : epoint) {
      double x = to_double(c);
      e.push_back(x);
      e_norm2 += x * x;
    }

    consistent = affine.consistent;
    ustar.assign(K, 0.0);
    for (size_t i = 0; i < K; ++i) ustar[i] = to_double(affine.particular[i]) * scale[i];
    // Modified Gram-Schmidt with one reorthogonalization pass.
    for (const auto& nb : affine.null_basis) {
      std::vector<double> v(K);
      for (size_t i = 0; i < K; ++i) v[i] = to_double(nb[i]) * scale[i];
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& q : null_ortho) {
          double dot = 0;
          for (size_t i = 0; i < K; ++i) dot += q[i] * v[i];
          for (size_t i = 0; i < K; ++i) v[i] -= dot * q[i];
        }
      double norm = 0;
      for (double x : v) norm += x * x;
      norm = std::sqrt(norm);
      if (norm < 1e-12) continue;  // exact basis is independent; this never fires
      for (double& x : v) x /= norm;
      null_ortho.push_back(std::move(v));
    }
  }

  double residual_inf(const std::vector<double>& u) const {
    double worst = 0;
    for (size_t r = 0; r < rows.size(); ++r) {
      double acc = -rhs[r];
      for (const auto& [c, v] : rows[r]) acc += v * u[c];
      worst = std::max(worst, std::abs(acc));
    }
    return worst;
  }

  void project_affine(std::vector<double>& u) const {
    std::vector<double> out = ustar;
    for (const auto& q : null_ortho) {
      double dot = 0;
      for (size_t i = 0; i < K; ++i) dot += q[i] * (u[i] - ustar[i]);
      for (size_t i = 0; i < K; ++i) out[i] += dot * q[i];
    }
    u = std::move(out);
  }

  // Builds A(e) from scaled coordinates.
  void build_ae(const ConstraintSystem& sys, const std::vector<double>& u,
                std::vector<double>& s) const {
    const double inv_rt2 = 1.0 / std::sqrt(2.0);
    s.assign(static_cast<size_t>(m) * m, 0.0);
    for (int k = 0; k < n; ++k) {
      if (e[k] == 0) continue;
      for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
          double val = u[sys.col_of_pencil(k, i, j)];
          if (i != j) val *= inv_rt2;
          s[static_cast<size_t>(i) * m + j] += e[k] * val;
          if (i != j) s[static_cast<size_t>(j) * m + i] += e[k] * val;
        }
    }
  }

  double lambda_min_ae(const ConstraintSystem& sys, const std::vector<double>& u) const {
    std::vector<double> s;
    build_ae(sys, u, s);
    std::vector<double> v, w;
    jacobi_eigen(s, m, v, w);
    double lmin = w.empty() ? 0.0 : w[0];
    for (double x : w) lmin = std::min(lmin, x);
    return lmin;
  }

  // Projection onto {A(e) >= level * I}, exact in the scaled metric; touches
  // only the unknowns feeding A(e).
  void project_psd(const ConstraintSystem& sys, std::vector<double>& u, double level) const {
    std::vector<double> s;
    build_ae(sys, u, s);
    std::vector<double> v, w;
    jacobi_eigen(s, m, v, w);
    bool needs = false;
    for (double x : w)
      if (x < level) needs = true;
    if (!needs) return;
    // delta = V diag(max(level, w) - w) V^T
    std::vector<double> delta(static_cast<size_t>(m) * m, 0.0);
    for (int j = 0; j < m; ++j) {
      double bump = std::max(level, w[j]) - w[j];
      if (bump == 0) continue;
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
          delta[static_cast<size_t>(a) * m + b] +=
              bump * v[static_cast<size_t>(a) * m + j] * v[static_cast<size_t>(b) * m + j];
    }
    const double rt2 = std::sqrt(2.0);
    for (int k = 0; k < n; ++k) {
      if (e[k] == 0) continue;
      double f = e[k] / e_norm2;
      for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
          double d = delta[static_cast<size_t>(i) * m + j];
          if (i != j) d *= rt2;
          u[sys.col_of_pencil(k, i, j)] += f * d;
        }
    }
  }
};

}  // namespace

NumericSolution solve_feasibility(const ConstraintSystem& sys, std::span<const Rational> e,
                                  const SolveOptions& opts) {
  if (static_cast<int>(e.size()) != sys.n) throw std::invalid_argument("dimension mismatch");
  if (sys.m > 64) throw std::invalid_argument("pencil size beyond eigensolver bound");
  ExactAffineData affine = exact_affine_data(sys);
  SolverWorkspace ws(sys, e, affine);
  if (ws.e_norm2 == 0) throw std::invalid_argument("e must be nonzero");
  if (!ws.consistent) {
    // the linear part alone is contradictory
    NumericSolution sol;
    sol.u.assign(ws.K, 0.0);
    sol.residual = ws.residual_inf(sol.u);
    sol.feasible = false;
    return sol;
  }

  // Project onto {A(e) >= level*I} with level strictly above 1: the
  // constraints are homogeneous in (A, g), so any positive margin is still
  // the A(e) >= I normalization, and a generous margin makes the alternation
  // cross lambda_min = 1 far sooner.
  const double level = 1.5;

  std::vector<double> x(ws.K), p(ws.K, 0.0), t(ws.K);
  SplitMix64 rng = sample_stream(opts.seed, 0x5eedULL);
  for (size_t i = 0; i < ws.K; ++i) x[i] = (rng.next_unit() - 0.5) * 0.2;

  std::ofstream trace;
  if (!opts.trace_csv.empty()) {
    trace.open(opts.trace_csv);
    trace << "iter,residual,lambda_min\n";
  }

  NumericSolution sol;
  for (uint64_t iter = 1; iter <= opts.max_iter; ++iter) {
    for (size_t i = 0; i < ws.K; ++i) t[i] = x[i] + p[i];
    std::vector<double> y = t;
    ws.project_psd(sys, y, level);
    for (size_t i = 0; i < ws.K; ++i) p[i] = t[i] - y[i];
    x = std::move(y);
    ws.project_affine(x);
    sol.iterations = iter;
    if (iter % 16 == 0 || iter == opts.max_iter) {
      double res = ws.residual_inf(x);
      double lmin = ws.lambda_min_ae(sys, x);
      if (trace.is_open()) trace << iter << "," << res << "," << lmin << "\n";
      if (res <= opts.residual_tol && lmin >= 1.0 - opts.residual_tol) {
        sol.residual = res;
        sol.lambda_min = lmin;
        sol.feasible = true;
        break;
      }
      sol.residual = res;
      sol.lambda_min = lmin;
    }
  }
  sol.u.resize(ws.K);
  for (size_t i = 0; i < ws.K; ++i) sol.u[i] = x[i] / ws.scale[i];
  return sol;
}

namespace {

// Exact Gaussian elimination for Gram * lambda = rhs (symmetric PSD Gram,
// possibly singular but consistent). Partial pivoting by absolute numerator
// size; free variables fixed at zero. Returns false on inconsistency.
bool solve_exact_consistent(std::vector<std::vector<Rational>>& a, std::vector<Rational>& b,
                            std::vector<Rational>& out) {
  const size_t p = a.size();
  std::vector<size_t> pivot_col_of_row(p, SIZE_MAX);
  size_t r = 0;
  for (size_t c = 0; c < p && r < p; ++c) {
    size_t best = SIZE_MAX;
    Integer best_num(0);
    for (size_t i = r; i < p; ++i) {
      if (sgn(a[i][c]) == 0) continue;
      Integer num = abs(a[i][c].get_num());
      if (best == SIZE_MAX || num > best_num) {
        best = i;
        best_num = num;
      }
    }
    if (best == SIZE_MAX) continue;
    std::swap(a[best], a[r]);
    std::swap(b[best], b[r]);
    for (size_t i = r + 1; i < p; ++i) {
      if (sgn(a[i][c]) == 0) continue;
      Rational f = a[i][c] / a[r][c];
      for (size_t j = c; j < p; ++j) a[i][j] -= f * a[r][j];
      b[i] -= f * b[r];
    }
    pivot_col_of_row[r] = c;
    ++r;
  }
  for (size_t i = r; i < p; ++i)
    if (sgn(b[i]) != 0) return false;
  out.assign(p, Rational(0));
  for (size_t i = r; i-- > 0;) {
    size_t c = pivot_col_of_row[i];
    Rational acc = b[i];
    for (size_t j = c + 1; j < p; ++j)
      if (sgn(a[i][j]) != 0) acc -= a[i][j] * out[j];
    out[c] = acc / a[i][c];
  }
  return true;
}

RationalizeResult rationalize_impl(std::span<const Rational> numeric, const ConstraintSystem& sys,
                                   std::span<const Rational> e, const SolveOptions& opts) {
  RationalizeResult result;
  const size_t K = sys.unknown_count();
  if (numeric.size() != K) throw std::invalid_argument("unknown count mismatch");

  ExactAffineData affine = exact_affine_data(sys);
  if (!affine.consistent) {
    result.failed_stage = RationalizeStage::projection;
    return result;
  }
  const size_t s = affine.null_basis.size();

  // Gram matrix of the exact null basis, once per call.
  std::vector<std::vector<Rational>> gram(s, std::vector<Rational>(s, Rational(0)));
  for (size_t i = 0; i < s; ++i)
    for (size_t j = i; j < s; ++j) {
      Rational acc(0);
      for (size_t k = 0; k < K; ++k) acc += affine.null_basis[i][k] * affine.null_basis[j][k];
      gram[i][j] = acc;
      gram[j][i] = std::move(acc);
    }

  Integer bound = opts.denom_bound;
  for (int attempt = 0; attempt <= 3; ++attempt, bound *= 10) {
    // (1) round
    std::vector<Rational> rounded;
    rounded.reserve(K);
    for (const auto& x : numeric) rounded.push_back(best_approx(x, bound));

    // (2) exact minimum-norm projection onto {Ru = b} = particular + null span
    std::vector<Rational> u = affine.particular;
    if (s > 0) {
      std::vector<Rational> rhs(s, Rational(0));
      for (size_t i = 0; i < s; ++i) {
        Rational acc(0);
        for (size_t k = 0; k < K; ++k)
          acc += affine.null_basis[i][k] * (rounded[k] - affine.particular[k]);
        rhs[i] = std::move(acc);
      }
      auto gram_copy = gram;
      std::vector<Rational> y;
      if (!solve_exact_consistent(gram_copy, rhs, y)) {
        result.failed_stage = RationalizeStage::projection;
        return result;
      }
      for (size_t i = 0; i < s; ++i) {
        if (sgn(y[i]) == 0) continue;
        for (size_t k = 0; k < K; ++k) u[k] += y[i] * affine.null_basis[i][k];
      }
    }
    for (const auto& row : sys.rows) {
      Rational acc = -row.rhs;
      for (const auto& [c, v] : row.terms) acc += v * u[c];
      if (sgn(acc) != 0) {
        result.failed_stage = RationalizeStage::projection;
        return result;
      }
    }

    // (3) exact definiteness at e
    SymPencil pencil = sys.pencil_from(u);
    if (is_positive_definite(pencil_eval(pencil, e))) {
      result.solution = ExactSolution{std::move(pencil), sys.g_from(u), std::move(u)};
      result.failed_stage = RationalizeStage::none;
      return result;
    }
    result.failed_stage = RationalizeStage::definiteness;
  }
  return result;
}

}  // namespace

RationalizeResult rationalize(std::span<const Rational> numeric, const ConstraintSystem& sys,
                              std::span<const Rational> e, const SolveOptions& opts) {
  return rationalize_impl(numeric, sys, e, opts);
}

RationalizeResult rationalize(std::span<const double> numeric, const ConstraintSystem& sys,
                              std::span<const Rational> e, const SolveOptions& opts) {
  std::vector<Rational> exact;
  exact.reserve(numeric.size());
  for (double x : numeric) {
    if (!std::isfinite(x)) {
      RationalizeResult r;
      r.failed_stage = RationalizeStage::rounding;
      return r;
    }
    exact.push_back(rational_from_double(x));
  }
  return rationalize_impl(exact, sys, e, opts);
}

Poly derived_p(const PolyVec& f, const PolyVec& g) {
  if (f.empty() || f.size() != g.size()) throw std::invalid_argument("f and g sizes differ");
  const int n = f.front().nvars();
  Poly p(n);
  for (size_t i = 0; i < f.size(); ++i) {
    if (g[i].is_zero()) continue;
    if (g[i].total_deg() != 0) throw std::invalid_argument("g is not constant");
    p += f[i].scaled(g[i].coeff(Monomial(n, 0)));
  }
  return p;
}

std::vector<bool> check_mixed_identity(const Poly& h, const Poly& p, const PolyVec& f,
                                       const SymPencil& pencil) {
  const int n = h.nvars();
  const int m = pencil.size();
  if (static_cast<int>(f.size()) != m) throw std::invalid_argument("shape mismatch");
  std::vector<bool> out;
  out.reserve(n);
  for (int var = 0; var < n; ++var) {
    Poly lhs = h.derivative(var) * p - h * p.derivative(var);
    Poly rhs(n);
    for (int a = 0; a < m; ++a) {
      Poly rowsum(n);
      for (int b = 0; b < m; ++b) {
        const Rational& c = pencil.matrices[var].at(a, b);
        if (sgn(c) != 0) rowsum += f[b].scaled(c);
      }
      if (!rowsum.is_zero()) rhs += f[a] * rowsum;
    }
    out.push_back(lhs == rhs);
  }
  return out;
}

SosWitness sos_witness_check(const PolyVec& f, const SymMatrix& ae) {
  if (!is_positive_definite(ae)) throw std::invalid_argument("matrix is not positive definite");
  const int m = ae.size();
  if (static_cast<int>(f.size()) != m) throw std::invalid_argument("shape mismatch");
  const int n = f.front().nvars();

  // A = L D L^T, L unit lower triangular
  std::vector<std::vector<Rational>> L(m, std::vector<Rational>(m, Rational(0)));
  std::vector<Rational> D(m, Rational(0));
  for (int j = 0; j < m; ++j) {
    Rational dj = ae.at(j, j);
    for (int k = 0; k < j; ++k) dj -= L[j][k] * L[j][k] * D[k];
    D[j] = dj;
    L[j][j] = 1;
    for (int i = j + 1; i < m; ++i) {
      Rational v = ae.at(i, j);
      for (int k = 0; k < j; ++k) v -= L[i][k] * L[j][k] * D[k];
      L[i][j] = v / dj;
    }
  }

  SosWitness w;
  w.weights = D;
  w.squares.reserve(m);
  for (int i = 0; i < m; ++i) {
    Poly s = f[i];
    for (int r = i + 1; r < m; ++r)
      if (sgn(L[r][i]) != 0) s += f[r].scaled(L[r][i]);
    w.squares.push_back(std::move(s));
  }

  Poly expansion(n);
  for (int i = 0; i < m; ++i) expansion += (w.squares[i] * w.squares[i]).scaled(w.weights[i]);
  Poly direct(n);
  for (int a = 0; a < m; ++a) {
    Poly rowsum(n);
    for (int b = 0; b < m; ++b) {
      const Rational& c = ae.at(a, b);
      if (sgn(c) != 0) rowsum += f[b].scaled(c);
    }
    if (!rowsum.is_zero()) direct += f[a] * rowsum;
  }
  w.verified = expansion == direct;
  return w;
}

}  // namespace hypercone

#include "surfrec/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

namespace surfrec {

namespace {

// Thomas elimination; sub[0] and super[n-1] are ignored.
bool solve_tridiagonal(const std::vector<double>& sub, std::vector<double> diag,
                       const std::vector<double>& super, std::vector<double> rhs,
                       std::vector<double>& x) {
  const std::size_t n = diag.size();
  for (std::size_t i = 1; i < n; ++i) {
    if (diag[i - 1] == 0.0) return false;
    const double m = sub[i] / diag[i - 1];
    diag[i] -= m * super[i - 1];
    rhs[i] -= m * rhs[i - 1];
  }
  if (diag[n - 1] == 0.0) return false;
  x.assign(n, 0.0);
  x[n - 1] = rhs[n - 1] / diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) x[i] = (rhs[i] - super[i] * x[i + 1]) / diag[i];
  return true;
}

}  // namespace

bool solve_cyclic_tridiagonal(const std::vector<double>& sub, const std::vector<double>& diag,
                              const std::vector<double>& super, const std::vector<double>& rhs,
                              std::vector<double>& x) {
  const std::size_t n = diag.size();
  assert(n >= 3 && sub.size() == n && super.size() == n && rhs.size() == n);

  // Sherman-Morrison: strip the two corner entries into a rank-one update
  // A = A' + u v^T with u = (gamma, 0, .., 0, super[n-1]) and
  // v = (1, 0, .., 0, sub[0]/gamma).
  const double gamma = -diag[0];
  if (gamma == 0.0) return false;

  std::vector<double> diag_mod = diag;
  diag_mod[0] -= gamma;
  diag_mod[n - 1] -= super[n - 1] * sub[0] / gamma;

  std::vector<double> y, z;
  if (!solve_tridiagonal(sub, diag_mod, super, rhs, y)) return false;
  std::vector<double> u(n, 0.0);
  u[0] = gamma;
  u[n - 1] = super[n - 1];
  if (!solve_tridiagonal(sub, diag_mod, super, u, z)) return false;

  const double vy = y[0] + sub[0] / gamma * y[n - 1];
  const double vz = z[0] + sub[0] / gamma * z[n - 1];
  const double denom = 1.0 + vz;
  if (denom == 0.0 || !std::isfinite(denom)) return false;

  x.assign(n, 0.0);
  const double factor = vy / denom;
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = y[i] - factor * z[i];
    if (!std::isfinite(x[i])) return false;
  }
  return true;
}

DenseSolveInfo lu_solve(std::vector<double>& a, std::vector<double>& b, std::size_t n) {
  DenseSolveInfo info;
  double max_piv = 0.0;
  double min_piv = std::numeric_limits<double>::infinity();

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    double best = std::abs(a[k * n + k]);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::abs(a[i * n + k]);
      if (v > best) {
        best = v;
        pivot = i;
      }
    }
    if (best == 0.0) return info;
    if (pivot != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[pivot * n + j]);
      std::swap(b[k], b[pivot]);
    }
    max_piv = std::max(max_piv, best);
    min_piv = std::min(min_piv, best);

    const double inv = 1.0 / a[k * n + k];
    for (std::size_t i = k + 1; i < n; ++i) {
      const double m = a[i * n + k] * inv;
      if (m == 0.0) continue;
      a[i * n + k] = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) a[i * n + j] -= m * a[k * n + j];
      b[i] -= m * b[k];
    }
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a[i * n + j] * b[j];
    b[i] = s / a[i * n + i];
    if (!std::isfinite(b[i])) return info;
  }
  info.ok = true;
  info.pivot_ratio = max_piv / min_piv;
  return info;
}

void CsrMatrix::add_row(const std::vector<std::size_t>& cols, const std::vector<double>& vals) {
  assert(cols.size() == vals.size());
  col_.insert(col_.end(), cols.begin(), cols.end());
  val_.insert(val_.end(), vals.begin(), vals.end());
  row_ptr_.push_back(col_.size());
}

void CsrMatrix::multiply(const std::vector<double>& x, std::vector<double>& y) const {
  y.assign(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    double s = 0.0;
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) s += val_[k] * x[col_[k]];
    y[i] = s;
  }
}

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

}  // namespace

IterativeSolveInfo bicgstab(const CsrMatrix& a, const std::vector<double>& b,
                            std::vector<double>& x, double tol, std::size_t max_iterations) {
  const std::size_t n = a.rows();
  IterativeSolveInfo info;
  x.assign(n, 0.0);

  const double bnorm = norm(b);
  if (bnorm == 0.0) {
    info.converged = true;
    return info;
  }

  std::vector<double> r = b;
  std::vector<double> r_hat = r;
  std::vector<double> p(n, 0.0), v(n, 0.0), s(n), t(n), tmp(n);

  // The shadow vector can become orthogonal to the residual (it always does
  // when b is supported on identity rows only); restarting from the current
  // residual recovers the iteration.
  auto restart = [&] {
    a.multiply(x, tmp);
    for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - tmp[i];
    r_hat = r;
    p.assign(n, 0.0);
    v.assign(n, 0.0);
    return 1.0;
  };

  double rho = 1.0, alpha = 1.0, omega = 1.0;
  for (std::size_t it = 1; it <= max_iterations; ++it) {
    info.iterations = it;
    double rho_next = dot(r_hat, r);
    if (std::abs(rho_next) < 1e-14 * norm(r) * norm(r_hat) || omega == 0.0) {
      rho = alpha = omega = restart();
      rho_next = dot(r_hat, r);
      if (rho_next == 0.0) break;  // residual itself vanished
    }
    const double beta = (rho_next / rho) * (alpha / omega);
    rho = rho_next;
    for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * (p[i] - omega * v[i]);

    a.multiply(p, v);
    const double rhv = dot(r_hat, v);
    if (rhv == 0.0) break;
    alpha = rho / rhv;
    for (std::size_t i = 0; i < n; ++i) s[i] = r[i] - alpha * v[i];

    a.multiply(s, t);
    const double tt = dot(t, t);
    omega = tt > 0.0 ? dot(t, s) / tt : 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += alpha * p[i] + omega * s[i];
      r[i] = s[i] - omega * t[i];
    }

    if (norm(r) / bnorm <= tol) {
      a.multiply(x, tmp);
      for (std::size_t i = 0; i < n; ++i) tmp[i] = b[i] - tmp[i];
      info.relative_residual = norm(tmp) / bnorm;
      if (info.relative_residual <= tol) {
        info.converged = true;
        return info;
      }
      r = tmp;  // recursion drifted from the true residual; continue on it
    }
  }

  a.multiply(x, tmp);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = b[i] - tmp[i];
  info.relative_residual = norm(tmp) / bnorm;
  info.converged = info.relative_residual <= tol;
  return info;
}

}  // namespace surfrec

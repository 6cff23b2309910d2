#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace surfrec {

/// Solves the cyclically-coupled tridiagonal system where row i couples
/// unknowns i-1, i, i+1 (indices mod n): sub[i] multiplies x[(i-1+n)%n],
/// diag[i] multiplies x[i], super[i] multiplies x[(i+1)%n]. n >= 3.
/// Returns false when elimination hits a vanishing pivot.
bool solve_cyclic_tridiagonal(const std::vector<double>& sub, const std::vector<double>& diag,
                              const std::vector<double>& super, const std::vector<double>& rhs,
                              std::vector<double>& x);

struct DenseSolveInfo {
  bool ok = false;
  /// max |pivot| / min |pivot| from the LU factorization; a cheap
  /// conditioning proxy for the small local systems this is used on.
  double pivot_ratio = 0.0;
};

/// In-place partial-pivoting LU solve of the n-by-n row-major system a x = b;
/// the solution overwrites b.
DenseSolveInfo lu_solve(std::vector<double>& a, std::vector<double>& b, std::size_t n);

/// Compressed sparse row matrix assembled row by row.
class CsrMatrix {
 public:
  explicit CsrMatrix(std::size_t n) : n_(n), row_ptr_(1, 0) {}

  void add_row(const std::vector<std::size_t>& cols, const std::vector<double>& vals);
  std::size_t rows() const { return n_; }
  void multiply(const std::vector<double>& x, std::vector<double>& y) const;

 private:
  std::size_t n_;
  std::vector<std::size_t> row_ptr_;
  std::vector<std::size_t> col_;
  std::vector<double> val_;
};

struct IterativeSolveInfo {
  bool converged = false;
  std::size_t iterations = 0;
  double relative_residual = 0.0;
};

/// BiCGSTAB from a zero initial guess. Convergence is declared on the true
/// residual ||b - Ax|| / ||b|| <= tol, not the recursed one. Callers wanting
/// diagonal preconditioning scale rows before assembly.
IterativeSolveInfo bicgstab(const CsrMatrix& a, const std::vector<double>& b,
                            std::vector<double>& x, double tol, std::size_t max_iterations);

/// Deterministic 64-bit generator (splitmix64); identical streams on every
/// platform, unlike the distributions in <random>.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t state_;
};

}  // namespace surfrec

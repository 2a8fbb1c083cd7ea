#pragma once

// Small numerical kernels shared across the toolkit: tridiagonal and banded
// symmetric eigensolves (LAPACK-backed), bracketed 1D minimization, root
// refinement, and deterministic helpers.

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sctk {

// Thrown when an iterative solve fails to reach its tolerance within budget.
class numeric_error : public std::runtime_error {
 public:
  numeric_error(const std::string& what, double residual = -1.0)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

namespace num {

struct TridiagEig {
  double value = 0.0;
  std::vector<double> vector;  // empty if not requested
};

// Lowest eigenpair of a symmetric tridiagonal matrix (diag d, off-diagonal e).
TridiagEig tridiag_lowest(const std::vector<double>& d,
                          const std::vector<double>& e,
                          bool want_vector);

// Full spectrum of a dense symmetric matrix (column-major, n x n). Oracle use.
std::vector<double> dense_sym_eigenvalues(std::vector<double> a, int n);

// Symmetric banded matrix in LAPACK upper storage, column-major:
// entry (i, j) with j >= i and j - i <= kd lives at ab[(kd + i - j) + j * (kd+1)].
class SymBanded {
 public:
  SymBanded(int n, int kd) : n_(n), kd_(kd), ab_((kd + 1) * (size_t)n, 0.0) {}
  double& at(int i, int j);  // requires i <= j, j - i <= kd
  int n() const { return n_; }
  int kd() const { return kd_; }

  // y = A x
  void multiply(const std::vector<double>& x, std::vector<double>& y) const;

  // Smallest eigenpair by shift-and-invert inverse iteration with Cholesky
  // refactorization; deterministic start vector.
  struct EigResult {
    double value = 0.0;
    std::vector<double> vector;
    double residual = 0.0;
    int iterations = 0;
  };
  EigResult lowest_eigenpair(double tol, int max_iter = 400) const;

 private:
  int n_, kd_;
  std::vector<double> ab_;
};

struct GoldenResult {
  double xmin = 0.0;
  double fmin = 0.0;
  int evaluations = 0;
};

// Coarse scan on [a, b] with `scan_n` points followed by golden-section
// refinement of the bracketing triple. Throws numeric_error if the scan
// minimum sits on the window edge (no interior bracket).
GoldenResult golden_min(const std::function<double(double)>& f, double a,
                        double b, int scan_n, double xtol);

// Bisection for a sign change of f on [a, b]; requires f(a) and f(b) of
// opposite sign. Relative tolerance on the abscissa.
double bisect_root(const std::function<double(double)>& f, double a, double b,
                   double fa, double fb, double rel_tol);

// Deterministic xorshift64* generator for seeded starts and test fields.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}
  std::uint64_t next_u64() {
    std::uint64_t x = state_;
    x ^= x >> 12;
    x ^= x << 25;
    x ^= x >> 27;
    state_ = x;
    return x * 0x2545f4914f6cdd1dull;
  }
  // uniform in (0, 1)
  double next_double() {
    return (next_u64() >> 11) * (1.0 / 9007199254740992.0) + 0x1p-54;
  }
  // uniform in (-1, 1)
  double next_signed() { return 2.0 * next_double() - 1.0; }

 private:
  std::uint64_t state_;
};

}  // namespace num
}  // namespace sctk

#include "num.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <cstring>

namespace sctk {
namespace num {

TridiagEig tridiag_lowest(const std::vector<double>& d,
                          const std::vector<double>& e, bool want_vector) {
  const lapack_int n = (lapack_int)d.size();
  if (n < 1 || e.size() + 1 != d.size())
    throw std::invalid_argument("tridiag_lowest: bad sizes");
  std::vector<double> dc = d, ec = e;
  ec.resize(n, 0.0);  // dstevr wants length n workspace for e
  lapack_int m = 0;
  std::vector<double> w(n, 0.0);
  TridiagEig out;
  if (want_vector) {
    std::vector<double> z(n, 0.0);
    std::vector<lapack_int> isuppz(2, 0);
    lapack_int info = LAPACKE_dstevr(LAPACK_COL_MAJOR, 'V', 'I', n, dc.data(),
                                     ec.data(), 0.0, 0.0, 1, 1, 0.0, &m,
                                     w.data(), z.data(), n, isuppz.data());
    if (info != 0 || m < 1)
      throw numeric_error("tridiag_lowest: dstevr failed, info=" +
                          std::to_string(info));
    out.value = w[0];
    out.vector = std::move(z);
  } else {
    lapack_int info = LAPACKE_dstevr(LAPACK_COL_MAJOR, 'N', 'I', n, dc.data(),
                                     ec.data(), 0.0, 0.0, 1, 1, 0.0, &m,
                                     w.data(), nullptr, n, nullptr);
    if (info != 0 || m < 1)
      throw numeric_error("tridiag_lowest: dstevr failed, info=" +
                          std::to_string(info));
    out.value = w[0];
  }
  return out;
}

std::vector<double> dense_sym_eigenvalues(std::vector<double> a, int n) {
  std::vector<double> w(n, 0.0);
  lapack_int info =
      LAPACKE_dsyev(LAPACK_COL_MAJOR, 'N', 'U', n, a.data(), n, w.data());
  if (info != 0)
    throw numeric_error("dense_sym_eigenvalues: dsyev failed, info=" +
                        std::to_string(info));
  return w;
}

double& SymBanded::at(int i, int j) {
  if (i > j) std::swap(i, j);
  if (j - i > kd_ || j >= n_ || i < 0)
    throw std::invalid_argument("SymBanded::at out of band");
  return ab_[(size_t)(kd_ + i - j) + (size_t)j * (kd_ + 1)];
}

void SymBanded::multiply(const std::vector<double>& x,
                         std::vector<double>& y) const {
  y.assign(n_, 0.0);
  for (int j = 0; j < n_; ++j) {
    const int i0 = std::max(0, j - kd_);
    const double xj = x[j];
    for (int i = i0; i < j; ++i) {
      const double a = ab_[(size_t)(kd_ + i - j) + (size_t)j * (kd_ + 1)];
      y[i] += a * xj;
      y[j] += a * x[i];
    }
    y[j] += ab_[(size_t)kd_ + (size_t)j * (kd_ + 1)] * xj;
  }
}

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

}  // namespace

SymBanded::EigResult SymBanded::lowest_eigenpair(double tol,
                                                 int max_iter) const {
  const int ldab = kd_ + 1;
  // Gershgorin lower bound keeps the first shift safely below the spectrum.
  double lower = 1e300;
  for (int j = 0; j < n_; ++j) {
    double diag = ab_[(size_t)kd_ + (size_t)j * ldab];
    double off = 0.0;
    for (int i = std::max(0, j - kd_); i < j; ++i)
      off += std::abs(ab_[(size_t)(kd_ + i - j) + (size_t)j * ldab]);
    for (int jj = j + 1; jj < std::min(n_, j + kd_ + 1); ++jj)
      off += std::abs(ab_[(size_t)(kd_ + j - jj) + (size_t)jj * ldab]);
    lower = std::min(lower, diag - off);
  }

  std::vector<double> fact((size_t)ldab * n_);
  auto try_factor = [&](double sigma) -> bool {
    std::memcpy(fact.data(), ab_.data(), fact.size() * sizeof(double));
    for (int j = 0; j < n_; ++j) fact[(size_t)kd_ + (size_t)j * ldab] -= sigma;
    lapack_int info = LAPACKE_dpbtrf(LAPACK_COL_MAJOR, 'U', n_, kd_,
                                     fact.data(), ldab);
    return info == 0;
  };

  double sigma = lower - 1.0;
  if (!try_factor(sigma))
    throw numeric_error("SymBanded: initial factorization failed");

  // Deterministic start: smooth positive profile (overlaps the ground state).
  std::vector<double> x(n_);
  for (int i = 0; i < n_; ++i)
    x[i] = 1.0 + 0.5 * std::sin(0.37 * (i + 1)) / (1.0 + 1e-4 * i);
  double nx = norm2(x);
  for (auto& v : x) v /= nx;

  std::vector<double> ax(n_), y(n_);
  double lam = 0.0, res = 1e300;
  int it = 0;
  int since_refactor = 0;
  for (; it < max_iter; ++it) {
    y = x;
    lapack_int info = LAPACKE_dpbtrs(LAPACK_COL_MAJOR, 'U', n_, kd_, 1,
                                     fact.data(), ldab, y.data(), n_);
    if (info != 0) throw numeric_error("SymBanded: dpbtrs failed");
    double ny = norm2(y);
    for (auto& v : y) v /= ny;
    x.swap(y);
    multiply(x, ax);
    lam = dot(x, ax);
    double r2 = 0.0;
    for (int i = 0; i < n_; ++i) {
      double ri = ax[i] - lam * x[i];
      r2 += ri * ri;
    }
    res = std::sqrt(r2);
    if (res <= tol * std::max(1.0, std::abs(lam))) break;
    // Rayleigh-quotient re-shift: sigma = lam - res stays below lam1 once the
    // iterate is reasonable, and accelerates convergence dramatically.
    ++since_refactor;
    if (since_refactor >= 4 && lam - res > sigma + 0.25 * (lam - sigma)) {
      double cand = lam - res;
      if (try_factor(cand)) {
        sigma = cand;
        since_refactor = 0;
      } else if (try_factor(0.5 * (sigma + cand))) {
        sigma = 0.5 * (sigma + cand);
        since_refactor = 0;
      } else {
        if (!try_factor(sigma))
          throw numeric_error("SymBanded: refactorization failed");
      }
    }
  }
  if (res > tol * std::max(1.0, std::abs(lam)))
    throw numeric_error("SymBanded: inverse iteration did not converge", res);
  EigResult out;
  out.value = lam;
  // Sign convention: largest-magnitude entry positive.
  int imax = 0;
  for (int i = 1; i < n_; ++i)
    if (std::abs(x[i]) > std::abs(x[imax])) imax = i;
  if (x[imax] < 0)
    for (auto& v : x) v = -v;
  out.vector = std::move(x);
  out.residual = res;
  out.iterations = it + 1;
  return out;
}

GoldenResult golden_min(const std::function<double(double)>& f, double a,
                        double b, int scan_n, double xtol) {
  if (!(b > a) || scan_n < 3) throw std::invalid_argument("golden_min: window");
  std::vector<double> xs(scan_n), fs(scan_n);
  int evals = 0;
  for (int i = 0; i < scan_n; ++i) {
    xs[i] = a + (b - a) * i / (scan_n - 1);
    fs[i] = f(xs[i]);
    ++evals;
  }
  int k = 0;
  for (int i = 1; i < scan_n; ++i)
    if (fs[i] < fs[k]) k = i;
  if (k == 0 || k == scan_n - 1)
    throw numeric_error(
        "golden_min: minimum on window edge; widen the search window");
  double lo = xs[k - 1], hi = xs[k + 1];
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - gr * (hi - lo);
  double d = lo + gr * (hi - lo);
  double fc = f(c), fd = f(d);
  evals += 2;
  while (hi - lo > xtol) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - gr * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + gr * (hi - lo);
      fd = f(d);
    }
    ++evals;
  }
  GoldenResult out;
  out.xmin = 0.5 * (lo + hi);
  out.fmin = f(out.xmin);
  out.evaluations = evals + 1;
  return out;
}

double bisect_root(const std::function<double(double)>& f, double a, double b,
                   double fa, double fb, double rel_tol) {
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0) == (fb > 0))
    throw std::invalid_argument("bisect_root: no sign change on bracket");
  for (int it = 0; it < 200; ++it) {
    double m = 0.5 * (a + b);
    if (b - a <= rel_tol * std::max(std::abs(a), std::abs(b))) return m;
    double fm = f(m);
    if (fm == 0.0) return m;
    if ((fm > 0) == (fb > 0)) {
      b = m;
      fb = fm;
    } else {
      a = m;
      fa = fm;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace num
}  // namespace sctk

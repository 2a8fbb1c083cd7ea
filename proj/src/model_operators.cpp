#include "model_operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sctk::models {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Coarse location of the mu minimum and its curvature; used only to center
// and size truncation boxes, never as output.
constexpr double kBandMinLoc = 0.768;
constexpr double kBandCurv = 0.586;

struct Tridiag {
  std::vector<double> d, e;
  std::vector<double> weight;  // quadrature weight per kept node
  std::vector<double> node;
};

// Half line [0, t_max], Neumann at 0 (ghost-point / half-cell weight),
// Dirichlet at t_max (node dropped).  Potential V evaluated at nodes.
template <class V>
Tridiag assemble_half_line(int n, double t_max, V&& pot) {
  const int m = n - 1;
  const double h = t_max / (n - 1);
  Tridiag tri;
  tri.d.resize(m);
  tri.e.resize(m - 1);
  tri.weight.resize(m);
  tri.node.resize(m);
  for (int i = 0; i < m; ++i) {
    tri.node[i] = i * h;
    tri.weight[i] = (i == 0) ? 0.5 * h : h;
    const double k = (i == 0) ? 1.0 / h : 2.0 / h;  // incident edge count / h
    tri.d[i] = k / tri.weight[i] + pot(tri.node[i]);
  }
  for (int i = 0; i + 1 < m; ++i)
    tri.e[i] = -1.0 / (h * std::sqrt(tri.weight[i] * tri.weight[i + 1]));
  return tri;
}

}  // namespace

void DiscParams1D::validate() const {
  if (!(t_max > 0.0)) throw std::invalid_argument("DiscParams1D: t_max <= 0");
  if (n < 16) throw std::invalid_argument("DiscParams1D: n < 16");
}

void SpectralCurve::validate() const {
  if (grid.size() != values.size())
    throw std::invalid_argument("SpectralCurve: size mismatch");
  for (size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw std::invalid_argument("SpectralCurve: grid not increasing");
  for (double v : values)
    if (!std::isfinite(v))
      throw std::invalid_argument("SpectralCurve: non-finite value");
}

void ModelConstants::validate() const {
  if (!(theta0 > 0.5 && theta0 < 1.0))
    throw numeric_error("ModelConstants: theta0 outside (1/2, 1)");
  if (!(delta0 > 0.0 && delta0 < 1.0))
    throw numeric_error("ModelConstants: delta0 outside (0, 1)");
  if (!(s0 > 0.0)) throw numeric_error("ModelConstants: s0 <= 0");
  if (!(nu0_hat > 0.0)) throw numeric_error("ModelConstants: nu0_hat <= 0");
  if (std::abs(alpha1 - std::sqrt(delta0)) > 1e-12)
    throw numeric_error("ModelConstants: alpha1 != sqrt(delta0)");
}

double de_gennes_mu(double s, const DiscParams1D& disc) {
  disc.validate();
  if (!std::isfinite(s)) throw std::invalid_argument("de_gennes_mu: s");
  auto tri = assemble_half_line(disc.n, disc.t_max, [s](double t) {
    const double z = t - s;
    return z * z;
  });
  return num::tridiag_lowest(tri.d, tri.e, false).value;
}

std::pair<double, EigFunction> de_gennes_mu_with_vector(
    double s, const DiscParams1D& disc) {
  disc.validate();
  auto tri = assemble_half_line(disc.n, disc.t_max, [s](double t) {
    const double z = t - s;
    return z * z;
  });
  auto eig = num::tridiag_lowest(tri.d, tri.e, true);
  EigFunction f;
  f.t = tri.node;
  f.u.resize(tri.node.size());
  // Undo the symmetrizing scaling; the result is unit in the weighted L2.
  for (size_t i = 0; i < f.u.size(); ++i)
    f.u[i] = eig.vector[i] / std::sqrt(tri.weight[i]);
  if (f.u[0] < 0.0)
    for (auto& v : f.u) v = -v;
  return {eig.value, std::move(f)};
}

Theta0Result find_theta0(const DiscParams1D& disc, double tol,
                         double window_lo, double window_hi) {
  if (!(tol > 0.0)) throw std::invalid_argument("find_theta0: tol <= 0");
  auto f = [&](double s) { return de_gennes_mu(s, disc); };
  auto res = num::golden_min(f, window_lo, window_hi, 33, tol);
  Theta0Result out{res.fmin, res.xmin};
  if (!(out.theta0 > 0.5 && out.theta0 < 1.0))
    throw numeric_error("find_theta0: minimum outside (1/2, 1)");
  return out;
}

double compute_delta0(double s0, const DiscParams1D& disc, double fd_step) {
  const double mu0 = de_gennes_mu(s0, disc);
  auto second = [&](double h) {
    return (de_gennes_mu(s0 + h, disc) - 2.0 * mu0 +
            de_gennes_mu(s0 - h, disc)) /
           (h * h);
  };
  const double d1 = second(fd_step);
  const double d2 = second(0.5 * fd_step);
  const double richardson = (4.0 * d2 - d1) / 3.0;
  const double delta0 = 0.5 * richardson;
  if (!(delta0 > 0.0))
    throw numeric_error(
        "compute_delta0: non-positive curvature estimate (grid too coarse)");
  return delta0;
}

double de_gennes_mu_slope(double s, const DiscParams1D& disc, double fd_step) {
  return (de_gennes_mu(s + fd_step, disc) - de_gennes_mu(s - fd_step, disc)) /
         (2.0 * fd_step);
}

namespace {

// One truncated-rectangle solve of the tilted half-plane operator at step h.
// Dirichlet on the s-edges and at t = T; Neumann at t = 0.
double sigma_box_solve(double theta, double s_center, double half_width,
                       double t_extent, double h, double eig_tol) {
  const double st = std::sin(theta), ct = std::cos(theta);
  const int ns_total = (int)std::lround(2.0 * half_width / h) + 1;
  const int nt_total = (int)std::lround(t_extent / h) + 1;
  const int ns = ns_total - 2;  // interior s nodes
  const int nt = nt_total - 1;  // t nodes, far Dirichlet node dropped
  const double hs = 2.0 * half_width / (ns_total - 1);
  const double ht = t_extent / (nt_total - 1);
  // Index the shorter direction fastest to keep the bandwidth small.
  const bool t_fast = nt <= ns;
  const int fast = t_fast ? nt : ns;
  num::SymBanded A(ns * nt, fast);
  for (int i = 0; i < ns; ++i) {
    const double s = s_center - half_width + (i + 1) * hs;
    for (int j = 0; j < nt; ++j) {
      const double t = j * ht;
      const int idx = t_fast ? i * nt + j : j * ns + i;
      const int step_t = t_fast ? 1 : ns;
      const int step_s = t_fast ? nt : 1;
      const double v = t * ct - s * st;
      A.at(idx, idx) = 2.0 / (hs * hs) + 2.0 / (ht * ht) + v * v;
      if (j + 1 < nt) {
        const double wj = (j == 0) ? 0.5 * ht : ht;
        A.at(idx, idx + step_t) = -1.0 / (ht * std::sqrt(wj * ht));
      }
      if (i + 1 < ns) A.at(idx, idx + step_s) = -1.0 / (hs * hs);
    }
  }
  return A.lowest_eigenpair(eig_tol).value;
}

}  // namespace

SigmaResult sigma(double theta, const Sigma2DParams& p,
                  const DiscParams1D& disc1d) {
  theta = std::abs(theta);  // sigma is even
  if (theta > kPi / 2 + 1e-12)
    throw std::invalid_argument("sigma: theta outside [0, pi/2]");
  theta = std::min(theta, kPi / 2);
  SigmaResult out;
  if (theta == 0.0) {
    out.value = find_theta0(disc1d).theta0;
    return out;
  }
  const double st = std::sin(theta), ct = std::cos(theta);
  // The ground state sits near s_center with transverse scale
  // (delta0 sin^2 theta)^(-1/4); truncate a few widths out.
  const double s_center =
      (theta < kPi / 2 - 1e-9) ? kBandMinLoc / (std::tan(theta) * std::sqrt(ct))
                               : 0.0;
  const double width =
      std::max(14.0, p.width_factor * std::pow(kBandCurv * st * st, -0.25));
  const double t_extent =
      (theta <= 1.2) ? 12.0
                     : 12.0 + (40.0 - 12.0) * (theta - 1.2) / (kPi / 2 - 1.2);

  const double coarse =
      sigma_box_solve(theta, s_center, width, t_extent, p.h, p.eig_tol);
  double value = coarse;
  if (p.richardson) {
    const double fine = sigma_box_solve(theta, s_center, width, t_extent,
                                        0.5 * p.h, p.eig_tol);
    out.grid_drift = fine - coarse;
    value = (4.0 * fine - coarse) / 3.0;
  }
  if (p.doubling_check) {
    const double doubled = sigma_box_solve(theta, s_center, 2.0 * width,
                                           2.0 * t_extent, p.h, p.eig_tol);
    out.doubling_drift = doubled - coarse;
    out.truncation_flag = std::abs(out.doubling_drift) > p.trunc_tol;
  }
  out.value = value;
  return out;
}

void MontgomeryParams::validate() const {
  if (n < 16 || !(x_max > 0.0) || !(xi_hi > xi_lo) || !(tol > 0.0))
    throw std::invalid_argument("MontgomeryParams: invalid");
}

double montgomery_lambda(double xi, const MontgomeryParams& p) {
  p.validate();
  // Full line, Dirichlet box [-x_max, x_max]; interior nodes only.
  const double h = 2.0 * p.x_max / (p.n - 1);
  const int m = p.n - 2;
  std::vector<double> d(m), e(m - 1, -1.0 / (h * h));
  for (int i = 0; i < m; ++i) {
    const double x = -p.x_max + (i + 1) * h;
    const double z = x * x - xi;
    d[i] = 2.0 / (h * h) + z * z;
  }
  return num::tridiag_lowest(d, e, false).value;
}

MontgomeryResult montgomery_nu0(const MontgomeryParams& p) {
  p.validate();
  auto f = [&](double xi) { return montgomery_lambda(xi, p); };
  auto res = num::golden_min(f, p.xi_lo, p.xi_hi, 41, p.tol);
  return {res.fmin, res.xmin};
}

ModelConstants compute_constants(const DiscParams1D& disc,
                                 const MontgomeryParams& mont) {
  ModelConstants c;
  auto t0 = find_theta0(disc);
  c.theta0 = t0.theta0;
  c.s0 = t0.s0;
  c.delta0 = compute_delta0(c.s0, disc);
  c.alpha1 = std::sqrt(c.delta0);
  auto m = montgomery_nu0(mont);
  c.nu0_hat = m.nu0_hat;
  c.xi_min = m.xi_min;
  c.res_theta0 = {disc.n, disc.t_max, 1e-8};
  c.res_delta0 = {disc.n, disc.t_max, 1e-2};
  c.res_nu0 = {mont.n, mont.x_max, mont.tol};
  c.validate();
  return c;
}

SpectralCurve mu_curve(double s_lo, double s_hi, int n_points,
                       const DiscParams1D& disc) {
  SpectralCurve curve;
  curve.tag = "mu";
  curve.solver_tol = 1e-8;
  for (int i = 0; i < n_points; ++i) {
    const double s = s_lo + (s_hi - s_lo) * i / (n_points - 1);
    curve.grid.push_back(s);
    curve.values.push_back(de_gennes_mu(s, disc));
  }
  curve.validate();
  return curve;
}

SpectralCurve sigma_curve(int n_points, const Sigma2DParams& p,
                          const DiscParams1D& disc) {
  SpectralCurve curve;
  curve.tag = "sigma";
  curve.solver_tol = p.trunc_tol;
  for (int i = 0; i < n_points; ++i) {
    const double theta = kPi / 2 * (i + 1) / (n_points + 1);
    curve.grid.push_back(theta);
    curve.values.push_back(sigma(theta, p, disc).value);
  }
  curve.validate();
  return curve;
}

SpectralCurve montgomery_curve(double xi_lo, double xi_hi, int n_points,
                               const MontgomeryParams& p) {
  SpectralCurve curve;
  curve.tag = "montgomery_lambda";
  curve.solver_tol = p.tol;
  for (int i = 0; i < n_points; ++i) {
    const double xi = xi_lo + (xi_hi - xi_lo) * i / (n_points - 1);
    curve.grid.push_back(xi);
    curve.values.push_back(montgomery_lambda(xi, p));
  }
  curve.validate();
  return curve;
}

}  // namespace sctk::models

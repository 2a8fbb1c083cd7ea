#pragma once

// Reduced model eigenproblems behind the universal spectral constants:
//  - half-line band function mu(s) of D_t^2 + (t-s)^2 with a Neumann wall,
//    its minimum (theta0, s0) and curvature delta0,
//  - tilted half-plane energy sigma(theta),
//  - the vanishing-field-line constant nu0_hat via the quartic family
//    D_x^2 + (x^2 - xi)^2 on the line.

#include <string>
#include <utility>
#include <vector>

#include "num.hpp"

namespace sctk::models {

struct DiscParams1D {
  double t_max = 20.0;  // truncation length, Dirichlet at the far end
  int n = 8193;         // node count including both endpoints
  void validate() const;
};

// Sampled scalar spectral function (mu(s), sigma(theta), lambda(xi)).
struct SpectralCurve {
  std::string tag;
  std::vector<double> grid;
  std::vector<double> values;
  double solver_tol = 0.0;
  void validate() const;  // strictly increasing grid, finite values
};

struct Resolution {
  int n = 0;
  double extent = 0.0;
  double tol = 0.0;
};

struct ModelConstants {
  double theta0 = 0.0;
  double s0 = 0.0;
  double delta0 = 0.0;
  double alpha1 = 0.0;  // sqrt(delta0), slope of sigma at 0+
  double nu0_hat = 0.0;
  double xi_min = 0.0;
  Resolution res_theta0;
  Resolution res_delta0;
  Resolution res_nu0;
  void validate() const;
};

struct EigFunction {
  std::vector<double> t;
  std::vector<double> u;  // unit norm in the trapezoid-weighted L2
};

// Lowest Neumann eigenvalue of D_t^2 + (t-s)^2 on [0, t_max].
double de_gennes_mu(double s, const DiscParams1D& disc);
std::pair<double, EigFunction> de_gennes_mu_with_vector(
    double s, const DiscParams1D& disc);

struct Theta0Result {
  double theta0 = 0.0;
  double s0 = 0.0;
};

// Minimize mu over s on [window_lo, window_hi]; throws on bracket failure.
Theta0Result find_theta0(const DiscParams1D& disc, double tol = 1e-8,
                         double window_lo = 0.0, double window_hi = 2.0);

// delta0 = mu''(s0)/2 by central differences with one Richardson halving.
double compute_delta0(double s0, const DiscParams1D& disc, double fd_step = 1e-2);

// FD slope of mu at s (test probe for the stationarity of the minimum).
double de_gennes_mu_slope(double s, const DiscParams1D& disc,
                          double fd_step = 1e-4);

struct Sigma2DParams {
  double h = 0.2;              // coarse grid step; the solve also runs at h/2
  bool richardson = true;      // extrapolate the (h, h/2) pair
  bool doubling_check = true;  // re-solve on a doubled box at step h
  double width_factor = 9.0;   // half-width in units of the transverse scale
  double eig_tol = 1e-11;
  double trunc_tol = 1e-3;     // doubling drift above this raises the flag
};

struct SigmaResult {
  double value = 0.0;
  double grid_drift = 0.0;      // value(h/2) - value(h)
  double doubling_drift = 0.0;  // doubled box - base box, at step h
  bool truncation_flag = false;
};

// Ground energy of D_s^2 + D_t^2 + (t cos(theta) - s sin(theta))^2 on a half
// plane, Neumann at t = 0.  theta = 0 delegates to find_theta0.  Even in theta.
SigmaResult sigma(double theta, const Sigma2DParams& p = {},
                  const DiscParams1D& disc1d = {});

struct MontgomeryParams {
  int n = 4097;
  double x_max = 8.0;
  double xi_lo = 0.0;
  double xi_hi = 2.0;
  double tol = 1e-8;
  void validate() const;
};

struct MontgomeryResult {
  double nu0_hat = 0.0;
  double xi_min = 0.0;
};

// Lowest eigenvalue of D_x^2 + (x^2 - xi)^2 on the line (Dirichlet box).
double montgomery_lambda(double xi, const MontgomeryParams& p);
// Minimize over xi; throws if the minimizer hits the window edge.
MontgomeryResult montgomery_nu0(const MontgomeryParams& p);

// One-stop computation of the full constant set.
ModelConstants compute_constants(const DiscParams1D& disc = {},
                                 const MontgomeryParams& mont = {});

SpectralCurve mu_curve(double s_lo, double s_hi, int n_points,
                       const DiscParams1D& disc);
SpectralCurve sigma_curve(int n_points, const Sigma2DParams& p,
                          const DiscParams1D& disc);
SpectralCurve montgomery_curve(double xi_lo, double xi_hi, int n_points,
                               const MontgomeryParams& p);

}  // namespace sctk::models

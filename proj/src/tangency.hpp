#pragma once

// Tracing of the tangency set Gamma = { x on the surface : beta . N(x) = 0 },
// frames and normal curvature along it, the pointwise energy functional
// gamma_tilde and its infimum gamma_hat, and the genericity checks the
// two-term eigenvalue asymptotics requires.

#include <optional>
#include <string>
#include <vector>

#include "model_operators.hpp"
#include "num.hpp"
#include "surface.hpp"

namespace sctk::geom {

// Gamma fails to be a regular curve (degenerate zero of beta . N).
class assumption_error : public std::runtime_error {
 public:
  explicit assumption_error(const std::string& what)
      : std::runtime_error(what) {}
};

struct SurfaceFrame {
  Vec3 p, pu, pv;
  Vec3 normal;              // interior unit normal
  double E = 0, F = 0, G = 0;   // first fundamental form
  double k11 = 0, k12 = 0, k22 = 0;  // second fundamental form, chart basis
};

// Frame and shape operator data; throws on a degenerate chart point.
SurfaceFrame normal_and_shape(const ParametricSurface& surf, double u,
                              double v);

// Second fundamental form on two tangent vectors (each projected onto the
// tangent plane through the first fundamental form).
double second_form(const SurfaceFrame& f, const Vec3& w1, const Vec3& w2);

struct FrameSample {
  double u = 0, v = 0;
  Vec3 x, tangent, normal;
  double kn = 0;           // K(T ^ N, beta), sign tied to the orientation
  double tbeta = 0;        // T . beta
  double gamma_tilde = 0;  // filled when constants are supplied
  double arclen = 0;       // cumulative, Hermite-quadrature based
};

struct TangencyCurve {
  int id = 0;
  double length = 0;
  std::vector<FrameSample> samples;  // closed: last duplicates first
  // largest |beta . N| and smallest surface-gradient norm seen on the curve
  double max_residual = 0;
  double min_grad_norm = 0;
  // chart the curve was traced in; null means the surface's own chart.
  // Sample (u, v) pairs refer to this chart.
  std::shared_ptr<const ParametricSurface> chart;
  void validate(double tol = 1e-10) const;
};

struct TraceParams {
  int seed_grid = 128;
  double corrector_tol = 1e-12;
  double step_chart_rel = 0.01;  // predictor step, fraction of chart diameter
  double step3d_rel = 0.02;      // cap on the 3D step, fraction of diameter
  double grad_threshold = 1e-6;  // regular-submanifold proxy
  int max_steps = 2000000;
};

// All connected components of Gamma.  Retries on a rotated chart when the
// curve runs into a chart pole.  Throws assumption_error on a degenerate zero
// set.  When constants are given, gamma_tilde is filled along the curves.
std::vector<TangencyCurve> trace_gamma(
    const ParametricSurface& surf, const Vec3& beta,
    const TraceParams& params = {},
    const models::ModelConstants* constants = nullptr);

// K(T ^ N, beta) at a traced sample; throws if the sample is off Gamma.
double normal_curvature(const ParametricSurface& surf, const FrameSample& s,
                        const Vec3& beta, double onset_tol = 1e-8);

double gamma_tilde(double kn, double tbeta,
                   const models::ModelConstants& constants);

struct ArcInterval {
  int curve_id = 0;
  double s_begin = 0, s_end = 0;
};

struct GammaHatResult {
  double gamma_hat = 0;
  std::vector<ArcInterval> minimizer_set;
};

// Infimum of gamma_tilde over the traced curves with local refinement, and
// the arc-length loci within `value_rel_tol` of it.
GammaHatResult gamma_hat(const ParametricSurface& surf, const Vec3& beta,
                         const std::vector<TangencyCurve>& curves,
                         const models::ModelConstants& constants,
                         double value_rel_tol = 1e-6);

struct CurveReport {
  int curve_id = 0;
  double length = 0;
  double min_abs_kn = 0;
  double min_grad_norm = 0;
  int tangency_points = 0;
  bool tangency_finite = true;
  bool gamma_tilde_nonconstant = false;  // sup gamma_tilde > gamma_hat
};

struct AssumptionReport {
  bool gamma_regular = false;
  double min_abs_kn = 0;
  bool kn_nonvanishing = false;
  int tangency_point_count = 0;
  bool tangency_finite = false;
  bool derivative_hypothesis = false;  // every curve non-constant above inf
  double gamma_hat = 0;
  std::string detail;
  std::vector<CurveReport> curves;
  bool all_pass() const {
    return gamma_regular && kn_nonvanishing && tangency_finite;
  }
};

// Never throws for geometry failures; they land in the report.
AssumptionReport check_assumptions(const ParametricSurface& surf,
                                   const Vec3& beta,
                                   const models::ModelConstants& constants,
                                   const TraceParams& params = {},
                                   double kn_threshold = 1e-6);

}  // namespace sctk::geom

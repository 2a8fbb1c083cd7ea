#include "tangency.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace sctk::geom {

namespace {

struct FieldEval {
  SurfaceFrame frame;
  double f = 0;        // beta . N
  double fu = 0, fv = 0;
  double grad_norm = 0;  // surface-gradient norm of f
  Vec3 grad3;            // surface gradient as a 3D vector
};

// Solve G x = rhs for the 2x2 first fundamental form.
void metric_solve(const SurfaceFrame& fr, double r1, double r2, double& x1,
                  double& x2) {
  const double det = fr.E * fr.G - fr.F * fr.F;
  x1 = (fr.G * r1 - fr.F * r2) / det;
  x2 = (fr.E * r2 - fr.F * r1) / det;
}

FieldEval eval_field(const ParametricSurface& surf, const Vec3& beta, double u,
                     double v) {
  FieldEval e;
  const ChartJet j = surf.jet(u, v);
  const Vec3 n = j.pu.cross(j.pv);
  const double nn = n.norm();
  const double scale = std::max(1.0, j.p.norm());
  if (nn < 1e-12 * scale * scale)
    throw numeric_error("degenerate chart point (zero normal)");
  const double orient =
      (n.dot(surf.interior_point() - j.p) > 0.0) ? 1.0 : -1.0;
  SurfaceFrame& fr = e.frame;
  fr.p = j.p;
  fr.pu = j.pu;
  fr.pv = j.pv;
  fr.normal = n * (orient / nn);
  fr.E = j.pu.dot(j.pu);
  fr.F = j.pu.dot(j.pv);
  fr.G = j.pv.dot(j.pv);
  fr.k11 = fr.normal.dot(j.puu);
  fr.k12 = fr.normal.dot(j.puv);
  fr.k22 = fr.normal.dot(j.pvv);
  e.f = beta.dot(fr.normal);
  const Vec3 nu = j.puu.cross(j.pv) + j.pu.cross(j.puv);
  const Vec3 nv = j.puv.cross(j.pv) + j.pu.cross(j.pvv);
  const Vec3 Nu = (nu * (1.0 / nn) - n * (n.dot(nu) / (nn * nn * nn))) * orient;
  const Vec3 Nv = (nv * (1.0 / nn) - n * (n.dot(nv) / (nn * nn * nn))) * orient;
  e.fu = beta.dot(Nu);
  e.fv = beta.dot(Nv);
  double d1, d2;
  metric_solve(fr, e.fu, e.fv, d1, d2);
  e.grad3 = fr.pu * d1 + fr.pv * d2;
  e.grad_norm = std::sqrt(std::max(0.0, e.fu * d1 + e.fv * d2));
  return e;
}

struct ChartGeom {
  ChartDomain dom;
  double u_span, v_span, v_lo, v_hi;  // sampled v-range (pole margin applied)
  double chart_diam;
  double diam3d;
};

ChartGeom chart_geometry(const ParametricSurface& surf) {
  ChartGeom g;
  g.dom = surf.domain();
  g.u_span = g.dom.u1 - g.dom.u0;
  const double vm =
      std::max(g.dom.v_pole_margin, 1e-3) * (g.dom.v1 - g.dom.v0);
  g.v_lo = g.dom.v0 + vm;
  g.v_hi = g.dom.v1 - vm;
  g.v_span = g.dom.v1 - g.dom.v0;
  g.chart_diam = std::hypot(g.u_span, g.v_span);
  Vec3 lo{1e300, 1e300, 1e300}, hi{-1e300, -1e300, -1e300};
  for (int i = 0; i <= 12; ++i)
    for (int k = 0; k <= 12; ++k) {
      const double u = g.dom.u0 + g.u_span * i / 12.0;
      const double v = g.v_lo + (g.v_hi - g.v_lo) * k / 12.0;
      const Vec3 p = surf.jet(u, v).p;
      lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
      hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
    }
  g.diam3d = (hi - lo).norm();
  return g;
}

double wrap_u(const ChartGeom& g, double u) {
  if (!g.dom.u_periodic) return u;
  while (u < g.dom.u0) u += g.u_span;
  while (u >= g.dom.u1) u -= g.u_span;
  return u;
}

double chart_dist(const ChartGeom& g, double u1, double v1, double u2,
                  double v2) {
  double du = std::abs(u1 - u2);
  if (g.dom.u_periodic) du = std::min(du, g.u_span - du);
  return std::hypot(du, v1 - v2);
}

struct PoleAbort {};

// Newton corrector onto f = 0; returns the converged field evaluation.
FieldEval correct(const ParametricSurface& surf, const Vec3& beta,
                  const ChartGeom& g, double& u, double& v,
                  const TraceParams& p) {
  FieldEval e = eval_field(surf, beta, u, v);
  for (int it = 0; it < 40; ++it) {
    if (std::abs(e.f) <= p.corrector_tol) return e;
    const double g2 = e.grad_norm * e.grad_norm;
    if (e.grad_norm < p.grad_threshold)
      throw assumption_error(
          "Gamma is not a regular submanifold: surface gradient of beta.N "
          "fell below threshold during correction");
    double d1, d2;
    metric_solve(e.frame, e.fu, e.fv, d1, d2);
    const double t = -e.f / g2;
    u = wrap_u(g, u + t * d1);
    v += t * d2;
    if (v < g.v_lo || v > g.v_hi) throw PoleAbort{};
    e = eval_field(surf, beta, u, v);
  }
  throw numeric_error("Gamma corrector did not converge", std::abs(e.f));
}

double hermite_segment_length(const Vec3& xa, const Vec3& ta, const Vec3& xb,
                              const Vec3& tb) {
  const double c = (xb - xa).norm();
  if (c == 0.0) return 0.0;
  const Vec3 ma = ta * c, mb = tb * c;
  // 5-point Gauss-Legendre on [0,1]
  static const double xs[5] = {0.046910077030668, 0.230765344947158, 0.5,
                               0.769234655052841, 0.953089922969332};
  static const double ws[5] = {0.118463442528095, 0.239314335249683,
                               0.284444444444444, 0.239314335249683,
                               0.118463442528095};
  double L = 0.0;
  for (int q = 0; q < 5; ++q) {
    const double t = xs[q];
    const double d00 = 6 * t * t - 6 * t;
    const double d10 = 3 * t * t - 4 * t + 1;
    const double d01 = -6 * t * t + 6 * t;
    const double d11 = 3 * t * t - 2 * t;
    const Vec3 dp = xa * d00 + ma * d10 + xb * d01 + mb * d11;
    L += ws[q] * dp.norm();
  }
  return L;
}

struct RawPoint {
  double u, v;
  FieldEval e;
};

// Trace the closed component through the given seed.
std::vector<RawPoint> trace_component(const ParametricSurface& surf,
                                      const Vec3& beta, const ChartGeom& g,
                                      double u0, double v0,
                                      const TraceParams& p) {
  std::vector<RawPoint> pts;
  double u = u0, v = v0;
  FieldEval e = correct(surf, beta, g, u, v, p);
  pts.push_back({u, v, e});
  const Vec3 start = e.frame.p;
  const double step_chart = p.step_chart_rel * g.chart_diam;
  const double step3d_cap = p.step3d_rel * g.diam3d;
  double dir_u = 0, dir_v = 0;
  double last_step3d = step3d_cap;
  for (int k = 0; k < p.max_steps; ++k) {
    // Null direction of df in the chart, sign-matched to the previous step.
    double tu = -e.fv, tv = e.fu;
    const double tn = std::hypot(tu, tv);
    if (tn == 0.0)
      throw assumption_error("Gamma tracing hit a critical point of beta.N");
    tu /= tn;
    tv /= tn;
    if (k > 0 && tu * dir_u + tv * dir_v < 0.0) {
      tu = -tu;
      tv = -tv;
    }
    dir_u = tu;
    dir_v = tv;
    const Vec3 vel3 = e.frame.pu * tu + e.frame.pv * tv;
    double h = step_chart;
    const double v3 = vel3.norm();
    if (v3 * h > step3d_cap) h = step3d_cap / v3;
    u = wrap_u(g, u + h * tu);
    v += h * tv;
    if (v < g.v_lo || v > g.v_hi) throw PoleAbort{};
    e = correct(surf, beta, g, u, v, p);
    const double step3d = (e.frame.p - pts.back().e.frame.p).norm();
    last_step3d = std::max(step3d, 1e-300);
    if (pts.size() >= 5) {
      const double to_start = (e.frame.p - start).norm();
      if (to_start < 0.75 * last_step3d || to_start < 0.05 * step3d_cap)
        return pts;  // closed
    }
    pts.push_back({u, v, e});
  }
  throw numeric_error("Gamma tracing exceeded the step budget");
}

double point_segment_dist(const ChartGeom& g, double u, double v, double ua,
                          double va, double ub, double vb) {
  // unwrap the segment around u
  if (g.dom.u_periodic) {
    if (ua - u > 0.5 * g.u_span) ua -= g.u_span;
    if (ua - u < -0.5 * g.u_span) ua += g.u_span;
    if (ub - ua > 0.5 * g.u_span) ub -= g.u_span;
    if (ub - ua < -0.5 * g.u_span) ub += g.u_span;
  }
  const double dx = ub - ua, dy = vb - va;
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0 ? ((u - ua) * dx + (v - va) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(u - (ua + t * dx), v - (va + t * dy));
}

TangencyCurve finalize_curve(const ParametricSurface& surf, const Vec3& beta,
                             std::vector<RawPoint> pts, int id,
                             const models::ModelConstants* constants) {
  // Direction of motion at each raw point.
  const size_t n = pts.size();
  std::vector<Vec3> tangents(n);
  for (size_t i = 0; i < n; ++i) {
    const Vec3& a = pts[i].e.frame.p;
    const Vec3& b = pts[(i + 1) % n].e.frame.p;
    const Vec3& c = pts[(i + n - 1) % n].e.frame.p;
    tangents[i] = (b - c).normalized();
  }
  // Fixed orientation: T = (grad f) x (outward normal), i.e. the f > 0 side
  // sits to the left of the traversal seen from outside.
  const Vec3 w0 = pts[0].e.grad3;
  const Vec3 n_out0 = pts[0].e.frame.normal * -1.0;
  const Vec3 t_ref = w0.cross(n_out0);
  if (tangents[0].dot(t_ref) < 0.0) {
    std::reverse(pts.begin(), pts.end());
    std::reverse(tangents.begin(), tangents.end());
    // keep the original start point in front
    std::rotate(pts.rbegin(), pts.rbegin() + 1, pts.rend());
    std::rotate(tangents.rbegin(), tangents.rbegin() + 1, tangents.rend());
    for (auto& t : tangents) t = t * -1.0;
  }

  TangencyCurve curve;
  curve.id = id;
  curve.max_residual = 0.0;
  curve.min_grad_norm = 1e300;
  curve.samples.reserve(n + 1);
  for (size_t i = 0; i < n; ++i) {
    FrameSample s;
    s.u = pts[i].u;
    s.v = pts[i].v;
    s.x = pts[i].e.frame.p;
    s.normal = pts[i].e.frame.normal;
    // Exact curve tangent from the implicit function, sign-matched to the
    // chord direction of motion.
    Vec3 t_exact = pts[i].e.grad3.cross(pts[i].e.frame.normal * -1.0);
    const double tn = t_exact.norm();
    s.tangent = (tn > 0) ? t_exact * (1.0 / tn) : tangents[i];
    if (s.tangent.dot(tangents[i]) < 0.0) s.tangent = s.tangent * -1.0;
    s.tbeta = s.tangent.dot(beta);
    s.kn = second_form(pts[i].e.frame, s.tangent.cross(s.normal), beta);
    if (constants) s.gamma_tilde = gamma_tilde(s.kn, s.tbeta, *constants);
    curve.max_residual = std::max(curve.max_residual, std::abs(pts[i].e.f));
    curve.min_grad_norm = std::min(curve.min_grad_norm, pts[i].e.grad_norm);
    curve.samples.push_back(std::move(s));
  }
  // Close with a duplicate of the first sample.
  FrameSample closing = curve.samples.front();
  double arc = 0.0;
  curve.samples[0].arclen = 0.0;
  for (size_t i = 1; i < n; ++i) {
    arc += hermite_segment_length(curve.samples[i - 1].x,
                                  curve.samples[i - 1].tangent,
                                  curve.samples[i].x, curve.samples[i].tangent);
    curve.samples[i].arclen = arc;
  }
  arc += hermite_segment_length(curve.samples[n - 1].x,
                                curve.samples[n - 1].tangent, closing.x,
                                closing.tangent);
  closing.arclen = arc;
  curve.length = arc;
  curve.samples.push_back(std::move(closing));
  (void)surf;
  return curve;
}

}  // namespace

SurfaceFrame normal_and_shape(const ParametricSurface& surf, double u,
                              double v) {
  return eval_field(surf, Vec3{0, 0, 1}, u, v).frame;
}

double second_form(const SurfaceFrame& f, const Vec3& w1, const Vec3& w2) {
  double a1, b1, a2, b2;
  metric_solve(f, w1.dot(f.pu), w1.dot(f.pv), a1, b1);
  metric_solve(f, w2.dot(f.pu), w2.dot(f.pv), a2, b2);
  return a1 * (f.k11 * a2 + f.k12 * b2) + b1 * (f.k12 * a2 + f.k22 * b2);
}

void TangencyCurve::validate(double tol) const {
  if (samples.size() < 4) throw numeric_error("TangencyCurve: too few samples");
  for (const auto& s : samples) {
    if (std::abs(s.tangent.norm() - 1.0) > tol ||
        std::abs(s.normal.norm() - 1.0) > tol)
      throw numeric_error("TangencyCurve: frame not unit");
    if (std::abs(s.tangent.dot(s.normal)) > tol)
      throw numeric_error("TangencyCurve: frame not orthogonal");
  }
  const Vec3 gap = samples.front().x - samples.back().x;
  if (gap.norm() > tol) throw numeric_error("TangencyCurve: not closed");
}

std::vector<TangencyCurve> trace_gamma(const ParametricSurface& surf,
                                       const Vec3& beta,
                                       const TraceParams& params,
                                       const models::ModelConstants* constants) {
  if (std::abs(beta.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("trace_gamma: beta must be a unit vector");

  // Chart-pole collisions are coordinate artifacts: retry in an alternate
  // chart of the same geometry (poles placed along another axis) when the
  // surface provides one.
  std::string pole_note;
  for (int attempt = 0; attempt < 3; ++attempt) {
    std::shared_ptr<const ParametricSurface> alt;
    const ParametricSurface* view = &surf;
    const Vec3& beta_view = beta;
    if (attempt > 0) {
      alt = surf.alternate_chart(attempt - 1);
      if (!alt)
        throw numeric_error(
            "trace_gamma: Gamma crosses a chart pole and the surface has no "
            "alternate chart");
      view = alt.get();
    }
    try {
      const ChartGeom g = chart_geometry(*view);
      const int ng = std::max(params.seed_grid, 16);
      std::vector<double> fgrid((ng + 1) * (ng + 1));
      auto uat = [&](int i) { return g.dom.u0 + g.u_span * i / ng; };
      auto vat = [&](int k) { return g.v_lo + (g.v_hi - g.v_lo) * k / ng; };
      for (int k = 0; k <= ng; ++k)
        for (int i = 0; i <= ng; ++i)
          fgrid[k * (ng + 1) + i] =
              eval_field(*view, beta_view, uat(i), vat(k)).f;

      struct Seed {
        double u, v;
      };
      std::vector<Seed> seeds;
      auto edge_seed = [&](double ua, double va, double fa, double ub,
                           double vb, double fb) {
        if ((fa > 0) == (fb > 0)) return;
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 40; ++it) {
          const double mid = 0.5 * (lo + hi);
          const double fm = eval_field(*view, beta_view, ua + (ub - ua) * mid,
                                       va + (vb - va) * mid)
                                .f;
          if ((fm > 0) == (fb > 0))
            hi = mid;
          else
            lo = mid;
        }
        const double mid = 0.5 * (lo + hi);
        seeds.push_back({ua + (ub - ua) * mid, va + (vb - va) * mid});
      };
      for (int k = 0; k <= ng; ++k)
        for (int i = 0; i < ng; ++i)
          edge_seed(uat(i), vat(k), fgrid[k * (ng + 1) + i], uat(i + 1),
                    vat(k), fgrid[k * (ng + 1) + i + 1]);
      for (int k = 0; k < ng; ++k)
        for (int i = 0; i <= ng; ++i)
          edge_seed(uat(i), vat(k), fgrid[k * (ng + 1) + i], uat(i),
                    vat(k + 1), fgrid[(k + 1) * (ng + 1) + i]);

      std::vector<TangencyCurve> curves;
      std::vector<std::vector<RawPoint>> polylines;
      const double consume_radius =
          std::max(1.5 * params.step_chart_rel * g.chart_diam,
                   1.5 * g.chart_diam / ng);
      auto consumed = [&](const Seed& s) {
        for (const auto& poly : polylines) {
          for (size_t i = 0; i + 1 < poly.size(); ++i)
            if (point_segment_dist(g, s.u, s.v, poly[i].u, poly[i].v,
                                   poly[i + 1].u, poly[i + 1].v) <
                consume_radius)
              return true;
          if (poly.size() > 1 &&
              point_segment_dist(g, s.u, s.v, poly.back().u, poly.back().v,
                                 poly.front().u, poly.front().v) <
                  consume_radius)
            return true;
        }
        return false;
      };

      for (const auto& s : seeds) {
        if (consumed(s)) continue;
        const FieldEval probe = eval_field(*view, beta_view, s.u, s.v);
        if (probe.grad_norm < params.grad_threshold)
          throw assumption_error(
              "Gamma is not a regular submanifold: |grad(beta.N)| = " +
              std::to_string(probe.grad_norm) + " at a zero of beta.N");
        auto pts = trace_component(*view, beta_view, g, s.u, s.v, params);
        curves.push_back(finalize_curve(*view, beta_view, pts,
                                        (int)curves.size(), constants));
        polylines.push_back(std::move(pts));
      }

      if (attempt > 0)
        for (auto& c : curves) c.chart = alt;
      if (!pole_note.empty() && curves.empty())
        throw numeric_error("trace_gamma: no tangency curve found" + pole_note);
      return curves;
    } catch (const PoleAbort&) {
      pole_note = " (after " + std::to_string(attempt + 1) + " chart attempts)";
      continue;
    }
  }
  throw numeric_error(
      "trace_gamma: Gamma crosses chart poles in every available chart");
}

double normal_curvature(const ParametricSurface& surf, const FrameSample& s,
                        const Vec3& beta, double onset_tol) {
  const FieldEval e = eval_field(surf, beta, s.u, s.v);
  if (std::abs(e.f) > onset_tol)
    throw std::invalid_argument(
        "normal_curvature: sample is off Gamma (|beta.N| = " +
        std::to_string(std::abs(e.f)) + ")");
  return second_form(e.frame, s.tangent.cross(e.frame.normal), beta);
}

double gamma_tilde(double kn, double tbeta,
                   const models::ModelConstants& c) {
  c.validate();
  if (std::abs(tbeta) > 1.0 + 1e-12)
    throw std::invalid_argument("gamma_tilde: |T.beta| > 1");
  const double tb2 = std::min(1.0, tbeta * tbeta);
  const double d = c.delta0;
  return std::pow(2.0, -2.0 / 3.0) * c.nu0_hat * std::cbrt(d) *
         std::pow(std::abs(kn), 2.0 / 3.0) *
         std::cbrt(d + (1.0 - d) * tb2);
}

GammaHatResult gamma_hat(const ParametricSurface& surf, const Vec3& beta,
                         const std::vector<TangencyCurve>& curves,
                         const models::ModelConstants& constants,
                         double value_rel_tol) {
  if (curves.empty())
    throw numeric_error(
        "gamma_hat: empty Gamma on a closed surface (internal inconsistency)");
  GammaHatResult out;
  double best = 1e300;
  int best_curve = -1;
  size_t best_idx = 0;
  for (const auto& c : curves) {
    for (size_t i = 0; i + 1 < c.samples.size(); ++i) {
      const double gt = gamma_tilde(c.samples[i].kn, c.samples[i].tbeta,
                                    constants);
      if (gt < best) {
        best = gt;
        best_curve = c.id;
        best_idx = i;
      }
    }
  }

  // Local refinement along the chart between the neighbors of the best
  // sample, on the chart the curve was actually traced in.
  const TangencyCurve& bc = curves[best_curve];
  const size_t n = bc.samples.size() - 1;  // last duplicates first
  const ParametricSurface* view = bc.chart ? bc.chart.get() : &surf;
  const ChartGeom g = chart_geometry(*view);
  TraceParams tp;
  auto eval_at = [&](double u, double v) {
    FieldEval e = correct(*view, beta, g, u, v, tp);
    const Vec3 t = e.grad3.cross(e.frame.normal * -1.0).normalized();
    const double kn = second_form(e.frame, t.cross(e.frame.normal), beta);
    return gamma_tilde(kn, t.dot(beta), constants);
  };
  const FrameSample& A = bc.samples[(best_idx + n - 1) % n];
  const FrameSample& B = bc.samples[best_idx];
  const FrameSample& C = bc.samples[(best_idx + 1) % n];
  auto lerp_u = [&](double ua, double ub, double t) {
    if (g.dom.u_periodic) {
      if (ub - ua > 0.5 * g.u_span) ub -= g.u_span;
      if (ub - ua < -0.5 * g.u_span) ub += g.u_span;
    }
    return wrap_u(g, ua + (ub - ua) * t);
  };
  try {
    auto fline = [&](double t) {
      if (t <= 0.5)
        return eval_at(lerp_u(A.u, B.u, 2 * t), A.v + (B.v - A.v) * 2 * t);
      return eval_at(lerp_u(B.u, C.u, 2 * t - 1),
                     B.v + (C.v - B.v) * (2 * t - 1));
    };
    auto res = num::golden_min(fline, 0.0, 1.0, 17, 1e-7);
    best = std::min(best, res.fmin);
  } catch (const numeric_error&) {
    // flat valley: discrete minimum already optimal at sampling accuracy
  } catch (const PoleAbort&) {
  }

  out.gamma_hat = best;

  // Qualifying loci: within the relative tolerance or the local sampling sag.
  for (const auto& c : curves) {
    std::vector<double> gts(c.samples.size() - 1);
    double cmin = 1e300;
    size_t kmin = 0;
    for (size_t i = 0; i + 1 < c.samples.size(); ++i) {
      gts[i] = gamma_tilde(c.samples[i].kn, c.samples[i].tbeta, constants);
      if (gts[i] < cmin) {
        cmin = gts[i];
        kmin = i;
      }
    }
    const size_t m = gts.size();
    const double sag =
        std::min(gts[(kmin + 1) % m], gts[(kmin + m - 1) % m]) - cmin;
    const double threshold =
        best + std::max(value_rel_tol * std::abs(best), 1.5 * sag + 1e-14);
    std::vector<bool> in(m);
    bool any = false;
    for (size_t i = 0; i < m; ++i) {
      in[i] = gts[i] <= threshold;
      any = any || in[i];
    }
    if (!any) continue;
    bool all = std::all_of(in.begin(), in.end(), [](bool b) { return b; });
    if (all) {
      out.minimizer_set.push_back({c.id, 0.0, c.length});
      continue;
    }
    // contiguous runs, cyclic
    size_t start = 0;
    while (in[start]) ++start;  // start outside a run
    size_t i = start;
    do {
      if (in[i % m]) {
        size_t j = i;
        while (in[(j + 1) % m]) j = j + 1;  // j may exceed m (wrapped run)
        const double s_begin = c.samples[i % m].arclen;
        const double s_end = c.samples[j % m].arclen;
        out.minimizer_set.push_back({c.id, s_begin, s_end});
        i = j + 1;
      } else {
        ++i;
      }
    } while (i % m != start);
  }
  return out;
}

AssumptionReport check_assumptions(const ParametricSurface& surf,
                                   const Vec3& beta,
                                   const models::ModelConstants& constants,
                                   const TraceParams& params,
                                   double kn_threshold) {
  AssumptionReport rep;
  std::vector<TangencyCurve> curves;
  try {
    curves = trace_gamma(surf, beta, params, &constants);
  } catch (const assumption_error& e) {
    rep.gamma_regular = false;
    rep.detail = e.what();
    return rep;
  } catch (const std::exception& e) {
    rep.gamma_regular = false;
    rep.detail = std::string("tracing failed: ") + e.what();
    return rep;
  }
  if (curves.empty()) {
    rep.gamma_regular = false;
    rep.detail = "no tangency curve found (internal inconsistency)";
    return rep;
  }
  rep.gamma_regular = true;
  rep.min_abs_kn = 1e300;
  rep.tangency_finite = true;
  const auto gh = gamma_hat(surf, beta, curves, constants);
  rep.gamma_hat = gh.gamma_hat;
  for (const auto& c : curves) {
    CurveReport cr;
    cr.curve_id = c.id;
    cr.length = c.length;
    cr.min_grad_norm = c.min_grad_norm;
    cr.min_abs_kn = 1e300;
    double max_gt = 0.0;
    const size_t m = c.samples.size() - 1;
    std::vector<bool> tang(m);
    for (size_t i = 0; i < m; ++i) {
      cr.min_abs_kn = std::min(cr.min_abs_kn, std::abs(c.samples[i].kn));
      max_gt = std::max(max_gt, c.samples[i].gamma_tilde);
      tang[i] = std::abs(c.samples[i].tbeta) >= 1.0 - 1e-6;
    }
    // isolated |T.beta| = 1 points: contiguous runs no wider than a few steps
    size_t i = 0;
    while (i < m && tang[i]) ++i;
    if (i == m) {
      cr.tangency_finite = false;  // tangent everywhere
    } else {
      const size_t start = i;
      do {
        if (tang[i % m]) {
          size_t j = i;
          while (tang[(j + 1) % m]) ++j;
          const size_t width = j - i + 1;
          ++cr.tangency_points;
          if (width > 3) cr.tangency_finite = false;
          i = j + 1;
        } else {
          ++i;
        }
      } while (i % m != start);
    }
    cr.gamma_tilde_nonconstant =
        max_gt > gh.gamma_hat * (1.0 + 1e-6) + 1e-14;
    rep.min_abs_kn = std::min(rep.min_abs_kn, cr.min_abs_kn);
    rep.tangency_point_count += cr.tangency_points;
    rep.tangency_finite = rep.tangency_finite && cr.tangency_finite;
    rep.curves.push_back(cr);
  }
  rep.kn_nonvanishing = rep.min_abs_kn > kn_threshold;
  rep.derivative_hypothesis =
      std::all_of(rep.curves.begin(), rep.curves.end(),
                  [](const CurveReport& c) { return c.gamma_tilde_nonconstant; });
  for (const auto& c : curves)
    rep.gamma_regular =
        rep.gamma_regular && c.min_grad_norm >= params.grad_threshold;
  return rep;
}

}  // namespace sctk::geom

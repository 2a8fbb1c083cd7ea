#include "surface.hpp"

#include <stdexcept>

#include "expression.hpp"

namespace sctk::geom {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Polar chart: u azimuth in [0, 2pi), v colatitude in (0, pi).  The chart
// poles can be placed along any of the three semi-axes; the geometry is the
// same ellipsoid either way.
class Ellipsoid : public ParametricSurface {
 public:
  Ellipsoid(double a, double b, double c, int pole_axis = 2)
      : a_(a), b_(b), c_(c), axis_(pole_axis) {
    if (!(a > 0 && b > 0 && c > 0))
      throw std::invalid_argument("ellipsoid: semi-axes must be positive");
  }

  ChartJet jet(double u, double v) const override {
    const double cu = std::cos(u), su = std::sin(u);
    const double cv = std::cos(v), sv = std::sin(v);
    ChartJet j;
    switch (axis_) {
      case 2:  // poles along z
        j.p = {a_ * cu * sv, b_ * su * sv, c_ * cv};
        j.pu = {-a_ * su * sv, b_ * cu * sv, 0.0};
        j.pv = {a_ * cu * cv, b_ * su * cv, -c_ * sv};
        j.puu = {-a_ * cu * sv, -b_ * su * sv, 0.0};
        j.puv = {-a_ * su * cv, b_ * cu * cv, 0.0};
        j.pvv = {-a_ * cu * sv, -b_ * su * sv, -c_ * cv};
        break;
      case 0:  // poles along x
        j.p = {a_ * cv, b_ * sv * cu, c_ * sv * su};
        j.pu = {0.0, -b_ * sv * su, c_ * sv * cu};
        j.pv = {-a_ * sv, b_ * cv * cu, c_ * cv * su};
        j.puu = {0.0, -b_ * sv * cu, -c_ * sv * su};
        j.puv = {0.0, -b_ * cv * su, c_ * cv * cu};
        j.pvv = {-a_ * cv, -b_ * sv * cu, -c_ * sv * su};
        break;
      default:  // poles along y
        j.p = {a_ * sv * su, b_ * cv, c_ * sv * cu};
        j.pu = {a_ * sv * cu, 0.0, -c_ * sv * su};
        j.pv = {a_ * cv * su, -b_ * sv, c_ * cv * cu};
        j.puu = {-a_ * sv * su, 0.0, -c_ * sv * cu};
        j.puv = {a_ * cv * cu, 0.0, -c_ * cv * su};
        j.pvv = {-a_ * sv * su, -b_ * cv, -c_ * sv * cu};
        break;
    }
    return j;
  }

  ChartDomain domain() const override {
    return {0.0, 2.0 * kPi, 0.0, kPi, true, 1e-3};
  }

  Vec3 interior_point() const override { return {0, 0, 0}; }

  std::unique_ptr<ParametricSurface> clone() const override {
    return std::make_unique<Ellipsoid>(*this);
  }

  std::string describe() const override {
    return "ellipsoid(" + std::to_string(a_) + "," + std::to_string(b_) + "," +
           std::to_string(c_) + ")";
  }

  std::unique_ptr<ParametricSurface> alternate_chart(int which) const override {
    if (which < 0 || which > 1) return nullptr;
    const int other[2] = {(axis_ + 1) % 3, (axis_ + 2) % 3};
    return std::make_unique<Ellipsoid>(a_, b_, c_, other[which]);
  }

 private:
  double a_, b_, c_;
  int axis_;
};

// Surface of revolution: straight cylindrical band |z| <= h of radius R,
// closed by caps rho = R (1 - w^3)^(1/2), w = (|z|-h)/c.  The profile is C^2
// at the band joints; the axis parallels z, so beta = e_z is tangent to the
// boundary on the whole band.
class CappedCylinder : public ParametricSurface {
 public:
  CappedCylinder(double radius, double half_length, double cap)
      : r_(radius), h_(half_length), c_(cap) {
    if (!(radius > 0 && half_length > 0 && cap > 0))
      throw std::invalid_argument("capped_cylinder: dimensions must be positive");
  }

  ChartJet jet(double u, double v) const override {
    // v in [0,1] maps linearly to z in [-(h+c), h+c]
    const double H = h_ + c_;
    const double z = -H + 2.0 * H * v;
    const double zv = 2.0 * H;
    double g, gz, gzz;  // rho/R and its z-derivatives
    if (std::abs(z) <= h_) {
      g = 1.0;
      gz = 0.0;
      gzz = 0.0;
    } else {
      const double sgn = (z > 0) ? 1.0 : -1.0;
      const double w = (std::abs(z) - h_) / c_;
      const double q = std::sqrt(std::max(1.0 - w * w * w, 1e-300));
      const double gw = -1.5 * w * w / q;
      const double gww = -3.0 * w / q + 2.25 * (w * w * w * w) / (q * q * q);
      g = q;
      gz = gw * sgn / c_;
      gzz = gww / (c_ * c_);
    }
    const double rho = r_ * g;
    const double rho_v = r_ * gz * zv;
    const double rho_vv = r_ * gzz * zv * zv;
    const double cu = std::cos(u), su = std::sin(u);
    ChartJet j;
    j.p = {rho * cu, rho * su, z};
    j.pu = {-rho * su, rho * cu, 0.0};
    j.pv = {rho_v * cu, rho_v * su, zv};
    j.puu = {-rho * cu, -rho * su, 0.0};
    j.puv = {-rho_v * su, rho_v * cu, 0.0};
    j.pvv = {rho_vv * cu, rho_vv * su, 0.0};
    return j;
  }

  ChartDomain domain() const override {
    return {0.0, 2.0 * kPi, 0.0, 1.0, true, 2e-3};
  }

  Vec3 interior_point() const override { return {0, 0, 0}; }

  std::unique_ptr<ParametricSurface> clone() const override {
    return std::make_unique<CappedCylinder>(*this);
  }

  std::string describe() const override {
    return "capped_cylinder(" + std::to_string(r_) + "," + std::to_string(h_) +
           "," + std::to_string(c_) + ")";
  }

 private:
  double r_, h_, c_;
};

class ExpressionSurface : public ParametricSurface {
 public:
  ExpressionSurface(const std::string& xs, const std::string& ys,
                    const std::string& zs, const ChartDomain& dom,
                    const Vec3& interior)
      : xs_(xs), ys_(ys), zs_(zs), dom_(dom), interior_(interior) {
    x_ = parse_expression(xs);
    y_ = parse_expression(ys);
    z_ = parse_expression(zs);
    fd_u_ = 1e-5 * (dom.u1 - dom.u0);
    fd_v_ = 1e-5 * (dom.v1 - dom.v0);
  }

  ChartJet jet(double u, double v) const override {
    auto P = [&](double uu, double vv) -> Vec3 {
      return {x_->eval(uu, vv), y_->eval(uu, vv), z_->eval(uu, vv)};
    };
    const double hu = fd_u_, hv = fd_v_;
    ChartJet j;
    j.p = P(u, v);
    const Vec3 pu1 = P(u + hu, v), pu2 = P(u - hu, v);
    const Vec3 pv1 = P(u, v + hv), pv2 = P(u, v - hv);
    j.pu = (pu1 - pu2) * (0.5 / hu);
    j.pv = (pv1 - pv2) * (0.5 / hv);
    j.puu = (pu1 - j.p * 2.0 + pu2) * (1.0 / (hu * hu));
    j.pvv = (pv1 - j.p * 2.0 + pv2) * (1.0 / (hv * hv));
    j.puv = (P(u + hu, v + hv) - P(u + hu, v - hv) - P(u - hu, v + hv) +
             P(u - hu, v - hv)) *
            (0.25 / (hu * hv));
    return j;
  }

  ChartDomain domain() const override { return dom_; }
  Vec3 interior_point() const override { return interior_; }

  std::unique_ptr<ParametricSurface> clone() const override {
    return std::make_unique<ExpressionSurface>(xs_, ys_, zs_, dom_, interior_);
  }

  std::string describe() const override {
    return "chart(" + xs_ + "; " + ys_ + "; " + zs_ + ")";
  }

 private:
  std::string xs_, ys_, zs_;
  ChartDomain dom_;
  Vec3 interior_;
  std::unique_ptr<Expression> x_, y_, z_;
  double fd_u_ = 1e-5, fd_v_ = 1e-5;
};

class Rotated : public ParametricSurface {
 public:
  Rotated(const ParametricSurface& base, const Mat3& rot)
      : base_(base.clone()), rot_(rot) {}

  ChartJet jet(double u, double v) const override {
    ChartJet j = base_->jet(u, v);
    j.p = mat_apply(rot_, j.p);
    j.pu = mat_apply(rot_, j.pu);
    j.pv = mat_apply(rot_, j.pv);
    j.puu = mat_apply(rot_, j.puu);
    j.puv = mat_apply(rot_, j.puv);
    j.pvv = mat_apply(rot_, j.pvv);
    return j;
  }

  ChartDomain domain() const override { return base_->domain(); }

  Vec3 interior_point() const override {
    return mat_apply(rot_, base_->interior_point());
  }

  std::unique_ptr<ParametricSurface> clone() const override {
    return std::make_unique<Rotated>(*base_, rot_);
  }

  std::string describe() const override {
    return "rotated(" + base_->describe() + ")";
  }

  std::unique_ptr<ParametricSurface> alternate_chart(int which) const override {
    auto alt = base_->alternate_chart(which);
    if (!alt) return nullptr;
    return std::make_unique<Rotated>(*alt, rot_);
  }

 private:
  std::unique_ptr<ParametricSurface> base_;
  Mat3 rot_;
};

}  // namespace

Mat3 rotation_about_axis(const Vec3& axis, double angle) {
  const Vec3 n = axis.normalized();
  const double c = std::cos(angle), s = std::sin(angle), t = 1.0 - c;
  return {t * n.x * n.x + c,       t * n.x * n.y - s * n.z,
          t * n.x * n.z + s * n.y, t * n.x * n.y + s * n.z,
          t * n.y * n.y + c,       t * n.y * n.z - s * n.x,
          t * n.x * n.z - s * n.y, t * n.y * n.z + s * n.x,
          t * n.z * n.z + c};
}

std::unique_ptr<ParametricSurface> make_sphere(double radius) {
  return std::make_unique<Ellipsoid>(radius, radius, radius);
}

std::unique_ptr<ParametricSurface> make_ellipsoid(double a, double b,
                                                  double c) {
  return std::make_unique<Ellipsoid>(a, b, c);
}

std::unique_ptr<ParametricSurface> make_capped_cylinder(double radius,
                                                        double half_length,
                                                        double cap) {
  return std::make_unique<CappedCylinder>(radius, half_length, cap);
}

std::unique_ptr<ParametricSurface> make_expression_surface(
    const std::string& x_expr, const std::string& y_expr,
    const std::string& z_expr, const ChartDomain& dom, const Vec3& interior) {
  return std::make_unique<ExpressionSurface>(x_expr, y_expr, z_expr, dom,
                                             interior);
}

std::unique_ptr<ParametricSurface> make_rotated(const ParametricSurface& base,
                                                const Mat3& rotation) {
  return std::make_unique<Rotated>(base, rotation);
}

}  // namespace sctk::geom

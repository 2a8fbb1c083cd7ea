#pragma once

// Analytic chart surfaces: builtin closed surfaces (sphere, ellipsoid, a
// cylinder-with-caps used as the assumption-violating specimen), charts given
// by parsed coordinate expressions, and a rigid-rotation adapter.

#include <array>
#include <cmath>
#include <memory>
#include <string>

namespace sctk::geom {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;
  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  Vec3 cross(const Vec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  double norm() const { return std::sqrt(dot(*this)); }
  Vec3 normalized() const {
    double n = norm();
    return {x / n, y / n, z / n};
  }
};

using Mat3 = std::array<double, 9>;  // row major

inline Vec3 mat_apply(const Mat3& m, const Vec3& v) {
  return {m[0] * v.x + m[1] * v.y + m[2] * v.z,
          m[3] * v.x + m[4] * v.y + m[5] * v.z,
          m[6] * v.x + m[7] * v.y + m[8] * v.z};
}

Mat3 rotation_about_axis(const Vec3& axis, double angle);

// Chart point with first and second partials.
struct ChartJet {
  Vec3 p, pu, pv, puu, puv, pvv;
};

struct ChartDomain {
  double u0 = 0.0, u1 = 1.0;
  double v0 = 0.0, v1 = 1.0;
  bool u_periodic = false;
  // fraction of the v-span next to each v-edge where the chart degenerates
  // (poles of the builtin charts); tracing and seeding stay outside it
  double v_pole_margin = 0.0;
};

class ParametricSurface {
 public:
  virtual ~ParametricSurface() = default;
  virtual ChartJet jet(double u, double v) const = 0;
  virtual ChartDomain domain() const = 0;
  virtual Vec3 interior_point() const { return {}; }
  virtual std::unique_ptr<ParametricSurface> clone() const = 0;
  virtual std::string describe() const = 0;
  // Same geometry under a chart whose poles sit elsewhere; used when a curve
  // being traced runs into a pole of the current chart.  Null when the
  // surface offers no alternative.
  virtual std::unique_ptr<ParametricSurface> alternate_chart(int which) const {
    (void)which;
    return nullptr;
  }
};

std::unique_ptr<ParametricSurface> make_sphere(double radius);
std::unique_ptr<ParametricSurface> make_ellipsoid(double a, double b, double c);
// Cylinder of given radius and half-length, closed by C^2 caps of depth `cap`.
std::unique_ptr<ParametricSurface> make_capped_cylinder(double radius,
                                                        double half_length,
                                                        double cap);
// Chart from arithmetic expressions in u and v for the three coordinates.
std::unique_ptr<ParametricSurface> make_expression_surface(
    const std::string& x_expr, const std::string& y_expr,
    const std::string& z_expr, const ChartDomain& dom, const Vec3& interior);
std::unique_ptr<ParametricSurface> make_rotated(const ParametricSurface& base,
                                                const Mat3& rotation);

}  // namespace sctk::geom

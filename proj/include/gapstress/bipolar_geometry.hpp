#ifndef GAPSTRESS_BIPOLAR_GEOMETRY_HPP
#define GAPSTRESS_BIPOLAR_GEOMETRY_HPP

// Bipolar coordinates for two equal disks of radius r whose closest points
// are a distance eps apart. The disks are centred at (-(r + eps/2), 0) and
// (r + eps/2, 0); their boundaries are the coordinate curves zeta = -s and
// zeta = +s, and the region outside both disks is |zeta| <= s.

#include <cmath>
#include <numbers>
#include <string>

#include "gapstress/errors.hpp"
#include "gapstress/tensor.hpp"

namespace gapstress {

using CartesianPoint = Vec2;

/// A point in bipolar coordinates. theta is kept in (-pi, pi].
struct BipolarPoint {
  double zeta = 0.0;
  double theta = 0.0;

  BipolarPoint() = default;
  BipolarPoint(double z, double t) : zeta(z), theta(canonical_angle(t)) {}

  static double canonical_angle(double t) {
    constexpr double pi = std::numbers::pi;
    if (t > -pi && t <= pi) return t;
    double r = std::remainder(t, 2.0 * pi);  // in [-pi, pi]
    if (r <= -pi) r += 2.0 * pi;
    return r;
  }
};

/// Physical configuration (r, eps) and the derived bipolar parameters.
class GapGeometry {
 public:
  GapGeometry(double r, double eps) : r_(r), eps_(eps) {
    if (!(r > 0.0) || !std::isfinite(r)) throw InvalidArgument("GapGeometry: r must be positive");
    if (!(eps > 0.0) || !std::isfinite(eps)) throw InvalidArgument("GapGeometry: eps must be positive");
    alpha_ = std::sqrt(eps * (r + 0.25 * eps));
    s_ = std::asinh(std::sqrt((eps / r) * (1.0 + eps / (4.0 * r))));
  }

  double r() const { return r_; }
  double eps() const { return eps_; }
  /// Half-distance between the foci p1 = (-alpha, 0) and p2 = (alpha, 0).
  double alpha() const { return alpha_; }
  /// The boundary coordinate: dB1 = {zeta = -s}, dB2 = {zeta = +s}.
  double s() const { return s_; }

  CartesianPoint p1() const { return {-alpha_, 0.0}; }
  CartesianPoint p2() const { return {alpha_, 0.0}; }
  CartesianPoint centre1() const { return {-(r_ + 0.5 * eps_), 0.0}; }
  CartesianPoint centre2() const { return {r_ + 0.5 * eps_, 0.0}; }

 private:
  double r_;
  double eps_;
  double alpha_;
  double s_;
};

inline GapGeometry derive_geometry(double r, double eps) { return GapGeometry(r, eps); }

/// Geometry with a prescribed boundary coordinate s: eps = 4 r sinh^2(s/2).
inline GapGeometry geometry_from_s(double r, double s) {
  if (!(s > 0.0) || !std::isfinite(s)) throw InvalidArgument("geometry_from_s: s must be positive");
  const double sh = std::sinh(0.5 * s);
  return GapGeometry(r, 4.0 * r * sh * sh);
}

/// h(zeta, theta) = cosh(zeta) - cos(theta), evaluated as
/// 2 (sinh^2(zeta/2) + sin^2(theta/2)) so it keeps full relative accuracy
/// near the point at infinity.
inline double metric_h(double zeta, double theta) {
  const double a = std::sinh(0.5 * zeta);
  const double b = std::sin(0.5 * theta);
  return 2.0 * (a * a + b * b);
}

inline double metric_h(const BipolarPoint& b) { return metric_h(b.zeta, b.theta); }

/// Principal-branch bipolar coordinates: zeta - i theta = log((z + alpha)/(z - alpha)).
inline BipolarPoint to_bipolar(const CartesianPoint& p, const GapGeometry& g) {
  const double a = g.alpha();
  const double dm2 = (p.x - a) * (p.x - a) + p.y * p.y;
  const double dp2 = (p.x + a) * (p.x + a) + p.y * p.y;
  if (dm2 == 0.0 || dp2 == 0.0) throw SingularPoint("to_bipolar: point is a focus");
  const double zeta = 0.5 * std::log1p(4.0 * a * p.x / dm2);
  // (z + a)/(z - a) = ((|z|^2 - a^2) - 2 i a y) / |z - a|^2
  double theta = std::atan2(2.0 * a * p.y, (p.x * p.x + p.y * p.y) - a * a);
  if (theta == -std::numbers::pi) theta = std::numbers::pi;
  BipolarPoint b;
  b.zeta = zeta;
  b.theta = theta;
  return b;
}

inline constexpr double kDefaultInfinityFloor = 1e-14;

inline CartesianPoint to_cartesian(const BipolarPoint& b, const GapGeometry& g,
                                   double infinity_floor = kDefaultInfinityFloor) {
  const double h = metric_h(b);
  if (h < infinity_floor) throw PointAtInfinity("to_cartesian: (zeta, theta) maps to infinity");
  return {g.alpha() * std::sinh(b.zeta) / h, g.alpha() * std::sin(b.theta) / h};
}

/// Gradients of the bipolar coordinates in their dipole form,
///   grad zeta = (x - p1)/|x - p1|^2 - (x - p2)/|x - p2|^2,
///   grad theta = (x - p1)^perp/|x - p1|^2 - (x - p2)^perp/|x - p2|^2,
/// and the orthonormal frame obtained by normalizing them. The dipole
/// "grad theta" is the gradient of -theta for the principal-branch theta of
/// to_bipolar; the frame is right-handed with e_theta = e_zeta^perp.
struct FrameGradients {
  Vec2 grad_zeta;
  Vec2 grad_theta;
  Frame frame;
};

inline FrameGradients frame_and_gradients(const CartesianPoint& p, const GapGeometry& g) {
  const Vec2 d1 = p - g.p1();
  const Vec2 d2 = p - g.p2();
  const double n1 = d1.norm2();
  const double n2 = d2.norm2();
  if (n1 == 0.0 || n2 == 0.0) throw SingularPoint("frame_and_gradients: point is a focus");
  FrameGradients out;
  out.grad_zeta = d1 / n1 - d2 / n2;
  out.grad_theta = d1.perp() / n1 - d2.perp() / n2;
  const double mz = out.grad_zeta.norm();
  const double mt = out.grad_theta.norm();
  if (!(mt > 0.0) || !(mz > 0.0) || !std::isfinite(mz)) {
    throw SingularPoint("frame_and_gradients: gradient vanishes (point at infinity)");
  }
  out.frame.e_zeta = out.grad_zeta / mz;
  out.frame.e_theta = out.grad_theta / mt;
  return out;
}

enum class Region { exterior, boundary, hole1, hole2 };

inline const char* to_string(Region r) {
  switch (r) {
    case Region::exterior: return "exterior";
    case Region::boundary: return "boundary";
    case Region::hole1: return "hole1";
    case Region::hole2: return "hole2";
  }
  return "unknown";
}

inline Region classify_zeta(double zeta, double s, double boundary_tol) {
  if (std::abs(zeta) < s - boundary_tol) return Region::exterior;
  if (zeta < -s - boundary_tol) return Region::hole1;
  if (zeta > s + boundary_tol) return Region::hole2;
  return Region::boundary;
}

inline Region classify_region(const CartesianPoint& p, const GapGeometry& g, double boundary_tol = 1e-12) {
  if (p.y == 0.0 && std::abs(p.x) == g.alpha()) return p.x < 0.0 ? Region::hole1 : Region::hole2;
  return classify_zeta(to_bipolar(p, g).zeta, g.s(), boundary_tol);
}

}  // namespace gapstress

#endif  // GAPSTRESS_BIPOLAR_GEOMETRY_HPP

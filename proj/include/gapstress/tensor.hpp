#ifndef GAPSTRESS_TENSOR_HPP
#define GAPSTRESS_TENSOR_HPP

#include <cmath>

namespace gapstress {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator-() const { return {-x, -y}; }
  constexpr Vec2 operator*(double k) const { return {k * x, k * y}; }
  constexpr Vec2 operator/(double k) const { return {x / k, y / k}; }

  /// Counter-clockwise rotation by a right angle: (x, y) -> (-y, x).
  constexpr Vec2 perp() const { return {-y, x}; }
  double norm() const { return std::hypot(x, y); }
  constexpr double norm2() const { return x * x + y * y; }
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }

/// Orthonormal basis (e_zeta, e_theta) of the bipolar system at a point.
struct Frame {
  Vec2 e_zeta;
  Vec2 e_theta;
};

enum class FrameTag { bipolar, cartesian };

/// 2x2 symmetric tensor. c11/c12/c22 refer to the ordered basis named by
/// `frame`: (e_zeta, e_theta) for bipolar, (e_x, e_y) for Cartesian.
struct SymmetricTensor2 {
  double c11 = 0.0;
  double c12 = 0.0;
  double c22 = 0.0;
  FrameTag frame = FrameTag::cartesian;

  double trace() const { return c11 + c22; }
  double det() const { return c11 * c22 - c12 * c12; }

  double frobenius_norm() const {
    return std::sqrt(c11 * c11 + 2.0 * c12 * c12 + c22 * c22);
  }

  /// Largest eigenvalue magnitude.
  double spectral_norm() const {
    const double m = 0.5 * (c11 + c22);
    const double r = std::hypot(0.5 * (c11 - c22), c12);
    return std::abs(m) + r;
  }

  /// Components on the basis (a, b) as a Cartesian tensor:
  /// c11 a(x)a + c12 (a(x)b + b(x)a) + c22 b(x)b.
  SymmetricTensor2 expressed_on(Vec2 a, Vec2 b) const {
    SymmetricTensor2 t;
    t.c11 = c11 * a.x * a.x + 2.0 * c12 * a.x * b.x + c22 * b.x * b.x;
    t.c12 = c11 * a.x * a.y + c12 * (a.x * b.y + b.x * a.y) + c22 * b.x * b.y;
    t.c22 = c11 * a.y * a.y + 2.0 * c12 * a.y * b.y + c22 * b.y * b.y;
    t.frame = FrameTag::cartesian;
    return t;
  }
};

inline SymmetricTensor2 operator-(const SymmetricTensor2& a, const SymmetricTensor2& b) {
  return {a.c11 - b.c11, a.c12 - b.c12, a.c22 - b.c22, a.frame};
}

inline SymmetricTensor2 operator+(const SymmetricTensor2& a, const SymmetricTensor2& b) {
  return {a.c11 + b.c11, a.c12 + b.c12, a.c22 + b.c22, a.frame};
}

/// a (x) a, scaled.
inline SymmetricTensor2 outer(Vec2 a, double scale = 1.0) {
  return {scale * a.x * a.x, scale * a.x * a.y, scale * a.y * a.y, FrameTag::cartesian};
}

inline SymmetricTensor2 identity_tensor() { return {1.0, 0.0, 1.0, FrameTag::cartesian}; }

}  // namespace gapstress

#endif  // GAPSTRESS_TENSOR_HPP

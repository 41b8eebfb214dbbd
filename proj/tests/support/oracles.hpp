#ifndef GAPSTRESS_TESTS_ORACLES_HPP
#define GAPSTRESS_TESTS_ORACLES_HPP

// Independent reference computations shared by the unit tests and the
// acceptance runner. Frozen numbers were produced with 40-digit mpmath
// scripts (direct summation of the defining series, nsum/quad) and are not
// derived from the library.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "gapstress/bipolar_geometry.hpp"
#include "gapstress/tensor.hpp"

namespace oracle {

// r = 1, eps = 0.1
inline constexpr double kAlpha_r1_e01 = 0.32015621187164243432;
inline constexpr double kS_r1_e01 = 0.31492475660384787174;
// r = 2, eps = 1e-3
inline constexpr double kAlpha_r2_e1m3 = 0.044724154547626722018;
inline constexpr double kS_r2_e1m3 = 0.022360213953704556589;

inline constexpr double kP_e01 = 0.11086062354755281291;
inline constexpr double kK_e01 = 11.388114299776803363;
inline constexpr double kS_e001 = 0.099958380138697330463;  // r = 1, eps = 0.01
inline constexpr double kP_e001 = 0.12330705198537456699;
inline constexpr double kK_e001 = 128.69100921919036791;
inline constexpr double kP_s005 = 0.12456063500949960724;   // s = 0.05
inline constexpr double kK_s005 = 531.21978291159207257;

// Coefficients at r = 1, eps = 0.1 (B1 in the decaying form).
struct Coef {
  long n;
  double A, B;
};
inline constexpr Coef kCoef_e01[] = {
    {1, 3.9578783238989620716, 1.0920954853172747301},
    {2, 1.056831878791802231, -4.7452610114225174503},
    {5, 0.083357850895229862231, -0.20285838904843645168},
    {40, 3.1285695283861338801e-12, -6.0280235576888317723e-12},
};

// q(s, theta) at s = kS_r1_e01.
inline constexpr double kQ_theta0 = 1.5200977731216816468;
inline constexpr double kQ_theta1 = -0.1253688922622025907;
inline constexpr double kQ_thetaPi = -0.1209223572880747387;

// sigma1 components at (zeta, theta) = (0.1, 1.0), r = 1, eps = 0.1.
inline constexpr double kDiff_01_1 = 1.6982895820222070623;
inline constexpr double kZt_01_1 = 0.010758624744104242607;
inline constexpr double kZz_01_1 = -0.84168591031982908514;

// Cartesian total stress (sxx, sxy, syy) at r = 1, eps = 0.1, obtained by
// finite differences (step 1e-10, 40 digits) of the full Airy function
// (x^2 + y^2)/2 + alpha^2/h (K h log h + sum phi_n cos n theta).
struct CartesianSample {
  double x, y, sxx, sxy, syy;
};
inline constexpr CartesianSample kCartesian_e01[] = {
    {0.0, 0.0, 0.18376323260430686, 0.0, 7.3550236006575923},
    {0.0, 0.3, 0.18235167038005956, 0.0, 4.0020856769892442},
    {0.02, 0.1, 0.16878624060527775, 0.23504605005793012, 6.7475362667168221},
    {-1.05, 1.4, 1.2886636177263629, 0.2128841894925334, 0.38929538578552458},
    {2.5, 1.5, 0.94225911596624749, -0.26663619192518415, 1.1409516196347126},
};

// (1/4) int_0^inf (sinh^2 x - x^2)/(x^3 (sinh 2x + 2x)) dx and
// int_0^inf sinh x/(sinh 2x + 2x) dx.
inline constexpr double kI0_mp = 0.04550617390595163889512889;
inline constexpr double kQint_mp = 0.5268563983710621765726543;

struct VW {
  double x, s, v, w;
};
inline constexpr VW kVW[] = {
    {0.5, 0.1, 0.75109523230005379906, 0.4583200941875301626},
    {3.0, 0.01, 0.033690247974902698654, 0.028885933473629981605},
    {20.0, 0.1, 3.5063537376612498494e-16, 3.3986834042332700334e-16},
    {1e-5, 0.1, 0.99999501664443923035, 0.49833555606035352073},
};

struct FdResidual {
  long double residual = 0;
  long double scale = 0;  // largest of the three fourth-derivative terms
};

/// (d_t^4 + 2 d_z^2 d_t^2 + d_z^4 + 2 d_t^2 - 2 d_z^2 + 1) F by central
/// differences of spacing d in long double.
inline FdResidual bipolar_biharmonic_fd(const std::function<long double(long double, long double)>& F,
                                        long double z, long double t, long double d) {
  auto f = [&](int i, int j) { return F(z + i * d, t + j * d); };
  const long double d2 = d * d, d4 = d2 * d2;
  const long double f00 = f(0, 0);
  const long double zz = (f(1, 0) - 2 * f00 + f(-1, 0)) / d2;
  const long double tt = (f(0, 1) - 2 * f00 + f(0, -1)) / d2;
  const long double zzzz = (f(2, 0) - 4 * f(1, 0) + 6 * f00 - 4 * f(-1, 0) + f(-2, 0)) / d4;
  const long double tttt = (f(0, 2) - 4 * f(0, 1) + 6 * f00 - 4 * f(0, -1) + f(0, -2)) / d4;
  const long double zztt = (f(1, 1) - 2 * f(0, 1) + f(-1, 1) - 2 * (f(1, 0) - 2 * f00 + f(-1, 0)) + f(1, -1) -
                            2 * f(0, -1) + f(-1, -1)) / d4;
  FdResidual r;
  r.residual = tttt + 2 * zztt + zzzz + 2 * tt - 2 * zz + f00;
  r.scale = std::max({std::fabs(tttt), std::fabs(2 * zztt), std::fabs(zzzz)});
  return r;
}

/// h log h in long double.
inline long double h_log_h(long double z, long double t) {
  const long double h = std::cosh(z) - std::cos(t);
  return h * std::log(h);
}

/// Point on the boundary of hole j (1 or 2) at polar angle phi about its
/// centre, and the unit normal pointing away from the hole.
struct BoundaryPoint {
  gapstress::Vec2 p;
  gapstress::Vec2 normal;
};

inline BoundaryPoint boundary_point(const gapstress::GapGeometry& g, int hole, double phi) {
  const gapstress::Vec2 c = hole == 1 ? g.centre1() : g.centre2();
  const gapstress::Vec2 n{std::cos(phi), std::sin(phi)};
  return {c + n * g.r(), n};
}

inline gapstress::Vec2 traction(const gapstress::SymmetricTensor2& t, gapstress::Vec2 n) {
  return {t.c11 * n.x + t.c12 * n.y, t.c12 * n.x + t.c22 * n.y};
}

}  // namespace oracle

#endif  // GAPSTRESS_TESTS_ORACLES_HPP

#ifndef GAPSTRESS_SINGULAR_ASYMPTOTICS_HPP
#define GAPSTRESS_SINGULAR_ASYMPTOTICS_HPP

// Singular asymptotics of Fourier series with slowly decaying coefficients
// f(ns, s). The series operator
//
//   L[f](z) = sum_{n>=1} f(ns, s) z^n,            |z| <= e^s,
//
// behaves for small s like f0(s) e^{-2s} z / (1 - e^{-2s} z), with a remainder
// of order s / |1 - e^{-2s} z|^2 uniformly in arg z. The stress components
// of the two-hole problem are exact combinations of
// M+-[f](zeta, theta) = (L[f](e^{zeta+i theta}) +- L[f](e^{-zeta+i theta}))/2
// for the two coefficient functions v and w below, and the leading part of
// the stress is the rank-one tensor built from the dipole fields.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <string>

#include "gapstress/bipolar_geometry.hpp"
#include "gapstress/errors.hpp"
#include "gapstress/numerics.hpp"
#include "gapstress/tensor.hpp"

namespace gapstress {

using Complex = std::complex<double>;

/// s~ = sinh^2(s)/s.
inline double s_tilde(double s) {
  const double sh = std::sinh(s);
  return sh * sh / s;
}

struct SingularScalars {
  double eta_s = 0.0;    // sinh(2s)/(2s)
  double s_tilde = 0.0;  // sinh^2(s)/s
  double I0 = 0.0;
};

namespace detail {

// (1 - e^{-2x})/(2x), with a Taylor fallback below 1e-4.
inline double one_minus_exp_over(double x) {
  if (x < 1e-4) return 1.0 - x + (2.0 / 3.0) * x * x - x * x * x / 3.0 + (2.0 / 15.0) * x * x * x * x;
  return -std::expm1(-2.0 * x) / (2.0 * x);
}

}  // namespace detail

/// v(x, s) = (2 e^{-x} sinh x + eta(s) 2x) / (sinh 2x + eta(s) 2x).
inline double eval_v(double x, double s) {
  const double et = eta(s);
  if (x < 1.0) return (detail::one_minus_exp_over(x) + et) / (sinhc(2.0 * x) + et);
  const double e2 = std::exp(-2.0 * x);
  return 2.0 * e2 * (1.0 - e2 + 2.0 * et * x) / (1.0 - e2 * e2 + 4.0 * et * x * e2);
}

/// w(x, s) = 2x / (sinh 2x + eta(s) 2x).
inline double eval_w(double x, double s) {
  const double et = eta(s);
  if (x < 1.0) return 1.0 / (sinhc(2.0 * x) + et);
  const double e2 = std::exp(-2.0 * x);
  return 4.0 * x * e2 / (1.0 - e2 * e2 + 4.0 * et * x * e2);
}

/// v(x, s) e^{2x}; finite for every x.
inline double eval_v_scaled(double x, double s) {
  if (x < 1.0) return eval_v(x, s) * std::exp(2.0 * x);
  const double et = eta(s);
  const double e2 = std::exp(-2.0 * x);
  return 2.0 * (1.0 - e2 + 2.0 * et * x) / (1.0 - e2 * e2 + 4.0 * et * x * e2);
}

/// w(x, s) e^{2x}.
inline double eval_w_scaled(double x, double s) {
  if (x < 1.0) return eval_w(x, s) * std::exp(2.0 * x);
  const double et = eta(s);
  const double e2 = std::exp(-2.0 * x);
  return 4.0 * x / (1.0 - e2 * e2 + 4.0 * et * x * e2);
}

/// Coefficient function f(x, s) for L[f], with its limit f0(s) at x = 0+.
/// `scaled` returns f(x, s) e^{2x}, which stays finite where f underflows;
/// |scaled| must grow at most like x^growth_degree.
struct SlowFunction {
  std::function<double(double, double)> eval;
  std::function<double(double, double)> scaled;
  std::function<double(double)> f0;
  int growth_degree = 1;

  static SlowFunction from_eval(std::function<double(double, double)> f,
                                std::function<double(double)> limit, int degree) {
    SlowFunction out;
    out.eval = f;
    out.scaled = [f](double x, double s) { return f(x, s) * std::exp(2.0 * x); };
    out.f0 = std::move(limit);
    out.growth_degree = degree;
    return out;
  }
};

inline SlowFunction slow_v() {
  return {eval_v, eval_v_scaled, [](double) { return 1.0; }, 1};
}

inline SlowFunction slow_w() {
  return {eval_w, eval_w_scaled, [](double s) { return 1.0 / (1.0 + eta(s)); }, 1};
}

/// f(x, s) = e^{-2x}; L is then an exact geometric series.
inline SlowFunction slow_exponential() {
  return {[](double x, double) { return std::exp(-2.0 * x); }, [](double, double) { return 1.0; },
          [](double) { return 1.0; }, 0};
}

inline constexpr double kSeriesTol = 1e-14;

namespace detail {

// Shared driver for L and M+-. `term(n)` is the complex n-th term and
// `envelope(n)` a bound on its modulus; summation stops once the geometric
// tail with ratio rho (1+1/n)^deg drops below tol.
template <class Term, class Envelope>
Complex sum_slow_series(Term&& term, Envelope&& envelope, double rho, double s, int degree,
                        double tol, long max_terms, const char* who) {
  CompensatedSum<Complex> acc;
  const long n_min = static_cast<long>(std::ceil(2.0 / s)) + 2;
  for (long n = 1; n <= max_terms; ++n) {
    acc += term(n);
    if (n >= n_min) {
      const double ratio = rho * std::pow(1.0 + 1.0 / static_cast<double>(n), degree);
      const double tail = geometric_tail(envelope(n), ratio);
      if (tail <= tol) return acc.value();
    }
  }
  const double ratio = rho * std::pow(1.0 + 1.0 / static_cast<double>(max_terms), degree);
  throw TruncationFailure(std::string(who) + ": term cap reached", geometric_tail(envelope(max_terms), ratio),
                          max_terms);
}

}  // namespace detail

/// L[f](z) = sum_{n>=1} f(ns, s) z^n by direct compensated summation.
inline Complex series_L(const SlowFunction& f, double s, Complex z, double tol = kSeriesTol,
                        long max_terms = kDefaultMaxTerms) {
  if (!(s > 0.0)) throw InvalidArgument("series_L: s must be positive");
  const double modulus = std::abs(z);
  if (modulus > std::exp(s) * (1.0 + 1e-14)) throw DomainError("series_L: requires |z| <= e^s");
  const double rho = std::exp(-2.0 * s) * modulus;  // |e^{-2s} z|
  const double log_rho = std::log(rho);
  const double phase = std::arg(z);
  auto term = [&](long n) {
    const double dn = static_cast<double>(n);
    return f.scaled(dn * s, s) * std::exp(dn * log_rho) * std::polar(1.0, dn * phase);
  };
  auto envelope = [&](long n) {
    const double dn = static_cast<double>(n);
    return std::abs(f.scaled(dn * s, s)) * std::exp(dn * log_rho);
  };
  return detail::sum_slow_series(term, envelope, rho, s, f.growth_degree, tol, max_terms, "series_L");
}

/// Leading term f0(s) e^{-2s} z / (1 - e^{-2s} z).
inline Complex leading_L(const SlowFunction& f, double s, Complex z) {
  const Complex zt = std::exp(-2.0 * s) * z;
  const Complex denom = 1.0 - zt;
  if (std::abs(denom) < 1e-15) throw DomainError("leading_L: pole at z = e^{2s}");
  return f.f0(s) * zt / denom;
}

enum class MSign { plus, minus };

/// M+[f] = sum f(ns,s) cosh(n zeta) e^{i n theta},
/// M-[f] = sum f(ns,s) sinh(n zeta) e^{i n theta}, for |zeta| <= s.
inline Complex series_M(const SlowFunction& f, double s, const BipolarPoint& b, MSign sign,
                        double tol = kSeriesTol, long max_terms = kDefaultMaxTerms) {
  if (!(s > 0.0)) throw InvalidArgument("series_M: s must be positive");
  if (std::abs(b.zeta) > s * (1.0 + 1e-12)) throw DomainError("series_M: requires |zeta| <= s");
  const double zeta = std::clamp(b.zeta, -s, s);
  const double rate_p = -2.0 * s + zeta;  // e^{-2ns} e^{+n zeta}
  const double rate_m = -2.0 * s - zeta;
  const double sgn = sign == MSign::plus ? 1.0 : -1.0;
  auto radial = [&](long n) {
    const double dn = static_cast<double>(n);
    return 0.5 * (std::exp(dn * rate_p) + sgn * std::exp(dn * rate_m));
  };
  auto term = [&](long n) {
    const double dn = static_cast<double>(n);
    return f.scaled(dn * s, s) * radial(n) * std::polar(1.0, dn * b.theta);
  };
  auto envelope = [&](long n) {
    const double dn = static_cast<double>(n);
    return std::abs(f.scaled(dn * s, s)) * std::exp(dn * std::max(rate_p, rate_m));
  };
  const double rho = std::exp(std::max(rate_p, rate_m));
  return detail::sum_slow_series(term, envelope, rho, s, f.growth_degree, tol, max_terms, "series_M");
}

/// The same combination assembled from two evaluations of L.
inline Complex series_M_via_L(const SlowFunction& f, double s, const BipolarPoint& b, MSign sign,
                              double tol = kSeriesTol, long max_terms = kDefaultMaxTerms) {
  if (std::abs(b.zeta) > s * (1.0 + 1e-12)) throw DomainError("series_M_via_L: requires |zeta| <= s");
  const Complex lp = series_L(f, s, std::exp(Complex(b.zeta, b.theta)), tol, max_terms);
  const Complex lm = series_L(f, s, std::exp(Complex(-b.zeta, b.theta)), tol, max_terms);
  return sign == MSign::plus ? 0.5 * (lp + lm) : 0.5 * (lp - lm);
}

// ---------------------------------------------------------------------------
// Constants

/// I0 = (1/4) int_0^inf (sinh^2 x - x^2) / (x^3 (sinh 2x + 2x)) dx, fixed by
/// agreement of the adaptive and composite rules (see tests).
inline constexpr double kI0 = 0.045506173905951639;

/// int_0^inf sinh x / (sinh 2x + 2x) dx, fixed the same way.
inline constexpr double kQOriginIntegral = 0.52685639837106218;

inline constexpr double kDefaultCutoff = 40.0;

/// Tail of f0 beyond X: int_X^inf 1/(2x^3) = 1/(4X^2). The neglected part is
/// below 2 (X^2 + X + 1) e^{-2X} / X^3.
inline TailModel f0_tail_model(double cutoff = kDefaultCutoff) {
  return {cutoff, [](double X) { return 0.25 / (X * X); },
          [](double X) { return 2.0 * (X * X + X + 1.0) * std::exp(-2.0 * X) / (X * X * X); }};
}

/// int_0^inf f0 by adaptive Gauss-Kronrod plus the analytic tail. Equals 4 I0.
inline QuadratureResult f0_integral(double tol, double cutoff = kDefaultCutoff) {
  return adaptive_quadrature(f0_integrand, 0.0, f0_tail_model(cutoff), tol);
}

/// I0 by adaptive quadrature; error_estimate bounds |value - I0|.
inline QuadratureResult I0_quadrature(double tol, double cutoff = kDefaultCutoff) {
  if (!(tol > 0.0)) throw InvalidArgument("I0: tol must be positive");
  QuadratureResult r = f0_integral(4.0 * tol, cutoff);
  r.value *= 0.25;
  r.error_estimate *= 0.25;
  return r;
}

inline double I0_constant(double tol = 1e-13) { return I0_quadrature(tol).value; }

/// The constant c with K(s) = (1 + O(s)) / (c s^2): since
/// 1/8 - P(s) = s^2 int_0^inf f0 + O(s^3), c = 4 int f0 = 16 I0. The same c
/// sets the size of the singular stress, sigma* = (r/c)|v| w^ (x) w^.
inline constexpr double kBlowupConstant = 16.0 * kI0;

inline double blowup_constant(double tol = 1e-13) { return 16.0 * I0_constant(tol / 16.0); }

/// I0 by a fixed composite Gauss-Legendre rule on [0, cutoff] plus the same
/// tail; an independent route for cross-checking.
inline QuadratureResult I0_composite(int panels = 200, int order = 20, double cutoff = kDefaultCutoff) {
  QuadratureResult r = composite_gauss_legendre(f0_integrand, 0.0, cutoff, panels, order);
  r.value = 0.25 * (r.value + f0_tail_model(cutoff).integral(cutoff));
  r.error_estimate *= 0.25;
  return r;
}

inline double q_origin_integrand(double x) {
  if (x < 1.0) return std::sinh(x) / (std::sinh(2.0 * x) + 2.0 * x);
  const double e2 = std::exp(-2.0 * x);
  return std::exp(-x) * (1.0 - e2) / (1.0 - e2 * e2 + 4.0 * x * e2);
}

/// Tail beyond X: e^{-X}, with neglected part below (4X + 2) e^{-3X}.
inline TailModel q_origin_tail_model(double cutoff = kDefaultCutoff) {
  return {cutoff, [](double X) { return std::exp(-X); },
          [](double X) { return (4.0 * X + 2.0) * std::exp(-3.0 * X); }};
}

/// int_0^inf sinh x / (sinh 2x + 2x) dx, the limit of s q(s, 0).
inline QuadratureResult q_origin_integral(double tol, double cutoff = kDefaultCutoff) {
  return adaptive_quadrature(q_origin_integrand, 0.0, q_origin_tail_model(cutoff), tol);
}

inline SingularScalars singular_scalars(double s, double I0 = kI0) { return {eta(s), s_tilde(s), I0}; }

// ---------------------------------------------------------------------------
// Closed-form asymptotics

/// Leading behaviour of q(s, theta): -(1/8) (e^{-s} - cos theta) / (cosh s - cos theta).
inline double q_asymptotic(double s, double theta) {
  if (!(s > 0.0)) throw InvalidArgument("q_asymptotic: s must be positive");
  const double st = std::sin(0.5 * theta);
  const double num = std::expm1(-s) + 2.0 * st * st;
  return -0.125 * num / metric_h(s, theta);
}

/// Dipole field v(x) = (x - p1)/|x - p1|^2 - (x - p2)/|x - p2|^2.
inline Vec2 dipole_v(const GapGeometry& g, const CartesianPoint& p) { return frame_and_gradients(p, g).grad_zeta; }

/// Dipole field w(x) = (x - p1)^perp/|x - p1|^2 - (x - p2)^perp/|x - p2|^2.
inline Vec2 dipole_w(const GapGeometry& g, const CartesianPoint& p) { return frame_and_gradients(p, g).grad_theta; }

/// Singular part of the stress: (r / I0) |v| (w/|w|) (x) (w/|w|). The
/// constant is passed explicitly; kBlowupConstant makes sigma - sigma*
/// bounded.
inline SymmetricTensor2 sigma_star(const GapGeometry& g, const CartesianPoint& p, double I0) {
  const FrameGradients fg = frame_and_gradients(p, g);
  return outer(fg.frame.e_theta, g.r() / I0 * fg.grad_zeta.norm());
}

/// Leading bipolar-frame stress (1/(I0 s)) h(zeta, theta) e_theta (x) e_theta.
inline SymmetricTensor2 sigma_leading_bipolar(const GapGeometry& g, const BipolarPoint& b, double I0) {
  return {0.0, 0.0, metric_h(b) / (I0 * g.s()), FrameTag::bipolar};
}

// ---------------------------------------------------------------------------
// Exact representations of the stress components through M+-[v], M+-[w]

/// sigma1_tt - sigma1_zz =
///   4 K h sinh(zeta) Re M-[v] - 4 K h s~ cosh(zeta) Re M+[w] + 2 K sinh^2(zeta).
inline double tt_minus_zz_via_M(double K, double s, const BipolarPoint& b, double tol = kSeriesTol) {
  const double h = metric_h(b);
  const double st = s_tilde(s);
  const double sh = std::sinh(b.zeta);
  const double mv = sh == 0.0 ? 0.0 : series_M(slow_v(), s, b, MSign::minus, tol).real();
  const double pw = series_M(slow_w(), s, b, MSign::plus, tol).real();
  return 4.0 * K * h * sh * mv - 4.0 * K * h * st * std::cosh(b.zeta) * pw + 2.0 * K * sh * sh;
}

/// sigma1_zt = 2 K h sinh(zeta) Im M+[v] - 2 K h s~ cosh(zeta) Im M-[w] - K sinh(zeta) sin(theta).
inline double zt_via_M(double K, double s, const BipolarPoint& b, double tol = kSeriesTol) {
  const double h = metric_h(b);
  const double st = s_tilde(s);
  const double sh = std::sinh(b.zeta);
  const double pv = sh == 0.0 ? 0.0 : series_M(slow_v(), s, b, MSign::plus, tol).imag();
  const double mw = b.zeta == 0.0 ? 0.0 : series_M(slow_w(), s, b, MSign::minus, tol).imag();
  return 2.0 * K * h * sh * pv - 2.0 * K * h * st * std::cosh(b.zeta) * mw - K * sh * std::sin(b.theta);
}

}  // namespace gapstress

#endif  // GAPSTRESS_SINGULAR_ASYMPTOTICS_HPP

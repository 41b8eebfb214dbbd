#ifndef GAPSTRESS_LING_EXACT_HPP
#define GAPSTRESS_LING_EXACT_HPP

// Exact series solution for two circular holes in a plate under the
// far-field stress sigma0 = identity. The perturbation Airy function is
//
//   chi1 = J alpha [ K h log h + sum_{n>=1} phi_n(zeta) cos(n theta) ],
//   phi_n = A_n cosh((n+1) zeta) + B_n cosh((n-1) zeta),
//
// and the stress components in the bipolar frame follow by differentiation.
// All coefficients are stored scaled by e^{2ns} so nothing overflows for
// large n s.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "gapstress/bipolar_geometry.hpp"
#include "gapstress/errors.hpp"
#include "gapstress/numerics.hpp"
#include "gapstress/singular_asymptotics.hpp"
#include "gapstress/tensor.hpp"

namespace gapstress {

// ---------------------------------------------------------------------------
// The constants P(s) and K(s)

/// n-th term of P(s), n >= 2.
inline double p_term(long n, double s) {
  const double dn = static_cast<double>(n);
  const double x = dn * s;
  const double sh = std::sinh(s), ch = std::cosh(s);
  const double lin = dn * (dn * sh + ch) * sh;
  if (x < 20.0) {
    const double num = 0.5 * (-std::expm1(-2.0 * x)) + lin;
    return num / (dn * (dn * dn - 1.0) * (std::sinh(2.0 * x) + dn * std::sinh(2.0 * s)));
  }
  const double e2 = std::exp(-2.0 * x);
  const double num = 0.5 * (1.0 - e2) + lin;
  return 2.0 * e2 * num / (dn * (dn * dn - 1.0) * (1.0 - e2 * e2 + 2.0 * dn * std::sinh(2.0 * s) * e2));
}

struct SeriesValue {
  double value = 0.0;
  Truncation truncation;
};

inline void check_constant_args(double s, double tol, const char* who) {
  if (!(s > 0.0) || !std::isfinite(s)) throw InvalidArgument(std::string(who) + ": s must be positive");
  if (!(tol > 0.0)) throw InvalidArgument(std::string(who) + ": tol must be positive");
}

/// P(s) = sum_{n>=2} P_n by direct summation, tail bounded by tol.
inline SeriesValue constant_P_detailed(double s, double tol, long max_terms = kDefaultMaxTerms) {
  check_constant_args(s, tol, "constant_P");
  CompensatedSum<double> acc;
  long n = 2;
  for (;; ++n) {
    if (n > max_terms) {
      throw TruncationFailure("constant_P: term cap reached before tolerance", p_series_tail_bound(s, max_terms),
                              max_terms);
    }
    acc += p_term(n, s);
    if (p_series_tail_bound(s, n) <= tol) break;
  }
  SeriesValue out;
  out.value = acc.value();
  out.truncation = {max_terms, tol, n, p_series_tail_bound(s, n)};
  return out;
}

inline double constant_P(double s, double tol, long max_terms = kDefaultMaxTerms) {
  return constant_P_detailed(s, tol, max_terms).value;
}

/// D(s) = 1/8 - P(s) without cancellation: the exact defects up to N0 ~ 1/s,
/// the closed form 1/(4 N0 (N0+1)) for sum_{n>N0} 1/(2n(n^2-1)), and the
/// remaining P terms. tol bounds the neglected P tail.
inline SeriesValue p_defect_detailed(double s, double tol, long max_terms = kDefaultMaxTerms) {
  check_constant_args(s, tol, "p_defect");
  const long n0 = std::max<long>(2, static_cast<long>(std::ceil(1.0 / s)));
  if (n0 > max_terms) throw TruncationFailure("p_defect: term cap below 1/s", 1.0 / s, max_terms);
  CompensatedSum<double> acc;
  for (long n = 2; n <= n0; ++n) acc += fK_term(n, s);
  const double d0 = static_cast<double>(n0);
  acc += 0.25 / (d0 * (d0 + 1.0));
  long n = n0;
  while (p_series_tail_bound(s, n) > tol) {
    ++n;
    if (n > max_terms) {
      throw TruncationFailure("p_defect: term cap reached before tolerance", p_series_tail_bound(s, max_terms),
                              max_terms);
    }
    acc += -p_term(n, s);
  }
  SeriesValue out;
  out.value = acc.value();
  out.truncation = {max_terms, tol, n, p_series_tail_bound(s, n)};
  return out;
}

/// K = (1/2 + tanh s sinh^2 s - 4 P(s))^{-1}, formed as
/// (tanh s sinh^2 s + 4 (1/8 - P))^{-1}.
inline double constant_K(double s, double tol, long max_terms = kDefaultMaxTerms) {
  const double d = p_defect_detailed(s, tol, max_terms).value;
  const double sh = std::sinh(s);
  const double denom = std::tanh(s) * sh * sh + 4.0 * d;
  if (!(std::abs(denom) >= 1e-300)) throw DegenerateGeometry("constant_K: denominator underflow");
  return 1.0 / denom;
}

/// Tolerance on the P tail used when K enters a coefficient table: K then
/// carries a relative error near 1e-14.
inline double table_K_tolerance(double s) { return 1e-15 * std::min(1.0, s * s); }

// ---------------------------------------------------------------------------
// Coefficients

enum class B1Form {
  decaying,   // (1/2) K tanh s cosh 2s - 1: sigma1 -> 0 at infinity
  as_printed  // (1/2) (K tanh s cosh 2s - 2 e^{-s} cosh s)
};

inline double coefficient_B1(double K, double s, B1Form form) {
  const double lead = 0.5 * K * std::tanh(s) * std::cosh(2.0 * s);
  return form == B1Form::decaying ? lead - 1.0 : lead - std::exp(-s) * std::cosh(s);
}

/// A_n e^{2ns}.
inline double scaled_A(long n, double K, double s) {
  const double dn = static_cast<double>(n);
  const double x = dn * s;
  const double e2 = std::exp(-2.0 * x);
  const double num = 0.5 * (-std::expm1(-2.0 * x)) + dn * std::exp(-s) * std::sinh(s);
  const double den = 0.5 * (-std::expm1(-4.0 * x)) + dn * std::sinh(2.0 * s) * e2;
  return 2.0 * K * num / (dn * (dn + 1.0) * den);
}

/// B_n e^{2ns}, n >= 2.
inline double scaled_B(long n, double K, double s) {
  const double dn = static_cast<double>(n);
  const double x = dn * s;
  const double e2 = std::exp(-2.0 * x);
  const double num = 0.5 * (-std::expm1(-2.0 * x)) + dn * std::exp(s) * std::sinh(s);
  const double den = 0.5 * (-std::expm1(-4.0 * x)) + dn * std::sinh(2.0 * s) * e2;
  return -2.0 * K * num / (dn * (dn - 1.0) * den);
}

/// Bound on the modulus of the n-th term of any of the stress series on
/// |zeta| <= s, given A_n e^{2ns} and B_n e^{2ns}.
inline double stress_term_envelope(double a_scaled, double b_scaled, long n, double s) {
  const double dn = static_cast<double>(n);
  const double hmax = std::cosh(s) + 1.0;
  const double ea = 0.5 * (std::exp(-dn * s + s) + std::exp(-3.0 * dn * s - s));
  const double eb = 0.5 * (std::exp(-dn * s - s) + std::exp(-3.0 * dn * s + s));
  return (2.0 * hmax + 2.0) * (dn + 1.0) * (dn + 1.0) * (std::abs(a_scaled) * ea + std::abs(b_scaled) * eb);
}

/// Tail beyond N when the envelope at N is known; the envelope shrinks at
/// least by e^{-s} (1 + 1/N)^3 per step for N >= 2/s.
inline double stress_tail_bound(double envelope_N, long N, double s) {
  const double dN = static_cast<double>(N);
  return geometric_tail(envelope_N, std::exp(-s) * std::pow(1.0 + 1.0 / dN, 3));
}

class CoefficientTable {
 public:
  CoefficientTable(double K, double s, long N, B1Form form, Truncation trunc)
      : K_(K), s_(s), N_(N), form_(form), trunc_(trunc), a_(N + 2), b_(N + 2) {
    for (long n = 1; n <= N + 1; ++n) {
      a_[n] = scaled_A(n, K, s);
      b_[n] = n == 1 ? coefficient_B1(K, s, form) * std::exp(2.0 * s) : scaled_B(n, K, s);
    }
  }

  double K() const { return K_; }
  double s() const { return s_; }
  long N() const { return N_; }
  B1Form b1_form() const { return form_; }
  const Truncation& truncation() const { return trunc_; }

  /// A_n e^{2ns} and B_n e^{2ns}, for 1 <= n <= N + 1.
  double A_scaled(long n) const { return a_.at(static_cast<std::size_t>(n)); }
  double B_scaled(long n) const { return b_.at(static_cast<std::size_t>(n)); }

  /// Unscaled coefficients; underflow to zero once 2ns > ~745.
  double A(long n) const { return A_scaled(n) * std::exp(-2.0 * static_cast<double>(n) * s_); }
  double B(long n) const { return B_scaled(n) * std::exp(-2.0 * static_cast<double>(n) * s_); }

  double term_envelope(long n) const { return stress_term_envelope(A_scaled(n), B_scaled(n), n, s_); }

  /// Bound on the neglected terms n > N.
  double tail_bound_at(long N) const { return stress_tail_bound(term_envelope(N), N, s_); }

 private:
  double K_;
  double s_;
  long N_;
  B1Form form_;
  Truncation trunc_;
  std::vector<double> a_;
  std::vector<double> b_;
};

/// Coefficient table with N chosen so the stress-series tail is below tol.
inline CoefficientTable build_coefficients(const GapGeometry& g, Truncation request = {},
                                           B1Form form = B1Form::decaying) {
  if (!(request.tol > 0.0)) throw InvalidArgument("build_coefficients: tol must be positive");
  const double s = g.s();
  const double K = constant_K(s, table_K_tolerance(s), request.max_terms);
  const long n_min = std::max<long>(8, static_cast<long>(std::ceil(2.0 / s)));
  auto tail_at = [&](long n) {
    return stress_tail_bound(stress_term_envelope(scaled_A(n, K, s), scaled_B(n, K, s), n, s), n, s);
  };
  long n = n_min;
  while (tail_at(n) > request.tol) {
    if (++n > request.max_terms) {
      throw TruncationFailure("build_coefficients: term cap reached before tolerance", tail_at(request.max_terms),
                              request.max_terms);
    }
  }
  Truncation t = request;
  t.achieved_terms = n;
  t.tail_bound = tail_at(n);
  return CoefficientTable(K, s, n, form, t);
}

/// Coefficient table truncated at exactly N terms; the truncation record
/// carries the resulting tail bound.
inline CoefficientTable build_coefficients_fixed(const GapGeometry& g, long N, B1Form form = B1Form::decaying) {
  if (N < 1) throw InvalidArgument("build_coefficients_fixed: N must be >= 1");
  const double s = g.s();
  const double K = constant_K(s, table_K_tolerance(s));
  Truncation t;
  t.max_terms = N;
  t.achieved_terms = N;
  t.tail_bound = N >= 2 ? stress_tail_bound(stress_term_envelope(scaled_A(N, K, s), scaled_B(N, K, s), N, s), N, s)
                        : std::numeric_limits<double>::infinity();
  t.tol = t.tail_bound;
  return CoefficientTable(K, s, N, form, t);
}

// ---------------------------------------------------------------------------
// q(s, theta) and the boundary hoop stress

inline double q_term(long n, double s) {
  const double x = static_cast<double>(n) * s;
  const double e2 = std::exp(-2.0 * x);
  return std::exp(-x) * (-std::expm1(-2.0 * x)) /
         (-std::expm1(-4.0 * x) + 2.0 * static_cast<double>(n) * std::sinh(2.0 * s) * e2);
}

/// q(s, theta) = sum_{n>=1} sinh(ns) / (sinh 2ns + n sinh 2s) cos(n theta).
inline SeriesValue q_series_detailed(double s, double theta, Truncation request = {}) {
  if (!(s > 0.0)) throw InvalidArgument("q_series: s must be positive");
  const Truncation t = truncation_select(s, request.tol, TermModel::q_series, request.max_terms);
  CompensatedSum<double> acc;
  for (long n = 1; n <= t.achieved_terms; ++n) acc += q_term(n, s) * std::cos(static_cast<double>(n) * theta);
  return {acc.value(), t};
}

inline double q_series(double s, double theta, Truncation request = {}) {
  return q_series_detailed(s, theta, request).value;
}

/// Hoop stress on either boundary, 2 K sinh(s) h(s, theta) (1 + 4 q(s, theta)).
/// This is the total sigma_tt, i.e. 1 + sigma1_tt, since sigma1_zz = -1 there.
inline double sigma1_boundary_tt(const CoefficientTable& table, double theta, Truncation request = {}) {
  const double s = table.s();
  const double q = q_series(s, theta, request);
  return 2.0 * table.K() * std::sinh(s) * metric_h(s, theta) * (1.0 + 4.0 * q);
}

inline double sigma1_boundary_tt(const GapGeometry& g, double theta, Truncation request = {}) {
  const double K = constant_K(g.s(), table_K_tolerance(g.s()), request.max_terms);
  const double q = q_series(g.s(), theta, request);
  return 2.0 * K * std::sinh(g.s()) * metric_h(g.s(), theta) * (1.0 + 4.0 * q);
}

// ---------------------------------------------------------------------------
// Stress components of sigma1 in the bipolar frame

struct Sigma1Components {
  double diff_tt_zz = 0.0;  // sigma1_tt - sigma1_zz
  double s_zt = 0.0;
  double s_zz = 0.0;
  double s_tt() const { return diff_tt_zz + s_zz; }
};

namespace detail {

inline constexpr long kReanchor = 256;

inline double checked_zeta(const CoefficientTable& t, const BipolarPoint& b) {
  const double s = t.s();
  if (std::abs(b.zeta) > s + 1e-12) throw OutOfRegion("sigma1: point lies inside a hole (|zeta| > s)");
  if (metric_h(b) < kDefaultInfinityFloor) throw PointAtInfinity("sigma1: point at infinity");
  return std::clamp(b.zeta, -s, s);
}

// Walks e^{-2ns} e^{+-n zeta} and e^{i n theta} by recurrence, re-anchored
// periodically.
struct ModeWalker {
  double zeta, theta, s;
  double rp, rm;  // per-step multipliers
  double gp = 1.0, gm = 1.0, c = 1.0, sn = 0.0;
  double cr, sr;
  long n = 0;

  ModeWalker(double z, double t, double s_) : zeta(z), theta(t), s(s_) {
    rp = std::exp(-2.0 * s + zeta);
    rm = std::exp(-2.0 * s - zeta);
    cr = std::cos(theta);
    sr = std::sin(theta);
  }

  void advance() {
    ++n;
    if (n % kReanchor == 1) {
      const double dn = static_cast<double>(n);
      gp = std::exp(dn * (-2.0 * s + zeta));
      gm = std::exp(dn * (-2.0 * s - zeta));
      c = std::cos(dn * theta);
      sn = std::sin(dn * theta);
      return;
    }
    gp *= rp;
    gm *= rm;
    const double c2 = c * cr - sn * sr;
    sn = sn * cr + c * sr;
    c = c2;
  }
};

}  // namespace detail

/// The three stress series summed to n = N of the table.
inline Sigma1Components sigma1_components(const CoefficientTable& t, const BipolarPoint& b) {
  const double zeta = detail::checked_zeta(t, b);
  const double theta = b.theta;
  const double K = t.K();
  const double h = metric_h(zeta, theta);
  const double shz = std::sinh(zeta), chz = std::cosh(zeta);
  const double ez = std::exp(zeta), emz = std::exp(-zeta);
  const double st = std::sin(theta);
  // cosh 2z - 2 cosh z cos t + cos 2t = h^2 + sinh^2 z - sin^2 t
  const double base = h * h + shz * shz - st * st;

  CompensatedSum<double> diff, zt, zz;
  detail::ModeWalker w(zeta, theta, t.s());
  for (long n = 1; n <= t.N(); ++n) {
    w.advance();
    const double dn = static_cast<double>(n);
    const double a = t.A_scaled(n), bb = t.B_scaled(n);
    const double chp = 0.5 * (w.gp * ez + w.gm * emz);
    const double shp = 0.5 * (w.gp * ez - w.gm * emz);
    const double chm = 0.5 * (w.gp * emz + w.gm * ez);
    const double shm = 0.5 * (w.gp * emz - w.gm * ez);
    const double phi = a * chp + bb * chm;
    const double dphi = (dn + 1.0) * a * shp + (dn - 1.0) * bb * shm;
    diff += (2.0 * dn * (dn + 1.0) * a * chp + 2.0 * dn * (dn - 1.0) * bb * chm) * w.c;
    zt += (dn * (dn + 1.0) * a * shp + dn * (dn - 1.0) * bb * shm) * w.sn;
    zz += (-h * dn * dn + chz) * phi * w.c - shz * dphi * w.c + dn * phi * st * w.sn;
  }
  Sigma1Components out;
  out.diff_tt_zz = K * base + h * diff.value();
  out.s_zt = -K * shz * st + h * zt.value();
  out.s_zz = -0.5 * K * base + zz.value();
  return out;
}

inline Sigma1Components sigma1_components(const GapGeometry& g, const BipolarPoint& b, Truncation request = {}) {
  return sigma1_components(build_coefficients(g, request), b);
}

/// phi_n(zeta) and phi_n'(zeta) for n = 0..N+1 (phi_0 = 0).
struct ModeValues {
  std::vector<double> phi;
  std::vector<double> dphi;
};

inline ModeValues mode_values(const CoefficientTable& t, double zeta) {
  const long N = t.N() + 1;
  ModeValues m{std::vector<double>(N + 1, 0.0), std::vector<double>(N + 1, 0.0)};
  const double ez = std::exp(zeta), emz = std::exp(-zeta);
  detail::ModeWalker w(zeta, 0.0, t.s());
  for (long n = 1; n <= N; ++n) {
    w.advance();
    const double dn = static_cast<double>(n);
    const double a = t.A_scaled(n), bb = t.B_scaled(n);
    m.phi[n] = a * 0.5 * (w.gp * ez + w.gm * emz) + bb * 0.5 * (w.gp * emz + w.gm * ez);
    m.dphi[n] = (dn + 1.0) * a * 0.5 * (w.gp * ez - w.gm * emz) + (dn - 1.0) * bb * 0.5 * (w.gp * emz - w.gm * ez);
  }
  return m;
}

/// psi_n = (n+1)(n+2) phi_{n+1} - 2(n^2-1) cosh(zeta) phi_n + (n-1)(n-2) phi_{n-1}
///         - 2 sinh(zeta) phi_n', for 1 <= n <= N.
inline double psi_n(const ModeValues& m, long n, double zeta) {
  const double dn = static_cast<double>(n);
  return (dn + 1.0) * (dn + 2.0) * m.phi[n + 1] - 2.0 * (dn * dn - 1.0) * std::cosh(zeta) * m.phi[n] +
         (dn - 1.0) * (dn - 2.0) * m.phi[n - 1] - 2.0 * std::sinh(zeta) * m.dphi[n];
}

inline double psi_n(const CoefficientTable& t, long n, double zeta) {
  if (n < 1 || n > t.N()) throw InvalidArgument("psi_n: index outside the table");
  return psi_n(mode_values(t, zeta), n, zeta);
}

/// psi_n through v and w at (n-1)s, ns, (n+1)s:
///   psi_n/K = 2 (v+ - v-) sinh^2 z cosh nz - 2 s~ (w+ - 2w + w-) cosh^2 z cosh nz
///           + [(v+ - 2v + v-) - s~ (w+ - w-)] sinh 2z sinh nz
///           - [(v+ - 2v + v-) + s~ (w+ - w-)] (2/n) cosh nz.
inline double psi_expanded(double K, double s, long n, double zeta) {
  if (n < 2) throw InvalidArgument("psi_expanded: n must be >= 2");
  const double dn = static_cast<double>(n);
  const double vm = eval_v((dn - 1.0) * s, s), v0 = eval_v(dn * s, s), vp = eval_v((dn + 1.0) * s, s);
  const double wm = eval_w((dn - 1.0) * s, s), w0 = eval_w(dn * s, s), wp = eval_w((dn + 1.0) * s, s);
  const double st = s_tilde(s);
  const double sh = std::sinh(zeta), ch = std::cosh(zeta);
  const double cn = std::cosh(dn * zeta), sn = std::sinh(dn * zeta);
  const double d2v = vp - 2.0 * v0 + vm;
  const double d1w = wp - wm;
  return K * (2.0 * (vp - vm) * sh * sh * cn - 2.0 * st * (wp - 2.0 * w0 + wm) * ch * ch * cn +
              (d2v - st * d1w) * std::sinh(2.0 * zeta) * sn - (d2v + st * d1w) * (2.0 / dn) * cn);
}

struct PsiSplit {
  double p = 0.0;     // the low-order part
  double tail = 0.0;  // (1/2) sum_{n>=3} psi_n cos(n theta)
  double value() const { return p + tail; }
};

/// sigma1_zz = p(zeta, theta) + (1/2) sum_{n>=3} psi_n cos(n theta), with
/// p = -(K/2)(cosh 2z - 2 cosh z cos t + cos 2t) + phi_1 + (psi_1 cos t + psi_2 cos 2t)/2.
inline PsiSplit sigma1_zz_psi_split(const CoefficientTable& t, const BipolarPoint& b) {
  const double zeta = detail::checked_zeta(t, b);
  const double theta = b.theta;
  const double h = metric_h(zeta, theta);
  const double shz = std::sinh(zeta), st = std::sin(theta);
  const ModeValues m = mode_values(t, zeta);
  PsiSplit out;
  out.p = -0.5 * t.K() * (h * h + shz * shz - st * st) + m.phi[1] +
          0.5 * (psi_n(m, 1, zeta) * std::cos(theta) + psi_n(m, 2, zeta) * std::cos(2.0 * theta));
  CompensatedSum<double> acc;
  for (long n = 3; n <= t.N(); ++n) acc += psi_n(m, n, zeta) * std::cos(static_cast<double>(n) * theta);
  out.tail = 0.5 * acc.value();
  return out;
}

inline double sigma1_zz_psi(const CoefficientTable& t, const BipolarPoint& b) {
  return sigma1_zz_psi_split(t, b).value();
}

inline double sigma1_zz_psi(const GapGeometry& g, const BipolarPoint& b, Truncation request = {}) {
  return sigma1_zz_psi(build_coefficients(g, request), b);
}

// ---------------------------------------------------------------------------
// Cartesian stress

/// sigma1 in the bipolar-local frame (e_zeta, e_theta) where e_theta points
/// along increasing principal-branch theta.
inline SymmetricTensor2 sigma1_bipolar(const CoefficientTable& t, const BipolarPoint& b) {
  const Sigma1Components c = sigma1_components(t, b);
  return {c.s_zz, c.s_zt, c.s_tt(), FrameTag::bipolar};
}

/// Rotates a bipolar-local tensor at p into the Cartesian frame. The
/// normalized dipole gradient of theta is -e_theta.
inline SymmetricTensor2 bipolar_to_cartesian(const SymmetricTensor2& local, const FrameGradients& fg) {
  return local.expressed_on(fg.frame.e_zeta, fg.frame.e_theta * -1.0);
}

/// sigma = I + sigma1 at a Cartesian point in the closed exterior region.
inline SymmetricTensor2 total_stress(const CoefficientTable& t, const GapGeometry& g, const CartesianPoint& p) {
  const Region region = classify_region(p, g);
  if (region == Region::hole1 || region == Region::hole2) {
    throw OutOfRegion("total_stress: point lies inside a hole");
  }
  BipolarPoint b = to_bipolar(p, g);
  b.zeta = std::clamp(b.zeta, -t.s(), t.s());
  const FrameGradients fg = frame_and_gradients(p, g);
  return identity_tensor() + bipolar_to_cartesian(sigma1_bipolar(t, b), fg);
}

inline SymmetricTensor2 total_stress(const GapGeometry& g, const CartesianPoint& p, Truncation request = {}) {
  return total_stress(build_coefficients(g, request), g, p);
}

// ---------------------------------------------------------------------------
// Airy modes

/// The biharmonic operator in bipolar form applied to cosh(m zeta) cos(n theta)
/// with m = n + sign leaves the symbol n^4 - 2 n^2 m^2 + m^4 - 2 n^2 - 2 m^2 + 1,
/// which vanishes identically for m = n +- 1.
inline std::int64_t airy_mode_residual(std::int64_t n, int sign) {
  if (n < 1) throw InvalidArgument("airy_mode_residual: n must be >= 1");
  if (sign != 1 && sign != -1) throw InvalidArgument("airy_mode_residual: sign must be +1 or -1");
  const std::int64_t m = n + sign;
  const std::int64_t n2 = n * n, m2 = m * m;
  return n2 * n2 - 2 * n2 * m2 + m2 * m2 - 2 * n2 - 2 * m2 + 1;
}

/// Largest |residual| over both signs, as a real.
inline double airy_mode_residual(long n) {
  const auto a = airy_mode_residual(static_cast<std::int64_t>(n), 1);
  const auto b = airy_mode_residual(static_cast<std::int64_t>(n), -1);
  return static_cast<double>(std::max(a < 0 ? -a : a, b < 0 ? -b : b));
}

}  // namespace gapstress

#endif  // GAPSTRESS_LING_EXACT_HPP

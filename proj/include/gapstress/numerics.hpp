#ifndef GAPSTRESS_NUMERICS_HPP
#define GAPSTRESS_NUMERICS_HPP

// Shared numerical machinery: compensated summation, Gauss-Kronrod and
// Gauss-Legendre quadrature, Euler-Maclaurin summation with its remainder
// bound, truncation selection for the slowly converging series, and the
// integrands that appear in the small-gap expansion of the constant K.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <queue>
#include <vector>

#include "gapstress/errors.hpp"

namespace gapstress {

/// Neumaier's variant of Kahan summation. Works for double and for
/// std::complex<double> (componentwise compensation).
template <class T>
class CompensatedSum {
 public:
  CompensatedSum() = default;
  explicit CompensatedSum(T init) : sum_(init) {}

  void add(T term) {
    if constexpr (std::is_floating_point_v<T>) {
      add_real(sum_, comp_, term);
    } else {
      double sr = sum_.real(), si = sum_.imag();
      double cr = comp_.real(), ci = comp_.imag();
      add_real(sr, cr, term.real());
      add_real(si, ci, term.imag());
      sum_ = T(sr, si);
      comp_ = T(cr, ci);
    }
  }

  CompensatedSum& operator+=(T term) {
    add(term);
    return *this;
  }

  T value() const { return sum_ + comp_; }

 private:
  static void add_real(double& sum, double& comp, double term) {
    const double t = sum + term;
    if (std::abs(sum) >= std::abs(term)) {
      comp += (sum - t) + term;
    } else {
      comp += (term - t) + sum;
    }
    sum = t;
  }

  T sum_{};
  T comp_{};
};

// ---------------------------------------------------------------------------
// Quadrature

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
};

using ScalarMap = std::function<double(double)>;

/// Analytic model for the integral of the integrand over [cutoff, inf).
struct TailModel {
  double cutoff = 0.0;
  ScalarMap integral;     // X -> approximate integral over [X, inf)
  ScalarMap error_bound;  // X -> bound on |true tail - integral(X)|
};

namespace detail {

// Kronrod 15-point abscissae and weights, with the embedded 7-point Gauss
// weights (QUADPACK dqk15).
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double lo, hi, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <class F>
Segment gauss_kronrod_15(const F& g, double lo, double hi) {
  const double centre = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = g(centre);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::abs(resk);
  std::array<double, 7> f1{}, f2{};
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = g(centre - dx);
    f2[j] = g(centre + dx);
    resk += kWgk[j] * (f1[j] + f2[j]);
    resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) resg += kWg[j / 2] * (f1[j] + f2[j]);
  }
  const double mean = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
  }
  const double result = resk * half;
  resabs *= std::abs(half);
  resasc *= std::abs(half);
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) {
    err = std::max(50.0 * eps * resabs, err);
  }
  return {lo, hi, result, err};
}

}  // namespace detail

/// Globally adaptive 7/15-point Gauss-Kronrod quadrature on [lo, hi]: the
/// segment with the largest error estimate is bisected until the summed
/// estimate is below tol.
inline QuadratureResult adaptive_quadrature(const ScalarMap& g, double lo, double hi,
                                            double tol, long max_evaluations = 2'000'000) {
  if (!(tol > 0.0)) throw InvalidArgument("adaptive_quadrature: tol must be positive");
  if (!(hi >= lo)) throw InvalidArgument("adaptive_quadrature: need hi >= lo");
  QuadratureResult out;
  if (hi == lo) return out;

  std::priority_queue<detail::Segment> work;
  work.push(detail::gauss_kronrod_15(g, lo, hi));
  out.evaluations = 15;
  double total_err = work.top().error;
  while (total_err > tol) {
    if (out.evaluations + 30 > max_evaluations) {
      throw QuadratureFailure("adaptive_quadrature: evaluation cap reached", total_err);
    }
    const detail::Segment worst = work.top();
    work.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) {
      throw QuadratureFailure("adaptive_quadrature: interval cannot be subdivided", total_err);
    }
    const auto left = detail::gauss_kronrod_15(g, worst.lo, mid);
    const auto right = detail::gauss_kronrod_15(g, mid, worst.hi);
    out.evaluations += 30;
    work.push(left);
    work.push(right);
    total_err += left.error + right.error - worst.error;
    if (total_err <= tol) {
      // Re-sum exactly before accepting; the running total drifts.
      total_err = 0.0;
      for (auto q = work; !q.empty(); q.pop()) total_err += q.top().error;
    }
  }
  CompensatedSum<double> value;
  for (; !work.empty(); work.pop()) value += work.top().value;
  out.value = value.value();
  out.error_estimate = total_err;
  return out;
}

/// Integral over [lo, inf): adaptive quadrature on [lo, cutoff] to tol/2 plus
/// the analytic tail model. Fails when the tail model cannot meet tol/2.
inline QuadratureResult adaptive_quadrature(const ScalarMap& g, double lo, const TailModel& tail,
                                            double tol, long max_evaluations = 2'000'000) {
  if (!tail.integral) throw InvalidArgument("adaptive_quadrature: tail model required");
  const double tail_err = tail.error_bound ? std::abs(tail.error_bound(tail.cutoff)) : 0.0;
  if (tail_err > 0.5 * tol) {
    throw QuadratureFailure("adaptive_quadrature: tail model error exceeds tolerance", tail_err);
  }
  QuadratureResult r = adaptive_quadrature(g, lo, tail.cutoff, 0.5 * tol, max_evaluations);
  r.value += tail.integral(tail.cutoff);
  r.error_estimate += tail_err;
  return r;
}

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1], by Newton
/// iteration on the Legendre recurrence.
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

inline GaussLegendreRule gauss_legendre_rule(int n) {
  if (n < 1) throw InvalidArgument("gauss_legendre_rule: n must be >= 1");
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = (n == 1) ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

/// Composite Gauss-Legendre quadrature with `panels` equal panels. The error
/// estimate compares against the same rule on twice as many panels.
inline QuadratureResult composite_gauss_legendre(const ScalarMap& g, double lo, double hi,
                                                 int panels, int order = 20) {
  if (panels < 1) throw InvalidArgument("composite_gauss_legendre: panels must be >= 1");
  const GaussLegendreRule rule = gauss_legendre_rule(order);
  auto apply = [&](int m) {
    CompensatedSum<double> acc;
    const double width = (hi - lo) / m;
    for (int p = 0; p < m; ++p) {
      const double a = lo + p * width;
      const double half = 0.5 * width;
      const double centre = a + half;
      for (int k = 0; k < order; ++k) acc += half * rule.weights[k] * g(centre + half * rule.nodes[k]);
    }
    return acc.value();
  };
  const double coarse = apply(panels);
  const double fine = apply(2 * panels);
  return {fine, std::abs(fine - coarse), 3L * panels * order};
}

// ---------------------------------------------------------------------------
// Euler-Maclaurin summation

/// Bernoulli numbers B_0..B_8.
inline constexpr std::array<double, 9> kBernoulli = {
    1.0, -0.5, 1.0 / 6.0, 0.0, -1.0 / 30.0, 0.0, 1.0 / 42.0, 0.0, -1.0 / 30.0};

struct EMInput {
  /// derivatives[k] is the k-th derivative of f; at least `order` entries
  /// (f, f', ..., f^(order-1)) are required.
  std::vector<ScalarMap> derivatives;
  double integral = 0.0;  // integral of f over [a, inf)
  double a = 0.0;
  double step = 0.0;
  int order = 2;
  double integral_abs_deriv_order = 0.0;  // integral of |f^(order)| over [a, inf)
};

struct EMResult {
  double value = 0.0;
  double remainder_bound = 0.0;
};

/// Approximates sum_{n>=0} f(a + n step) * step by
///   int_a^inf f + (step/2) f(a) - sum_{m=2}^{N} step^m B_m/m! f^(m-1)(a),
/// returning also the bound 4 (step/2pi)^N int |f^(N)| on the remainder.
inline EMResult euler_maclaurin_sum(const EMInput& in) {
  if (in.order < 2 || in.order > 8) throw InvalidArgument("euler_maclaurin_sum: order must be in [2, 8]");
  if (!(in.step > 0.0)) throw InvalidArgument("euler_maclaurin_sum: step must be positive");
  if (static_cast<int>(in.derivatives.size()) < in.order) {
    throw InvalidArgument("euler_maclaurin_sum: need derivatives up to order-1");
  }
  const double s = in.step;
  double value = in.integral + 0.5 * s * in.derivatives[0](in.a);
  double factorial = 1.0;
  double power = s;
  for (int m = 2; m <= in.order; ++m) {
    factorial *= m;
    power *= s;
    if (kBernoulli[m] != 0.0) value -= power * kBernoulli[m] / factorial * in.derivatives[m - 1](in.a);
  }
  const double bound =
      4.0 * std::pow(s / (2.0 * std::numbers::pi), in.order) * std::abs(in.integral_abs_deriv_order);
  return {value, bound};
}

// ---------------------------------------------------------------------------
// Truncation control

inline constexpr long kDefaultMaxTerms = 2'000'000;

struct Truncation {
  long max_terms = kDefaultMaxTerms;
  double tol = 1e-10;
  long achieved_terms = 0;
  double tail_bound = 0.0;
};

enum class TermModel {
  field_series,  // terms bounded by n e^{-ns}
  q_series,      // terms bounded by e^{-ns}
  P_series,      // terms bounded by (1+s^2)/(2n(n^2-1)), and exponentially once ns >~ 1
};

/// Sum over n > N of r^n * (a + b n) for 0 <= r < 1.
inline double linear_geometric_tail(double r, long N, double a, double b) {
  const double rn1 = std::pow(r, static_cast<double>(N + 1));
  const double one_minus = 1.0 - r;
  return a * rn1 / one_minus + b * rn1 * ((N + 1) - N * r) / (one_minus * one_minus);
}

/// Tail of a series whose terms beyond N shrink at least by `ratio` per step.
inline double geometric_tail(double last_term_bound, double ratio) {
  if (!(ratio < 1.0)) return std::numeric_limits<double>::infinity();
  return std::abs(last_term_bound) * ratio / (1.0 - ratio);
}

namespace detail {

// Envelope of the P-series terms valid for every n >= 2:
// (1 + 2n^2 sinh^2 s + 2n sinh s cosh s) e^{-2ns} / (n (n^2-1) (1 - e^{-4ns})).
inline double p_series_exp_envelope(double s, long n) {
  const double dn = static_cast<double>(n);
  const double sh = std::sinh(s), ch = std::cosh(s);
  const double c = (1.0 + 2.0 * dn * dn * sh * sh + 2.0 * dn * sh * ch) /
                   (dn * (dn * dn - 1.0) * (-std::expm1(-4.0 * dn * s)));
  return c * std::exp(-2.0 * dn * s);
}

}  // namespace detail

/// Tail bound for sum_{n>N} of the P-series terms.
inline double p_series_tail_bound(double s, long N) {
  const double dN = static_cast<double>(N);
  const double algebraic = (1.0 + s * s) / (4.0 * dN * (dN + 1.0));
  const double ratio = std::exp(-2.0 * s);
  const double exponential = detail::p_series_exp_envelope(s, N + 1) / (1.0 - ratio);
  return std::min(algebraic, exponential);
}

/// Tail bound of the normalized term model after N terms.
inline double model_tail_bound(double s, long N, TermModel model) {
  const double r = std::exp(-s);
  switch (model) {
    case TermModel::field_series:
      return linear_geometric_tail(r, N, 0.0, 1.0);
    case TermModel::q_series:
      return std::pow(r, static_cast<double>(N + 1)) / (1.0 - r);
    case TermModel::P_series:
      return p_series_tail_bound(s, std::max<long>(N, 2));
  }
  return std::numeric_limits<double>::infinity();
}

/// Smallest practical N whose model tail bound is <= tol.
inline Truncation truncation_select(double s, double tol, TermModel model,
                                    long max_terms = kDefaultMaxTerms) {
  if (!(s > 0.0)) throw InvalidArgument("truncation_select: s must be positive");
  if (!(tol > 0.0)) throw InvalidArgument("truncation_select: tol must be positive");
  Truncation t;
  t.max_terms = max_terms;
  t.tol = tol;

  long N = 2;
  if (model == TermModel::P_series) {
    // Both bounds decrease in N; bisect on the first N meeting tol.
    long lo = 2, hi = 4;
    while (model_tail_bound(s, hi, model) > tol) {
      if (hi > max_terms) {
        throw TruncationFailure("truncation_select: P series cap exceeded",
                                model_tail_bound(s, max_terms, model), max_terms);
      }
      lo = hi;
      hi *= 2;
    }
    while (hi - lo > 1) {
      const long mid = lo + (hi - lo) / 2;
      (model_tail_bound(s, mid, model) > tol ? lo : hi) = mid;
    }
    N = hi;
  } else {
    for (int it = 0; it < 8; ++it) {
      const double guess =
          (std::log(1.0 / tol) + std::log(static_cast<double>(std::max<long>(N, 2)))) / s + 8.0;
      if (guess > static_cast<double>(max_terms)) {
        N = max_terms + 1;
        break;
      }
      N = static_cast<long>(std::ceil(guess));
    }
    while (N <= max_terms && model_tail_bound(s, N, model) > tol) {
      N += static_cast<long>(std::ceil(1.0 / s)) + 8;
    }
    if (N > max_terms) {
      throw TruncationFailure("truncation_select: cap exceeded", model_tail_bound(s, max_terms, model),
                              max_terms);
    }
  }
  t.achieved_terms = N;
  t.tail_bound = model_tail_bound(s, N, model);
  return t;
}

// ---------------------------------------------------------------------------
// Elementary functions with removable singularities

/// sinh(x)/x.
inline double sinhc(double x) {
  const double ax = std::abs(x);
  if (ax < 1e-3) {
    const double x2 = x * x;
    return 1.0 + x2 / 6.0 * (1.0 + x2 / 20.0 * (1.0 + x2 / 42.0));
  }
  return std::sinh(x) / x;
}

/// sinh(x)^2 - x^2 without cancellation.
inline double sinh_sq_minus_sq(double x) {
  const double ax = std::abs(x);
  if (ax < 1.0) {
    // (cosh 2x - 1)/2 - x^2 = sum_{k>=2} (2x)^{2k} / (2 (2k)!)
    const double y2 = 4.0 * x * x;
    double term = y2 * y2 / 48.0;  // k = 2
    double sum = 0.0;
    for (int k = 2; k < 40; ++k) {
      sum += term;
      term *= y2 / ((2.0 * k + 1.0) * (2.0 * k + 2.0));
      if (term < 1e-18 * sum) break;
    }
    return sum;
  }
  const double sh = std::sinh(ax);
  return sh * sh - x * x;
}

/// sinh(n s) - n sinh(s) without cancellation for small n s.
inline double sinh_multiple_defect(long n, double s) {
  const double dn = static_cast<double>(n);
  if (dn * s < 0.5) {
    // sum over odd k >= 3 of (n^k - n) s^k / k!
    double sum = 0.0;
    double nk = dn;      // n^k
    double sk = s;       // s^k
    double fact = 1.0;   // k!
    for (int k = 3; k < 60; k += 2) {
      nk *= dn * dn;
      sk *= s * s;
      fact *= (k - 1.0) * k;
      const double term = (nk - dn) * sk / fact;
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  return std::sinh(dn * s) - dn * std::sinh(s);
}

/// f0(x) = (sinh^2 x - x^2) / (x^3 (sinh 2x + 2x)), continuous at 0 with f0(0) = 1/12.
inline double f0_integrand(double x) {
  if (x == 0.0) return 1.0 / 12.0;
  if (x < 1.0) {
    return sinh_sq_minus_sq(x) / (x * x * x * (std::sinh(2.0 * x) + 2.0 * x));
  }
  // Scaled by 4 e^{-2x}: numerator (1 - e^{-2x})^2 - 4x^2 e^{-2x},
  // denominator x^3 (2 (1 - e^{-4x}) + 8x e^{-2x}).
  const double e2 = std::exp(-2.0 * x);
  const double num = (1.0 - e2) * (1.0 - e2) - 4.0 * x * x * e2;
  const double den = x * x * x * (2.0 * (1.0 - e2 * e2) + 8.0 * x * e2);
  return num / den;
}

/// eta(y) = sinh(2y)/(2y).
inline double eta(double y) { return sinhc(2.0 * y); }

/// f_K(x) = (sinh^2 x - (sinh^2 s / s^2) x^2) / (x (x^2 - s^2) (sinh 2x + 2 eta(s) x)),
/// defined for x > s.
inline double fK_integrand(double x, double s) {
  if (!(x > s)) throw DomainError("fK_integrand: requires x > s");
  const double sig = sinhc(s);
  const double den_poly = x * (x * x - s * s);
  if (x < 1.0) {
    // sinh x - sig x = (sinh x - x) - (sig - 1) x
    const double sh = std::sinh(x);
    const double sinh_minus_x = sinh_sq_minus_sq(x) / (sh + x);
    const double d = sinh_minus_x - (sig - 1.0) * x;
    return d * (sh + sig * x) / (den_poly * (std::sinh(2.0 * x) + 2.0 * eta(s) * x));
  }
  const double e2 = std::exp(-2.0 * x);
  const double num = (1.0 - e2) * (1.0 - e2) - 4.0 * sig * sig * x * x * e2;
  const double den = den_poly * (2.0 * (1.0 - e2 * e2) + 8.0 * eta(s) * x * e2);
  return num / den;
}

/// Exact n-th term of s^3 sum f_K(ns): 1/(2n(n^2-1)) - P_n, computed without
/// cancellation.
inline double fK_term(long n, double s) {
  const double dn = static_cast<double>(n);
  const double defect = sinh_multiple_defect(n, s);
  const double x = dn * s;
  if (x < 20.0) {
    const double sum = std::sinh(x) + dn * std::sinh(s);
    return defect * sum / (dn * (dn * dn - 1.0) * (std::sinh(2.0 * x) + dn * std::sinh(2.0 * s)));
  }
  const double e2 = std::exp(-2.0 * x);
  const double ratio = (1.0 - e2 - 2.0 * dn * std::sinh(s) * std::exp(-x)) *
                       (1.0 - e2 + 2.0 * dn * std::sinh(s) * std::exp(-x));
  return ratio / (dn * (dn * dn - 1.0) * (2.0 * (1.0 - e2 * e2) + 4.0 * dn * std::sinh(2.0 * s) * e2));
}

}  // namespace gapstress

#endif  // GAPSTRESS_NUMERICS_HPP

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "gapstress/numerics.hpp"
#include "gapstress/singular_asymptotics.hpp"
#include "support/oracles.hpp"

using namespace gapstress;

TEST(CompensatedSum, RecoversSmallTermsLostByNaiveSum) {
  CompensatedSum<double> acc;
  acc += 1e16;
  acc += 1.0;
  acc += -1e16;
  EXPECT_EQ(acc.value(), 1.0);
}

TEST(CompensatedSum, MillionAlternatingUnitTerms) {
  // a_n = (-1)^n (1 + n d); pairs sum to -d, so the total is -d M / 2.
  const long M = 1'000'000;
  const double d = 1e-9;
  CompensatedSum<double> acc;
  for (long n = 0; n < M; ++n) acc += (n % 2 == 0 ? 1.0 : -1.0) * (1.0 + d * static_cast<double>(n));
  EXPECT_NEAR(acc.value(), -d * M / 2.0, 1e-12);
}

TEST(CompensatedSum, ComplexComponentsCompensatedSeparately) {
  CompensatedSum<std::complex<double>> acc;
  acc += {1e16, -1e16};
  acc += {1.0, 2.0};
  acc += {-1e16, 1e16};
  EXPECT_EQ(acc.value(), std::complex<double>(1.0, 2.0));
}

TEST(AdaptiveQuadrature, ExponentialOnHalfLine) {
  const TailModel tail{40.0, [](double X) { return std::exp(-X); }, [](double) { return 0.0; }};
  const auto r = adaptive_quadrature([](double x) { return std::exp(-x); }, 0.0, tail, 1e-13);
  EXPECT_NEAR(r.value, 1.0, 1e-12);
  EXPECT_GE(r.error_estimate, 0.0);
}

TEST(AdaptiveQuadrature, ErrorEstimatesAreConservativeOnClosedForms) {
  struct Case {
    ScalarMap f;
    double lo, hi, exact;
  };
  const double pi = std::numbers::pi;
  std::vector<Case> cases = {
      {[](double x) { return std::sin(x); }, 0.0, pi, 2.0},
      {[](double x) { return std::exp(x); }, 0.0, 1.0, std::exp(1.0) - 1.0},
      {[](double x) { return 1.0 / (1.0 + x * x); }, -10.0, 10.0, 2.0 * std::atan(10.0)},
      {[](double x) { return std::sqrt(x); }, 0.0, 1.0, 2.0 / 3.0},
      {[](double x) { return std::log(x); }, 1e-12, 1.0, -1.0 - (1e-12 * std::log(1e-12) - 1e-12)},
      {[](double x) { return x * x * x * x * x; }, -1.0, 2.0, (64.0 - 1.0) / 6.0},
      {[](double x) { return std::cos(20.0 * x); }, 0.0, 1.0, std::sin(20.0) / 20.0},
      {[](double x) { return 1.0 / std::sqrt(x + 1e-3); }, 0.0, 1.0, 2.0 * (std::sqrt(1.001) - std::sqrt(1e-3))},
      {[](double x) { return std::exp(-x * x); }, -5.0, 5.0, std::sqrt(pi) * std::erf(5.0)},
      {[](double x) { return std::abs(x - 0.3); }, 0.0, 1.0, 0.5 * (0.09 + 0.49)},
  };
  int conservative = 0, total = 0;
  for (double tol : {1e-6, 1e-9, 1e-12}) {
    for (const auto& c : cases) {
      const auto r = adaptive_quadrature(c.f, c.lo, c.hi, tol);
      ++total;
      if (std::abs(r.value - c.exact) <= r.error_estimate + 1e-15) ++conservative;
      EXPECT_LE(std::abs(r.value - c.exact), 10.0 * tol + 1e-14);
    }
  }
  EXPECT_GE(conservative, static_cast<int>(std::ceil(0.95 * total)));
}

TEST(AdaptiveQuadrature, UnreachableToleranceFails) {
  EXPECT_THROW(adaptive_quadrature([](double x) { return std::sin(1.0 / (x + 1e-9)); }, 0.0, 1.0, 1e-14, 3000),
               QuadratureFailure);
  EXPECT_THROW(adaptive_quadrature([](double x) { return x; }, 0.0, 1.0, 0.0), InvalidArgument);
}

TEST(AdaptiveQuadrature, TailModelErrorAboveTolerance) {
  const TailModel tail{5.0, [](double X) { return std::exp(-X); }, [](double) { return 1e-3; }};
  EXPECT_THROW(adaptive_quadrature([](double x) { return std::exp(-x); }, 0.0, tail, 1e-6), QuadratureFailure);
}

TEST(GaussLegendre, RuleIntegratesPolynomialsExactly) {
  const auto rule = gauss_legendre_rule(7);
  double sum_w = 0.0, x12 = 0.0;
  for (int i = 0; i < 7; ++i) {
    sum_w += rule.weights[i];
    x12 += rule.weights[i] * std::pow(rule.nodes[i], 12);
  }
  EXPECT_NEAR(sum_w, 2.0, 1e-15);
  EXPECT_NEAR(x12, 2.0 / 13.0, 1e-15);
  const auto r = composite_gauss_legendre([](double x) { return std::sin(x); }, 0.0, std::numbers::pi, 4);
  EXPECT_NEAR(r.value, 2.0, 1e-14);
}

TEST(F0Integrand, LimitAndBranchContinuity) {
  EXPECT_DOUBLE_EQ(f0_integrand(0.0), 1.0 / 12.0);
  EXPECT_NEAR(f0_integrand(1e-8), 1.0 / 12.0, 1e-15);
  EXPECT_NEAR(f0_integrand(std::nextafter(1.0, 0.0)), f0_integrand(1.0), 1e-15);
  // decays like 1/(2 x^3)
  EXPECT_NEAR(f0_integrand(50.0) * 2.0 * 50.0 * 50.0 * 50.0, 1.0, 1e-12);
}

TEST(I0, DualQuadratureAgreesAndMatchesFrozenValue) {
  const auto adaptive = I0_quadrature(1e-14);
  const auto composite = I0_composite(200, 20);
  EXPECT_NEAR(adaptive.value, composite.value, 1e-12);
  EXPECT_LE(adaptive.error_estimate, 1e-14);
  EXPECT_NEAR(adaptive.value, kI0, 1e-15);
  EXPECT_NEAR(kI0, oracle::kI0_mp, 1e-17);
}

TEST(I0, IntegralOfF0IsFourI0ByTwoRoutes) {
  const double via_adaptive = f0_integral(1e-13).value;
  const double via_composite = 4.0 * I0_composite(150, 20).value;
  EXPECT_NEAR(via_adaptive, via_composite, 1e-11);
  EXPECT_NEAR(via_adaptive, 4.0 * kI0, 1e-11);
}

TEST(I0, CutoffScan) {
  const double a = I0_quadrature(1e-14, 40.0).value;
  const double b = I0_quadrature(1e-14, 80.0).value;
  EXPECT_LE(std::abs(a - b), 1.0 / (4.0 * 40.0 * 40.0) / 4.0);
  EXPECT_NEAR(a, b, 1e-14);
}

TEST(QOriginIntegral, MatchesFrozenValue) {
  const auto r = q_origin_integral(1e-13);
  EXPECT_NEAR(r.value, oracle::kQint_mp, 1e-13);
  const auto c = composite_gauss_legendre(q_origin_integrand, 0.0, 40.0, 200);
  EXPECT_NEAR(c.value + std::exp(-40.0), r.value, 1e-12);
  EXPECT_NEAR(kQOriginIntegral, oracle::kQint_mp, 1e-16);
}

TEST(EulerMaclaurin, GeometricSumWithinRemainderBound) {
  const double s = 0.1;
  const double exact = s / (1.0 - std::exp(-s));
  for (int N = 2; N <= 8; ++N) {
    EMInput in;
    for (int k = 0; k < N; ++k) {
      const double sign = k % 2 == 0 ? 1.0 : -1.0;
      in.derivatives.push_back([sign](double x) { return sign * std::exp(-x); });
    }
    in.integral = 1.0;
    in.a = 0.0;
    in.step = s;
    in.order = N;
    in.integral_abs_deriv_order = 1.0;
    const EMResult r = euler_maclaurin_sum(in);
    EXPECT_LE(std::abs(r.value - exact), r.remainder_bound) << "order " << N;
  }
}

TEST(EulerMaclaurin, SecondOrderBoundFormula) {
  EMInput in;
  in.derivatives = {[](double x) { return std::exp(-x); }, [](double x) { return -std::exp(-x); }};
  in.integral = 1.0;
  in.step = 0.25;
  in.order = 2;
  in.integral_abs_deriv_order = 1.7;
  const EMResult r = euler_maclaurin_sum(in);
  EXPECT_DOUBLE_EQ(r.remainder_bound, 4.0 * std::pow(0.25 / (2.0 * std::numbers::pi), 2) * 1.7);
  EXPECT_NEAR(r.value, 1.0 + 0.125 + 0.25 * 0.25 / 12.0, 1e-15);
}

TEST(EulerMaclaurin, PolynomialTimesExponentialWithinBound) {
  // f = x e^{-x} on [0.5, inf): sum_{n>=0} f(a + n s) s in closed form.
  const double a = 0.5, s = 0.2;
  const double q = std::exp(-s);
  const double exact = s * std::exp(-a) * (a / (1.0 - q) + s * q / ((1.0 - q) * (1.0 - q)));
  EMInput in;
  in.derivatives = {[](double x) { return x * std::exp(-x); }, [](double x) { return (1.0 - x) * std::exp(-x); },
                    [](double x) { return (x - 2.0) * std::exp(-x); },
                    [](double x) { return (3.0 - x) * std::exp(-x); }};
  in.integral = (a + 1.0) * std::exp(-a);
  in.a = a;
  in.step = s;
  in.order = 4;
  // int_a^inf |(x - 4) e^{-x}| dx
  in.integral_abs_deriv_order = (3.0 - a) * std::exp(-a) + 2.0 * std::exp(-4.0);
  const EMResult r = euler_maclaurin_sum(in);
  EXPECT_LE(std::abs(r.value - exact), r.remainder_bound);
}

TEST(EulerMaclaurin, FKSumApproachesF0Integral) {
  const double Q = 4.0 * kI0;
  for (double s : {1e-1, 1e-2, 1e-3}) {
    const long M = static_cast<long>(std::ceil(200.0 / s));
    CompensatedSum<double> acc;
    for (long n = 2; n <= M; ++n) acc += fK_term(n, s);
    // remaining terms behave like s^3/(2 (ns)^3)
    const double sum = acc.value() / (s * s) + 1.0 / (4.0 * static_cast<double>(M) * static_cast<double>(M) * s * s);
    EXPECT_LE(std::abs(sum - Q), 3.0 * s) << "s = " << s;
  }
}

TEST(FK, TermMatchesIntegrandAndDomain) {
  for (double s : {0.3, 0.05, 1e-3}) {
    for (long n : {2L, 3L, 10L, 100L, 5000L}) {
      const double x = static_cast<double>(n) * s;
      if (x > 600.0) continue;
      const double lhs = fK_term(n, s);
      const double rhs = s * s * s * fK_integrand(x, s);
      EXPECT_NEAR(lhs, rhs, 1e-8 * std::abs(rhs)) << s << " " << n;
    }
  }
  EXPECT_THROW(fK_integrand(0.1, 0.1), DomainError);
  EXPECT_THROW(fK_integrand(0.05, 0.1), DomainError);
}

TEST(ElementaryFunctions, CancellationFreeForms) {
  EXPECT_NEAR(sinh_sq_minus_sq(1e-3), 1e-12 / 3.0 + 2e-18 / 45.0, 1e-26);
  const long double x = 0.7L;
  EXPECT_NEAR(sinh_sq_minus_sq(0.7), static_cast<double>(std::sinh(x) * std::sinh(x) - x * x), 1e-16);
  // sinh(ns) - n sinh(s) = s^3 (n^3 - n)/6 + ...
  EXPECT_NEAR(sinh_multiple_defect(3, 1e-4), 24.0e-12 / 6.0 + 240.0e-20 / 120.0, 1e-26);
  const long double ld = std::sinh(10.0L * 0.08L) - 10.0L * std::sinh(0.08L);
  EXPECT_NEAR(sinh_multiple_defect(10, 0.08), static_cast<double>(ld), 1e-15);
  EXPECT_DOUBLE_EQ(sinhc(0.0), 1.0);
  EXPECT_NEAR(eta(0.1), std::sinh(0.2) / 0.2, 1e-16);
}

TEST(Truncation, FieldSeriesSelection) {
  const Truncation t = truncation_select(0.1, 1e-10, TermModel::field_series);
  EXPECT_GE(t.achieved_terms, 230);
  EXPECT_LE(t.tail_bound, 1e-10);
  // bound covers the actual tail of sum n e^{-ns}
  CompensatedSum<double> tail;
  for (long n = t.achieved_terms + 1; n < t.achieved_terms + 4000; ++n) tail += n * std::exp(-0.1 * n);
  EXPECT_GE(t.tail_bound * (1.0 + 1e-12), tail.value());
}

TEST(Truncation, QSeriesTailHonoured) {
  const double s = 0.05;
  const Truncation t = truncation_select(s, 1e-12, TermModel::q_series);
  EXPECT_LE(t.tail_bound, 1e-12);
  double actual = 0.0;
  for (long n = t.achieved_terms + 1; n * s < 300.0; ++n) {
    actual += std::sinh(n * s) / (std::sinh(2.0 * n * s) + n * std::sinh(2.0 * s));
  }
  EXPECT_GE(t.tail_bound, actual);
  const double expected = std::exp(-101 * s) / (1.0 - std::exp(-s));
  EXPECT_NEAR(model_tail_bound(s, 100, TermModel::q_series), expected, 1e-13 * expected);
}

TEST(Truncation, PSeriesTailBoundDominatesAndCubicScale) {
  for (double s : {0.5, 0.1, 0.01}) {
    for (long N : {2L, 10L, 100L}) {
      double actual = 0.0;
      for (long n = N + 1; n < N + 200000; ++n) {
        const double dn = static_cast<double>(n);
        const double ns = dn * s;
        if (ns > 300.0) break;
        actual += (std::exp(-ns) * std::sinh(ns) + dn * (dn * std::sinh(s) + std::cosh(s)) * std::sinh(s)) /
                  (dn * (dn * dn - 1.0) * (std::sinh(2.0 * ns) + dn * std::sinh(2.0 * s)));
      }
      const double bound = p_series_tail_bound(s, N);
      EXPECT_GE(bound, actual) << s << " " << N;
      // sum_{n>N} n^{-3} <= 1/(2 N^2) scale
      EXPECT_LE(bound, (1.0 + s * s) / (2.0 * N * N));
    }
  }
}

TEST(Truncation, CapExceededThrows) {
  EXPECT_THROW(truncation_select(1e-3, 1e-10, TermModel::field_series, 100), TruncationFailure);
  EXPECT_THROW(truncation_select(0.1, 1e-30, TermModel::P_series, 10), TruncationFailure);
  try {
    truncation_select(1e-3, 1e-10, TermModel::q_series, 50);
    FAIL();
  } catch (const TruncationFailure& e) {
    EXPECT_EQ(e.terms(), 50);
    EXPECT_GT(e.tail_bound(), 1e-10);
  }
  EXPECT_THROW(truncation_select(0.0, 1e-10, TermModel::q_series), InvalidArgument);
}

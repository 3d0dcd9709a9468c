#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "dklt/errors.hpp"
#include "dklt/quadrature.hpp"
#include "dklt/special.hpp"

using namespace dklt;

TEST(Quadrature, PolynomialIsExact) {
  QuadratureConfig c;
  auto r = integrate_finite([](double x) { return 3 * x * x - 2 * x + 1; }, 0.0, 2.0, c);
  EXPECT_NEAR(r.value, 6.0, 1e-14);
  EXPECT_TRUE(r.converged);
}

TEST(Quadrature, EndpointSingularityConvergesWithHonestError) {
  QuadratureConfig c;
  c.rel_tol = 1e-10;
  auto r = integrate_finite([](double x) { return std::sqrt(x); }, 0.0, 1.0, c);
  EXPECT_NEAR(r.value, 2.0 / 3.0, 1e-10);
  EXPECT_LE(std::fabs(r.value - 2.0 / 3.0), 10 * r.error_estimate + 1e-16);
}

TEST(Quadrature, OscillatoryWithPanels) {
  QuadratureConfig c;
  auto r = integrate_finite([](double x) { return std::cos(40 * x); }, 0.0, kPi / 2, c, 20);
  EXPECT_NEAR(r.value, std::sin(20 * kPi) / 40, 1e-13);
}

TEST(Quadrature, NonFiniteSampleThrows) {
  QuadratureConfig c;
  EXPECT_THROW(integrate_finite([](double x) { return 1.0 / (x - 0.5) / 0.0; }, 0.0, 1.0, c), NonFiniteIntegrand);
}

TEST(Quadrature, SemiInfiniteExponential) {
  QuadratureConfig c;
  Envelope env{[](double u) { return std::exp(-u); }, [](double U) { return std::exp(-U); }};
  auto r = integrate_semi_infinite([](double u) { return std::exp(-u) * std::cos(u); }, env, c);
  EXPECT_NEAR(r.value, 0.5, 1e-13);
  EXPECT_LE(std::fabs(r.value - 0.5), 10 * r.error_estimate + 1e-16);
}

TEST(Quadrature, EnvelopeTailNumericIsTightUpperBound) {
  QuadratureConfig c;
  Envelope env{[](double u) { return std::exp(-2 * u); }, {}};
  double t = envelope_tail(env, 3.0, c), truth = std::exp(-6.0) / 2;
  EXPECT_GE(t, truth);
  EXPECT_NEAR(t, truth, 1e-6 * truth);
}

TEST(Quadrature, ConfigValidation) {
  QuadratureConfig c;
  EXPECT_NO_THROW(c.validate());
  c.rel_tol = -1;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(Quadrature, KronrodNodesIntegrateLength) {
  RuleNodes n = composite_gauss_kronrod(0.0, 3.0, 4);
  EXPECT_EQ(n.x.size(), 84u);
  EXPECT_NEAR(std::accumulate(n.wk.begin(), n.wk.end(), 0.0), 3.0, 1e-14);
  EXPECT_NEAR(std::accumulate(n.wg.begin(), n.wg.end(), 0.0), 3.0, 1e-14);
}

TEST(Quadrature, NevilleRecoversPolynomialIntercept) {
  std::vector<double> h{0.5, 0.25, 0.125, 0.0625}, y;
  for (double t : h) y.push_back(2.0 + 3 * t - t * t + 0.5 * t * t * t);
  EXPECT_NEAR(neville_at_zero(h, y), 2.0, 1e-13);
}

TEST(Quadrature, AbelExtrapolationOfSmoothFamily) {
  QuadratureConfig c;
  std::vector<double> alphas = default_abel_schedule(), v;
  for (double a : alphas) {
    double d = kPi / 2 - a;
    v.push_back(1.0 + d - 0.25 * d * d);
  }
  AbelResult r = abel_extrapolate(alphas, v, 0.0, true, c);
  EXPECT_NEAR(r.value, 1.0, 1e-8);
  EXPECT_TRUE(r.converged);
}

TEST(Quadrature, AbelFamilyIntegral) {
  // int_0^inf e^{-(pi/2 - alpha + 1) t} dt -> 1
  QuadratureConfig c;
  AbelFamily fam;
  fam.g = [](double t, double a) { return std::exp(-(kPi / 2 - a + 1) * t); };
  fam.envelope = [](double a) {
    double k = kPi / 2 - a + 1;
    return Envelope{[k](double t) { return std::exp(-k * t); }, [k](double U) { return std::exp(-k * U) / k; }};
  };
  AbelResult r = integrate_abel(fam, c);
  EXPECT_NEAR(r.value, 1.0, 1e-6);
}

TEST(Quadrature, CompensatedSumCancellation) {
  CompensatedSum s;
  s.add(1e16);
  for (int i = 0; i < 1000; ++i) s.add(1.0);
  s.add(-1e16);
  EXPECT_DOUBLE_EQ(s.value(), 1000.0);
}

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "dklt/coefficients.hpp"
#include "dklt/special.hpp"

using namespace dklt;

TEST(Coefficients, IndexingPastListIsZero) {
  auto a = CoefficientSequence::from_function(3, [](int n) { return 1.0 / n; });
  EXPECT_DOUBLE_EQ(a(1), 1.0);
  EXPECT_DOUBLE_EQ(a(3), 1.0 / 3);
  EXPECT_EQ(a(4), 0.0);
  EXPECT_EQ(a(0), 0.0);
}

TEST(Coefficients, UnitAndZero) {
  auto u = CoefficientSequence::unit(3, 5);
  EXPECT_EQ(u.size(), 5u);
  EXPECT_EQ(u(3), 1.0);
  EXPECT_EQ(u(2), 0.0);
  EXPECT_EQ(CoefficientSequence::zero(4).weighted_sum(), 0.0);
  EXPECT_THROW(CoefficientSequence::unit(0), std::invalid_argument);
}

TEST(Coefficients, DecayClassNamesRoundTrip) {
  for (DecayClass c : {DecayClass::exp_half_pi, DecayClass::harmonic, DecayClass::exp_delta, DecayClass::summable,
                       DecayClass::weighted_linear, DecayClass::theorem8})
    EXPECT_EQ(decay_class_from_string(to_string(c)), c);
  EXPECT_THROW(decay_class_from_string("nope"), std::invalid_argument);
}

TEST(Coefficients, LogWeightMatchesWeight) {
  CoefficientSequence a;
  for (DecayClass c : {DecayClass::exp_half_pi, DecayClass::harmonic, DecayClass::exp_delta, DecayClass::summable,
                       DecayClass::weighted_linear, DecayClass::theorem8}) {
    a.decay_class = c;
    a.delta = 0.3;
    for (int n : {1, 4, 9}) EXPECT_NEAR(a.log_weight(n), std::log(a.weight(n)), 1e-12);
  }
}

TEST(Coefficients, Validation) {
  CoefficientSequence a;
  a.a = {1.0, std::nan("")};
  EXPECT_THROW(a.validate(), std::invalid_argument);
  a.a = {1.0};
  a.tail_bound = -1;
  EXPECT_THROW(a.validate(), std::invalid_argument);
  a.tail_bound = 0;
  a.decay_class = DecayClass::theorem8;
  a.theta0 = 4.0;
  EXPECT_THROW(a.validate(), std::invalid_argument);
}

TEST(Coefficients, TailContributionListedAndDeclared) {
  auto a = CoefficientSequence::from_function(4, [](int n) { return std::pow(0.5, n); });
  // listed beyond n0 = 2: c_n = 1
  EXPECT_NEAR(tail_contribution(a, 2, [](int) { return 1.0; }), 0.125 + 0.0625, 1e-15);
  a.decay_class = DecayClass::exp_delta;
  a.delta = 0.5;
  a.tail_bound = 1e-3;
  // sup_n e^{-n}/e^{-0.5 n} over n > 4 is e^{-2.5}
  double t = tail_contribution(a, 4, [](int n) { return std::exp(-double(n)); });
  EXPECT_NEAR(t, std::exp(-2.5) * 1e-3, 1e-15);
  EXPECT_NEAR(tail_contribution_log(a, 4, [](int n) { return -double(n); }), t, 1e-15);
}

TEST(Coefficients, TailUnboundedWhenKernelOutgrowsWeight) {
  auto a = CoefficientSequence::from_function(2, [](int) { return 1.0; });
  a.tail_bound = 1.0;
  EXPECT_TRUE(std::isinf(tail_contribution(a, 2, [](int n) { return double(n); })));
}

TEST(Coefficients, LogTailSurvivesOverflowingWeights) {
  auto a = CoefficientSequence::from_function(4, [](int n) { return std::exp(-2 * kPi * n); }, DecayClass::theorem8);
  a.theta0 = 2.8;
  a.tail_bound = 1e-20;
  double t = tail_contribution_log(a, 4, [](int n) { return 2.5 * n; });
  EXPECT_TRUE(std::isfinite(t));
  EXPECT_LT(t, 1e-20);
}

#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "dklt/errors.hpp"
#include "dklt/transforms.hpp"
#include "dklt/special.hpp"
#include "oracles.hpp"

using namespace dklt;

namespace {

CoefficientSequence abc() { return CoefficientSequence::from_function(3, [](int n) { return std::pow(0.5, n - 1); }); }

}  // namespace

TEST(Transforms, SynthesisMatchesOracle) {
  auto a = abc();
  EXPECT_NEAR(synthesize_K(a, 1.0).value, oracle::kSynthK_x1, 1e-13);
  EXPECT_NEAR(synthesize_J(a, 1.0).value, oracle::kSynthJ_x1, 1e-13);
  EXPECT_NEAR(synthesize_Kc(a, 1.0).value, oracle::kSynthKc_x1, 1e-13);
  EXPECT_NEAR(dual_synthesize(a, 0.7).value, oracle::kDualSynth_t07, 1e-12);
}

TEST(Transforms, SynthesisWeightModesAgree) {
  auto a = abc();
  SeriesEvalConfig d;
  d.weight_mode = WeightMode::direct;
  EXPECT_NEAR(synthesize_Kc(a, 1.0, d).value, synthesize_Kc(a, 1.0).value, 1e-15);
}

TEST(Transforms, EmptyAndZeroSequences) {
  CoefficientSequence e;
  EXPECT_EQ(synthesize_K(e, 1.0).value, 0.0);
  EXPECT_EQ(synthesize_J(CoefficientSequence::zero(5), 2.0).value, 0.0);
  EXPECT_EQ(analyze_J(FunctionHandle(), 1).value, 0.0);
}

TEST(Transforms, SynthesisTailIsReported) {
  auto a = abc();
  a.decay_class = DecayClass::exp_delta;
  a.delta = 1.0;
  a.tail_bound = 1e-3;
  KernelValue k = synthesize_J(a, 1.0);
  EXPECT_GE(k.error_estimate, 1e-4 * std::exp(-1.0));
  EXPECT_FALSE(k.converged);
}

TEST(Transforms, ConfigValidation) {
  SeriesEvalConfig c;
  c.n_max = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c.n_max = 13;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  EXPECT_THROW(synthesize_K(abc(), -1.0), DomainError);
  EXPECT_THROW(analyze_J(FunctionHandle::builtin("example1"), 0), DomainError);
}

TEST(Transforms, SeriesKernelNames) {
  for (SeriesKernel k : {SeriesKernel::K, SeriesKernel::J, SeriesKernel::Kc})
    EXPECT_EQ(series_kernel_from_string(to_string(k)), k);
  EXPECT_THROW(series_kernel_from_string("Q"), std::invalid_argument);
}

TEST(Transforms, SynthesisFunctionWrapsSeries) {
  auto f = synthesis_function(SeriesKernel::J, abc());
  EXPECT_NEAR(f(1.0), oracle::kSynthJ_x1, 1e-13);
}

TEST(Transforms, AnalyzeKOfExponentialCosh) {
  // int K_{in}(x) e^{-x cosh u} dx = pi sin(n u)/(sinh u sinh(pi n)), so b_n = (2/pi) n sin(n u)/sinh u
  auto g = FunctionHandle::builtin("exp_cosh", {{"u0", 1.0}});
  for (int n = 1; n <= 4; ++n) {
    KernelValue b = analyze_K(g, n);
    double truth = 2.0 / kPi * n * std::sin(double(n)) / std::sinh(1.0);
    EXPECT_NEAR(b.value, truth, 1e-9);
    EXPECT_LE(std::fabs(b.value - truth), 10 * b.error_estimate);
  }
}

TEST(Transforms, ExampleOneCoefficients) {
  // g = 2 J(x,i,pi) is the J-series with b_1 = 2 and b_n = 0 otherwise.
  auto f = FunctionHandle::builtin("incomplete_j_boundary");
  EXPECT_NEAR(analyze_K(f, 1).value, 2.0, 1e-10);
  EXPECT_NEAR(analyze_K(f, 2).value, 0.0, 1e-10);
}

TEST(Transforms, RoundTripsRecoverCoefficients) {
  auto a = CoefficientSequence::from_function(4, [](int n) { return std::exp(-double(n)); });
  for (const char* pair : {"2.30", "2.31"}) {
    for (const auto& row : roundtrip(pair, a, 4)) {
      EXPECT_LE(std::fabs(row.error), 1e-8) << pair << " n=" << row.n;
      EXPECT_TRUE(row.converged);
    }
  }
  EXPECT_THROW(roundtrip("9.99", a, 2), std::invalid_argument);
}

TEST(Transforms, AbelRoundTrip) {
  auto a = CoefficientSequence::from_function(3, [](int n) { return std::exp(-double(n)); });
  for (const auto& row : roundtrip("2.34", a, 3)) EXPECT_LE(std::fabs(row.error), 1e-4);
}

TEST(Transforms, ExpansionReconstructsExampleFunction) {
  auto f = FunctionHandle::builtin("example1");
  for (double x : {0.5, 1.0, 2.0}) {
    KernelValue k = expand_function_J(f, x);
    EXPECT_NEAR(k.value, f(x), 1e-8) << x;
  }
}

TEST(Transforms, IndexExpansionNeedsEnvelope) {
  auto f = FunctionHandle::closure("bare", [](double t) { return std::exp(-t * t); });
  EXPECT_THROW(expand_index_function(f, 1.0), DomainError);
}

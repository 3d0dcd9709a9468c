#include <gtest/gtest.h>

#include <cmath>

#include "dklt/errors.hpp"
#include "dklt/helmholtz.hpp"
#include "dklt/special.hpp"
#include "oracles.hpp"

using namespace dklt;

TEST(Helmholtz, ForcingSingleTerm) {
  auto e1 = CoefficientSequence::unit(1);
  double truth = 2 * std::sinh(kPi) / (kPi * kPi) * std::exp(-std::cosh(kPi)) * std::sinh(kPi / 2);
  EXPECT_NEAR(forcing_h({1.0, kPi / 2}, e1).value, truth, 1e-15 * std::fabs(truth));
  EXPECT_EQ(forcing_h({1.0, 1.0}, CoefficientSequence::zero(3)).value, 0.0);
}

TEST(Helmholtz, DefaultSequenceOracles) {
  auto a = default_helmholtz_coefficients();
  EXPECT_NEAR(forcing_h({1.0, 2.0}, a).value, oracle::kForcingDefault_1_2, 1e-20);
  KernelValue u = solution_u({1.0, 2.0}, a);
  EXPECT_NEAR(u.value, oracle::kSolutionDefault_1_2, 1e-16);
  EXPECT_LE(std::fabs(u.value - oracle::kSolutionDefault_1_2), 10 * u.error_estimate);
  EXPECT_NEAR(solution_u({1.0, kPi / 2}, CoefficientSequence::unit(1)).value, oracle::kSolutionUnit_1_half_pi, 1e-15);
}

TEST(Helmholtz, VanishesOnPositiveAxis) {
  auto a = default_helmholtz_coefficients();
  for (double r : {0.1, 1.0, 7.0}) EXPECT_EQ(solution_u({r, 0.0}, a).value, 0.0);
}

TEST(Helmholtz, WedgeIsEnforced) {
  auto a = default_helmholtz_coefficients();
  EXPECT_THROW(forcing_h({1.0, 3.0}, a), OutsideCertifiedWedge);
  EXPECT_THROW(pde_residual({1.0, 3.0}, a), OutsideCertifiedWedge);
  EXPECT_THROW(pde_residual({1.0, 0.0}, a), DomainError);
  EXPECT_THROW(solution_u({-1.0, 1.0}, a), DomainError);
  EXPECT_THROW(solution_u({1.0, 4.0}, a), DomainError);
}

TEST(Helmholtz, ResidualVanishesOnInteriorGrid) {
  auto a = default_helmholtz_coefficients();
  for (const auto& p : polar_grid(0.5, 4.0, 4, 0.3, 2.8, 4)) EXPECT_LE(std::fabs(pde_residual(p, a)), 1e-6);
  EXPECT_LE(std::fabs(pde_residual({1.0, 1.0}, CoefficientSequence::unit(1))), 1e-6);
  EXPECT_LE(std::fabs(pde_residual({2.0, 2.0}, a)), 1e-6);
  EXPECT_EQ(pde_residual({1.0, 1.0}, CoefficientSequence::zero(2)), 0.0);
}

TEST(Helmholtz, FiniteDifferenceResidualAgrees) {
  auto e2 = CoefficientSequence::unit(2);
  EXPECT_LE(std::fabs(pde_residual_fd({1.5, 1.2}, e2)), 1e-7);
}

TEST(Helmholtz, DecaysLikeExponential) {
  auto a = default_helmholtz_coefficients();
  for (double r : {5.0, 10.0, 20.0})
    for (double t : {0.5, 1.5, 2.8}) EXPECT_LE(std::fabs(solution_u({r, t}, a).value), decay_bound({r, t}, a));
}

TEST(Helmholtz, ContinuousInTheta) {
  auto a = default_helmholtz_coefficients();
  double prev = 1.0;
  for (double h : {1e-1, 1e-2, 1e-3}) {
    double jump = 0.0;
    for (double t = 0.0; t + h <= kPi; t += 0.25)
      jump = std::max(jump, std::fabs(solution_u({1.0, t + h}, a).value - solution_u({1.0, t}, a).value));
    EXPECT_LT(jump, prev);
    prev = jump;
  }
}

TEST(Helmholtz, CoefficientsOfExponentialCosh) {
  // f(x) = x e^{-x cosh 1}: a_n = pi sin(n)/(sinh 1 sinh(pi n))
  auto bc = coefficients_from_boundary(FunctionHandle::builtin("exp_cosh", {{"u0", 1.0}}), 5);
  for (int n = 1; n <= 5; ++n) {
    double truth = kPi * std::sin(double(n)) / (std::sinh(1.0) * std::sinh(kPi * n));
    EXPECT_NEAR(bc.a(n), truth, 1e-15);
    EXPECT_LE(std::fabs(bc.a(n) - truth), 10 * bc.error[n - 1]);
  }
  EXPECT_GT(bc.fitted_rate, kPi / 2);
}

TEST(Helmholtz, ZeroBoundaryGivesZeroCoefficients) {
  auto bc = coefficients_from_boundary(FunctionHandle(), 4);
  for (int n = 1; n <= 4; ++n) EXPECT_EQ(bc.a(n), 0.0);
}

TEST(Helmholtz, BoundaryReconstruction) {
  auto f = FunctionHandle::builtin("incomplete_j_boundary");
  std::vector<PolarPoint> g;
  for (double r : {0.5, 1.0, 2.0}) g.push_back({r, kPi});
  PolarField F = solve_field(BoundarySpec::from_function(f), g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    ASSERT_TRUE(F.boundary_error[i].has_value());
    EXPECT_LE(*F.boundary_error[i], 1e-6);
  }
  EXPECT_TRUE(F.checks_passed());
}

TEST(Helmholtz, FieldFromUnitCoefficients) {
  auto grid = polar_grid(0.5, 2.5, 5, 0.0, kPi, 5);
  PolarField F = solve_field(BoundarySpec::from_coefficients(CoefficientSequence::unit(1)), grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double single = 2 / (kPi * kPi) * std::sinh(grid[i].theta) * j_incomplete(grid[i].r, 1, CutPoint::pi()).value;
    EXPECT_NEAR(F.u[i], single, 1e-15);
  }
  EXPECT_EQ(F.truncation_n, 1);
}

TEST(Helmholtz, ZeroFieldAndMarkers) {
  auto grid = polar_grid(1.0, 2.0, 2, 0.0, kPi, 4);
  PolarField F = solve_field(BoundarySpec::from_coefficients(CoefficientSequence::zero(3)), grid);
  for (double v : F.u) EXPECT_EQ(v, 0.0);
  PolarField D = solve_field(BoundarySpec::from_coefficients(default_helmholtz_coefficients()),
                             {{1.0, 2.9}, {1.0, 1.0}});
  EXPECT_EQ(D.diagnostic[0], "outside certified wedge");
  EXPECT_FALSE(D.residual[0].has_value());
  EXPECT_TRUE(D.residual[1].has_value());
}

TEST(Helmholtz, BadPointDoesNotAbortField) {
  PolarField F = solve_field(BoundarySpec::from_coefficients(CoefficientSequence::unit(1)), {{-1.0, 1.0}, {1.0, 1.0}});
  EXPECT_FALSE(F.diagnostic[0].empty());
  EXPECT_TRUE(std::isfinite(F.u[1]));
  EXPECT_FALSE(F.checks_passed());
}

TEST(Helmholtz, ParallelFieldIsDeterministic) {
  auto grid = polar_grid(0.5, 4.0, 4, 0.3, 2.8, 4);
  auto spec = BoundarySpec::from_coefficients(default_helmholtz_coefficients());
  PolarField a = solve_field(spec, grid, {}, analysis_config(), 1);
  PolarField b = solve_field(spec, grid, {}, analysis_config(), 4);
  EXPECT_EQ(a.u, b.u);
}

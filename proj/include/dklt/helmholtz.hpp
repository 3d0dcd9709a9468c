#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dklt/coefficients.hpp"
#include "dklt/functions.hpp"
#include "dklt/kernels.hpp"
#include "dklt/quadrature.hpp"
#include "dklt/transforms.hpp"

namespace dklt {

// Dirichlet problem for Delta u - u = h in the upper half-plane, in polar
// coordinates, with u(r,0) = 0 and u(r,pi) = f(r):
//   u(r,theta) = (2/pi^2) sum_n n sinh(n theta) J(r,in,pi) a_n
//   h(r,theta) = (2 sinh(pi)/(pi^2 r)) e^{-cosh(pi) r} sum_n (-1)^{n+1} n sinh(n theta) a_n
// Series are certified for theta <= theta0 (the theta0 of the coefficient
// sequence), where sum |a_n| n^2 e^{theta0 n} is finite.

struct PolarPoint {
  double r = 1.0;
  double theta = 0.0;
  // Throws DomainError unless r > 0 and 0 <= theta <= pi.
  void validate() const;
};

struct HelmholtzConfig {
  int n_max = 16;
  QuadratureConfig kernel = kernel_config();
};

// a_n = e^{-2 pi n}/n^3, n = 1..N, class theorem8 with theta0 = 2.8 and a
// bound on the unlisted tail.
CoefficientSequence default_helmholtz_coefficients(int N = 16);

// Throws OutsideCertifiedWedge when theta > a.theta0.
KernelValue forcing_h(const PolarPoint& p, const CoefficientSequence& a, const HelmholtzConfig& cfg = {});

// Any theta in [0, pi]. The tail beyond the truncation is bounded with
// |J(r,in,pi)| <= 2 e^{-r}/n; where that bound is not finite (theta above
// theta0 with an infinite declared tail) the value is returned unconverged.
KernelValue solution_u(const PolarPoint& p, const CoefficientSequence& a, const HelmholtzConfig& cfg = {});

// (4/pi^2) e^{-r} sum_n e^{theta n} |a_n|, including the declared tail.
double decay_bound(const PolarPoint& p, const CoefficientSequence& a);

// Delta u - u - h of the truncated series at an interior point with
// theta <= theta0; r-derivatives by quadrature of the differentiated
// integrands.
double pde_residual(const PolarPoint& p, const CoefficientSequence& a, const HelmholtzConfig& cfg = {});
// Same residual with the r-derivatives replaced by central differences at
// steps h and h/2 combined by Richardson extrapolation.
double pde_residual_fd(const PolarPoint& p, const CoefficientSequence& a, double h = 1e-2,
                       const HelmholtzConfig& cfg = {});

struct BoundaryCoefficients {
  CoefficientSequence a;
  std::vector<double> error;              // per coefficient
  std::vector<std::string> diagnostic;    // empty when the quadrature converged
  double fitted_rate = 0.0;               // least-squares slope of -log|a_n|
};

// a_n = int_0^inf K_{in}(x) f(x) dx/x for n = 1..n_max. The decay class is
// theorem8 with theta0 = 2.8 when the fitted rate exceeds theta0,
// exp_half_pi when it exceeds pi/2, and summable otherwise; the unlisted tail
// is not bounded (tail_bound 0).
BoundaryCoefficients coefficients_from_boundary(const FunctionHandle& f, int n_max = 8,
                                                const QuadratureConfig& qcfg = analysis_config());

struct BoundarySpec {
  enum class Source { coefficients, boundary_function };
  Source source = Source::coefficients;
  CoefficientSequence a;
  FunctionHandle f;
  double theta0 = 2.8;
  int boundary_n_max = 8;

  static BoundarySpec from_coefficients(CoefficientSequence a);
  static BoundarySpec from_function(FunctionHandle f, int n_max = 8);
};

struct PolarField {
  std::vector<PolarPoint> grid;
  std::vector<double> u;
  std::vector<double> u_error;
  std::vector<std::optional<double>> residual;        // interior points with theta <= theta0
  std::vector<std::optional<double>> boundary_error;  // theta = 0 always; theta = pi with a boundary function
  std::vector<std::string> diagnostic;
  std::string coefficient_diagnostic;  // boundary-coefficient quadrature failures
  int truncation_n = 0;
  CoefficientSequence coefficients;
  double tolerance = 1e-6;
  // Residual and boundary checks all within tolerance and no point failed.
  bool checks_passed() const;
};

// Grid points are independent; threads > 1 evaluates them concurrently.
// A failing point is recorded in its diagnostic and never aborts the field.
PolarField solve_field(const BoundarySpec& spec, const std::vector<PolarPoint>& grid,
                       const HelmholtzConfig& cfg = {}, const QuadratureConfig& qcfg = analysis_config(),
                       int threads = 1);

// n_r x n_theta tensor grid, endpoints included, theta varying fastest.
std::vector<PolarPoint> polar_grid(double r0, double r1, int n_r, double t0, double t1, int n_theta);

}  // namespace dklt

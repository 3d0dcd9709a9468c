#pragma once

#include "dklt/quadrature.hpp"

namespace dklt {

struct AccuracyEnvelope {
  double tau_max = 12.0;
  double safety = 16.0;
  // Ratio between integrand size and result size in the K_{i tau} integral.
  double cancellation_factor(double tau) const;
  double cert_tol(double tau) const;
};

struct KernelValue {
  double value = 0.0;
  double error_estimate = 0.0;
  long long evaluations = 0;
  bool converged = true;
};

struct CutPoint {
  double w;
  explicit CutPoint(double w);
  static CutPoint pi();
  static CutPoint asinh_pi();
};

// Default tolerances used by the kernels: near machine precision in absolute
// terms, with rounding-limited results accepted.
QuadratureConfig kernel_config();

// K_{i tau}(x) = int_0^inf e^{-x cosh u} cos(tau u) du. Any real tau with
// |tau| <= tau_max; the error estimate carries a floor of
// cert_tol(tau) * int_0^inf e^{-x cosh u} du.
KernelValue macdonald_imag(double tau, double x, const QuadratureConfig& cfg = kernel_config(),
                           const AccuracyEnvelope& env = {});

// Oscillatory route e^{-pi tau/2} int_0^inf cos(x sinh u - tau u) du, made
// absolutely convergent by the substitution s = sinh u and integrated between
// consecutive zeros with an alternating-tail average. Verification use only.
KernelValue macdonald_imag_oscillatory(double tau, double x, const QuadratureConfig& cfg = kernel_config());

// e^{pi tau/2} K_{i tau}(x) for any tau >= 0: quadrature below the turning
// region, ascending series above it.
KernelValue macdonald_imag_scaled(double tau, double x, const QuadratureConfig& cfg = kernel_config());

// Upper bound on |e^{pi tau/2} K_{i tau}(x)| valid for every tau > 0.
double macdonald_imag_scaled_bound(double tau, double x);

// K_nu(x) = int_0^inf e^{-x cosh u} cosh(nu u) du, |nu| <= nu_cap.
KernelValue macdonald_real(double nu, double x, const QuadratureConfig& cfg = kernel_config(),
                           double nu_cap = 50.0);

// J(x, in, w) = int_0^w e^{-x cosh u} cos(n u) du. Evaluated through the
// integrated-by-parts form for n >= 1, which keeps full relative accuracy as
// x -> 0.
KernelValue j_incomplete(double x, int n, CutPoint w, const QuadratureConfig& cfg = kernel_config());
KernelValue j_incomplete_direct(double x, int n, CutPoint w, const QuadratureConfig& cfg = kernel_config());
KernelValue j_incomplete_by_parts(double x, int n, CutPoint w, const QuadratureConfig& cfg = kernel_config());
// Real order: int_0^w e^{-x cosh u} cosh(nu u) du.
KernelValue j_incomplete_real(double x, double nu, CutPoint w, const QuadratureConfig& cfg = kernel_config());
// First and second x-derivatives of J(x, in, w).
KernelValue j_incomplete_dx(double x, int n, CutPoint w, const QuadratureConfig& cfg = kernel_config());
KernelValue j_incomplete_dxx(double x, int n, CutPoint w, const QuadratureConfig& cfg = kernel_config());

// K_c(x, in, w) = int_0^w cos(x sinh u) cos(n u) du / cosh(pi n/2).
// The *_raw variants omit the hyperbolic prefactor.
KernelValue kc(double x, int n, CutPoint w, const QuadratureConfig& cfg = kernel_config());
KernelValue kc_raw(double x, int n, CutPoint w, const QuadratureConfig& cfg = kernel_config());
KernelValue kc_raw_direct(double x, int n, CutPoint w, const QuadratureConfig& cfg = kernel_config());

// K_s(x, i tau, w) = int_0^w sin(x sinh u) sin(tau u) du / sinh(pi tau/2), tau > 0.
KernelValue ks(double x, double tau, CutPoint w, const QuadratureConfig& cfg = kernel_config());
KernelValue ks_raw(double x, double tau, CutPoint w, const QuadratureConfig& cfg = kernel_config());
// Index route for integer argument n and w = asinh(pi):
// (n/tau) int_0^pi cos(n u) cos(tau asinh u) du, raw (no prefactor).
KernelValue ks_raw_index_route(int n, double tau, const QuadratureConfig& cfg = kernel_config());
// tau -> 0 limit of K_s: (2/pi) int_0^w u sin(x sinh u) du.
KernelValue ks_zero_order_limit(double x, CutPoint w, const QuadratureConfig& cfg = kernel_config());

// Residual of the inhomogeneous Bessel equation satisfied by J(x, in, w).
double ode_residual_j(double x, int n, CutPoint w, const QuadratureConfig& cfg = kernel_config());

// |K_{i tau}(x)| <= A x^{-1/4} / sqrt(sinh(pi tau)).
bool lebedev_bound_check(double tau, double x, double A, const QuadratureConfig& cfg = kernel_config());

}  // namespace dklt

#pragma once

#include <string>
#include <vector>

#include "dklt/coefficients.hpp"
#include "dklt/functions.hpp"
#include "dklt/kernels.hpp"
#include "dklt/quadrature.hpp"

namespace dklt {

enum class WeightMode { direct, log_scale };

struct SeriesEvalConfig {
  int n_max = 8;
  double tail_tol = 1e-10;
  WeightMode weight_mode = WeightMode::log_scale;
  QuadratureConfig kernel = kernel_config();
  AccuracyEnvelope envelope;
  // Throws std::invalid_argument unless 1 <= n_max <= envelope.tau_max.
  void validate() const;
};

// Outer integrals over x in (0, inf) with measure dx/x: adaptive quadrature
// in t = ln x over [ln x_lo, ln x_hi] with tolerances down to the rounding floor.
QuadratureConfig analysis_config();
inline constexpr double kAnalysisXLo = 1e-20;
inline constexpr double kAnalysisXHi = 48.0;

// Series of the three kernels with coefficients a_1..a_N, summed to n_max.
// The dropped part (listed terms beyond n_max plus the declared tail) is
// bounded with the kernel bounds and folded into error_estimate; converged
// is false when that bound exceeds tail_tol.
KernelValue synthesize_K(const CoefficientSequence& a, double x, const SeriesEvalConfig& cfg = {});
KernelValue synthesize_J(const CoefficientSequence& b, double x, const SeriesEvalConfig& cfg = {});
KernelValue synthesize_Kc(const CoefficientSequence& a, double x, const SeriesEvalConfig& cfg = {});

enum class SeriesKernel { K, J, Kc };
std::string to_string(SeriesKernel k);
SeriesKernel series_kernel_from_string(const std::string& s);

// The synthesized series as a function of x.
FunctionHandle synthesis_function(SeriesKernel kernel, const CoefficientSequence& a,
                                  const SeriesEvalConfig& cfg = {});

// a_n = (2/pi^2) n sinh(pi n) int_0^inf J(x,in,pi) f(x) dx/x
KernelValue analyze_J(const FunctionHandle& f, int n, const SeriesEvalConfig& cfg = {},
                      const QuadratureConfig& qcfg = analysis_config());
// b_n = (2/pi^2) n sinh(pi n) int_0^inf K_{in}(x) g(x) dx/x
KernelValue analyze_K(const FunctionHandle& g, int n, const SeriesEvalConfig& cfg = {},
                      const QuadratureConfig& qcfg = analysis_config());
// a_n = (2/pi^2) n sinh(pi n) int_0^inf K_c(x,in,pi) f(x) dx/x
KernelValue analyze_Kc(const FunctionHandle& f, int n, const SeriesEvalConfig& cfg = {},
                       const QuadratureConfig& qcfg = analysis_config());

// Index-integral recovery of a_n from f(tau-side) = sum a_m K_{i tau}(m),
// evaluated as an Abel limit alpha -> pi/2 of the cosh(alpha tau)-damped
// integral.
KernelValue dual_analyze(const CoefficientSequence& a, int n, const QuadratureConfig& qcfg = {});
// Companion recovery through tau sinh(pi tau) K_{i tau}(n) against
// sum a_m K_s(m, i tau, asinh pi), also as an Abel limit.
KernelValue dual_analyze_ks(const CoefficientSequence& a, int n, const QuadratureConfig& qcfg = {});

// tau sinh(pi tau/2) sum_m a_m K_s(m, i tau, asinh pi)
KernelValue dual_synthesize(const CoefficientSequence& a, double tau, const SeriesEvalConfig& cfg = {});

// Reconstruction of f at x from its coefficients int_0^inf K_{in}(y) f(y) dy,
// summed with the J kernel (and the K_c kernel respectively) up to n_max.
// The error estimate is the difference of the last two partial sums plus the
// propagated coefficient errors.
KernelValue expand_function_J(const FunctionHandle& f, double x, const SeriesEvalConfig& cfg = {},
                              const QuadratureConfig& qcfg = analysis_config());
KernelValue expand_function_Kc(const FunctionHandle& f, double x, const SeriesEvalConfig& cfg = {},
                               const QuadratureConfig& qcfg = analysis_config());

// Reconstruction of an index function f(tau) at tau = x from the moments
// c_n = int_0^inf cosh(pi tau/2) K_{i tau}(n) f(tau) dtau. Requires f to carry
// an envelope making the moments absolutely convergent; the series over n
// runs until its certified tail is below tail_tol.
KernelValue expand_index_function(const FunctionHandle& f, double x, const SeriesEvalConfig& cfg = {},
                                  const QuadratureConfig& qcfg = analysis_config());

// One recovered coefficient of a round trip.
struct RecoveryRow {
  int n;
  double original;
  double recovered;
  double error;
  double error_estimate;
  bool converged;
};

// Pairs: "2.30" analyze_J o synthesize_K, "2.31" analyze_K o synthesize_J,
// "2.32" analyze_Kc o synthesize_K, "2.33" analyze_K o synthesize_Kc,
// "2.34" dual_analyze, "2.35" dual_analyze_ks. Recovers n = 1..n_last.
std::vector<RecoveryRow> roundtrip(const std::string& pair, const CoefficientSequence& a, int n_last,
                                   const SeriesEvalConfig& cfg = {}, const QuadratureConfig& qcfg = analysis_config());

}  // namespace dklt

#pragma once

#include <functional>
#include <vector>

namespace dklt {

using RealFunction = std::function<double(double)>;

// alpha_k = pi/2 - 2^-k, k = 2..9
std::vector<double> default_abel_schedule();

struct QuadratureConfig {
  double abs_tol = 1e-15;
  double rel_tol = 1e-13;
  int max_depth = 40;
  // Extra decades of decay demanded of a truncated tail beyond abs_tol.
  double truncation_margin = 2.0;
  std::vector<double> abel_schedule = default_abel_schedule();
  int extrapolation_order = 3;
  // Settling tolerance for Abel-extrapolated limits.
  double abel_tol = 1e-4;

  // Throws std::invalid_argument when an invariant is violated.
  void validate() const;
  double target(double value) const;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long long evaluations = 0;
  bool converged = false;
  // Every remaining panel sits at its rounding-error floor; tightening the
  // tolerance cannot improve the value.
  bool roundoff_limited = false;
  // Largest value of integral |f| seen, the scale of the rounding floor.
  double abs_integral = 0.0;
};

// Global adaptive Gauss-Kronrod (10/21) bisection starting from
// `initial_panels` equal panels. Panels beyond cfg.max_depth bisections are
// frozen. A non-finite sample throws NonFiniteIntegrand.
QuadratureResult integrate_finite(const RealFunction& f, double a, double b,
                                  const QuadratureConfig& cfg,
                                  int initial_panels = 1);

// Monotone envelope |f(u)| <= bound(u). `tail(U)` returns an upper bound on
// the integral of the bound over [U, inf); when empty it is integrated
// numerically.
struct Envelope {
  RealFunction bound;
  RealFunction tail;
};

struct SemiInfiniteOptions {
  double lower = 0.0;
  // Width of the initial panels on [lower, U]; 0 starts from a single panel.
  double panel_width = 0.0;
  double cap = 1e8;
};

// Integral of f over [lower, inf). The range is cut at the smallest U (to a
// few bisection steps) whose envelope tail is below abs_tol scaled down by
// truncation_margin decades; the tail bound is added to the error estimate.
QuadratureResult integrate_semi_infinite(const RealFunction& f,
                                         const Envelope& env,
                                         const QuadratureConfig& cfg,
                                         const SemiInfiniteOptions& opts = {});

// Tail of the envelope alone; exposed for truncation-soundness checks.
double envelope_tail(const Envelope& env, double U, const QuadratureConfig& cfg);

struct AbelFamily {
  std::function<double(double tau, double alpha)> g;
  std::function<Envelope(double alpha)> envelope;
  SemiInfiniteOptions options;
};

struct AbelResult : QuadratureResult {
  std::vector<double> alphas;
  std::vector<double> per_alpha;
  std::vector<double> extrapolants;
};

// Evaluates the integral for every alpha in cfg.abel_schedule and
// extrapolates to alpha = pi/2 with a polynomial in (pi/2 - alpha).
AbelResult integrate_abel(const AbelFamily& family, const QuadratureConfig& cfg);

// Extrapolation step of integrate_abel on precomputed values. The estimate is
// |last two extrapolants| + inner_error; convergence is judged against
// max(abel_tol, rel_tol |value|).
AbelResult abel_extrapolate(const std::vector<double>& alphas,
                            const std::vector<double>& values,
                            double inner_error, bool inner_ok,
                            const QuadratureConfig& cfg);

// Nodes of the 21-point Kronrod rule on `panels` equal panels of [a, b];
// wg is the embedded 10-point Gauss weight (zero at Kronrod-only nodes).
struct RuleNodes {
  std::vector<double> x, wk, wg;
};
RuleNodes composite_gauss_kronrod(double a, double b, int panels);

// Neville evaluation at 0 of the interpolating polynomial through (h_i, y_i).
double neville_at_zero(const std::vector<double>& h, const std::vector<double>& y);

// Kahan-Babuska-Neumaier accumulator.
class CompensatedSum {
 public:
  void add(double v);
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace dklt

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include "dklt/kernels.hpp"
#include "dklt/quadrature.hpp"
#include "dklt/special.hpp"

namespace dklt::detail {

inline constexpr double kEps = std::numeric_limits<double>::epsilon();
inline constexpr double kSafety = 16.0;

inline int oscillation_panels(double phase_span) {
  return static_cast<int>(std::clamp(std::ceil(phase_span / kPi), 1.0, 4000.0));
}

// int_0^inf e^{-x cosh u} g(u) du for |g| <= gmax, truncated where the
// envelope tail falls below the rounding level of the integrand.
inline QuadratureResult exp_cosh_integral(double x, const RealFunction& g, double gmax, double max_freq,
                                          const QuadratureConfig& cfg) {
  RealFunction f = [x, &g](double u) { return std::exp(-x * std::cosh(u)) * g(u); };
  Envelope env{[x, gmax](double u) { return gmax * std::exp(-x * std::cosh(u)); },
               [x, gmax](double U) { return gmax * std::exp(-x * std::cosh(U)) / (x * std::sinh(U)); }};
  QuadratureConfig c = cfg;
  double scale = gmax * std::exp(-x) * std::min(1.0, 1.0 / std::sqrt(x));
  c.abs_tol = std::max(cfg.abs_tol, std::max(cfg.rel_tol, kEps) * scale);
  SemiInfiniteOptions opts;
  opts.panel_width = kPi / std::max(1.0, max_freq);
  return integrate_semi_infinite(f, env, c, opts);
}

// Integral over (0, inf) with measure dx/x in t = ln x, cut to [lo, hi]. The
// neglected end pieces are estimated by |g| at the cut points (g vanishes at
// least linearly in x below and decays exponentially above).
struct LogAxisResult {
  QuadratureResult r;
  double ends = 0.0;
};

inline LogAxisResult log_axis_integral(const RealFunction& g, const QuadratureConfig& qcfg, double lo, double hi) {
  const double tlo = std::log(lo), thi = std::log(hi);
  RealFunction h = [&g](double t) { return g(std::exp(t)); };
  LogAxisResult out;
  out.r = integrate_finite(h, tlo, thi, qcfg, static_cast<int>(std::ceil((thi - tlo) / 2.0)));
  out.ends = std::fabs(g(lo)) + std::fabs(g(hi));
  return out;
}

// K_{i tau}(x) through the scaled evaluator, which avoids the e^{pi tau/2}
// cancellation of the direct integral at small x.
inline double macdonald_small_x(double tau, double x, const QuadratureConfig& cfg) {
  return scale_by_exp(macdonald_imag_scaled(tau, x, cfg).value, -kPi * std::fabs(tau) / 2.0);
}

// K_0(y) <= sqrt(pi/(2y)) e^{-y} for all y > 0.
inline double k0_upper(double y) { return std::sqrt(kPi / (2.0 * y)) * std::exp(-y); }

}  // namespace dklt::detail

#include "dklt/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "dklt/errors.hpp"
#include "dklt/special.hpp"

namespace dklt {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kKernelSafety = 16.0;

void require_positive_x(double x, const char* op) {
  if (!(x > 0) || !std::isfinite(x)) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%s: argument x = %.17g must be positive and finite", op, x);
    throw DomainError(buf);
  }
}

int oscillation_panels(double phase_span) {
  return static_cast<int>(std::clamp(std::ceil(phase_span / kPi), 1.0, 4000.0));
}

// Rounding floor for a kernel computed from an integrand of total mass `mass`.
KernelValue finish(const QuadratureResult& r, double floor_scale) {
  KernelValue k;
  k.value = r.value;
  k.error_estimate = std::max(r.error_estimate, kEps * kKernelSafety * floor_scale);
  k.evaluations = r.evaluations;
  k.converged = r.converged || r.roundoff_limited;
  return k;
}

// Truncation of int_0^inf e^{-x cosh u} g(u) du for |g| <= 1.
Envelope exp_cosh_envelope(double x) {
  return Envelope{[x](double u) { return std::exp(-x * std::cosh(u)); },
                  [x](double U) { return std::exp(-x * std::cosh(U)) / (x * std::sinh(U)); }};
}

QuadratureConfig exp_cosh_truncation(double x, const QuadratureConfig& cfg) {
  // Tail target relative to the integrand scale e^{-x} min(1, x^{-1/2}).
  QuadratureConfig c = cfg;
  double scale = std::exp(-x) * std::min(1.0, 1.0 / std::sqrt(x));
  c.abs_tol = std::max(cfg.abs_tol, std::max(cfg.rel_tol, kEps) * scale);
  return c;
}

KernelValue scaled(KernelValue raw, double log_factor) {
  raw.value = scale_by_exp(raw.value, log_factor);
  raw.error_estimate = scale_by_exp(raw.error_estimate, log_factor);
  return raw;
}

}  // namespace

double AccuracyEnvelope::cancellation_factor(double tau) const {
  return std::exp(kPi * std::fabs(tau) / 2.0);
}

double AccuracyEnvelope::cert_tol(double tau) const {
  return kEps * cancellation_factor(tau) * safety;
}

CutPoint::CutPoint(double w_) : w(w_) {
  if (!(w_ >= 0) || !std::isfinite(w_)) throw DomainError("cut point must be finite and nonnegative");
}
CutPoint CutPoint::pi() { return CutPoint(kPi); }
CutPoint CutPoint::asinh_pi() { return CutPoint(kAsinhPi); }

QuadratureConfig kernel_config() {
  QuadratureConfig c;
  c.abs_tol = 0.0;
  c.rel_tol = 1e-15;
  c.max_depth = 30;
  return c;
}

KernelValue macdonald_imag(double tau, double x, const QuadratureConfig& cfg, const AccuracyEnvelope& env) {
  require_positive_x(x, "macdonald_imag");
  if (!std::isfinite(tau)) throw DomainError("macdonald_imag: order must be finite");
  if (std::fabs(tau) > env.tau_max) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "accuracy envelope exceeded: tau = %.17g > tau_max = %.17g", tau, env.tau_max);
    throw AccuracyEnvelopeExceeded(buf);
  }
  RealFunction f = [x, tau](double u) { return std::exp(-x * std::cosh(u)) * std::cos(tau * u); };
  SemiInfiniteOptions opts;
  opts.panel_width = kPi / std::max(1.0, std::fabs(tau));
  QuadratureResult r = integrate_semi_infinite(f, exp_cosh_envelope(x), exp_cosh_truncation(x, cfg), opts);
  KernelValue k = finish(r, 0.0);
  k.error_estimate = std::max(k.error_estimate, env.cert_tol(tau) * r.abs_integral);
  return k;
}

KernelValue macdonald_imag_oscillatory(double tau, double x, const QuadratureConfig& cfg) {
  require_positive_x(x, "macdonald_imag_oscillatory");
  tau = std::fabs(tau);
  auto phase = [x, tau](double s) { return x * s - tau * std::asinh(s); };
  RealFunction f = [&](double s) { return std::cos(phase(s)) / std::sqrt(1.0 + s * s); };
  double s0 = std::max(4.0, 4.0 * tau / x);
  // Advance s0 to the next zero of cos(phase), where the phase is an odd multiple of pi/2.
  double m = std::ceil((phase(s0) / kPi) - 0.5) + 0.5;
  auto solve = [&](double target, double s) {
    for (int it = 0; it < 60; ++it) {
      double d = x - tau / std::sqrt(1.0 + s * s);
      double step = (phase(s) - target) / d;
      s -= step;
      if (std::fabs(step) < 1e-15 * s) break;
    }
    return s;
  };
  double start = solve(m * kPi, s0);
  QuadratureResult head = integrate_finite(f, 0.0, start, cfg, oscillation_panels(phase(start) + tau));
  long long evals = head.evaluations;
  double err = head.error_estimate;
  const int M = 48;
  std::vector<double> partial;
  partial.reserve(M + 1);
  double acc = head.value;
  partial.push_back(acc);
  double lo = start;
  for (int k = 1; k <= M; ++k) {
    double hi = solve((m + k) * kPi, lo + kPi / x);
    QuadratureResult piece = integrate_finite(f, lo, hi, cfg);
    evals += piece.evaluations;
    err += piece.error_estimate;
    acc += piece.value;
    partial.push_back(acc);
    lo = hi;
  }
  // Repeated averaging of the alternating partial sums.
  std::vector<double> level = partial;
  double prev = level.back();
  for (int l = 0; l < 24 && level.size() > 2; ++l) {
    prev = level.back();
    std::vector<double> next(level.size() - 1);
    for (std::size_t i = 0; i + 1 < level.size(); ++i) next[i] = 0.5 * (level[i] + level[i + 1]);
    level.swap(next);
  }
  const double damp = std::exp(-kPi * tau / 2.0);
  KernelValue k;
  k.value = damp * level.back();
  k.error_estimate = damp * (err + 10.0 * std::fabs(level.back() - prev)) + kEps * kKernelSafety * damp;
  k.evaluations = evals;
  k.converged = true;
  return k;
}

double macdonald_imag_scaled_bound(double tau, double x) {
  tau = std::fabs(tau);
  double pref = std::sqrt(2.0 * kPi / (tau * -std::expm1(-2.0 * kPi * tau)));
  return pref * std::exp(std::min(x * x / (4.0 * tau), x));
}

KernelValue macdonald_imag_scaled(double tau, double x, const QuadratureConfig& cfg) {
  require_positive_x(x, "macdonald_imag_scaled");
  tau = std::fabs(tau);
  if ((x <= 2.0 && tau >= 0.5) || tau >= x + 2.0) {
    KernelValue k;
    k.value = scaled_macdonald_series(tau, x);
    double theta_scale = tau * (std::fabs(std::log(tau)) + std::fabs(std::log(0.5 * x)) + 1.0);
    k.error_estimate = (64.0 * kEps + 4.0 * kEps * theta_scale) * macdonald_imag_scaled_bound(tau, x);
    k.evaluations = 1;
    return k;
  }
  AccuracyEnvelope wide;
  wide.tau_max = std::numeric_limits<double>::infinity();
  KernelValue k = macdonald_imag(tau, x, cfg, wide);
  return scaled(k, kPi * tau / 2.0);
}

KernelValue macdonald_real(double nu, double x, const QuadratureConfig& cfg, double nu_cap) {
  require_positive_x(x, "macdonald_real");
  if (!(std::fabs(nu) <= nu_cap)) throw DomainError("macdonald_real: order exceeds configured cap");
  const double a = std::fabs(nu);
  RealFunction f = [x, a](double u) { return std::exp(-x * std::cosh(u) + a * u) * 0.5 * (1.0 + std::exp(-2.0 * a * u)); };
  Envelope env{[x, a](double u) { return std::exp(-x * std::cosh(u) + a * u); },
               [x, a](double U) {
                 double slope = x * std::sinh(U) - a;
                 if (slope <= 0) return std::numeric_limits<double>::infinity();
                 return std::exp(-x * std::cosh(U) + a * U) / slope;
               }};
  QuadratureConfig c = exp_cosh_truncation(x, cfg);
  // The integrand peaks where x sinh u = nu; scale the tail target to the peak.
  double upeak = std::asinh(a / x);
  c.abs_tol = std::max(c.abs_tol, kEps * std::exp(-x * std::cosh(upeak) + a * upeak));
  QuadratureResult r = integrate_semi_infinite(f, env, c);
  return finish(r, r.abs_integral);
}

KernelValue j_incomplete_direct(double x, int n, CutPoint w, const QuadratureConfig& cfg) {
  require_positive_x(x, "j_incomplete");
  RealFunction f = [x, n](double u) { return std::exp(-x * std::cosh(u)) * std::cos(n * u); };
  QuadratureResult r = integrate_finite(f, 0.0, w.w, cfg, oscillation_panels(std::abs(n) * w.w));
  return finish(r, r.abs_integral);
}

KernelValue j_incomplete_by_parts(double x, int n, CutPoint w, const QuadratureConfig& cfg) {
  require_positive_x(x, "j_incomplete");
  if (n == 0) throw DomainError("j_incomplete_by_parts requires n != 0");
  RealFunction f = [x, n](double u) { return std::exp(-x * std::cosh(u)) * std::sinh(u) * std::sin(n * u); };
  QuadratureResult r = integrate_finite(f, 0.0, w.w, cfg, oscillation_panels(std::abs(n) * w.w));
  double boundary = w.w == kPi ? 0.0 : std::exp(-x * std::cosh(w.w)) * std::sin(n * w.w) / n;
  KernelValue k = finish(r, r.abs_integral);
  k.value = boundary + (x / n) * k.value;
  k.error_estimate = (x / std::abs(n)) * k.error_estimate + kEps * std::fabs(boundary);
  return k;
}

KernelValue j_incomplete(double x, int n, CutPoint w, const QuadratureConfig& cfg) {
  if (n == 0) return j_incomplete_direct(x, 0, w, cfg);
  return j_incomplete_by_parts(x, std::abs(n), w, cfg);
}

KernelValue j_incomplete_real(double x, double nu, CutPoint w, const QuadratureConfig& cfg) {
  require_positive_x(x, "j_incomplete_real");
  RealFunction f = [x, nu](double u) { return std::exp(-x * std::cosh(u)) * std::cosh(nu * u); };
  QuadratureResult r = integrate_finite(f, 0.0, w.w, cfg);
  return finish(r, r.abs_integral);
}

KernelValue j_incomplete_dx(double x, int n, CutPoint w, const QuadratureConfig& cfg) {
  require_positive_x(x, "j_incomplete_dx");
  RealFunction f = [x, n](double u) {
    double c = std::cosh(u);
    return -std::exp(-x * c) * c * std::cos(n * u);
  };
  QuadratureResult r = integrate_finite(f, 0.0, w.w, cfg, oscillation_panels(std::abs(n) * w.w));
  return finish(r, r.abs_integral);
}

KernelValue j_incomplete_dxx(double x, int n, CutPoint w, const QuadratureConfig& cfg) {
  require_positive_x(x, "j_incomplete_dxx");
  RealFunction f = [x, n](double u) {
    double c = std::cosh(u);
    return std::exp(-x * c) * c * c * std::cos(n * u);
  };
  QuadratureResult r = integrate_finite(f, 0.0, w.w, cfg, oscillation_panels(std::abs(n) * w.w));
  return finish(r, r.abs_integral);
}

KernelValue kc_raw_direct(double x, int n, CutPoint w, const QuadratureConfig& cfg) {
  require_positive_x(x, "kc");
  RealFunction f = [x, n](double u) { return std::cos(x * std::sinh(u)) * std::cos(n * u); };
  QuadratureResult r =
      integrate_finite(f, 0.0, w.w, cfg, oscillation_panels(x * std::sinh(w.w) + std::abs(n) * w.w));
  return finish(r, r.abs_integral);
}

KernelValue kc_raw(double x, int n, CutPoint w, const QuadratureConfig& cfg) {
  require_positive_x(x, "kc");
  if (n == 0) return kc_raw_direct(x, 0, w, cfg);
  n = std::abs(n);
  RealFunction f = [x, n](double u) { return std::sin(x * std::sinh(u)) * std::cosh(u) * std::sin(n * u); };
  QuadratureResult r =
      integrate_finite(f, 0.0, w.w, cfg, oscillation_panels(x * std::sinh(w.w) + n * w.w));
  double boundary = w.w == kPi ? 0.0 : std::cos(x * std::sinh(w.w)) * std::sin(n * w.w) / n;
  KernelValue k = finish(r, r.abs_integral);
  k.value = boundary + (x / n) * k.value;
  k.error_estimate = (x / n) * k.error_estimate + kEps * std::fabs(boundary);
  return k;
}

KernelValue kc(double x, int n, CutPoint w, const QuadratureConfig& cfg) {
  return scaled(kc_raw(x, n, w, cfg), -log_cosh(kPi * n / 2.0));
}

KernelValue ks_raw(double x, double tau, CutPoint w, const QuadratureConfig& cfg) {
  require_positive_x(x, "ks");
  RealFunction f = [x, tau](double u) { return std::sin(x * std::sinh(u)) * std::sin(tau * u); };
  QuadratureResult r =
      integrate_finite(f, 0.0, w.w, cfg, oscillation_panels(x * std::sinh(w.w) + std::fabs(tau) * w.w));
  return finish(r, r.abs_integral);
}

KernelValue ks(double x, double tau, CutPoint w, const QuadratureConfig& cfg) {
  if (!(tau > 0) || !std::isfinite(tau)) throw DomainError("ks: order tau must be positive (prefactor pole at 0)");
  return scaled(ks_raw(x, tau, w, cfg), -log_sinh(kPi * tau / 2.0));
}

KernelValue ks_raw_index_route(int n, double tau, const QuadratureConfig& cfg) {
  if (n < 1) throw DomainError("ks index route requires integer argument n >= 1");
  if (!(tau > 0)) throw DomainError("ks: order tau must be positive");
  RealFunction f = [n, tau](double u) { return std::cos(n * u) * std::cos(tau * std::asinh(u)); };
  QuadratureResult r = integrate_finite(f, 0.0, kPi, cfg, oscillation_panels(n * kPi + tau * kAsinhPi));
  KernelValue k = finish(r, r.abs_integral);
  k.value *= n / tau;
  k.error_estimate *= n / tau;
  return k;
}

KernelValue ks_zero_order_limit(double x, CutPoint w, const QuadratureConfig& cfg) {
  require_positive_x(x, "ks_zero_order_limit");
  RealFunction f = [x](double u) { return u * std::sin(x * std::sinh(u)); };
  QuadratureResult r = integrate_finite(f, 0.0, w.w, cfg, oscillation_panels(x * std::sinh(w.w)));
  KernelValue k = finish(r, r.abs_integral);
  k.value *= 2.0 / kPi;
  k.error_estimate *= 2.0 / kPi;
  return k;
}

double ode_residual_j(double x, int n, CutPoint w, const QuadratureConfig& cfg) {
  require_positive_x(x, "ode_residual_j");
  double J = j_incomplete(x, n, w, cfg).value;
  double J1 = j_incomplete_dx(x, n, w, cfg).value;
  double J2 = j_incomplete_dxx(x, n, w, cfg).value;
  double forcing = (-n * std::sin(n * w.w) + x * std::cos(n * w.w) * std::sinh(w.w)) * std::exp(-x * std::cosh(w.w));
  return x * x * J2 + x * J1 - (x * x - double(n) * n) * J + forcing;
}

bool lebedev_bound_check(double tau, double x, double A, const QuadratureConfig& cfg) {
  require_positive_x(x, "lebedev_bound_check");
  if (!(tau > 0)) throw DomainError("lebedev_bound_check requires tau > 0");
  double k = std::fabs(macdonald_imag_scaled(tau, x, cfg).value) * std::exp(-kPi * tau / 2.0);
  return k <= A * std::pow(x, -0.25) / std::sqrt(std::sinh(kPi * tau));
}

}  // namespace dklt

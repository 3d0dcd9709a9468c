#include "dklt/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dklt/errors.hpp"
#include "dklt/index_transform.hpp"
#include "dklt/special.hpp"
#include "internal.hpp"

namespace dklt {

using detail::kEps;
using detail::kSafety;

namespace {

void require_x(double x, const char* op) {
  if (!(x > 0) || !std::isfinite(x)) throw DomainError(std::string(op) + ": x must be positive and finite");
}

void require_n(int n, const char* op) {
  if (n < 1) throw DomainError(std::string(op) + ": index n must be >= 1");
}

int effective_terms(const CoefficientSequence& a, int n_max) {
  int N = std::min<int>(static_cast<int>(a.size()), n_max);
  while (N > 0 && a(N) == 0.0) --N;
  return N;
}

double coefficient_scale(const CoefficientSequence& a, int N) {
  double s = 0.0;
  for (int m = 1; m <= N; ++m) s += std::fabs(a(m));
  return s;
}

KernelValue with_tail(const QuadratureResult& r, double tail, const SeriesEvalConfig& cfg) {
  KernelValue k;
  k.value = r.value;
  k.error_estimate = std::max(r.error_estimate, kEps * kSafety * r.abs_integral) + tail;
  k.evaluations = r.evaluations;
  k.converged = (r.converged || r.roundoff_limited) && tail <= cfg.tail_tol;
  return k;
}

detail::LogAxisResult on_axis(const RealFunction& g, const QuadratureConfig& qcfg) {
  return detail::log_axis_integral(g, qcfg, kAnalysisXLo, kAnalysisXHi);
}

KernelValue scaled_result(const detail::LogAxisResult& L, double log_pref, double inflation) {
  KernelValue k;
  double raw_err = L.r.error_estimate + L.ends + kEps * kSafety * L.r.abs_integral;
  k.value = scale_by_exp(L.r.value, log_pref);
  k.error_estimate = scale_by_exp(raw_err * inflation, log_pref);
  k.evaluations = L.r.evaluations;
  k.converged = L.r.converged || L.r.roundoff_limited;
  return k;
}

double envelope_inflation(int n, const SeriesEvalConfig& cfg) {
  if (n <= cfg.envelope.tau_max) return 1.0;
  return cfg.envelope.cancellation_factor(n) / cfg.envelope.cancellation_factor(cfg.envelope.tau_max);
}

double macdonald_for_analysis(int n, double x, const SeriesEvalConfig& cfg) {
  return detail::macdonald_small_x(n, x, cfg.kernel);
}

// Coefficient c_n = int_0^inf K_{in}(y) f(y) dy, as an integral in t = ln y.
detail::LogAxisResult macdonald_moment(const FunctionHandle& f, int n, const SeriesEvalConfig& cfg,
                               const QuadratureConfig& qcfg) {
  RealFunction g = [&](double y) { return y * macdonald_for_analysis(n, y, cfg) * f(y); };
  return on_axis(g, qcfg);
}

KernelValue expand_function(const FunctionHandle& f, double x, const SeriesEvalConfig& cfg,
                            const QuadratureConfig& qcfg, bool use_kc) {
  require_x(x, use_kc ? "expand_function_Kc" : "expand_function_J");
  cfg.validate();
  KernelValue out;
  if (f.is_zero()) return out;
  double sum = 0.0, prop = 0.0, last_diff = 0.0, prev_diff = 0.0, last_prop = 0.0;
  for (int n = 1; n <= cfg.n_max; ++n) {
    detail::LogAxisResult c = macdonald_moment(f, n, cfg, qcfg);
    double c_err = c.r.error_estimate + c.ends + kEps * kSafety * c.r.abs_integral;
    KernelValue kern = use_kc ? kc_raw(x, n, CutPoint::pi(), cfg.kernel) : j_incomplete(x, n, CutPoint::pi(), cfg.kernel);
    double log_pref = use_kc ? std::log(4.0 / (kPi * kPi * x)) + std::log(double(n)) + log_sinh(kPi * n / 2.0)
                             : std::log(2.0 / (kPi * kPi * x)) + std::log(double(n)) + log_sinh(kPi * n);
    double term = scale_by_exp(kern.value * c.r.value, log_pref);
    double term_err = scale_by_exp(std::fabs(kern.value) * c_err + kern.error_estimate * std::fabs(c.r.value), log_pref);
    sum += term;
    prop += term_err;
    prev_diff = last_diff;
    last_diff = std::fabs(term);
    last_prop = term_err;
    out.evaluations += c.r.evaluations + kern.evaluations;
    out.converged = out.converged && (c.r.converged || c.r.roundoff_limited);
  }
  out.value = sum;
  out.error_estimate = last_diff + prop;
  // Growing differences above the noise level of the last term mean the
  // partial sums are not settling.
  if (cfg.n_max >= 2 && last_diff > prev_diff && last_diff > last_prop) out.converged = false;
  return out;
}

}  // namespace

void SeriesEvalConfig::validate() const {
  if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
  if (n_max > envelope.tau_max) throw std::invalid_argument("n_max exceeds the kernel accuracy envelope tau_max");
  if (!(tail_tol > 0)) throw std::invalid_argument("tail_tol must be positive");
}

QuadratureConfig analysis_config() {
  QuadratureConfig c;
  c.abs_tol = 0.0;
  c.rel_tol = 1e-13;
  c.max_depth = 40;
  return c;
}

std::string to_string(SeriesKernel k) {
  switch (k) {
    case SeriesKernel::K: return "K";
    case SeriesKernel::J: return "J";
    case SeriesKernel::Kc: return "Kc";
  }
  return "K";
}

SeriesKernel series_kernel_from_string(const std::string& s) {
  if (s == "K") return SeriesKernel::K;
  if (s == "J") return SeriesKernel::J;
  if (s == "Kc") return SeriesKernel::Kc;
  throw std::invalid_argument("unknown kernel '" + s + "' (expected K, J or Kc)");
}

KernelValue synthesize_K(const CoefficientSequence& a, double x, const SeriesEvalConfig& cfg) {
  require_x(x, "synthesize_K");
  cfg.validate();
  const int N = effective_terms(a, cfg.n_max);
  // |K_{im}(x)| <= e^{-delta m} K_0(x cos delta); keep the best of a few delta.
  double tail = std::numeric_limits<double>::infinity();
  for (double delta : {0.0, 0.5, 1.0, 1.4}) {
    double k0 = macdonald_real(0.0, x * std::cos(delta)).value;
    tail = std::min(tail, tail_contribution(a, cfg.n_max, [&](int m) { return std::exp(-delta * m) * k0; }));
  }
  QuadratureResult r;
  r.converged = true;
  if (N > 0) {
    RealFunction g = [&a, N](double u) {
      double s = 0.0;
      for (int m = 1; m <= N; ++m) s += a(m) * std::cos(m * u);
      return s;
    };
    r = detail::exp_cosh_integral(x, g, coefficient_scale(a, N), N, cfg.kernel);
  }
  return with_tail(r, tail, cfg);
}

KernelValue synthesize_J(const CoefficientSequence& b, double x, const SeriesEvalConfig& cfg) {
  require_x(x, "synthesize_J");
  cfg.validate();
  const int N = effective_terms(b, cfg.n_max);
  double tail = tail_contribution(b, cfg.n_max, [x](int m) { return 2.0 / m * std::exp(-x); });
  QuadratureResult r;
  r.converged = true;
  if (N > 0) {
    // sum_m b_m J(x,im,pi) = x int_0^pi e^{-x cosh u} sinh u sum_m (b_m/m) sin(m u) du
    RealFunction g = [x, &b, N](double u) {
      double s = 0.0;
      for (int m = 1; m <= N; ++m) s += b(m) / m * std::sin(m * u);
      return x * std::exp(-x * std::cosh(u)) * std::sinh(u) * s;
    };
    r = integrate_finite(g, 0.0, kPi, cfg.kernel, detail::oscillation_panels(N * kPi));
  }
  return with_tail(r, tail, cfg);
}

KernelValue synthesize_Kc(const CoefficientSequence& a, double x, const SeriesEvalConfig& cfg) {
  require_x(x, "synthesize_Kc");
  cfg.validate();
  const int N = effective_terms(a, cfg.n_max);
  double tail = tail_contribution(a, cfg.n_max, [x](int m) {
    return std::min(kPi, x * std::sinh(kPi) / m) / std::cosh(kPi * m / 2.0);
  });
  QuadratureResult r;
  r.converged = true;
  if (N > 0) {
    std::vector<double> w(N + 1, 0.0);
    for (int m = 1; m <= N; ++m)
      w[m] = cfg.weight_mode == WeightMode::log_scale ? scale_by_exp(a(m) / m, -log_cosh(kPi * m / 2.0))
                                                      : a(m) / m / std::cosh(kPi * m / 2.0);
    // sum_m a_m K_c(x,im,pi) = x int_0^pi sin(x sinh u) cosh u sum_m w_m sin(m u) du
    RealFunction g = [x, &w, N](double u) {
      double s = 0.0;
      for (int m = 1; m <= N; ++m) s += w[m] * std::sin(m * u);
      return x * std::sin(x * std::sinh(u)) * std::cosh(u) * s;
    };
    r = integrate_finite(g, 0.0, kPi, cfg.kernel, detail::oscillation_panels(x * std::sinh(kPi) + N * kPi));
  }
  return with_tail(r, tail, cfg);
}

FunctionHandle synthesis_function(SeriesKernel kernel, const CoefficientSequence& a, const SeriesEvalConfig& cfg) {
  cfg.validate();
  if (effective_terms(a, cfg.n_max) == 0 && a.tail_bound == 0.0) return FunctionHandle();
  RealFunction f;
  switch (kernel) {
    case SeriesKernel::K: f = [a, cfg](double x) { return synthesize_K(a, x, cfg).value; }; break;
    case SeriesKernel::J: f = [a, cfg](double x) { return synthesize_J(a, x, cfg).value; }; break;
    case SeriesKernel::Kc: f = [a, cfg](double x) { return synthesize_Kc(a, x, cfg).value; }; break;
  }
  return FunctionHandle::closure("synthesis_" + to_string(kernel), std::move(f));
}

KernelValue analyze_J(const FunctionHandle& f, int n, const SeriesEvalConfig& cfg, const QuadratureConfig& qcfg) {
  require_n(n, "analyze_J");
  if (f.is_zero()) return {};
  RealFunction g = [&](double x) { return j_incomplete(x, n, CutPoint::pi(), cfg.kernel).value * f(x); };
  double log_pref = std::log(2.0 / (kPi * kPi)) + std::log(double(n)) + log_sinh(kPi * n);
  return scaled_result(on_axis(g, qcfg), log_pref, envelope_inflation(n, cfg));
}

KernelValue analyze_K(const FunctionHandle& g, int n, const SeriesEvalConfig& cfg, const QuadratureConfig& qcfg) {
  require_n(n, "analyze_K");
  if (g.is_zero()) return {};
  RealFunction h = [&](double x) { return macdonald_for_analysis(n, x, cfg) * g(x); };
  double log_pref = std::log(2.0 / (kPi * kPi)) + std::log(double(n)) + log_sinh(kPi * n);
  return scaled_result(on_axis(h, qcfg), log_pref, envelope_inflation(n, cfg));
}

KernelValue analyze_Kc(const FunctionHandle& f, int n, const SeriesEvalConfig& cfg, const QuadratureConfig& qcfg) {
  require_n(n, "analyze_Kc");
  if (f.is_zero()) return {};
  RealFunction g = [&](double x) { return kc_raw(x, n, CutPoint::pi(), cfg.kernel).value * f(x); };
  // (2/pi^2) n sinh(pi n) / cosh(pi n/2) = (4/pi^2) n sinh(pi n/2)
  double log_pref = std::log(4.0 / (kPi * kPi)) + std::log(double(n)) + log_sinh(kPi * n / 2.0);
  return scaled_result(on_axis(g, qcfg), log_pref, envelope_inflation(n, cfg));
}

namespace {

KernelValue from_abel(const AbelResult& r, double factor, double extra_error, long long evals) {
  KernelValue k;
  k.value = factor * r.value;
  k.error_estimate = std::fabs(factor) * r.error_estimate + extra_error;
  k.evaluations = evals;
  k.converged = r.converged;
  return k;
}

double l1_tail_at(const CoefficientSequence& a, int n) {
  if (n <= static_cast<int>(a.size())) return 0.0;
  return tail_contribution(a, static_cast<int>(a.size()), [](int) { return 1.0; });
}

}  // namespace

KernelValue dual_analyze(const CoefficientSequence& a, int n, const QuadratureConfig& qcfg) {
  require_n(n, "dual_analyze");
  const int N = effective_terms(a, static_cast<int>(a.size()));
  if (N == 0) {
    KernelValue k;
    k.error_estimate = l1_tail_at(a, n);
    return k;
  }
  DampedIndexTable table(std::vector<double>(a.a.begin(), a.a.begin() + N), qcfg);
  IndexSamples s = sample_on_cut(table);
  AbelResult r = abel_cut_integral(s, table.alphas(), [n](double u) { return std::cos(n * u); }, qcfg);
  // The listed-beyond and declared tails contribute only through delta_{nm}.
  return from_abel(r, 4.0 / (kPi * kPi), l1_tail_at(a, n), table.evaluations());
}

KernelValue dual_analyze_ks(const CoefficientSequence& a, int n, const QuadratureConfig& qcfg) {
  require_n(n, "dual_analyze_ks");
  const int N = effective_terms(a, static_cast<int>(a.size()));
  std::vector<double> unit(n, 0.0);
  unit[n - 1] = 1.0;
  DampedIndexTable table(unit, qcfg);
  IndexSamples s = sample_on_cut(table);
  AbelResult r = abel_cut_integral(
      s, table.alphas(),
      [&a, N](double u) {
        double v = 0.0;
        for (int m = 1; m <= N; ++m) v += a(m) * m * std::cos(m * u);
        return v;
      },
      qcfg);
  return from_abel(r, 4.0 / (kPi * kPi * n), l1_tail_at(a, n), table.evaluations());
}

KernelValue dual_synthesize(const CoefficientSequence& a, double tau, const SeriesEvalConfig& cfg) {
  if (!(tau > 0) || !std::isfinite(tau)) throw DomainError("dual_synthesize: tau must be positive");
  // tau sinh(pi tau/2) K_s(m, i tau, L) is tau times the unnormalized integral,
  // bounded by min(L tau, L^2 tau^2 / 2, m pi).
  const double L = kAsinhPi;
  KernelValue out;
  const int N = static_cast<int>(a.size());
  for (int m = 1; m <= N; ++m) {
    if (a(m) == 0.0) continue;
    KernelValue r = ks_raw(m, tau, CutPoint::asinh_pi(), cfg.kernel);
    out.value += a(m) * tau * r.value;
    out.error_estimate += std::fabs(a(m)) * tau * r.error_estimate;
    out.evaluations += r.evaluations;
    out.converged = out.converged && r.converged;
  }
  double tail = tail_contribution(a, N, [tau, L](int m) { return std::min({L * tau, 0.5 * L * L * tau * tau, m * kPi}); });
  out.error_estimate += tail;
  out.converged = out.converged && tail <= cfg.tail_tol;
  return out;
}

KernelValue expand_function_J(const FunctionHandle& f, double x, const SeriesEvalConfig& cfg,
                              const QuadratureConfig& qcfg) {
  return expand_function(f, x, cfg, qcfg, false);
}

KernelValue expand_function_Kc(const FunctionHandle& f, double x, const SeriesEvalConfig& cfg,
                               const QuadratureConfig& qcfg) {
  return expand_function(f, x, cfg, qcfg, true);
}

KernelValue expand_index_function(const FunctionHandle& f, double x, const SeriesEvalConfig& cfg,
                                  const QuadratureConfig& qcfg) {
  require_x(x, "expand_index_function");
  KernelValue out;
  if (f.is_zero()) return out;
  if (!f.envelope())
    throw DomainError("expand_index_function: index function '" + f.name() +
                      "' has no envelope; its moments cannot be certified");
  const RealFunction& env = f.envelope();
  const double L = kAsinhPi;
  // |c_n| <= K_0(n cos d) M(d), M(d) = int_0^inf cosh(pi t/2) e^{-d t} env(t) dt.
  const double d = 0.6;
  RealFunction md = [&](double t) {
    double e = env(t);
    return e == 0.0 ? 0.0 : std::cosh(kPi * t / 2) * std::exp(-d * t) * e;
  };
  Envelope menv{[&](double t) {
                  double e = env(t);
                  return e == 0.0 ? 0.0 : std::exp((kPi / 2 - d) * t) * e;
                },
                {}};
  QuadratureConfig mc;
  mc.abs_tol = 1e-12;
  mc.rel_tol = 1e-10;
  const double M = std::fabs(integrate_semi_infinite(md, menv, mc).value) * (1.0 + 1e-6);
  auto moment_bound = [&](int n) { return detail::k0_upper(n * std::cos(d)) * M; };
  auto term_bound = [&](int n) { return 4.0 / (kPi * kPi) * x / n * std::min(L, 0.5 * x * L * L) * moment_bound(n); };

  const int cap = 400;
  int n = 1;
  double tail = 0.0;
  for (; n <= cap; ++n) {
    // c_n = int_0^inf (1 + e^{-pi t})/2 F_n(t) f(t) dt, F_n = e^{pi t/2} K_{it}(n).
    RealFunction g = [&, n](double t) {
      return 0.5 * (1.0 + std::exp(-kPi * t)) * macdonald_imag_scaled(t, n, cfg.kernel).value * f(t);
    };
    Envelope genv{[&, n](double t) {
                    return t > 0 ? macdonald_imag_scaled_bound(t, n) * env(t) : std::numeric_limits<double>::infinity();
                  },
                  {}};
    QuadratureConfig gc = qcfg;
    gc.abs_tol = std::max(qcfg.abs_tol, 1e-17);
    SemiInfiniteOptions opts;
    opts.panel_width = 1.0;
    QuadratureResult c = integrate_semi_infinite(g, genv, gc, opts);
    KernelValue s = ks_raw(n, x, CutPoint::asinh_pi(), cfg.kernel);
    double pref = 4.0 / (kPi * kPi) * x / n;
    out.value += pref * s.value * c.value;
    out.error_estimate += pref * (std::fabs(s.value) * c.error_estimate + s.error_estimate * std::fabs(c.value));
    out.evaluations += c.evaluations + s.evaluations;
    // Geometric tail beyond n with ratio bounded by e^{-cos d}.
    double next = term_bound(n + 1);
    tail = next / (1.0 - std::exp(-std::cos(d)));
    if (tail <= cfg.tail_tol * 1e-2) break;
  }
  out.error_estimate += tail;
  out.converged = tail <= cfg.tail_tol;
  return out;
}

std::vector<RecoveryRow> roundtrip(const std::string& pair, const CoefficientSequence& a, int n_last,
                                   const SeriesEvalConfig& cfg, const QuadratureConfig& qcfg) {
  std::vector<RecoveryRow> rows;
  auto push = [&](int n, const KernelValue& v) {
    rows.push_back({n, a(n), v.value, v.value - a(n), v.error_estimate, v.converged});
  };
  if (pair == "2.30" || pair == "2.32") {
    FunctionHandle f = synthesis_function(SeriesKernel::K, a, cfg);
    for (int n = 1; n <= n_last; ++n) push(n, pair == "2.30" ? analyze_J(f, n, cfg, qcfg) : analyze_Kc(f, n, cfg, qcfg));
  } else if (pair == "2.31" || pair == "2.33") {
    FunctionHandle g = synthesis_function(pair == "2.31" ? SeriesKernel::J : SeriesKernel::Kc, a, cfg);
    for (int n = 1; n <= n_last; ++n) push(n, analyze_K(g, n, cfg, qcfg));
  } else if (pair == "2.34") {
    QuadratureConfig abel;  // default Abel schedule and tolerance
    const int N = effective_terms(a, static_cast<int>(a.size()));
    if (N == 0) {
      for (int n = 1; n <= n_last; ++n) push(n, KernelValue{});
      return rows;
    }
    DampedIndexTable table(std::vector<double>(a.a.begin(), a.a.begin() + N), abel);
    IndexSamples s = sample_on_cut(table);
    for (int n = 1; n <= n_last; ++n) {
      AbelResult r = abel_cut_integral(s, table.alphas(), [n](double u) { return std::cos(n * u); }, abel);
      push(n, from_abel(r, 4.0 / (kPi * kPi), l1_tail_at(a, n), table.evaluations()));
    }
  } else if (pair == "2.35") {
    for (int n = 1; n <= n_last; ++n) push(n, dual_analyze_ks(a, n));
  } else {
    throw std::invalid_argument("unknown transform pair '" + pair + "' (expected 2.30 .. 2.35)");
  }
  return rows;
}

}  // namespace dklt

#include "dklt/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <thread>

#include "dklt/errors.hpp"
#include "dklt/index_transform.hpp"
#include "dklt/kernels.hpp"
#include "dklt/special.hpp"
#include "dklt/transforms.hpp"
#include "internal.hpp"
#include "jet.hpp"

namespace dklt {

using detail::kEps;
using detail::kSafety;

namespace {

constexpr double kAxisLo = 1e-20;
constexpr double kAxisHi = 48.0;

double param(const Params& p, const char* key) {
  auto it = p.find(key);
  if (it == p.end()) throw std::invalid_argument(std::string("missing parameter '") + key + "'");
  return it->second;
}

double param_or(const Params& p, const char* key, double fallback) {
  auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

int int_param(const Params& p, const char* key) {
  double v = param(p, key);
  if (v != std::floor(v)) throw std::invalid_argument(std::string("parameter '") + key + "' must be an integer");
  return static_cast<int>(v);
}

VerificationReport make_report(const std::string& id, Params params, double lhs, double rhs, double est,
                               long long evals) {
  VerificationReport r;
  r.identity_id = id;
  r.params = std::move(params);
  r.lhs = lhs;
  r.rhs = rhs;
  r.abs_err = std::fabs(lhs - rhs);
  r.error_estimate = est;
  r.evaluations = evals;
  return r;
}

double axis_error(const detail::LogAxisResult& L) {
  return L.r.error_estimate + L.ends + kEps * kSafety * L.r.abs_integral;
}

QuadratureConfig axis_config(const QuadratureConfig& q) {
  QuadratureConfig c = q;
  c.abs_tol = 0.0;
  c.rel_tol = std::min(q.rel_tol, 1e-13);
  return c;
}

// cosh(alpha tau) e^{-pi tau/2} with eps = pi/2 - alpha.
double damping(double eps, double tau) { return 0.5 * (std::exp(-eps * tau) + std::exp(-(kPi - eps) * tau)); }

}  // namespace

std::vector<std::string> identity_ids() {
  return {"biorth_I1",     "biorth_I2",     "biorth_I3",     "cf_2_26",       "cf_2_27",      "cf_2_29",
          "cf_3_12",       "fourier_2_9",   "fourier_2_10",  "fourier_2_11",  "fourier_2_12", "fourier_2_13",
          "parseval_2_14", "parseval_2_15", "parseval_2_16", "parseval_2_17", "parseval_2_18", "example_4",
          "example_5",     "example_6",     "example_7",     "kl_continuous_1_1"};
}

double default_tolerance(const std::string& id) {
  if (id == "biorth_I3" || id == "cf_2_29") return kTierAbel;
  if (id.rfind("fourier_", 0) == 0) return kTierFourier;
  if (id.rfind("example_", 0) == 0) return kTierSeries;
  for (const auto& known : identity_ids())
    if (known == id) return kTierClosedForm;
  throw std::invalid_argument("unknown identity '" + id + "'");
}

// ---------------------------------------------------------------- biorthogonality

VerificationReport check_biorthogonality(BiorthKind kind, int n, int m, const QuadratureConfig& qcfg) {
  const AccuracyEnvelope env;
  if (n < 1 || m < 1 || n > env.tau_max || m > env.tau_max)
    throw DomainError("biorthogonality indices must lie in 1..tau_max");
  Params p{{"n", n}, {"m", m}};
  if (kind == BiorthKind::I3) {
    QuadratureConfig abel = qcfg;
    std::vector<double> unit(n, 0.0);
    unit[n - 1] = 1.0;
    DampedIndexTable table(unit, abel);
    IndexSamples s = sample_on_cut(table);
    AbelResult r = abel_cut_integral(s, table.alphas(), [m](double u) { return 2.0 * m * std::cos(m * u); }, abel);
    double rhs = n == m ? kPi * kPi * n / 2.0 : 0.0;
    auto rep = make_report("biorth_I3", p, r.value, rhs, r.error_estimate, table.evaluations());
    if (!r.converged) rep.diagnostic = "Abel extrapolants not settled";
    return rep;
  }
  const QuadratureConfig kcfg = kernel_config();
  RealFunction g;
  if (kind == BiorthKind::I1)
    g = [&](double x) { return detail::macdonald_small_x(n, x, kcfg) * j_incomplete(x, m, CutPoint::pi(), kcfg).value; };
  else
    g = [&](double x) { return detail::macdonald_small_x(n, x, kcfg) * kc(x, m, CutPoint::pi(), kcfg).value; };
  auto L = detail::log_axis_integral(g, axis_config(qcfg), kAxisLo, kAxisHi);
  double rhs = n == m ? kPi * kPi / (2.0 * n * std::sinh(kPi * n)) : 0.0;
  auto rep = make_report(kind == BiorthKind::I1 ? "biorth_I1" : "biorth_I2", p, L.r.value, rhs, axis_error(L),
                         L.r.evaluations);
  if (!(L.r.converged || L.r.roundoff_limited)) rep.diagnostic = "quadrature did not converge";
  return rep;
}

// ---------------------------------------------------------------- closed forms

VerificationReport check_closed_form(const std::string& id, const Params& params, const QuadratureConfig& qcfg) {
  const QuadratureConfig kcfg = kernel_config();
  if (id == "cf_2_26" || id == "cf_2_27") {
    const int n = int_param(params, "n");
    const double u = param(params, "u");
    if (n < 1) throw DomainError(id + ": n must be >= 1");
    RealFunction g;
    double rhs;
    if (id == "cf_2_26") {
      if (!(u > 0)) throw DomainError("cf_2_26: u must be positive");
      const double cu = std::cosh(u);
      g = [n, cu, &kcfg](double x) { return x * std::exp(-x * cu) * detail::macdonald_small_x(n, x, kcfg); };
      rhs = kPi * std::sin(n * u) / (std::sinh(u) * std::sinh(kPi * n));
    } else {
      const double su = std::sinh(u);
      g = [n, su, &kcfg](double x) { return x * std::sin(x * su) * detail::macdonald_small_x(n, x, kcfg); };
      rhs = kPi / 2.0 * std::sin(n * u) / (std::sinh(kPi * n / 2.0) * std::cosh(u));
    }
    auto L = detail::log_axis_integral(g, axis_config(qcfg), kAxisLo, kAxisHi);
    return make_report(id, params, L.r.value, rhs, axis_error(L), L.r.evaluations);
  }
  if (id == "cf_3_12") {
    const int m = int_param(params, "m");
    const double alpha = param(params, "alpha"), u = param(params, "u");
    if (m < 1) throw DomainError("cf_3_12: m must be >= 1");
    if (!(alpha > 0 && alpha < kPi / 2)) throw DomainError("cf_3_12: alpha must lie in (0, pi/2)");
    const double eps = kPi / 2 - alpha, b = std::asinh(u);
    RealFunction f = [&](double t) { return damping(eps, t) * macdonald_imag_scaled(t, m, kcfg).value * std::cos(b * t); };
    Envelope env{[&](double t) { return t > 0 ? damping(eps, t) * macdonald_imag_scaled_bound(t, m) : 1e300; }, {}};
    QuadratureConfig c = qcfg;
    c.abs_tol = 1e-13;
    c.rel_tol = 1e-13;
    SemiInfiniteOptions opts;
    opts.panel_width = 2.0;
    QuadratureResult r = integrate_semi_infinite(f, env, c, opts);
    double rhs = kPi / 2.0 * std::exp(-m * std::cos(alpha) * std::sqrt(1.0 + u * u)) * std::cos(m * u * std::sin(alpha));
    return make_report(id, params, r.value, rhs, r.error_estimate, r.evaluations);
  }
  if (id == "cf_2_29") {
    const int n = int_param(params, "n");
    const double u = param(params, "u");
    if (n < 1) throw DomainError("cf_2_29: n must be >= 1");
    std::vector<double> unit(n, 0.0);
    unit[n - 1] = 1.0;
    DampedIndexTable table(unit, qcfg);
    std::vector<double> v, e;
    table.evaluate(std::asinh(u), v, e);
    double inner = *std::max_element(e.begin(), e.end());
    AbelResult r = abel_extrapolate(table.alphas(), v, inner, true, qcfg);
    auto rep = make_report(id, params, r.value, kPi / 2.0 * std::cos(n * u), r.error_estimate, table.evaluations());
    if (!r.converged) rep.diagnostic = "Abel extrapolants not settled";
    return rep;
  }
  throw std::invalid_argument("unknown closed-form identity '" + id + "'");
}

// ---------------------------------------------------------------- Fourier series

double FourierSeries::partial_sum(double u, int N) const {
  if (N + 1 > static_cast<int>(c.size())) throw std::invalid_argument("partial sum beyond computed coefficients");
  CompensatedSum s;
  s.add(c[0]);
  for (int n = 1; n <= N; ++n) s.add(c[n] * (sine ? std::sin(n * u) : std::cos(n * u)));
  return s.value();
}

double FourierSeries::closed_form(double u) const {
  if (id == "fourier_2_9") return kPi / 2 * std::exp(-x * std::cosh(u));
  if (id == "fourier_2_10") return kPi * x / 2 * std::exp(-x * std::cosh(u)) * std::sinh(u);
  if (id == "fourier_2_11") return kPi / 2 * std::cos(x * std::sinh(u));
  if (id == "fourier_2_12") return kPi * x / 2 * std::sin(x * std::sinh(u)) * std::cosh(u);
  return kPi / 2 * std::sin(x * std::sinh(u));
}

FourierSeries fourier_series(const std::string& id, double x, int N) {
  if (!(x > 0)) throw DomainError("fourier identity requires x > 0");
  if (N < 1) throw DomainError("fourier identity requires N >= 1");
  const QuadratureConfig k = kernel_config();
  const CutPoint pi = CutPoint::pi();
  FourierSeries s;
  s.id = id;
  s.x = x;
  s.c.assign(N + 1, 0.0);
  if (id == "fourier_2_9") {
    s.c[0] = 0.5 * j_incomplete(x, 0, pi, k).value;
    for (int n = 1; n <= N; ++n) s.c[n] = j_incomplete(x, n, pi, k).value;
  } else if (id == "fourier_2_10") {
    s.sine = true;
    for (int n = 1; n <= N; ++n) s.c[n] = n * j_incomplete(x, n, pi, k).value;
  } else if (id == "fourier_2_11") {
    s.c[0] = 0.5 * kc_raw(x, 0, pi, k).value;
    for (int n = 1; n <= N; ++n) s.c[n] = kc_raw(x, n, pi, k).value;
  } else if (id == "fourier_2_12") {
    s.sine = true;
    for (int n = 1; n <= N; ++n) s.c[n] = n * kc_raw(x, n, pi, k).value;
  } else if (id == "fourier_2_13") {
    s.sine = true;
    for (int n = 1; n <= N; ++n) s.c[n] = ks_raw(x, n, pi, k).value;
  } else {
    throw std::invalid_argument("unknown Fourier identity '" + id + "'");
  }
  return s;
}

VerificationReport check_fourier_identity(const std::string& id, double x, double u, int N, const QuadratureConfig&) {
  if (u < 0.05 * kPi || u > 0.95 * kPi) throw DomainError("fourier identity: u must lie in [0.05 pi, 0.95 pi]");
  FourierSeries s = fourier_series(id, x, N);
  return make_report(id, {{"x", x}, {"u", u}, {"N", N}}, s.closed_form(u), s.partial_sum(u, N), 0.0, N);
}

// ---------------------------------------------------------------- Parseval sums

namespace {

constexpr int kJet = 16;
using J16 = detail::Jet<kJet>;

// The function whose cosine (or sine) coefficients on [0, pi] are squared.
J16 parseval_g(const std::string& id, double x, double u0) {
  J16 u = J16::variable(u0), sh, ch;
  detail::sinhcosh(u, sh, ch);
  if (id == "parseval_2_14") return detail::exp(-x * ch);
  if (id == "parseval_2_15") return x * (detail::exp(-x * ch) * sh);
  J16 s, c;
  detail::sincos(x * sh, s, c);
  if (id == "parseval_2_16") return c;
  if (id == "parseval_2_17") return x * (s * ch);
  return s;
}

bool parseval_sine(const std::string& id) {
  return id == "parseval_2_15" || id == "parseval_2_17" || id == "parseval_2_18";
}

// Asymptotic sum over n > N of the squared coefficients, from the endpoint
// expansion int_0^pi g e^{inu} du = sum_k (-1)^k [(-1)^n g^(k)(pi) - g^(k)(0)] / (in)^(k+1).
void parseval_tail(const std::string& id, double x, int N, double& tail, double& err) {
  J16 g0 = parseval_g(id, x, 0.0), gp = parseval_g(id, x, kPi);
  const bool sine = parseval_sine(id);
  static const double re[4] = {0, -1, 0, 1}, im[4] = {-1, 0, 1, 0};
  tail = 0.0;
  err = 0.0;
  for (int parity = 0; parity < 2; ++parity) {
    const double sign = parity == 0 ? 1.0 : -1.0;
    std::vector<double> C(kJet + 1, 0.0);  // C[j] multiplies n^{-j}
    for (int k = 0; k < kJet; ++k) {
      double A = (k % 2 == 0 ? 1.0 : -1.0) * (sign * gp.derivative(k) - g0.derivative(k));
      C[k + 1] = A * (sine ? im[k % 4] : re[k % 4]);
    }
    const int n0 = (N + 1) % 2 == parity ? N + 1 : N + 2;
    double last = 0.0, prev = 0.0;
    for (int s = 2; s <= kJet + 1; ++s) {
      double D = 0.0;
      for (int j = 1; j < s; ++j) D += C[j] * C[s - j];
      double term = D * std::pow(2.0, -s) * hurwitz_zeta(s, n0 / 2.0);
      tail += term;
      prev = last;
      last = std::fabs(term);
    }
    err += last + prev;
  }
}

double parseval_lhs(const std::string& id, double x, long long& evals) {
  const QuadratureConfig k = kernel_config();
  const CutPoint pi = CutPoint::pi();
  auto count = [&](const KernelValue& v) {
    evals += v.evaluations;
    return v.value;
  };
  if (id == "parseval_2_14") return kPi / 2 * count(j_incomplete(2 * x, 0, pi, k));
  if (id == "parseval_2_15")
    return kPi * x * x / 4 * (count(j_incomplete_real(2 * x, 2.0, pi, k)) - count(j_incomplete(2 * x, 0, pi, k)));
  if (id == "parseval_2_16") return kPi / 4 * (kPi + count(kc_raw(2 * x, 0, pi, k)));
  RealFunction f;
  double pref;
  if (id == "parseval_2_17") {
    f = [x](double u) {
      double s = std::sin(x * std::sinh(u)) * std::cosh(u);
      return s * s;
    };
    pref = kPi * x * x / 2;
  } else {
    f = [x](double u) {
      double s = std::sin(x * std::sinh(u));
      return s * s;
    };
    pref = kPi / 2;
  }
  QuadratureResult r = integrate_finite(f, 0.0, kPi, k, detail::oscillation_panels(2 * x * std::sinh(kPi)));
  evals += r.evaluations;
  return pref * r.value;
}

double parseval_term(const std::string& id, double x, int n, long long& evals) {
  const QuadratureConfig k = kernel_config();
  const CutPoint pi = CutPoint::pi();
  KernelValue v;
  double w = 1.0;
  if (id == "parseval_2_14" || id == "parseval_2_15") {
    v = j_incomplete(x, n, pi, k);
    if (id == "parseval_2_15") w = n;
  } else if (id == "parseval_2_16" || id == "parseval_2_17") {
    v = kc_raw(x, n, pi, k);
    if (id == "parseval_2_17") w = n;
  } else {
    if (n == 0) return 0.0;
    v = ks_raw(x, n, pi, k);
  }
  evals += v.evaluations;
  double c = w * v.value;
  if (n == 0) return parseval_sine(id) ? 0.0 : 0.5 * c * c;
  return c * c;
}

}  // namespace

VerificationReport check_parseval(const std::string& id, double x, int N, const QuadratureConfig&) {
  if (id != "parseval_2_14" && id != "parseval_2_15" && id != "parseval_2_16" && id != "parseval_2_17" &&
      id != "parseval_2_18")
    throw std::invalid_argument("unknown Parseval identity '" + id + "'");
  if (!(x > 0)) throw DomainError("Parseval identity requires x > 0");
  if (N < 0) throw DomainError("Parseval identity requires N >= 0");
  double tail = 0.0, tail_err = 0.0;
  if (N == 0) {
    N = 400;
    for (;; N *= 2) {
      parseval_tail(id, x, N, tail, tail_err);
      if (tail_err <= 1e-3 * kTierClosedForm || N >= 6400) break;
    }
  } else {
    parseval_tail(id, x, N, tail, tail_err);
  }
  long long evals = 0;
  CompensatedSum s;
  for (int n = 0; n <= N; ++n) s.add(parseval_term(id, x, n, evals));
  s.add(tail);
  double lhs = parseval_lhs(id, x, evals);
  auto rep = make_report(id, {{"x", x}, {"N", N}}, lhs, s.value(), tail_err + kEps * kSafety * std::fabs(lhs), evals);
  rep.diagnostic = "tail after N terms: " + std::to_string(tail);
  return rep;
}

// ---------------------------------------------------------------- examples 4-7

namespace {

struct SeriesOutcome {
  double value = 0.0;
  double tail = 0.0;
  double error = 0.0;
  int terms = 0;
  long long evals = 0;
};

// Sums term(n) while bound(n) (a certified bound on |term(n)|) matters, then
// closes with a geometric remainder once bounds contract by at least `ratio`.
template <class Term, class Bound>
SeriesOutcome certified_series(Term term, Bound bound, double ratio, double floor_rel = 1e-18) {
  SeriesOutcome out;
  CompensatedSum s;
  for (int n = 1; n <= 2000; ++n) {
    double b = bound(n);
    if (n > 3 && b <= floor_rel * std::max(std::fabs(s.value()), 1e-300) && bound(n + 1) <= ratio * b) {
      out.tail = b / (1.0 - ratio);
      out.terms = n - 1;
      out.value = s.value();
      return out;
    }
    KernelValue v = term(n);
    s.add(v.value);
    out.error += v.error_estimate;
    out.evals += v.evaluations;
  }
  throw TailNotControllable("example series: term bounds did not decay within 2000 terms");
}

}  // namespace

VerificationReport check_example(const std::string& id, const Params& params, const QuadratureConfig&) {
  const QuadratureConfig k = kernel_config();
  const CutPoint pi = CutPoint::pi(), L = CutPoint::asinh_pi();
  const double Lw = kAsinhPi;
  SeriesOutcome o;
  double rhs = 0.0;
  if (id == "example_4" || id == "example_5") {
    const double x = param(params, "x");
    if (!(x > 0)) throw DomainError(id + ": x must be positive");
    const double alpha = param(params, "alpha");
    const double nu = id == "example_5" ? param(params, "nu") : 0.0;
    if (id == "example_4" && !(alpha > -1)) throw DomainError("example_4 requires alpha > -1");
    if (id == "example_5" && !(alpha > std::fabs(nu))) throw DomainError("example_5 requires alpha > |nu|");
    // log of n sinh(pi n) |Gamma(...)|^2 / cosh(pi n/2); the K_c raw integral carries the rest.
    auto log_weight = [&](int n) {
      double lg;
      if (id == "example_4") {
        lg = 2.0 * log_gamma({1.0 + alpha, double(n)}).real();
      } else {
        lg = 2.0 * (log_gamma({(alpha + nu) / 2.0, n / 2.0}).real() + log_gamma({(alpha - nu) / 2.0, n / 2.0}).real());
      }
      return std::log(double(n)) + log_sinh(kPi * n) + lg - log_cosh(kPi * n / 2.0);
    };
    auto term = [&](int n) {
      KernelValue v = kc_raw(x, n, pi, k);
      double lw = log_weight(n);
      v.value = scale_by_exp(v.value, lw);
      v.error_estimate = scale_by_exp(v.error_estimate, lw);
      return v;
    };
    auto bound = [&](int n) { return scale_by_exp(std::min(kPi, x * std::sinh(kPi) / n), log_weight(n)); };
    o = certified_series(term, bound, 0.5);
    if (id == "example_4")
      rhs = std::pow(kPi, 1.5) * std::pow(2.0, alpha) * std::tgamma(1.5 + alpha) * std::pow(x, alpha + 1) * std::exp(-x);
    else
      rhs = kPi * kPi * std::pow(2.0, 2.0 - alpha) * std::tgamma(alpha) * std::pow(x, alpha) * macdonald_real(nu, x).value;
  } else if (id == "example_6") {
    const double x = param(params, "x");
    if (!(x > 0)) throw DomainError("example_6: x must be positive");
    const double sh = std::sinh(kPi * x / 2);
    const double ks_bound = std::min(Lw, x * Lw * Lw / 2) / sh;
    auto term = [&](int n) {
      KernelValue v = ks_raw(n, x, L, k);
      double w = std::exp(-double(n)) / n / sh;
      v.value *= w;
      v.error_estimate *= w;
      return v;
    };
    auto bound = [&](int n) { return std::exp(-double(n)) / n * ks_bound; };
    o = certified_series(term, bound, std::exp(-1.0));
    rhs = kPi / (x * std::sinh(kPi * x));
  } else if (id == "example_7") {
    const double x = std::fabs(param(params, "x"));
    const double ks_bound = x == 0 ? Lw * Lw / kPi : std::min(Lw, x * Lw * Lw / 2) / std::sinh(kPi * x / 2);
    auto term = [&](int n) {
      KernelValue s = x == 0 ? ks_zero_order_limit(n, L, k) : ks(n, x, L, k);
      KernelValue k0 = macdonald_real(0.0, n, k);
      KernelValue v;
      v.value = k0.value * s.value;
      v.error_estimate = std::fabs(k0.value) * s.error_estimate + k0.error_estimate * std::fabs(s.value);
      v.evaluations = s.evaluations + k0.evaluations;
      return v;
    };
    auto bound = [&](int n) { return detail::k0_upper(n) * ks_bound; };
    o = certified_series(term, bound, std::exp(-1.0));
    double sech = 1.0 / std::cosh(kPi * x / 2);
    rhs = kPi * kPi / 4 * sech * sech;
  } else {
    throw std::invalid_argument("unknown example '" + id + "'");
  }
  double lhs = o.value;
  auto rep = make_report(id, params, lhs, rhs, o.error + o.tail, o.evals);
  rep.diagnostic = std::to_string(o.terms) + " terms, certified tail " + std::to_string(o.tail);
  return rep;
}

// ---------------------------------------------------------------- continuous transform

VerificationReport kl_continuous_roundtrip(const FunctionHandle& f, double tau, const QuadratureConfig& qcfg) {
  if (!(tau > 0)) throw DomainError("kl_continuous_roundtrip requires tau > 0");
  const QuadratureConfig k = kernel_config();
  Params p{{"tau", tau}};
  for (const auto& [key, v] : f.params()) p[key] = v;
  if (f.is_zero()) return make_report("kl_continuous_1_1", p, 0.0, 0.0, 0.0, 0);
  if (!f.envelope()) throw DomainError("kl_continuous_roundtrip needs a function with a growth envelope");
  const RealFunction& env = f.envelope();
  long long evals = 0;
  double inner_err = 0.0;
  // Inner transform int_0^inf K_{iy}(x) f(y) dy.
  auto inner = [&](double x) {
    RealFunction g = [&](double y) { return detail::macdonald_small_x(y, x, k) * f(y); };
    Envelope e{[&](double y) {
                 return y > 0 ? std::exp(-kPi * y / 2) * macdonald_imag_scaled_bound(y, x) * env(y) : 1e300;
               },
               {}};
    QuadratureConfig c = qcfg;
    c.abs_tol = 1e-16 * detail::k0_upper(x);
    c.rel_tol = 1e-13;
    SemiInfiniteOptions opts;
    opts.panel_width = 2.0;
    QuadratureResult r = integrate_semi_infinite(g, e, c, opts);
    evals += r.evaluations;
    inner_err = std::max(inner_err, r.error_estimate);
    return r.value;
  };
  // The inner transform vanishes linearly at the origin, so the outer range
  // starts at lo; its rounding floor is absolute rather than relative.
  const double lo = 1e-12, hi = kAxisHi;
  RealFunction outer = [&](double x) { return detail::macdonald_small_x(tau, x, k) * inner(x); };
  QuadratureConfig oc = qcfg;
  oc.abs_tol = 1e-13;
  oc.rel_tol = 1e-12;
  auto L = detail::log_axis_integral(outer, oc, lo, hi);
  evals += L.r.evaluations;
  const double log_pref = std::log(2.0 / (kPi * kPi) * tau) + log_sinh(kPi * tau);
  double lhs = scale_by_exp(L.r.value, log_pref);
  // |K_{i tau}(x)| <= K_0(lo) on [lo, hi] bounds the propagated inner error.
  double spread = inner_err * std::log(hi / lo) * macdonald_real(0.0, lo).value;
  double err = scale_by_exp(axis_error(L) + spread, log_pref);
  return make_report("kl_continuous_1_1", p, lhs, f(tau), err, evals);
}

// ---------------------------------------------------------------- suites

VerificationReport run_case(const IdentityCase& c) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::string& id = c.identity_id;
  const Params& p = c.params;
  VerificationReport r;
  QuadratureConfig q;
  try {
    if (id == "biorth_I1" || id == "biorth_I2" || id == "biorth_I3") {
      BiorthKind kind = id == "biorth_I1" ? BiorthKind::I1 : id == "biorth_I2" ? BiorthKind::I2 : BiorthKind::I3;
      r = check_biorthogonality(kind, int_param(p, "n"), int_param(p, "m"), q);
    } else if (id.rfind("cf_", 0) == 0) {
      r = check_closed_form(id, p, q);
    } else if (id.rfind("fourier_", 0) == 0) {
      r = check_fourier_identity(id, param(p, "x"), param(p, "u"), int_param(p, "N"), q);
    } else if (id.rfind("parseval_", 0) == 0) {
      r = check_parseval(id, param(p, "x"), static_cast<int>(param_or(p, "N", 0)), q);
    } else if (id.rfind("example_", 0) == 0) {
      r = check_example(id, p, q);
    } else if (id == "kl_continuous_1_1") {
      r = kl_continuous_roundtrip(FunctionHandle::builtin("kl_image", {{"u0", param_or(p, "u0", 1.0)}}),
                                  param(p, "tau"), q);
    } else {
      throw std::invalid_argument("unknown identity '" + id + "'");
    }
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception& e) {
    r = VerificationReport{};
    r.identity_id = id;
    r.params = p;
    r.abs_err = std::numeric_limits<double>::infinity();
    r.diagnostic = e.what();
  }
  r.params = p;
  r.tolerance = c.tolerance;
  r.passed = r.abs_err <= c.tolerance;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::vector<IdentityCase> default_suite() {
  std::vector<IdentityCase> s;
  auto add = [&](const std::string& id, Params p) { s.push_back({id, std::move(p), default_tolerance(id)}); };
  for (const char* id : {"biorth_I1", "biorth_I2"})
    for (int n = 1; n <= 6; ++n)
      for (int m = 1; m <= 6; ++m) add(id, {{"n", n}, {"m", m}});
  for (int n = 1; n <= 4; ++n)
    for (int m = 1; m <= 4; ++m) add("biorth_I3", {{"n", n}, {"m", m}});
  for (const char* id : {"cf_2_26", "cf_2_27"})
    for (int n = 1; n <= 4; ++n)
      for (double u : {0.5, 1.0, 2.0}) add(id, {{"n", n}, {"u", u}});
  for (int m = 1; m <= 2; ++m)
    for (double a : {0.5, 1.2})
      for (double u : {0.5, 1.0}) add("cf_3_12", {{"m", m}, {"alpha", a}, {"u", u}});
  for (int n = 1; n <= 2; ++n)
    for (double u : {0.0, 0.5, 1.0}) add("cf_2_29", {{"n", n}, {"u", u}});
  for (const char* id : {"fourier_2_9", "fourier_2_10", "fourier_2_11", "fourier_2_12", "fourier_2_13"})
    for (double x : {0.5, 1.0, 2.0})
      for (int k = 1; k <= 9; ++k) add(id, {{"x", x}, {"u", k * kPi / 10}, {"N", 200}});
  for (const char* id : {"parseval_2_14", "parseval_2_15", "parseval_2_16", "parseval_2_17", "parseval_2_18"})
    for (double x : {0.5, 1.0, 2.0}) add(id, {{"x", x}});
  for (double a : {0.0, 1.0})
    for (double x : {0.5, 1.0, 2.0}) add("example_4", {{"alpha", a}, {"x", x}});
  add("example_5", {{"alpha", 1.0}, {"nu", 0.0}, {"x", 1.0}});
  for (double x : {0.5, 1.0}) add("example_6", {{"x", x}});
  for (double x : {0.0, 0.5, 1.0}) add("example_7", {{"x", x}});
  for (double t : {0.5, 1.0}) add("kl_continuous_1_1", {{"tau", t}, {"u0", 1.0}});
  return s;
}

std::vector<VerificationReport> run_suite(const std::vector<IdentityCase>& cases, int threads) {
  std::vector<VerificationReport> out(cases.size());
  if (threads <= 1 || cases.size() < 2) {
    for (std::size_t i = 0; i < cases.size(); ++i) out[i] = run_case(cases[i]);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < cases.size();) {
      try {
        out[i] = run_case(cases[i]);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < std::min<int>(threads, static_cast<int>(cases.size())); ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace dklt

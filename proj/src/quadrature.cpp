#include "dklt/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>

#include "dklt/errors.hpp"

namespace dklt {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// QUADPACK qk21 abscissae and weights; the Gauss points are xgk[1], xgk[3], ...
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Panel {
  double a, b;
  double value, error, resabs, floor;
  int depth;
};

double sample(const RealFunction& f, double u) {
  double v = f(u);
  if (!std::isfinite(v)) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "non-finite integrand at u = %.17g", u);
    throw NonFiniteIntegrand(u, buf);
  }
  return v;
}

Panel gk21(const RealFunction& f, double a, double b, int depth) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  std::array<double, 21> fv{};
  fv[20] = sample(f, c);
  for (int j = 0; j < 10; ++j) {
    double dx = h * kXgk[j];
    fv[2 * j] = sample(f, c - dx);
    fv[2 * j + 1] = sample(f, c + dx);
  }
  CompensatedSum rk, rg;
  double resabs = kWgk[10] * std::fabs(fv[20]);
  rk.add(kWgk[10] * fv[20]);
  for (int j = 0; j < 10; ++j) {
    double pair = fv[2 * j] + fv[2 * j + 1];
    rk.add(kWgk[j] * pair);
    resabs += kWgk[j] * (std::fabs(fv[2 * j]) + std::fabs(fv[2 * j + 1]));
    if (j % 2 == 1) rg.add(kWg[j / 2] * pair);
  }
  double mean = 0.5 * rk.value();
  double resasc = kWgk[10] * std::fabs(fv[20] - mean);
  for (int j = 0; j < 10; ++j)
    resasc += kWgk[j] * (std::fabs(fv[2 * j] - mean) + std::fabs(fv[2 * j + 1] - mean));

  const double ah = std::fabs(h);
  Panel p{a, b, rk.value() * h, 0.0, resabs * ah, 0.0, depth};
  resasc *= ah;
  double err = std::fabs((rk.value() - rg.value()) * h);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  p.floor = 50.0 * kEps * p.resabs;
  p.error = std::max(err, p.floor);
  return p;
}

struct ByError {
  bool operator()(const Panel& x, const Panel& y) const {
    if (x.error != y.error) return x.error < y.error;
    return x.a > y.a;
  }
};

}  // namespace

std::vector<double> default_abel_schedule() {
  std::vector<double> s;
  for (int k = 2; k <= 9; ++k) s.push_back(kPi / 2 - std::ldexp(1.0, -k));
  return s;
}

void QuadratureConfig::validate() const {
  if (!(abs_tol >= 0) || !(rel_tol >= 0)) throw std::invalid_argument("tolerances must be nonnegative");
  if (abs_tol == 0 && rel_tol == 0) throw std::invalid_argument("abs_tol and rel_tol are both zero");
  if (max_depth < 1) throw std::invalid_argument("max_depth must be at least 1");
  if (!(truncation_margin > 0)) throw std::invalid_argument("truncation_margin must be positive");
  if (extrapolation_order < 1) throw std::invalid_argument("extrapolation_order must be at least 1");
  for (std::size_t i = 0; i < abel_schedule.size(); ++i) {
    double a = abel_schedule[i];
    if (!(a > 0 && a < kPi / 2)) throw std::invalid_argument("abel_schedule entries must lie in (0, pi/2)");
    if (i > 0 && !(a > abel_schedule[i - 1]))
      throw std::invalid_argument("abel_schedule must be strictly increasing");
  }
}

double QuadratureConfig::target(double value) const {
  return std::max(abs_tol, rel_tol * std::fabs(value));
}

void CompensatedSum::add(double v) {
  double t = sum_ + v;
  if (std::fabs(sum_) >= std::fabs(v))
    comp_ += (sum_ - t) + v;
  else
    comp_ += (v - t) + sum_;
  sum_ = t;
}

QuadratureResult integrate_finite(const RealFunction& f, double a, double b,
                                  const QuadratureConfig& cfg, int initial_panels) {
  if (!(a <= b)) throw std::invalid_argument("integrate_finite requires a <= b");
  QuadratureResult res;
  if (a == b) {
    res.converged = true;
    return res;
  }
  const int n0 = std::max(1, initial_panels);
  std::priority_queue<Panel, std::vector<Panel>, ByError> heap;
  std::vector<Panel> frozen;
  CompensatedSum total, total_err;
  for (int i = 0; i < n0; ++i) {
    double lo = a + (b - a) * i / n0;
    double hi = (i + 1 == n0) ? b : a + (b - a) * (i + 1) / n0;
    Panel p = gk21(f, lo, hi, 0);
    res.evaluations += 21;
    total.add(p.value);
    total_err.add(p.error);
    heap.push(p);
  }
  const std::size_t panel_cap = 400000;
  bool limited = false;
  while (!heap.empty()) {
    if (total_err.value() <= cfg.target(total.value())) break;
    Panel worst = heap.top();
    if (worst.error <= worst.floor) {
      limited = true;
      break;
    }
    heap.pop();
    if (worst.depth >= cfg.max_depth || heap.size() + frozen.size() > panel_cap) {
      frozen.push_back(worst);
      continue;
    }
    double mid = 0.5 * (worst.a + worst.b);
    Panel l = gk21(f, worst.a, mid, worst.depth + 1);
    Panel r = gk21(f, mid, worst.b, worst.depth + 1);
    res.evaluations += 42;
    total.add(-worst.value);
    total.add(l.value);
    total.add(r.value);
    total_err.add(-worst.error);
    total_err.add(l.error);
    total_err.add(r.error);
    heap.push(l);
    heap.push(r);
  }
  // Final sums in left-to-right order for determinism independent of heap ties.
  std::vector<Panel> all = std::move(frozen);
  while (!heap.empty()) {
    all.push_back(heap.top());
    heap.pop();
  }
  std::sort(all.begin(), all.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  CompensatedSum v;
  double err = 0.0, resabs = 0.0;
  bool all_floor = true;
  for (const Panel& p : all) {
    v.add(p.value);
    err += p.error;
    resabs += p.resabs;
    if (p.error > p.floor) all_floor = false;
  }
  res.value = v.value();
  res.error_estimate = err;
  res.abs_integral = resabs;
  res.converged = err <= cfg.target(res.value);
  res.roundoff_limited = limited || all_floor;
  return res;
}

double envelope_tail(const Envelope& env, double U, const QuadratureConfig& cfg) {
  if (env.tail) return env.tail(U);
  // Map [U, inf) onto [0, 1) with u = U + s/(1-s).
  RealFunction mapped = [&](double s) {
    if (s >= 1.0) return 0.0;
    double d = 1.0 - s;
    return env.bound(U + s / d) / (d * d);
  };
  QuadratureConfig c = cfg;
  c.abs_tol = 0.0;
  c.rel_tol = 1e-6;
  c.max_depth = 30;
  QuadratureResult r = integrate_finite(mapped, 0.0, 1.0, c);
  return std::fabs(r.value) + r.error_estimate;
}

QuadratureResult integrate_semi_infinite(const RealFunction& f, const Envelope& env,
                                         const QuadratureConfig& cfg,
                                         const SemiInfiniteOptions& opts) {
  const double lo = opts.lower;
  double target = cfg.abs_tol > 0 ? cfg.abs_tol : cfg.rel_tol * envelope_tail(env, lo, cfg);
  target *= std::pow(10.0, -cfg.truncation_margin);
  const bool cheap = static_cast<bool>(env.tail);

  double len = 1.0;
  double tail = envelope_tail(env, lo + len, cfg);
  while (tail > target) {
    len *= 2.0;
    if (len > opts.cap) throw TailNotControllable("tail not controllable: envelope stays above tolerance");
    tail = envelope_tail(env, lo + len, cfg);
  }
  if (len > 1.0) {
    double good = len, bad = len / 2.0;
    int steps = cheap ? 40 : 8;
    for (int i = 0; i < steps && good - bad > 1e-3 * good; ++i) {
      double mid = 0.5 * (good + bad);
      double t = envelope_tail(env, lo + mid, cfg);
      if (t <= target) {
        good = mid;
        tail = t;
      } else {
        bad = mid;
      }
    }
    len = good;
    if (!cheap) tail = envelope_tail(env, lo + len, cfg);
  }
  int panels = 1;
  if (opts.panel_width > 0) panels = static_cast<int>(std::min(2.0e5, std::ceil(len / opts.panel_width)));
  QuadratureResult r = integrate_finite(f, lo, lo + len, cfg, panels);
  r.error_estimate += tail;
  r.converged = r.error_estimate <= cfg.target(r.value);
  return r;
}

RuleNodes composite_gauss_kronrod(double a, double b, int panels) {
  RuleNodes r;
  panels = std::max(1, panels);
  for (int p = 0; p < panels; ++p) {
    double lo = a + (b - a) * p / panels, hi = a + (b - a) * (p + 1) / panels;
    double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
    for (int j = 0; j < 10; ++j) {
      double wg = (j % 2 == 1) ? kWg[j / 2] * h : 0.0;
      r.x.push_back(c - h * kXgk[j]);
      r.wk.push_back(kWgk[j] * h);
      r.wg.push_back(wg);
      r.x.push_back(c + h * kXgk[j]);
      r.wk.push_back(kWgk[j] * h);
      r.wg.push_back(wg);
    }
    r.x.push_back(c);
    r.wk.push_back(kWgk[10] * h);
    r.wg.push_back(0.0);
  }
  return r;
}

double neville_at_zero(const std::vector<double>& h, const std::vector<double>& y) {
  std::vector<double> p = y;
  const std::size_t n = p.size();
  for (std::size_t m = 1; m < n; ++m)
    for (std::size_t i = 0; i + m < n; ++i)
      p[i] = (h[i + m] * p[i] - h[i] * p[i + 1]) / (h[i + m] - h[i]);
  return p[0];
}

AbelResult abel_extrapolate(const std::vector<double>& alphas, const std::vector<double>& values,
                            double inner_error, bool inner_ok, const QuadratureConfig& cfg) {
  AbelResult out;
  out.alphas = alphas;
  out.per_alpha = values;
  const std::size_t n = values.size();
  if (n == 0) throw std::invalid_argument("empty Abel schedule");
  std::vector<double> h(n);
  for (std::size_t i = 0; i < n; ++i) h[i] = kPi / 2 - alphas[i];
  const std::size_t order = std::min<std::size_t>(cfg.extrapolation_order, n >= 2 ? n - 2 : 0);
  // Extrapolant from the window of order+1 points ending at index k.
  auto window = [&](std::size_t k) {
    std::size_t first = k + 1 - (order + 1);
    std::vector<double> hh(h.begin() + first, h.begin() + k + 1);
    std::vector<double> yy(values.begin() + first, values.begin() + k + 1);
    return neville_at_zero(hh, yy);
  };
  for (std::size_t k = order; k < n; ++k) out.extrapolants.push_back(window(k));
  out.value = out.extrapolants.back();
  double diff = out.extrapolants.size() >= 2
                    ? std::fabs(out.extrapolants.back() - out.extrapolants[out.extrapolants.size() - 2])
                    : std::fabs(out.value);
  out.error_estimate = diff + inner_error;
  double tol = std::max(cfg.abel_tol, cfg.rel_tol * std::fabs(out.value));
  out.converged = inner_ok && out.error_estimate <= tol;
  return out;
}

AbelResult integrate_abel(const AbelFamily& family, const QuadratureConfig& cfg) {
  std::vector<double> values;
  double worst = 0.0;
  bool ok = true;
  long long evals = 0;
  for (double alpha : cfg.abel_schedule) {
    RealFunction g = [&](double tau) { return family.g(tau, alpha); };
    QuadratureResult r = integrate_semi_infinite(g, family.envelope(alpha), cfg, family.options);
    values.push_back(r.value);
    worst = std::max(worst, r.error_estimate);
    ok = ok && (r.converged || r.roundoff_limited);
    evals += r.evaluations;
  }
  AbelResult out = abel_extrapolate(cfg.abel_schedule, values, worst, ok, cfg);
  out.evaluations = evals;
  return out;
}

}  // namespace dklt

#include "dklt/functions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dklt/errors.hpp"
#include "dklt/kernels.hpp"
#include "dklt/special.hpp"

namespace dklt {

namespace {

double param(const std::map<std::string, double>& p, const std::string& key, double fallback) {
  auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

void check_params(const std::string& name, const std::map<std::string, double>& p,
                  std::initializer_list<const char*> allowed) {
  for (const auto& [k, v] : p) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) throw std::invalid_argument("catalog function '" + name + "' has no parameter '" + k + "'");
    if (!std::isfinite(v)) throw std::invalid_argument("catalog parameter '" + k + "' must be finite");
  }
}

std::string canonical(const std::string& name) {
  if (name == "example1") return "incomplete_j_scaled";
  if (name == "example2") return "incomplete_j0_shifted";
  if (name == "example3") return "incomplete_kc_scaled";
  return name;
}

}  // namespace

FunctionHandle::FunctionHandle()
    : name_("zero"), f_(std::make_shared<const RealFunction>([](double) { return 0.0; })),
      envelope_([](double) { return 0.0; }), zero_(true) {}

std::vector<std::string> FunctionHandle::catalog() {
  return {"zero",          "exp_power",        "macdonald_power",       "incomplete_j_scaled",
          "incomplete_j0_shifted", "incomplete_kc_scaled", "incomplete_j_boundary", "exp_cosh",
          "kl_image",      "sech_half_pi",     "tanh_sech",             "example1",
          "example2",      "example3"};
}

FunctionHandle FunctionHandle::builtin(const std::string& raw_name, const std::map<std::string, double>& p) {
  const std::string name = canonical(raw_name);
  FunctionHandle h;
  h.name_ = name;
  h.params_ = p;
  h.zero_ = false;
  h.certified_ = true;
  h.envelope_ = {};
  RealFunction f;
  if (name == "zero") {
    check_params(name, p, {});
    return FunctionHandle();
  } else if (name == "exp_power") {
    check_params(name, p, {"alpha"});
    double alpha = param(p, "alpha", 0.0);
    if (!(alpha > -1)) throw DomainError("exp_power requires alpha > -1");
    f = [alpha](double x) { return std::exp(-x) * std::pow(x, alpha); };
  } else if (name == "macdonald_power") {
    check_params(name, p, {"nu", "alpha"});
    double nu = param(p, "nu", 0.0), alpha = param(p, "alpha", 1.0);
    if (!(alpha > std::fabs(nu))) throw DomainError("macdonald_power requires alpha > |nu|");
    f = [nu, alpha](double x) { return macdonald_real(nu, x).value * std::pow(x, alpha - 1.0); };
  } else if (name == "incomplete_j_scaled") {
    check_params(name, p, {});
    f = [](double x) { return 2.0 * j_incomplete(x, 1, CutPoint::pi()).value / x; };
  } else if (name == "incomplete_j0_shifted") {
    check_params(name, p, {});
    // int_0^pi (e^{-x cosh u} - e^{-x cosh pi}) du, written to avoid cancellation as x -> 0.
    f = [](double x) {
      if (!(x > 0)) throw DomainError("incomplete_j0_shifted requires x > 0");
      const double cp = std::cosh(kPi);
      RealFunction g = [x, cp](double u) {
        double c = std::cosh(u);
        return -std::exp(-x * c) * std::expm1(-x * (cp - c));
      };
      return 2.0 * integrate_finite(g, 0.0, kPi, kernel_config()).value / x;
    };
  } else if (name == "incomplete_kc_scaled") {
    check_params(name, p, {});
    f = [](double x) { return 2.0 * std::cosh(kPi / 2) * kc(x, 1, CutPoint::pi()).value / x; };
  } else if (name == "incomplete_j_boundary") {
    check_params(name, p, {});
    f = [](double x) { return 2.0 * j_incomplete(x, 1, CutPoint::pi()).value; };
  } else if (name == "exp_cosh") {
    check_params(name, p, {"u0"});
    double u0 = param(p, "u0", 1.0);
    f = [u0](double x) { return x * std::exp(-x * std::cosh(u0)); };
  } else if (name == "kl_image") {
    check_params(name, p, {"u0"});
    double u0 = param(p, "u0", 1.0);
    if (!(u0 > 0)) throw DomainError("kl_image requires u0 > 0");
    f = [u0](double y) { return 2.0 * y * std::sin(y * u0) / (kPi * std::sinh(u0)); };
    h.envelope_ = [u0](double y) { return 2.0 * std::fabs(y) / (kPi * std::sinh(u0)); };
  } else if (name == "sech_half_pi") {
    check_params(name, p, {});
    f = [](double t) { return 1.0 / std::cosh(kPi * t / 2); };
    h.envelope_ = [](double t) { return 2.0 * std::exp(-kPi * t / 2); };
  } else if (name == "tanh_sech") {
    check_params(name, p, {});
    f = [](double t) { return t * std::tanh(kPi * t / 2) / std::cosh(kPi * t / 2); };
    h.envelope_ = [](double t) { return 2.0 * std::fabs(t) * std::exp(-kPi * t / 2); };
  } else {
    throw std::invalid_argument("unknown catalog function: " + raw_name);
  }
  h.f_ = std::make_shared<const RealFunction>(std::move(f));
  return h;
}

FunctionHandle FunctionHandle::tabulated(std::vector<double> grid, std::vector<double> values) {
  auto interp = std::make_shared<MonotoneCubic>(std::move(grid), std::move(values));
  FunctionHandle h;
  h.name_ = "tabulated";
  h.zero_ = false;
  h.certified_ = false;
  h.envelope_ = {};
  h.f_ = std::make_shared<const RealFunction>([interp](double x) { return (*interp)(x); });
  return h;
}

FunctionHandle FunctionHandle::closure(std::string name, RealFunction f, bool certified, RealFunction envelope) {
  FunctionHandle h;
  h.name_ = std::move(name);
  h.zero_ = false;
  h.certified_ = certified;
  h.envelope_ = std::move(envelope);
  h.f_ = std::make_shared<const RealFunction>(std::move(f));
  return h;
}

double FunctionHandle::operator()(double x) const { return (*f_)(x); }

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  if (n < 2 || y_.size() != n) throw std::invalid_argument("tabulated function needs matching grid and values (>= 2 points)");
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(x_[i]) || !std::isfinite(y_[i])) throw std::invalid_argument("tabulated data must be finite");
    if (i > 0 && !(x_[i] > x_[i - 1])) throw std::invalid_argument("tabulated grid must be strictly increasing");
  }
  std::vector<double> h(n - 1), s(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = x_[i + 1] - x_[i];
    s[i] = (y_[i + 1] - y_[i]) / h[i];
  }
  d_.assign(n, 0.0);
  d_[0] = s[0];
  d_[n - 1] = s[n - 2];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (s[i - 1] * s[i] <= 0) {
      d_[i] = 0.0;
    } else {
      double w1 = 2 * h[i] + h[i - 1], w2 = h[i] + 2 * h[i - 1];
      d_[i] = (w1 + w2) / (w1 / s[i - 1] + w2 / s[i]);
    }
  }
}

double MonotoneCubic::operator()(double t) const {
  if (t < x_.front() || t > x_.back()) return 0.0;
  std::size_t i = std::upper_bound(x_.begin(), x_.end(), t) - x_.begin();
  i = std::min(std::max<std::size_t>(i, 1), x_.size() - 1) - 1;
  double h = x_[i + 1] - x_[i];
  double s = (t - x_[i]) / h;
  double h00 = (1 + 2 * s) * (1 - s) * (1 - s), h10 = s * (1 - s) * (1 - s);
  double h01 = s * s * (3 - 2 * s), h11 = s * s * (s - 1);
  return h00 * y_[i] + h10 * h * d_[i] + h01 * y_[i + 1] + h11 * h * d_[i + 1];
}

}  // namespace dklt

#include "dklt/helmholtz.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "dklt/errors.hpp"
#include "dklt/special.hpp"
#include "internal.hpp"

namespace dklt {

using detail::kEps;
using detail::kSafety;

namespace {

constexpr double kTwoOverPi2 = 2.0 / (kPi * kPi);

int terms(const CoefficientSequence& a, int n_max) {
  int N = std::min<int>(static_cast<int>(a.size()), n_max);
  while (N > 0 && a(N) == 0.0) --N;
  return N;
}

void require_wedge(const PolarPoint& p, const CoefficientSequence& a, const char* op) {
  if (p.theta > a.theta0)
    throw OutsideCertifiedWedge(std::string(op) + ": theta = " + std::to_string(p.theta) +
                                " is outside certified wedge theta <= " + std::to_string(a.theta0));
}

double forcing_prefactor(double r) {
  return 2.0 * std::sinh(kPi) / (kPi * kPi * r) * std::exp(-std::cosh(kPi) * r);
}

// sum_{n <= N} (-1)^{n+1} n sinh(n theta) a_n and the sum of its |terms|.
std::pair<double, double> forcing_sum(double theta, const CoefficientSequence& a, int N) {
  double s = 0.0, mag = 0.0;
  for (int n = 1; n <= N; ++n) {
    double t = (n % 2 ? 1.0 : -1.0) * n * std::sinh(n * theta) * a(n);
    s += t;
    mag += std::fabs(t);
  }
  return {s, mag};
}

// J'' + J'/r + (n^2/r^2 - 1) J from the supplied r-derivatives.
double bessel_operator(double r, int n, double J, double J1, double J2) {
  return J2 + J1 / r + (double(n) * n / (r * r) - 1.0) * J;
}

}  // namespace

void PolarPoint::validate() const {
  if (!(r > 0) || !std::isfinite(r)) throw DomainError("polar point: r must be positive and finite");
  if (!(theta >= 0 && theta <= kPi)) throw DomainError("polar point: theta must lie in [0, pi]");
}

CoefficientSequence default_helmholtz_coefficients(int N) {
  if (N < 1) throw std::invalid_argument("default_helmholtz_coefficients: N must be >= 1");
  CoefficientSequence a = CoefficientSequence::from_function(
      N, [](int n) { return std::exp(-2.0 * kPi * n) / (double(n) * n * n); }, DecayClass::theorem8);
  a.theta0 = 2.8;
  // sum_{n > N} n^2 e^{theta0 n} e^{-2 pi n}/n^3 <= e^{-rho (N+1)} / ((N+1)(1 - e^{-rho}))
  const double rho = 2.0 * kPi - a.theta0;
  a.tail_bound = std::exp(-rho * (N + 1)) / ((N + 1) * (1.0 - std::exp(-rho)));
  return a;
}

KernelValue forcing_h(const PolarPoint& p, const CoefficientSequence& a, const HelmholtzConfig& cfg) {
  p.validate();
  require_wedge(p, a, "forcing_h");
  KernelValue k;
  const int N = terms(a, cfg.n_max);
  auto [s, mag] = forcing_sum(p.theta, a, N);
  double tail = p.theta == 0.0 ? 0.0
                               : tail_contribution_log(a, N, [&](int n) {
                                   return std::log(double(n)) + n * p.theta - std::log(2.0);
                                 });
  const double pref = forcing_prefactor(p.r);
  k.value = pref * s;
  k.error_estimate = pref * (tail + kEps * kSafety * mag);
  k.converged = std::isfinite(tail);
  return k;
}

KernelValue solution_u(const PolarPoint& p, const CoefficientSequence& a, const HelmholtzConfig& cfg) {
  p.validate();
  KernelValue k;
  if (p.theta == 0.0) return k;
  const int N = terms(a, cfg.n_max);
  double s = 0.0, err = 0.0, mag = 0.0;
  for (int n = 1; n <= N; ++n) {
    if (a(n) == 0.0) continue;
    KernelValue J = j_incomplete(p.r, n, CutPoint::pi(), cfg.kernel);
    double c = kTwoOverPi2 * n * std::sinh(n * p.theta) * a(n);
    s += c * J.value;
    mag += std::fabs(c * J.value);
    err += std::fabs(c) * J.error_estimate;
    k.evaluations += J.evaluations;
    k.converged = k.converged && J.converged;
  }
  double tail = tail_contribution_log(a, N, [&](int n) { return std::log(2.0 * kTwoOverPi2) - p.r + n * p.theta; });
  k.value = s;
  k.error_estimate = err + kEps * kSafety * mag + tail;
  k.converged = k.converged && std::isfinite(tail);
  return k;
}

double decay_bound(const PolarPoint& p, const CoefficientSequence& a) {
  p.validate();
  return tail_contribution_log(a, 0, [&](int n) { return std::log(2.0 * kTwoOverPi2) - p.r + n * p.theta; });
}

double pde_residual(const PolarPoint& p, const CoefficientSequence& a, const HelmholtzConfig& cfg) {
  p.validate();
  if (!(p.theta > 0 && p.theta < kPi)) throw DomainError("pde_residual: point must be interior (0 < theta < pi)");
  require_wedge(p, a, "pde_residual");
  const int N = terms(a, cfg.n_max);
  const CutPoint w = CutPoint::pi();
  double lap = 0.0;
  for (int n = 1; n <= N; ++n) {
    if (a(n) == 0.0) continue;
    double J = j_incomplete(p.r, n, w, cfg.kernel).value;
    double J1 = j_incomplete_dx(p.r, n, w, cfg.kernel).value;
    double J2 = j_incomplete_dxx(p.r, n, w, cfg.kernel).value;
    lap += kTwoOverPi2 * n * std::sinh(n * p.theta) * a(n) * bessel_operator(p.r, n, J, J1, J2);
  }
  return lap - forcing_prefactor(p.r) * forcing_sum(p.theta, a, N).first;
}

double pde_residual_fd(const PolarPoint& p, const CoefficientSequence& a, double h, const HelmholtzConfig& cfg) {
  p.validate();
  if (!(p.theta > 0 && p.theta < kPi)) throw DomainError("pde_residual_fd: point must be interior (0 < theta < pi)");
  if (!(h > 0 && h < p.r)) throw std::invalid_argument("pde_residual_fd: step must satisfy 0 < h < r");
  require_wedge(p, a, "pde_residual_fd");
  const int N = terms(a, cfg.n_max);
  const CutPoint w = CutPoint::pi();
  double lap = 0.0;
  for (int n = 1; n <= N; ++n) {
    if (a(n) == 0.0) continue;
    auto J = [&](double r) { return j_incomplete(r, n, w, cfg.kernel).value; };
    const double J0 = J(p.r);
    auto d = [&](double s, double& d1, double& d2) {
      double jp = J(p.r + s), jm = J(p.r - s);
      d1 = (jp - jm) / (2.0 * s);
      d2 = (jp - 2.0 * J0 + jm) / (s * s);
    };
    double a1, a2, b1, b2;
    d(h, a1, a2);
    d(h / 2.0, b1, b2);
    double J1 = (4.0 * b1 - a1) / 3.0, J2 = (4.0 * b2 - a2) / 3.0;
    lap += kTwoOverPi2 * n * std::sinh(n * p.theta) * a(n) * bessel_operator(p.r, n, J0, J1, J2);
  }
  return lap - forcing_prefactor(p.r) * forcing_sum(p.theta, a, N).first;
}

BoundaryCoefficients coefficients_from_boundary(const FunctionHandle& f, int n_max, const QuadratureConfig& qcfg) {
  if (n_max < 1) throw std::invalid_argument("coefficients_from_boundary: n_max must be >= 1");
  BoundaryCoefficients out;
  out.a = CoefficientSequence::zero(n_max);
  out.error.assign(n_max, 0.0);
  out.diagnostic.assign(n_max, "");
  const QuadratureConfig kcfg = kernel_config();
  if (!f.is_zero()) {
    for (int n = 1; n <= n_max; ++n) {
      try {
        RealFunction g = [&](double x) { return detail::macdonald_small_x(n, x, kcfg) * f(x); };
        detail::LogAxisResult L = detail::log_axis_integral(g, qcfg, kAnalysisXLo, kAnalysisXHi);
        out.a.a[n - 1] = L.r.value;
        out.error[n - 1] = L.r.error_estimate + L.ends + kEps * kSafety * L.r.abs_integral;
        if (!(L.r.converged || L.r.roundoff_limited)) out.diagnostic[n - 1] = "quadrature did not converge";
      } catch (const std::exception& e) {
        out.error[n - 1] = std::numeric_limits<double>::infinity();
        out.diagnostic[n - 1] = e.what();
      }
    }
  }
  // Least squares of log|a_n| against n over coefficients well above their error.
  double sn = 0, sy = 0, snn = 0, sny = 0;
  int k = 0;
  for (int n = 1; n <= n_max; ++n) {
    double v = std::fabs(out.a(n));
    if (v > 0 && v > 10.0 * out.error[n - 1]) {
      double y = std::log(v);
      sn += n;
      sy += y;
      snn += double(n) * n;
      sny += n * y;
      ++k;
    }
  }
  // Fewer than two resolved coefficients: finitely supported to working accuracy.
  out.fitted_rate = k >= 2 ? -(k * sny - sn * sy) / (k * snn - sn * sn) : std::numeric_limits<double>::infinity();
  out.a.theta0 = 2.8;
  if (out.fitted_rate > out.a.theta0)
    out.a.decay_class = DecayClass::theorem8;
  else if (out.fitted_rate > kPi / 2)
    out.a.decay_class = DecayClass::exp_half_pi;
  else
    out.a.decay_class = DecayClass::summable;
  return out;
}

BoundarySpec BoundarySpec::from_coefficients(CoefficientSequence a) {
  BoundarySpec s;
  s.source = Source::coefficients;
  s.theta0 = a.theta0;
  s.a = std::move(a);
  return s;
}

BoundarySpec BoundarySpec::from_function(FunctionHandle f, int n_max) {
  BoundarySpec s;
  s.source = Source::boundary_function;
  s.f = std::move(f);
  s.boundary_n_max = n_max;
  return s;
}

bool PolarField::checks_passed() const {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(u[i])) return false;
    if (residual[i] && !(std::fabs(*residual[i]) <= tolerance)) return false;
    if (boundary_error[i] && !(*boundary_error[i] <= tolerance)) return false;
  }
  return true;
}

PolarField solve_field(const BoundarySpec& spec, const std::vector<PolarPoint>& grid, const HelmholtzConfig& cfg,
                       const QuadratureConfig& qcfg, int threads) {
  PolarField F;
  F.grid = grid;
  const std::size_t P = grid.size();
  F.u.assign(P, 0.0);
  F.u_error.assign(P, 0.0);
  F.residual.assign(P, std::nullopt);
  F.boundary_error.assign(P, std::nullopt);
  F.diagnostic.assign(P, "");

  if (spec.source == BoundarySpec::Source::boundary_function) {
    BoundaryCoefficients bc = coefficients_from_boundary(spec.f, spec.boundary_n_max, qcfg);
    F.coefficients = bc.a;
    for (std::size_t n = 0; n < bc.diagnostic.size(); ++n)
      if (!bc.diagnostic[n].empty())
        F.coefficient_diagnostic += "a_" + std::to_string(n + 1) + ": " + bc.diagnostic[n] + "; ";
  } else {
    F.coefficients = spec.a;
  }
  F.coefficients.theta0 = spec.theta0;
  const CoefficientSequence& a = F.coefficients;
  F.truncation_n = terms(a, cfg.n_max);

  auto point = [&](std::size_t i) {
    const PolarPoint& p = grid[i];
    try {
      p.validate();
      KernelValue u = solution_u(p, a, cfg);
      F.u[i] = u.value;
      F.u_error[i] = u.error_estimate;
      if (p.theta == 0.0) {
        F.boundary_error[i] = std::fabs(u.value);
      } else if (p.theta == kPi) {
        if (spec.source == BoundarySpec::Source::boundary_function)
          F.boundary_error[i] = std::fabs(u.value - spec.f(p.r));
      } else if (p.theta <= a.theta0) {
        F.residual[i] = pde_residual(p, a, cfg);
      } else {
        F.diagnostic[i] = "outside certified wedge";
      }
      if (!u.converged && F.diagnostic[i].empty()) F.diagnostic[i] = "series tail not certified";
    } catch (const std::exception& e) {
      F.u[i] = std::numeric_limits<double>::quiet_NaN();
      F.u_error[i] = std::numeric_limits<double>::infinity();
      F.diagnostic[i] = e.what();
    }
  };

  if (threads <= 1 || P < 2) {
    for (std::size_t i = 0; i < P; ++i) point(i);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i; (i = next++) < P;) point(i);
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < std::min<int>(threads, static_cast<int>(P)); ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return F;
}

std::vector<PolarPoint> polar_grid(double r0, double r1, int n_r, double t0, double t1, int n_theta) {
  if (n_r < 1 || n_theta < 1) throw std::invalid_argument("polar_grid: counts must be >= 1");
  std::vector<PolarPoint> g;
  for (int i = 0; i < n_r; ++i) {
    double r = n_r == 1 ? r0 : r0 + (r1 - r0) * i / (n_r - 1);
    for (int j = 0; j < n_theta; ++j) {
      double t = n_theta == 1 ? t0 : t0 + (t1 - t0) * j / (n_theta - 1);
      if (j == n_theta - 1 && n_theta > 1) t = t1;
      g.push_back({r, t});
    }
  }
  return g;
}

}  // namespace dklt

#include "dklt/index_transform.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dklt/kernels.hpp"
#include "dklt/special.hpp"

namespace dklt {

namespace {

// cosh(alpha tau) e^{-pi tau/2} with eps = pi/2 - alpha.
double damping(double eps, double tau) {
  return 0.5 * (std::exp(-eps * tau) + std::exp(-(kPi - eps) * tau));
}

}  // namespace

DampedIndexTable::DampedIndexTable(std::vector<double> c, const QuadratureConfig& cfg, double step,
                                   double tail_tol)
    : h_(step), alphas_(cfg.abel_schedule) {
  cfg.validate();
  if (alphas_.empty()) throw std::invalid_argument("Abel schedule is empty");
  if (!(step > 0)) throw std::invalid_argument("table step must be positive");

  auto bound = [&](double tau) {
    double s = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i)
      if (c[i] != 0.0) s += std::fabs(c[i]) * macdonald_imag_scaled_bound(tau, double(i + 1));
    return s;
  };
  const std::size_t K = alphas_.size();
  std::vector<double> eps(K), cut(K);
  for (std::size_t k = 0; k < K; ++k) {
    eps[k] = kPi / 2 - alphas_[k];
    auto tail = [&](double T) { return bound(T) * std::exp(-eps[k] * T) / eps[k]; };
    double T = 1.0;
    while (tail(T) > tail_tol) T *= 2.0;
    double lo = T / 2, hi = T;
    for (int it = 0; it < 40 && hi - lo > step; ++it) {
      double mid = 0.5 * (lo + hi);
      (tail(mid) > tail_tol ? lo : hi) = mid;
    }
    cut[k] = hi;
    tail_.push_back(tail(hi));
    cutoff_ = std::max(cutoff_, hi);
  }

  const std::size_t J = static_cast<std::size_t>(std::ceil(cutoff_ / h_)) + 1;
  std::vector<double> F(J, 0.0), Ferr(J, 0.0);
  for (std::size_t j = 0; j < J; ++j) {
    double tau = j * h_;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] == 0.0) continue;
      KernelValue v = macdonald_imag_scaled(tau, double(i + 1));
      F[j] += c[i] * v.value;
      Ferr[j] += std::fabs(c[i]) * v.error_estimate;
      evaluations_ += v.evaluations;
    }
  }
  weighted_.resize(K);
  for (std::size_t k = 0; k < K; ++k) {
    std::size_t Jk = std::min(J, static_cast<std::size_t>(std::ceil(cut[k] / h_)) + 1);
    Jk += Jk % 2 == 0 ? 1 : 0;  // odd count so the coarse rule ends on a node
    Jk = std::min(Jk, J);
    auto& w = weighted_[k];
    w.resize(Jk);
    double sample_err = 0.0;
    for (std::size_t j = 0; j < Jk; ++j) {
      double d = h_ * damping(eps[k], j * h_) * (j == 0 ? 0.5 : 1.0);
      w[j] = d * F[j];
      sample_err += d * Ferr[j];
    }
    tail_[k] += sample_err;
  }
}

void DampedIndexTable::evaluate(double b, std::vector<double>& value, std::vector<double>& error) const {
  const std::size_t K = alphas_.size();
  std::size_t J = 0;
  for (const auto& w : weighted_) J = std::max(J, w.size());
  std::vector<double> cs(J);
  for (std::size_t j = 0; j < J; ++j) cs[j] = std::cos(b * (j * h_));
  value.assign(K, 0.0);
  error.assign(K, 0.0);
  for (std::size_t k = 0; k < K; ++k) {
    const auto& w = weighted_[k];
    double fine = 0.0, coarse = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) {
      double t = w[j] * cs[j];
      fine += t;
      if (j % 2 == 0) coarse += t;
    }
    coarse *= 2.0;
    value[k] = fine;
    error[k] = std::fabs(fine - coarse) + tail_[k];
  }
}

IndexSamples sample_on_cut(const DampedIndexTable& table, int panels) {
  IndexSamples s;
  s.nodes = composite_gauss_kronrod(0.0, kPi, panels);
  std::vector<double> v, e;
  for (double u : s.nodes.x) {
    table.evaluate(std::asinh(u), v, e);
    s.A.push_back(v);
    for (double x : e) s.table_error = std::max(s.table_error, x);
  }
  return s;
}

AbelResult abel_cut_integral(const IndexSamples& s, const std::vector<double>& alphas,
                             const std::function<double(double)>& phi, const QuadratureConfig& cfg) {
  const std::size_t K = alphas.size();
  std::vector<double> vk(K, 0.0), vg(K, 0.0);
  double mass = 0.0;
  for (std::size_t i = 0; i < s.nodes.x.size(); ++i) {
    double p = phi(s.nodes.x[i]);
    mass += s.nodes.wk[i] * std::fabs(p);
    for (std::size_t k = 0; k < K; ++k) {
      vk[k] += s.nodes.wk[i] * p * s.A[i][k];
      vg[k] += s.nodes.wg[i] * p * s.A[i][k];
    }
  }
  double inner = 0.0;
  for (std::size_t k = 0; k < K; ++k) inner = std::max(inner, std::fabs(vk[k] - vg[k]));
  inner += mass * s.table_error;
  return abel_extrapolate(alphas, vk, inner, true, cfg);
}

}  // namespace dklt

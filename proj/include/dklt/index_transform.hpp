#pragma once

#include <functional>
#include <vector>

#include "dklt/quadrature.hpp"

namespace dklt {

// Damped index cosine transforms
//   A_alpha(b) = int_0^inf cosh(alpha tau) K(tau) cos(b tau) dtau,
//   K(tau) = sum_m c_m K_{i tau}(m),
// for every alpha of an Abel schedule. The integrand is even and entire in
// tau, so the trapezoid rule on a uniform grid converges geometrically; each
// alpha is truncated where the envelope tail drops below tail_tol.
class DampedIndexTable {
 public:
  // c[m-1] multiplies K_{i tau}(m).
  DampedIndexTable(std::vector<double> c, const QuadratureConfig& cfg, double step = 0.1,
                   double tail_tol = 1e-12);

  const std::vector<double>& alphas() const { return alphas_; }
  double step() const { return h_; }
  double cutoff() const { return cutoff_; }
  long long evaluations() const { return evaluations_; }

  // A_alpha(b) for each alpha; `error` holds the step-halving difference
  // plus the truncation bound.
  void evaluate(double b, std::vector<double>& value, std::vector<double>& error) const;

 private:
  double h_;
  double cutoff_ = 0.0;
  long long evaluations_ = 0;
  std::vector<double> alphas_;
  std::vector<std::vector<double>> weighted_;  // per alpha: damped samples, trapezoid-weighted
  std::vector<double> tail_;
};

// Samples of A_alpha(asinh u) on composite Gauss-Kronrod nodes of [0, pi].
struct IndexSamples {
  RuleNodes nodes;
  std::vector<std::vector<double>> A;  // [node][alpha]
  double table_error = 0.0;            // worst sample error over nodes and alphas
};

IndexSamples sample_on_cut(const DampedIndexTable& table, int panels = 8);

// Per-alpha values of int_0^pi phi(u) A_alpha(asinh u) du extrapolated to
// alpha = pi/2; the inner error combines the Kronrod-Gauss difference with
// the table error.
AbelResult abel_cut_integral(const IndexSamples& s, const std::vector<double>& alphas,
                             const std::function<double(double)>& phi, const QuadratureConfig& cfg);

}  // namespace dklt

#include "dklt/coefficients.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "dklt/special.hpp"

namespace dklt {

std::string to_string(DecayClass c) {
  switch (c) {
    case DecayClass::exp_half_pi: return "exp_half_pi";
    case DecayClass::harmonic: return "harmonic";
    case DecayClass::exp_delta: return "exp_delta";
    case DecayClass::summable: return "summable";
    case DecayClass::weighted_linear: return "weighted_linear";
    case DecayClass::theorem8: return "theorem8";
  }
  return "summable";
}

DecayClass decay_class_from_string(const std::string& s) {
  for (DecayClass c : {DecayClass::exp_half_pi, DecayClass::harmonic, DecayClass::exp_delta,
                       DecayClass::summable, DecayClass::weighted_linear, DecayClass::theorem8})
    if (to_string(c) == s) return c;
  throw std::invalid_argument("unknown decay class: " + s);
}

double CoefficientSequence::operator()(int n) const {
  if (n < 1 || static_cast<std::size_t>(n) > a.size()) return 0.0;
  return a[n - 1];
}

double CoefficientSequence::weight(int n) const {
  switch (decay_class) {
    case DecayClass::exp_half_pi: return std::exp(-kPi * n / 2.0);
    case DecayClass::harmonic: return 1.0 / n;
    case DecayClass::exp_delta: return std::exp(-delta * n);
    case DecayClass::summable: return 1.0;
    case DecayClass::weighted_linear: return n;
    case DecayClass::theorem8: return double(n) * n * std::exp(theta0 * n);
  }
  return 1.0;
}

double CoefficientSequence::log_weight(int n) const {
  switch (decay_class) {
    case DecayClass::exp_half_pi: return -kPi * n / 2.0;
    case DecayClass::harmonic: return -std::log(double(n));
    case DecayClass::exp_delta: return -delta * n;
    case DecayClass::summable: return 0.0;
    case DecayClass::weighted_linear: return std::log(double(n));
    case DecayClass::theorem8: return 2.0 * std::log(double(n)) + theta0 * n;
  }
  return 0.0;
}

double CoefficientSequence::weighted_sum() const {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += weight(static_cast<int>(i + 1)) * std::fabs(a[i]);
  return s + tail_bound;
}

void CoefficientSequence::validate() const {
  if (!(tail_bound >= 0)) throw std::invalid_argument("tail_bound must be nonnegative");
  if (decay_class == DecayClass::exp_delta && !(delta >= 0 && delta < kPi / 2))
    throw std::invalid_argument("exp_delta requires delta in [0, pi/2)");
  if (decay_class == DecayClass::theorem8 && !(theta0 > 0 && theta0 < kPi))
    throw std::invalid_argument("theorem8 requires theta0 in (0, pi)");
  for (double v : a)
    if (!std::isfinite(v)) throw std::invalid_argument("coefficients must be finite");
  if (!std::isfinite(weighted_sum())) throw std::invalid_argument("weighted coefficient sum is not finite");
}

CoefficientSequence CoefficientSequence::zero(std::size_t N) {
  CoefficientSequence s;
  s.a.assign(N, 0.0);
  return s;
}

CoefficientSequence CoefficientSequence::unit(int m, std::size_t N) {
  if (m < 1) throw std::invalid_argument("unit index must be >= 1");
  CoefficientSequence s;
  s.a.assign(std::max<std::size_t>(N, m), 0.0);
  s.a[m - 1] = 1.0;
  return s;
}

CoefficientSequence CoefficientSequence::from_function(std::size_t N, const std::function<double(int)>& f,
                                                       DecayClass c) {
  CoefficientSequence s;
  s.decay_class = c;
  for (std::size_t n = 1; n <= N; ++n) s.a.push_back(f(static_cast<int>(n)));
  return s;
}

double tail_contribution(const CoefficientSequence& a, int n0, const std::function<double(int)>& c) {
  return tail_contribution_log(a, n0, [&c](int n) { return std::log(c(n)); });
}

double tail_contribution_log(const CoefficientSequence& a, int n0, const std::function<double(int)>& log_c) {
  double listed = 0.0;
  const int N = static_cast<int>(a.size());
  for (int n = std::max(n0, 0) + 1; n <= N; ++n)
    if (a(n) != 0.0) listed += std::exp(log_c(n) + std::log(std::fabs(a(n))));
  if (a.tail_bound == 0.0) return listed;
  // sup of c_n / w_n over n > max(N, n0): scan, and declare it unbounded when
  // the ratio is still growing at the far end of the scan.
  const int start = std::max(N, n0) + 1;
  double sup = -std::numeric_limits<double>::infinity(), mid = 0.0, last = 0.0;
  const int span = 4000;
  for (int n = start; n < start + span; ++n) {
    double r = log_c(n) - a.log_weight(n);
    if (std::isnan(r)) return std::numeric_limits<double>::infinity();
    sup = std::max(sup, r);
    if (n == start + span / 2) mid = r;
    last = r;
  }
  if (last > mid && last >= sup) return std::numeric_limits<double>::infinity();
  return listed + std::exp(sup + std::log(a.tail_bound));
}

}  // namespace dklt

#pragma once

#include <functional>
#include <string>
#include <vector>

namespace dklt {

// Weighted summability class of a coefficient sequence. The weight w_n of
// each class is what tail_bound refers to:
//   exp_half_pi     e^{-pi n/2}
//   harmonic        1/n
//   exp_delta       e^{-delta n}, delta in [0, pi/2)
//   summable        1
//   weighted_linear n
//   theorem8        n^2 e^{theta0 n}
enum class DecayClass { exp_half_pi, harmonic, exp_delta, summable, weighted_linear, theorem8 };

std::string to_string(DecayClass c);
DecayClass decay_class_from_string(const std::string& s);

struct CoefficientSequence {
  std::vector<double> a;  // a[0] holds a_1
  DecayClass decay_class = DecayClass::summable;
  // Bound on sum_{n > N} w_n |a_n| for the coefficients not listed.
  double tail_bound = 0.0;
  double delta = 0.0;
  double theta0 = 2.8;

  std::size_t size() const { return a.size(); }
  // a_n for n >= 1, zero past the listed terms.
  double operator()(int n) const;
  double weight(int n) const;
  double log_weight(int n) const;
  double weighted_sum() const;
  // Throws std::invalid_argument on a negative tail bound or non-finite sum.
  void validate() const;

  static CoefficientSequence zero(std::size_t N = 0);
  static CoefficientSequence unit(int m, std::size_t N = 0);
  static CoefficientSequence from_function(std::size_t N, const std::function<double(int)>& f,
                                           DecayClass c = DecayClass::summable);
};

// Bound on sum_{n > n0} c_n |a_n| where c_n >= 0 bounds a kernel; includes the
// listed coefficients beyond n0 and the declared tail. Infinite when
// sup c_n / w_n over the unlisted range is not finite.
double tail_contribution(const CoefficientSequence& a, int n0, const std::function<double(int)>& c);

// Same bound with the kernel bound given as log c_n, for weights that
// overflow in double precision.
double tail_contribution_log(const CoefficientSequence& a, int n0, const std::function<double(int)>& log_c);

}  // namespace dklt

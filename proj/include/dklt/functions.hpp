#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "dklt/quadrature.hpp"

namespace dklt {

// Evaluable real function on the positive half-line: a named catalog entry,
// a tabulated grid with monotone cubic interpolation, or a library closure.
//
// Catalog (parameters in braces, defaults after '='):
//   zero
//   exp_power {alpha=0}            e^{-x} x^alpha
//   macdonald_power {nu=0, alpha=1} K_nu(x) x^{alpha-1}
//   incomplete_j_scaled            2 J(x,i,pi)/x                 (alias example1)
//   incomplete_j0_shifted          2 (J(x,0,pi) - pi e^{-x cosh pi})/x (alias example2)
//   incomplete_kc_scaled           2 cosh(pi/2) K_c(x,i,pi)/x    (alias example3)
//   incomplete_j_boundary          2 J(x,i,pi)
//   exp_cosh {u0=1}                x e^{-x cosh u0}
//   kl_image {u0=1}                2 x sin(x u0) / (pi sinh u0)
//   sech_half_pi                   sech(pi x/2)
//   tanh_sech                      x tanh(pi x/2) sech(pi x/2)
class FunctionHandle {
 public:
  FunctionHandle();  // zero

  static FunctionHandle builtin(const std::string& name, const std::map<std::string, double>& params = {});
  static FunctionHandle tabulated(std::vector<double> grid, std::vector<double> values);
  static FunctionHandle closure(std::string name, RealFunction f, bool certified = true,
                                RealFunction envelope = {});
  static std::vector<std::string> catalog();

  double operator()(double x) const;
  const std::string& name() const { return name_; }
  const std::map<std::string, double>& params() const { return params_; }
  bool is_zero() const { return zero_; }
  // Catalog entries and library closures have closed-form provenance;
  // tabulated input does not.
  bool certified() const { return certified_; }
  // Monotone bound |f(x)| <= envelope(x) for large x, when known.
  const RealFunction& envelope() const { return envelope_; }

 private:
  std::string name_;
  std::map<std::string, double> params_;
  std::shared_ptr<const RealFunction> f_;
  RealFunction envelope_;
  bool zero_ = false;
  bool certified_ = true;
};

// Fritsch-Carlson monotone cubic interpolant; zero outside the grid.
class MonotoneCubic {
 public:
  MonotoneCubic(std::vector<double> x, std::vector<double> y);
  double operator()(double t) const;

 private:
  std::vector<double> x_, y_, d_;
};

}  // namespace dklt

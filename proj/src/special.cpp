#include "dklt/special.hpp"

#include <cmath>
#include <stdexcept>

namespace dklt {

const double kAsinhPi = std::log(kPi + std::sqrt(1.0 + kPi * kPi));

namespace {

// B_{2k} / (2k (2k-1)), k = 1..10
constexpr double kStirling[] = {
    1.0 / 12.0,          -1.0 / 360.0,          1.0 / 1260.0,        -1.0 / 1680.0,
    1.0 / 1188.0,        -691.0 / 360360.0,     1.0 / 156.0,         -3617.0 / 122400.0,
    43867.0 / 244188.0,  -174611.0 / 125400.0};

// B_{2j} / (2j)!, j = 1..8
constexpr double kBernoulliOverFactorial[] = {
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
    1.0 / 74724249600.0,
    -3617.0 / 10670622842880000.0};

}  // namespace

std::complex<double> log_gamma(std::complex<double> z) {
  using C = std::complex<double>;
  if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
    throw std::domain_error("log_gamma pole at non-positive integer");
  if (z.real() < -1e4) throw std::domain_error("log_gamma argument too far left");
  C shift = 0.0;
  while (z.real() < 0.0 || std::abs(z) < 15.0) {
    shift += std::log(z);
    z += 1.0;
  }
  C inv = 1.0 / z;
  C inv2 = inv * inv;
  C series = 0.0;
  C p = inv;
  for (double c : kStirling) {
    series += c * p;
    p *= inv2;
  }
  C r = (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi) + series;
  return r - shift;
}

double log_sinh(double y) {
  if (!(y > 0)) throw std::domain_error("log_sinh requires y > 0");
  if (y < 1.0) return std::log(std::sinh(y));
  return y + std::log1p(-std::exp(-2.0 * y)) - std::log(2.0);
}

double log_cosh(double y) {
  y = std::fabs(y);
  return y + std::log1p(std::exp(-2.0 * y)) - std::log(2.0);
}

double hurwitz_zeta(double s, double q) {
  if (!(s > 1.0) || !(q > 0.0)) throw std::domain_error("hurwitz_zeta requires s > 1, q > 0");
  double head = 0.0;
  int m = 0;
  while (q + m < 20.0) {
    head += std::pow(q + m, -s);
    ++m;
  }
  double a = q + m;
  double tail = std::pow(a, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(a, -s);
  double rising = s;  // s (s+1) ... (s+2j-2)
  double ap = std::pow(a, -s - 1.0);
  for (int j = 0; j < 8; ++j) {
    tail += kBernoulliOverFactorial[j] * rising * ap;
    rising *= (s + 2 * j + 1) * (s + 2 * j + 2);
    ap /= a * a;
  }
  return head + tail;
}

double scale_by_exp(double v, double log_factor) {
  if (v == 0.0) return 0.0;
  return std::copysign(std::exp(std::log(std::fabs(v)) + log_factor), v);
}

double scaled_macdonald_series(double tau, double x) {
  using C = std::complex<double>;
  const double q = 0.25 * x * x;
  C term = 1.0, sum = 1.0;
  for (int k = 1; k < 2000; ++k) {
    term *= q / (double(k) * C(k, tau));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  const double theta = tau * std::log(0.5 * x) - log_gamma(C(1.0, tau)).imag();
  const double im = std::sin(theta) * sum.real() + std::cos(theta) * sum.imag();
  const double pref = std::sqrt(2.0 * kPi / (tau * -std::expm1(-2.0 * kPi * tau)));
  return -pref * im;
}

}  // namespace dklt

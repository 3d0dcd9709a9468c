#pragma once

#include <complex>

namespace dklt {

inline constexpr double kPi = 3.14159265358979323846;
// ln(pi + sqrt(1 + pi^2)), the second canonical cut point.
extern const double kAsinhPi;

// Principal branch of log Gamma(z) for complex z off the non-positive integers.
std::complex<double> log_gamma(std::complex<double> z);

// log sinh(y) and log cosh(y) for y > 0 (resp. any y) without overflow.
double log_sinh(double y);
double log_cosh(double y);

// Hurwitz zeta sum_{k>=0} (k+q)^-s for s > 1, q > 0.
double hurwitz_zeta(double s, double q);

// sign(v) * exp(log|v| + log_factor); stays finite when the factor alone
// would overflow.
double scale_by_exp(double v, double log_factor);

// e^{pi tau/2} K_{i tau}(x) from the ascending series of I_{+-i tau}; accurate
// for tau >= 0.5 when x <= 2, and for tau >= x + 2 otherwise.
double scaled_macdonald_series(double tau, double x);

}  // namespace dklt

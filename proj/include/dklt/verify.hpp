#pragma once

#include <map>
#include <string>
#include <vector>

#include "dklt/functions.hpp"
#include "dklt/quadrature.hpp"

namespace dklt {

// Tolerance tiers.
inline constexpr double kTierClosedForm = 1e-8;
inline constexpr double kTierAbel = 1e-4;
inline constexpr double kTierFourier = 1e-3;
inline constexpr double kTierSeries = 1e-6;

using Params = std::map<std::string, double>;

struct IdentityCase {
  std::string identity_id;
  Params params;
  double tolerance = kTierClosedForm;
};

struct VerificationReport {
  std::string identity_id;
  Params params;
  double lhs = 0.0;
  double rhs = 0.0;
  double abs_err = 0.0;
  double error_estimate = 0.0;  // numerical error of the computed side(s)
  double tolerance = 0.0;
  bool passed = false;
  long long evaluations = 0;
  double seconds = 0.0;
  std::string diagnostic;
};

// Identity ids understood by run_case:
//   biorth_I1 biorth_I2 biorth_I3                    {n, m}
//   cf_2_26 cf_2_27 cf_2_29                          {n, u}
//   cf_3_12                                          {m, alpha, u}
//   fourier_2_9 .. fourier_2_13                      {x, u, N}
//   parseval_2_14 .. parseval_2_18                   {x, N (0 = automatic)}
//   example_4 {alpha, x}  example_5 {alpha, nu, x}  example_6 {x}  example_7 {x}
//   kl_continuous_1_1                                {tau, u0}
std::vector<std::string> identity_ids();
double default_tolerance(const std::string& identity_id);

enum class BiorthKind { I1, I2, I3 };

// I1 = int K_{in}(x) J(x,im,pi) dx/x and I2 = int K_{in}(x) K_c(x,im,pi) dx/x
// against pi^2 delta_{nm} / (2 n sinh(pi n)); I3 = int K_{i tau}(n)
// K_s(m,i tau,asinh pi) tau sinh(pi tau) dtau as an Abel limit against
// pi^2 n delta_{nm} / 2.
VerificationReport check_biorthogonality(BiorthKind kind, int n, int m, const QuadratureConfig& qcfg = {});

VerificationReport check_closed_form(const std::string& id, const Params& params, const QuadratureConfig& qcfg = {});

// Cosine/sine series coefficients c_0..c_N of one Fourier identity at x, so
// that partial sums at several u and N share the kernel evaluations.
struct FourierSeries {
  std::string id;
  double x = 0.0;
  bool sine = false;
  std::vector<double> c;  // c[0] is the constant term (zero for sine series)
  double partial_sum(double u, int N) const;
  double closed_form(double u) const;
};
FourierSeries fourier_series(const std::string& id, double x, int N);

// u is restricted to [0.05 pi, 0.95 pi].
VerificationReport check_fourier_identity(const std::string& id, double x, double u, int N,
                                          const QuadratureConfig& qcfg = {});

// N = 0 picks the number of exact terms from the asymptotic tail estimate.
VerificationReport check_parseval(const std::string& id, double x, int N = 0, const QuadratureConfig& qcfg = {});

VerificationReport check_example(const std::string& id, const Params& params, const QuadratureConfig& qcfg = {});

// Double integral of the continuous transform applied to f, compared with f(tau).
VerificationReport kl_continuous_roundtrip(const FunctionHandle& f, double tau, const QuadratureConfig& qcfg = {});

VerificationReport run_case(const IdentityCase& c);
std::vector<IdentityCase> default_suite();
// Cases are independent; threads > 1 runs them concurrently. Report order
// follows case order.
std::vector<VerificationReport> run_suite(const std::vector<IdentityCase>& cases, int threads = 1);

}  // namespace dklt

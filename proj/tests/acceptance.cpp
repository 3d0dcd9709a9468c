// Acceptance checks, one PASS/FAIL line per criterion.
//   acceptance            all criteria
//   acceptance 3 7        selected criteria
// Exit status is nonzero when any selected criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "dklt/helmholtz.hpp"
#include "dklt/kernels.hpp"
#include "dklt/special.hpp"
#include "dklt/transforms.hpp"
#include "dklt/verify.hpp"
#include "oracles.hpp"

using namespace dklt;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(double v) {
  char b[32];
  std::snprintf(b, sizeof b, "%.3g", v);
  return b;
}

struct Worst {
  double err = 0.0;
  std::string where;
  int failures = 0;
  int count = 0;
  void add(const VerificationReport& r, double tol) {
    ++count;
    double e = std::isfinite(r.abs_err) ? r.abs_err : INFINITY;
    if (!(e <= tol)) ++failures;
    if (!(e <= err)) {
      err = e;
      where = r.identity_id;
      for (const auto& [k, v] : r.params) where += " " + k + "=" + fmt(v);
    }
  }
  Outcome outcome(double tol) const {
    return {failures == 0, std::to_string(count - failures) + "/" + std::to_string(count) + " within " + fmt(tol) +
                               ", worst " + fmt(err) + " at " + where};
  }
};

Outcome biorth(BiorthKind kind, int N, double tol) {
  Worst w;
  for (int n = 1; n <= N; ++n)
    for (int m = 1; m <= N; ++m) w.add(check_biorthogonality(kind, n, m), tol);
  return w.outcome(tol);
}

Outcome c1() { return biorth(BiorthKind::I1, 6, 1e-8); }
Outcome c2() { return biorth(BiorthKind::I2, 6, 1e-8); }
Outcome c3() { return biorth(BiorthKind::I3, 4, 1e-4); }

Outcome c4() {
  Worst cf, abel;
  for (const char* id : {"cf_2_26", "cf_2_27"})
    for (int n = 1; n <= 4; ++n)
      for (double u : {0.5, 1.0, 2.0}) cf.add(check_closed_form(id, {{"n", n}, {"u", u}}), 1e-8);
  for (int m : {1, 2})
    for (double alpha : {0.5, 1.2})
      for (double u : {0.5, 1.0}) cf.add(check_closed_form("cf_3_12", {{"m", m}, {"alpha", alpha}, {"u", u}}), 1e-8);
  for (int n : {1, 2})
    for (double u : {0.0, 0.5, 1.0}) abel.add(check_closed_form("cf_2_29", {{"n", n}, {"u", u}}), 1e-4);
  Outcome a = cf.outcome(1e-8), b = abel.outcome(1e-4);
  return {a.pass && b.pass, "closed forms " + a.detail + "; Abel " + b.detail};
}

Outcome c5() {
  Outcome out;
  for (const char* id : {"fourier_2_9", "fourier_2_10", "fourier_2_11", "fourier_2_12", "fourier_2_13"}) {
    double worst = 0.0;
    bool monotone = true;
    for (double x : {0.5, 1.0, 2.0}) {
      FourierSeries s = fourier_series(id, x, 400);
      double sum100 = 0.0, sum400 = 0.0;
      for (int k = 1; k <= 9; ++k) {
        double u = k * kPi / 10, truth = s.closed_form(u);
        worst = std::max(worst, std::fabs(s.partial_sum(u, 200) - truth));
        sum100 += std::fabs(s.partial_sum(u, 100) - truth);
        sum400 += std::fabs(s.partial_sum(u, 400) - truth);
      }
      monotone = monotone && sum400 <= sum100;
    }
    bool ok = worst <= 1e-3 && monotone;
    out.pass = out.pass && ok;
    out.detail += std::string(out.detail.empty() ? "" : "; ") + id + " N=200 max " + fmt(worst) +
                  (monotone ? "" : " (N=400 mean not below N=100)") + (ok ? " ok" : " FAIL");
  }
  return out;
}

Outcome c6() {
  Worst w;
  for (const char* id : {"parseval_2_14", "parseval_2_15", "parseval_2_16", "parseval_2_17", "parseval_2_18"})
    for (double x : {0.5, 1.0, 2.0}) w.add(check_parseval(id, x), 1e-8);
  return w.outcome(1e-8);
}

Outcome c7() {
  std::vector<std::pair<std::string, CoefficientSequence>> seqs = {
      {"e^-n", CoefficientSequence::from_function(8, [](int n) { return std::exp(-double(n)); })},
      {"e^-pi n/2 / n^2",
       CoefficientSequence::from_function(8, [](int n) { return std::exp(-kPi * n / 2) / (double(n) * n); })},
      {"n^-3", CoefficientSequence::from_function(8, [](int n) { return 1.0 / (double(n) * n * n); })}};
  Outcome out;
  for (const char* pair : {"2.30", "2.31", "2.32", "2.33"}) {
    double worst = 0.0;
    for (const auto& [name, a] : seqs)
      for (const auto& row : roundtrip(pair, a, 8)) worst = std::max(worst, std::isfinite(row.error) ? std::fabs(row.error) : INFINITY);
    out.pass = out.pass && worst <= 1e-6;
    out.detail += std::string(out.detail.empty() ? "" : "; ") + pair + " max " + fmt(worst);
  }
  double worst = 0.0;
  auto a = CoefficientSequence::from_function(4, [](int n) { return std::exp(-double(n)); });
  for (const auto& row : roundtrip("2.34", a, 4)) worst = std::max(worst, std::fabs(row.error));
  out.pass = out.pass && worst <= 1e-4;
  out.detail += "; 2.34 (Abel) max " + fmt(worst);
  return out;
}

Outcome c8() {
  Worst w;
  auto add = [&](const char* id, Params p) { w.add(check_example(id, p), 1e-6); };
  for (double alpha : {0.0, 1.0})
    for (double x : {0.5, 1.0, 2.0}) add("example_4", {{"alpha", alpha}, {"x", x}});
  add("example_5", {{"alpha", 1.0}, {"nu", 0.0}, {"x", 1.0}});
  for (double x : {0.5, 1.0}) add("example_6", {{"x", x}});
  for (double x : {0.0, 0.5, 1.0}) add("example_7", {{"x", x}});
  return w.outcome(1e-6);
}

Outcome c9() {
  double worst = 0.0;
  for (double x : {0.5, 1.0, 2.0, 4.0})
    for (int n = 0; n <= 6; ++n) worst = std::max(worst, std::fabs(ode_residual_j(x, n, CutPoint::pi())));
  return {worst <= 1e-8, "max residual " + fmt(worst) + " (tol 1e-8)"};
}

Outcome c10() {
  Outcome out;
  auto a = default_helmholtz_coefficients();
  const auto interior = polar_grid(0.5, 4.0, 4, 0.3, 2.8, 4);

  bool zero_ray = true;
  for (double r : {0.5, 1.0, 1.5, 2.0, 4.0, 20.0}) zero_ray = zero_ray && solution_u({r, 0.0}, a).value == 0.0;

  std::vector<PolarPoint> bgrid;
  for (double r : {0.5, 1.0, 2.0}) {
    bgrid.push_back({r, kPi});
    bgrid.push_back({r, 0.0});
  }
  PolarField F = solve_field(BoundarySpec::from_function(FunctionHandle::builtin("incomplete_j_boundary")), bgrid);
  double bmax = 0.0;
  for (std::size_t i = 0; i < bgrid.size(); ++i) {
    if (!F.boundary_error[i] || !std::isfinite(F.u[i])) {
      bmax = INFINITY;
      continue;
    }
    if (bgrid[i].theta == kPi) bmax = std::max(bmax, *F.boundary_error[i]);
    if (bgrid[i].theta == 0.0) zero_ray = zero_ray && F.u[i] == 0.0;
  }

  double rmax = 0.0;
  for (const auto& p : interior) rmax = std::max(rmax, std::fabs(pde_residual(p, a)));

  bool decay = true;
  double ratio = 0.0;
  for (double t : {0.3, 1.1333333333333333, 1.9666666666666666, 2.8}) {
    PolarPoint p{20.0, t};
    double u = std::fabs(solution_u(p, a).value), b = decay_bound(p, a);
    decay = decay && u <= b;
    ratio = std::max(ratio, u / b);
  }
  out.pass = zero_ray && bmax <= 1e-6 && rmax <= 1e-6 && decay;
  out.detail = std::string("u(r,0)=0 ") + (zero_ray ? "exact" : "VIOLATED") + "; boundary max " + fmt(bmax) +
               "; PDE residual max " + fmt(rmax) + "; |u(20,theta)|/bound max " + fmt(ratio);
  return out;
}

Outcome c11() {
  int total = 0, honest = 0;
  std::string worst;
  double worst_ratio = 0.0;
  auto tally = [&](const std::string& what, double value, double truth, double estimate) {
    ++total;
    double e = std::fabs(value - truth);
    if (e <= 10 * estimate) ++honest;
    double ratio = estimate > 0 ? e / estimate : (e > 0 ? INFINITY : 0.0);
    if (ratio > worst_ratio) {
      worst_ratio = ratio;
      worst = what;
    }
  };
  auto report = [&](const VerificationReport& r) {
    std::string w = r.identity_id;
    for (const auto& [k, v] : r.params) w += " " + k + "=" + fmt(v);
    tally(w, r.lhs, r.rhs, r.error_estimate);
  };
  for (int n = 1; n <= 6; ++n)
    for (int m = 1; m <= 6; ++m) {
      report(check_biorthogonality(BiorthKind::I1, n, m));
      report(check_biorthogonality(BiorthKind::I2, n, m));
    }
  for (const char* id : {"cf_2_26", "cf_2_27"})
    for (int n = 1; n <= 4; ++n)
      for (double u : {0.5, 1.0, 2.0}) report(check_closed_form(id, {{"n", n}, {"u", u}}));
  for (int m : {1, 2})
    for (double alpha : {0.5, 1.2})
      for (double u : {0.5, 1.0}) report(check_closed_form("cf_3_12", {{"m", m}, {"alpha", alpha}, {"u", u}}));
  for (const char* id : {"parseval_2_14", "parseval_2_15", "parseval_2_16", "parseval_2_17", "parseval_2_18"})
    for (double x : {0.5, 1.0, 2.0}) report(check_parseval(id, x));

  auto k = [&](const char* what, const KernelValue& v, double truth) { tally(what, v.value, truth, v.error_estimate); };
  k("K_i(1)", macdonald_imag(1.0, 1.0), oracle::kKImag_1_1);
  k("K_0.5i(2)", macdonald_imag(0.5, 2.0), oracle::kKImag_05_2);
  k("K_3i(0.5)", macdonald_imag(3.0, 0.5), oracle::kKImag_3_05);
  k("K_8i(1)", macdonald_imag(8.0, 1.0), oracle::kKImag_8_1);
  k("K_12i(0.1)", macdonald_imag(12.0, 0.1), oracle::kKImag_12_01);
  k("scaled K_20i(1)", macdonald_imag_scaled(20.0, 1.0), oracle::kKScaled_20_1);
  k("scaled K_40i(5)", macdonald_imag_scaled(40.0, 5.0), oracle::kKScaled_40_5);
  k("K_0(1)", macdonald_real(0.0, 1.0), oracle::kKReal_0_1);
  k("K_2.5(3)", macdonald_real(2.5, 3.0), oracle::kKReal_25_3);
  k("J(1,i,pi)", j_incomplete(1.0, 1, CutPoint::pi()), oracle::kJ_1_1);
  k("J(0.5,0,pi)", j_incomplete(0.5, 0, CutPoint::pi()), oracle::kJ_05_0);
  k("J(2,3i,pi)", j_incomplete(2.0, 3, CutPoint::pi()), oracle::kJ_2_3);
  k("J(0.01,2i,pi)", j_incomplete(0.01, 2, CutPoint::pi()), oracle::kJ_001_2);
  k("J(1,2i,asinh pi)", j_incomplete(1.0, 2, CutPoint::asinh_pi()), oracle::kJ_1_2_asinh);
  k("J(2,2,pi) real order", j_incomplete_real(2.0, 2.0, CutPoint::pi()), oracle::kJReal_2_2);
  k("dJ/dx(1,i,pi)", j_incomplete_dx(1.0, 1, CutPoint::pi()), oracle::kJdx_1_1);
  k("d2J/dx2(1,i,pi)", j_incomplete_dxx(1.0, 1, CutPoint::pi()), oracle::kJdxx_1_1);
  k("Kc raw(1,i,pi)", kc_raw(1.0, 1, CutPoint::pi()), oracle::kKcRaw_1_1);
  k("Kc raw(0.5,0,pi)", kc_raw(0.5, 0, CutPoint::pi()), oracle::kKcRaw_05_0);
  k("Kc raw(2,3i,pi)", kc_raw(2.0, 3, CutPoint::pi()), oracle::kKcRaw_2_3);
  k("Ks raw(1,1.5i,pi)", ks_raw(1.0, 1.5, CutPoint::pi()), oracle::kKsRaw_1_15);
  k("Ks raw(2,3i,asinh pi)", ks_raw(2.0, 3.0, CutPoint::asinh_pi()), oracle::kKsRaw_2_3_asinh);
  k("Ks order-zero limit(1)", ks_zero_order_limit(1.0, CutPoint::pi()), oracle::kKsZero_1);
  auto abc = CoefficientSequence::from_function(3, [](int n) { return std::pow(0.5, n - 1); });
  k("K series", synthesize_K(abc, 1.0), oracle::kSynthK_x1);
  k("J series", synthesize_J(abc, 1.0), oracle::kSynthJ_x1);
  k("Kc series", synthesize_Kc(abc, 1.0), oracle::kSynthKc_x1);
  k("dual series", dual_synthesize(abc, 0.7), oracle::kDualSynth_t07);
  auto d = default_helmholtz_coefficients();
  k("Helmholtz h", forcing_h({1.0, 2.0}, d), oracle::kForcingDefault_1_2);
  k("Helmholtz u", solution_u({1.0, 2.0}, d), oracle::kSolutionDefault_1_2);

  double frac = double(honest) / total;
  return {frac >= 0.99, std::to_string(honest) + "/" + std::to_string(total) + " = " + fmt(100 * frac) +
                            "% with |value - truth| <= 10 estimate (need 99%); worst ratio " + fmt(worst_ratio) +
                            " at " + worst};
}

struct Criterion {
  const char* title;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::map<int, Criterion> all = {
      {1, {"biorthogonality I1, 1<=n,m<=6, tol 1e-8", c1}},
      {2, {"biorthogonality I2, 1<=n,m<=6, tol 1e-8", c2}},
      {3, {"biorthogonality I3 (Abel), 1<=n,m<=4, tol 1e-4", c3}},
      {4, {"closed-form integrals, tol 1e-8 (Abel 1e-4)", c4}},
      {5, {"Fourier series, N=200 tol 1e-3 and N=400 mean <= N=100 mean", c5}},
      {6, {"Parseval identities, tol 1e-8", c6}},
      {7, {"round trips N=8 tol 1e-6, Abel round trip tol 1e-4", c7}},
      {8, {"example series vs closed forms, tol 1e-6", c8}},
      {9, {"incomplete Bessel ODE residual, tol 1e-8", c9}},
      {10, {"Helmholtz BVP checks, tol 1e-6", c10}},
      {11, {"error-estimate honesty on the closed-form catalog, >= 99%", c11}},
  };
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) {
    int k = std::atoi(argv[i]);
    if (!all.count(k)) {
      std::fprintf(stderr, "unknown criterion '%s' (1..11)\n", argv[i]);
      return 2;
    }
    which.push_back(k);
  }
  if (which.empty())
    for (const auto& [k, c] : all) which.push_back(k);

  bool ok = true;
  for (int k : which) {
    const Criterion& c = all.at(k);
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %2d %s  %s: %s [%.1fs]\n", k, o.pass ? "PASS" : "FAIL", c.title, o.detail.c_str(), s);
    std::fflush(stdout);
    ok = ok && o.pass;
  }
  return ok ? 0 : 1;
}

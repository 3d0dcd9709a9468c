// dklt command-line front end: kernel, transform, verify, bvp.
//
// Exit codes: 0 ok, 1 usage, 2 domain error, 3 non-convergence,
// 4 certified-region failure (bvp), 5 verification failure.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "dklt/errors.hpp"
#include "dklt/helmholtz.hpp"
#include "dklt/io.hpp"
#include "dklt/kernels.hpp"
#include "dklt/special.hpp"
#include "dklt/transforms.hpp"
#include "dklt/verify.hpp"

using namespace dklt;

namespace {

enum Exit { kOk = 0, kUsage = 1, kDomain = 2, kNonconvergence = 3, kCertifiedRegion = 4, kVerifyFailed = 5 };

struct Globals {
  std::optional<double> tol;
  std::optional<int> n_max;
  std::string format = "json";
  int threads = 1;

  QuadratureConfig kernel() const {
    QuadratureConfig c = kernel_config();
    if (tol) c.rel_tol = *tol;
    return c;
  }
  QuadratureConfig analysis() const {
    QuadratureConfig c = analysis_config();
    if (tol) c.rel_tol = *tol;
    return c;
  }
  SeriesEvalConfig series() const {
    SeriesEvalConfig s;
    s.kernel = kernel();
    if (n_max) s.n_max = *n_max;
    return s;
  }
  void validate() const {
    if (tol && !(*tol > 0)) throw std::invalid_argument("--tol must be positive");
    if (n_max && *n_max < 1) throw std::invalid_argument("--n-max must be >= 1");
    if (threads < 1) throw std::invalid_argument("--threads must be >= 1");
  }
};

std::string csv_cell(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_float()) return format_number(v.get<double>());
  if (v.is_number()) return v.dump();
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void emit(const Json& rows, const std::vector<std::string>& columns, const Globals& g) {
  if (g.format == "json") {
    std::cout << dump_json(rows) << "\n";
    return;
  }
  for (std::size_t i = 0; i < columns.size(); ++i) std::cout << (i ? "," : "") << columns[i];
  std::cout << "\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < columns.size(); ++i)
      std::cout << (i ? "," : "") << (r.contains(columns[i]) ? csv_cell(r.at(columns[i])) : "");
    std::cout << "\n";
  }
}

std::vector<int> parse_indices(const std::string& s) {
  std::vector<int> out;
  for (double v : parse_values(s)) {
    if (v != std::floor(v)) throw std::invalid_argument("index values must be integers: " + s);
    out.push_back(static_cast<int>(v));
  }
  return out;
}

std::map<std::string, double> parse_params(const std::vector<std::string>& kv) {
  std::map<std::string, double> out;
  for (const auto& p : kv) {
    auto eq = p.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("--param expects key=value, got '" + p + "'");
    out[p.substr(0, eq)] = parse_number(p.substr(eq + 1));
  }
  return out;
}

FunctionHandle read_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read function table " + path);
  std::vector<double> x, y;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto comma = line.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("function table rows need x,y: " + line);
    try {
      double a = std::stod(line.substr(0, comma)), b = std::stod(line.substr(comma + 1));
      x.push_back(a);
      y.push_back(b);
    } catch (const std::exception&) {
      if (!x.empty()) throw std::invalid_argument("malformed function table row: " + line);
    }
  }
  return FunctionHandle::tabulated(std::move(x), std::move(y));
}

struct FunctionArgs {
  std::string name;
  std::string file;
  std::vector<std::string> params;

  void add(CLI::App* app) {
    app->add_option("--function", name, "catalog function name");
    app->add_option("--function-file", file, "CSV table x,y (monotone cubic interpolation)");
    app->add_option("--param", params, "catalog parameter key=value (repeatable)");
  }
  FunctionHandle get() const {
    if (!file.empty()) return read_table(file);
    if (name.empty()) throw std::invalid_argument("a --function or --function-file is required");
    return FunctionHandle::builtin(name, parse_params(params));
  }
};

int finish(bool converged) { return converged ? kOk : kNonconvergence; }

// kernel ----------------------------------------------------------------

struct KernelArgs {
  std::string type, x, n, tau, nu, w = "pi";
};

int cmd_kernel(const KernelArgs& a, const Globals& g) {
  const QuadratureConfig cfg = g.kernel();
  const std::vector<double> xs = parse_values(a.x);
  const std::vector<double> ws = parse_values(a.w);
  Json rows = Json::array();
  bool ok = true;
  auto row = [&](double x, double order, std::optional<double> w, const KernelValue& k) {
    Json r = {{"type", a.type}, {"x", x}, {"order", order}};
    r["w"] = w ? Json(*w) : Json(nullptr);
    r["value"] = k.value;
    r["error_estimate"] = k.error_estimate;
    r["evaluations"] = k.evaluations;
    r["converged"] = k.converged;
    rows.push_back(r);
    ok = ok && k.converged;
  };
  auto need = [&](const std::string& v, const char* opt) {
    if (v.empty()) throw std::invalid_argument("--type " + a.type + " needs " + opt);
    return v;
  };
  if (a.type == "K_imag") {
    for (double x : xs)
      for (double t : parse_values(need(a.tau, "--tau"))) row(x, t, std::nullopt, macdonald_imag(t, x, cfg));
  } else if (a.type == "K_real") {
    for (double x : xs)
      for (double nu : parse_values(need(a.nu, "--nu"))) row(x, nu, std::nullopt, macdonald_real(nu, x, cfg));
  } else if (a.type == "J" || a.type == "Kc") {
    for (double x : xs)
      for (int n : parse_indices(need(a.n, "--n")))
        for (double w : ws)
          row(x, n, w, a.type == "J" ? j_incomplete(x, n, CutPoint(w), cfg) : kc(x, n, CutPoint(w), cfg));
  } else if (a.type == "Ks") {
    for (double x : xs)
      for (double t : parse_values(need(a.tau, "--tau")))
        for (double w : ws) row(x, t, w, ks(x, t, CutPoint(w), cfg));
  } else {
    throw std::invalid_argument("unknown kernel type '" + a.type + "' (K_imag, K_real, J, Kc, Ks)");
  }
  emit(rows, {"type", "x", "order", "w", "value", "error_estimate", "converged"}, g);
  return finish(ok);
}

// transform -------------------------------------------------------------

struct TransformArgs {
  std::string kernel, coeffs, x, n, pair;
  int terms = 8;
  int n_last = 0;
  FunctionArgs fn;
};

int cmd_synthesize(const TransformArgs& a, const Globals& g) {
  const SeriesEvalConfig cfg = g.series();
  const CoefficientSequence c = load_coefficients(a.coeffs, a.terms);
  Json rows = Json::array();
  bool ok = true;
  for (double x : parse_values(a.x)) {
    KernelValue k;
    if (a.kernel == "dual") {
      k = dual_synthesize(c, x, cfg);
    } else {
      SeriesKernel s = series_kernel_from_string(a.kernel);
      k = s == SeriesKernel::K ? synthesize_K(c, x, cfg) : s == SeriesKernel::J ? synthesize_J(c, x, cfg) : synthesize_Kc(c, x, cfg);
    }
    Json r = to_json(k);
    r["x"] = x;
    rows.push_back(r);
    ok = ok && k.converged;
  }
  emit(rows, {"x", "value", "error_estimate", "converged"}, g);
  return finish(ok);
}

int cmd_analyze(const TransformArgs& a, const Globals& g) {
  const SeriesEvalConfig cfg = g.series();
  const QuadratureConfig q = g.analysis();
  const FunctionHandle f = a.fn.get();
  std::vector<int> ns;
  if (!a.n.empty())
    ns = parse_indices(a.n);
  else
    for (int n = 1; n <= cfg.n_max; ++n) ns.push_back(n);
  Json rows = Json::array();
  bool ok = true;
  for (int n : ns) {
    KernelValue k = a.kernel == "J"    ? analyze_J(f, n, cfg, q)
                    : a.kernel == "K"  ? analyze_K(f, n, cfg, q)
                    : a.kernel == "Kc" ? analyze_Kc(f, n, cfg, q)
                                       : throw std::invalid_argument("unknown analysis kernel '" + a.kernel +
                                                                     "' (J, K, Kc)");
    Json r = to_json(k);
    r["n"] = n;
    if (!f.certified()) r["hypotheses"] = "unverified";
    rows.push_back(r);
    ok = ok && k.converged;
  }
  emit(rows, {"n", "value", "error_estimate", "converged"}, g);
  return finish(ok);
}

int cmd_expand(const TransformArgs& a, const Globals& g) {
  const SeriesEvalConfig cfg = g.series();
  const QuadratureConfig q = g.analysis();
  const FunctionHandle f = a.fn.get();
  Json rows = Json::array();
  bool ok = true;
  for (double x : parse_values(a.x)) {
    KernelValue k = a.kernel == "J"       ? expand_function_J(f, x, cfg, q)
                    : a.kernel == "Kc"    ? expand_function_Kc(f, x, cfg, q)
                    : a.kernel == "index" ? expand_index_function(f, x, cfg, q)
                                          : throw std::invalid_argument("unknown expansion kernel '" + a.kernel +
                                                                        "' (J, Kc, index)");
    Json r = to_json(k);
    r["x"] = x;
    r["f"] = f(x);
    if (!f.certified()) r["hypotheses"] = "unverified";
    rows.push_back(r);
    ok = ok && k.converged;
  }
  emit(rows, {"x", "value", "f", "error_estimate", "converged"}, g);
  return finish(ok);
}

int cmd_roundtrip(const TransformArgs& a, const Globals& g) {
  const SeriesEvalConfig cfg = g.series();
  const CoefficientSequence c = load_coefficients(a.coeffs, a.terms);
  int n_last = a.n_last > 0 ? a.n_last : static_cast<int>(c.size());
  if (n_last < 1) throw std::invalid_argument("roundtrip needs at least one coefficient or --n-last");
  Json rows = Json::array();
  bool ok = true;
  for (const RecoveryRow& r : roundtrip(a.pair, c, n_last, cfg, g.analysis())) {
    Json j = to_json(r);
    j["pair"] = a.pair;
    if (a.pair == "2.34" || a.pair == "2.35") j["method"] = "abel";
    rows.push_back(j);
    ok = ok && r.converged;
  }
  emit(rows, {"pair", "n", "original", "recovered", "error", "error_estimate", "converged"}, g);
  return finish(ok);
}

// verify ----------------------------------------------------------------

struct VerifyArgs {
  std::string id, suite;
  std::map<std::string, std::optional<double>> named;
  std::vector<std::string> params;
  std::optional<double> tolerance;
  bool timing = false;
};

int cmd_verify(const VerifyArgs& a, const Globals& g) {
  std::vector<IdentityCase> cases;
  if (!a.suite.empty()) {
    std::ifstream in(a.suite);
    if (!in) throw std::invalid_argument("cannot read suite file " + a.suite);
    try {
      cases = suite_from_json(Json::parse(in));
    } catch (const Json::exception& e) {
      throw std::invalid_argument("malformed suite file " + a.suite + ": " + e.what());
    }
  } else if (!a.id.empty()) {
    IdentityCase c;
    c.identity_id = a.id;
    c.params = parse_params(a.params);
    for (const auto& [k, v] : a.named)
      if (v) c.params[k] = *v;
    c.tolerance = a.tolerance ? *a.tolerance : default_tolerance(a.id);
    cases.push_back(c);
  } else {
    cases = default_suite();
  }
  std::vector<VerificationReport> reports = run_suite(cases, g.threads);
  int passed = 0;
  for (const auto& r : reports) passed += r.passed;
  if (g.format == "json") {
    Json arr = Json::array();
    for (const auto& r : reports) arr.push_back(to_json(r, a.timing));
    std::cout << dump_json(arr) << "\n";
  } else {
    std::cout << reports_to_csv(reports, a.timing);
  }
  std::cerr << "passed " << passed << "/" << reports.size() << "\n";
  return passed == static_cast<int>(reports.size()) ? kOk : kVerifyFailed;
}

// bvp -------------------------------------------------------------------

struct BvpArgs {
  std::string coeffs, boundary, grid = "r=0.5..4:4,theta=0.3..2.8:4";
  std::vector<std::string> params;
  int terms = 16;
  double theta0 = 2.8;
  bool check_boundary = false;
};

std::vector<PolarPoint> parse_grid(const std::string& s, bool add_boundary_rays) {
  std::string rs, ts, *cur = nullptr;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.rfind("r=", 0) == 0) {
      cur = &rs;
      item = item.substr(2);
    } else if (item.rfind("theta=", 0) == 0) {
      cur = &ts;
      item = item.substr(6);
    } else if (!cur) {
      throw std::invalid_argument("grid must look like r=a..b:N,theta=c..d:M");
    }
    *cur += (cur->empty() ? "" : ",") + item;
  }
  if (rs.empty() || ts.empty()) throw std::invalid_argument("grid needs both r= and theta= parts");
  std::vector<double> r = parse_values(rs), t = parse_values(ts);
  if (add_boundary_rays) {
    if (std::find(t.begin(), t.end(), 0.0) == t.end()) t.insert(t.begin(), 0.0);
    if (std::find(t.begin(), t.end(), kPi) == t.end()) t.push_back(kPi);
  }
  std::vector<PolarPoint> out;
  for (double ri : r)
    for (double ti : t) out.push_back({ri, ti});
  return out;
}

int cmd_bvp(const BvpArgs& a, const Globals& g) {
  if (a.coeffs.empty() == a.boundary.empty()) throw std::invalid_argument("give exactly one of --coeffs or --boundary");
  HelmholtzConfig hc;
  hc.kernel = g.kernel();
  if (g.n_max) hc.n_max = *g.n_max;
  BoundarySpec spec;
  if (!a.coeffs.empty()) {
    spec = BoundarySpec::from_coefficients(load_coefficients(a.coeffs, a.terms));
    spec.theta0 = a.theta0;
  } else {
    // example1: the boundary trace 2 J(r,i,pi) of the Example-1 coefficients.
    std::string name = a.boundary == "example1" ? "incomplete_j_boundary" : a.boundary;
    spec = BoundarySpec::from_function(FunctionHandle::builtin(name, parse_params(a.params)), g.n_max.value_or(8));
    spec.theta0 = a.theta0;
  }
  std::vector<PolarPoint> grid = parse_grid(a.grid, a.check_boundary);
  PolarField F = solve_field(spec, grid, hc, g.analysis(), g.threads);
  if (g.format == "json")
    std::cout << dump_json(to_json(F)) << "\n";
  else
    std::cout << field_to_csv(F);
  double max_res = 0.0, max_bnd = 0.0;
  for (std::size_t i = 0; i < F.grid.size(); ++i) {
    if (F.residual[i]) max_res = std::max(max_res, std::fabs(*F.residual[i]));
    if (F.boundary_error[i]) max_bnd = std::max(max_bnd, *F.boundary_error[i]);
    if (!F.diagnostic[i].empty())
      std::cerr << "point r=" << format_number(F.grid[i].r) << " theta=" << format_number(F.grid[i].theta) << ": "
                << F.diagnostic[i] << "\n";
  }
  if (!F.coefficient_diagnostic.empty()) std::cerr << "coefficients: " << F.coefficient_diagnostic << "\n";
  std::cerr << "max |residual| " << format_number(max_res) << ", max boundary error " << format_number(max_bnd)
            << ", truncation " << F.truncation_n << "\n";
  return F.checks_passed() ? kOk : kCertifiedRegion;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete Kontorovich-Lebedev transforms: kernels, transforms, identity checks, Helmholtz BVP"};
  app.fallthrough();
  app.require_subcommand(1);
  Globals g;
  app.add_option("--tol", g.tol, "relative quadrature tolerance");
  app.add_option("--n-max", g.n_max, "series truncation index");
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--threads", g.threads, "worker threads for suites and fields");

  KernelArgs ka;
  auto* kernel = app.add_subcommand("kernel", "evaluate a kernel on a grid");
  kernel->add_option("--type", ka.type, "K_imag, K_real, J, Kc or Ks")->required();
  kernel->add_option("--x", ka.x, "argument values (list or a..b:N)")->required();
  kernel->add_option("--n", ka.n, "integer order for J and Kc");
  kernel->add_option("--tau", ka.tau, "imaginary order for K_imag and Ks");
  kernel->add_option("--nu", ka.nu, "real order for K_real");
  kernel->add_option("--w", ka.w, "cut point (pi, asinh_pi or a number)");

  TransformArgs ta;
  auto* transform = app.add_subcommand("transform", "series synthesis, analysis and round trips");
  transform->require_subcommand(1);
  auto* synth = transform->add_subcommand("synthesize", "sum a kernel series");
  synth->add_option("--kernel", ta.kernel, "K, J, Kc or dual")->required();
  synth->add_option("--coeffs", ta.coeffs, "JSON array/object, file, or catalog name")->required();
  synth->add_option("--x", ta.x, "evaluation points")->required();
  synth->add_option("--terms", ta.terms, "terms listed for catalog sequences");
  auto* analyze = transform->add_subcommand("analyze", "coefficients of a function");
  analyze->add_option("--kernel", ta.kernel, "J, K or Kc")->required();
  analyze->add_option("--n", ta.n, "indices (default 1..n-max)");
  auto* expand = transform->add_subcommand("expand", "reconstruct a function from its coefficients");
  expand->add_option("--kernel", ta.kernel, "J, Kc or index")->required();
  expand->add_option("--x", ta.x, "evaluation points")->required();
  auto* rt = transform->add_subcommand("roundtrip", "synthesize then analyze a coefficient sequence");
  rt->add_option("--pair", ta.pair, "2.30 .. 2.35")->required();
  rt->add_option("--coeffs", ta.coeffs, "JSON array/object, file, or catalog name")->required();
  rt->add_option("--n-last", ta.n_last, "last recovered index (default: all listed)");
  rt->add_option("--terms", ta.terms, "terms listed for catalog sequences");
  ta.fn.add(analyze);
  ta.fn.add(expand);

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "check identities; default suite without --id or --suite");
  verify->add_option("--id", va.id, "identity id");
  verify->add_option("--suite", va.suite, "JSON suite file");
  for (const char* k : {"n", "m", "u", "x", "alpha", "nu", "tau", "u0", "N"}) {
    va.named[k];
    verify->add_option(std::string("--") + k, va.named[k], std::string("parameter ") + k);
  }
  verify->add_option("--param", va.params, "parameter key=value (repeatable)");
  verify->add_option("--tolerance", va.tolerance, "override the identity tier");
  verify->add_flag("--timing", va.timing, "include wall-clock seconds");

  BvpArgs ba;
  auto* bvp = app.add_subcommand("bvp", "Helmholtz Dirichlet problem in the upper half-plane");
  bvp->add_option("--coeffs", ba.coeffs, "coefficient sequence (catalog name, JSON or file)");
  bvp->add_option("--boundary", ba.boundary, "boundary function u(r,pi) from the catalog (example1 = 2J(r,i,pi))");
  bvp->add_option("--param", ba.params, "boundary function parameter key=value");
  bvp->add_option("--grid", ba.grid, "r=a..b:N,theta=c..d:M");
  bvp->add_option("--terms", ba.terms, "terms listed for catalog sequences");
  bvp->add_option("--theta0", ba.theta0, "certified wedge theta <= theta0");
  bvp->add_flag("--check-boundary", ba.check_boundary, "add the rays theta = 0 and theta = pi");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n" << app.help();
    return kUsage;
  }

  try {
    g.validate();
    if (*kernel) return cmd_kernel(ka, g);
    if (*transform) {
      if (*synth) return cmd_synthesize(ta, g);
      if (*analyze) return cmd_analyze(ta, g);
      if (*expand) return cmd_expand(ta, g);
      return cmd_roundtrip(ta, g);
    }
    if (*verify) return cmd_verify(va, g);
    if (*bvp) return cmd_bvp(ba, g);
  } catch (const OutsideCertifiedWedge& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCertifiedRegion;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomain;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n" << app.help();
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNonconvergence;
  }
  return kUsage;
}

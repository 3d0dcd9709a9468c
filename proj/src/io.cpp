#include "dklt/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "dklt/special.hpp"

namespace dklt {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void dump_into(const Json& j, int indent, int depth, std::string& out) {
  auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case Json::value_t::number_float: {
      double v = j.get<double>();
      out += std::isfinite(v) ? format_number(v) : "null";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        dump_into(e, indent, depth + 1, out);
      }
      newline(depth);
      out += ']';
      return;
    }
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += Json(it.key()).dump();
        out += indent < 0 ? ":" : ": ";
        dump_into(it.value(), indent, depth + 1, out);
      }
      newline(depth);
      out += '}';
      return;
    }
    default:
      out += j.dump();
  }
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::string dump_json(const Json& j, int indent) {
  std::string out;
  dump_into(j, indent, 0, out);
  return out;
}

double parse_number(const std::string& raw) {
  std::string s = trim(raw);
  if (s == "pi") return kPi;
  if (s == "-pi") return -kPi;
  if (s == "asinh_pi") return kAsinhPi;
  std::size_t pos = 0;
  double v;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a number: '" + raw + "'");
  }
  if (pos != s.size()) throw std::invalid_argument("not a number: '" + raw + "'");
  return v;
}

std::vector<double> parse_values(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_number(item));
      continue;
    }
    auto colon = item.find(':', dots);
    if (colon == std::string::npos) throw std::invalid_argument("range '" + item + "' needs a point count (a..b:N)");
    double a = parse_number(item.substr(0, dots));
    double b = parse_number(item.substr(dots + 2, colon - dots - 2));
    double nd = parse_number(item.substr(colon + 1));
    int n = static_cast<int>(nd);
    if (n < 1 || n != nd) throw std::invalid_argument("range '" + item + "' needs a positive integer count");
    for (int i = 0; i < n; ++i) out.push_back(n == 1 ? a : (i == n - 1 ? b : a + (b - a) * i / (n - 1)));
  }
  if (out.empty()) throw std::invalid_argument("empty value list");
  return out;
}

std::vector<std::string> coefficient_catalog() {
  return {"zero", "unit<m>", "exp", "exp_half_pi_sq", "cubic", "default"};
}

CoefficientSequence named_coefficients(const std::string& name, int N) {
  if (N < 1) throw std::invalid_argument("coefficient count must be >= 1");
  if (name == "zero") return CoefficientSequence::zero(N);
  if (name == "default") return default_helmholtz_coefficients(N);
  if (name.rfind("unit", 0) == 0 && name.size() > 4) {
    int m = 0;
    try {
      std::size_t pos = 0;
      m = std::stoi(name.substr(4), &pos);
      if (pos != name.size() - 4) m = 0;
    } catch (const std::exception&) {
    }
    if (m < 1) throw std::invalid_argument("unknown coefficient sequence: " + name);
    return CoefficientSequence::unit(m, std::max(N, m));
  }
  if (name == "exp") return CoefficientSequence::from_function(N, [](int n) { return std::exp(-double(n)); });
  if (name == "exp_half_pi_sq")
    return CoefficientSequence::from_function(N, [](int n) { return std::exp(-kPi * n / 2) / (double(n) * n); });
  if (name == "cubic") return CoefficientSequence::from_function(N, [](int n) { return 1.0 / (double(n) * n * n); });
  throw std::invalid_argument("unknown coefficient sequence: " + name);
}

CoefficientSequence coefficients_from_json(const Json& j) {
  CoefficientSequence a;
  const Json* arr = &j;
  if (j.is_object()) {
    if (!j.contains("a")) throw std::invalid_argument("coefficient object needs an \"a\" array");
    arr = &j.at("a");
    if (j.contains("decay_class")) a.decay_class = decay_class_from_string(j.at("decay_class").get<std::string>());
    if (j.contains("tail_bound")) a.tail_bound = j.at("tail_bound").get<double>();
    if (j.contains("delta")) a.delta = j.at("delta").get<double>();
    if (j.contains("theta0")) a.theta0 = j.at("theta0").get<double>();
  }
  if (!arr->is_array()) throw std::invalid_argument("coefficients must be a JSON array");
  for (const auto& v : *arr) {
    if (!v.is_number()) throw std::invalid_argument("coefficients must be numbers");
    a.a.push_back(v.get<double>());
  }
  a.validate();
  return a;
}

CoefficientSequence load_coefficients(const std::string& spec, int N) {
  std::string s = trim(spec);
  if (s.empty()) throw std::invalid_argument("empty coefficient specification");
  if (s[0] == '[' || s[0] == '{') {
    try {
      return coefficients_from_json(Json::parse(s));
    } catch (const Json::exception& e) {
      throw std::invalid_argument(std::string("malformed coefficient JSON: ") + e.what());
    }
  }
  std::string path = s[0] == '@' ? s.substr(1) : s;
  std::ifstream in(path);
  if (in) {
    try {
      return coefficients_from_json(Json::parse(in));
    } catch (const Json::exception& e) {
      throw std::invalid_argument("malformed coefficient file " + path + ": " + e.what());
    }
  }
  if (s[0] == '@') throw std::invalid_argument("cannot read coefficient file " + path);
  return named_coefficients(s, N);
}

Json to_json(const KernelValue& k) {
  return {{"value", k.value},
          {"error_estimate", k.error_estimate},
          {"evaluations", k.evaluations},
          {"converged", k.converged}};
}

Json to_json(const CoefficientSequence& a) {
  Json j;
  j["a"] = a.a;
  j["decay_class"] = to_string(a.decay_class);
  j["tail_bound"] = a.tail_bound;
  j["delta"] = a.delta;
  j["theta0"] = a.theta0;
  return j;
}

Json to_json(const VerificationReport& r, bool timing) {
  Json params = Json::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  Json j = {{"identity_id", r.identity_id},
            {"params", params},
            {"lhs", r.lhs},
            {"rhs", r.rhs},
            {"abs_err", r.abs_err},
            {"error_estimate", r.error_estimate},
            {"tolerance", r.tolerance},
            {"passed", r.passed},
            {"evaluations", r.evaluations}};
  if (timing) j["seconds"] = r.seconds;
  if (!r.diagnostic.empty()) j["diagnostic"] = r.diagnostic;
  if (r.identity_id == "biorth_I3" || r.identity_id == "cf_2_29") j["method"] = "abel";
  return j;
}

Json to_json(const RecoveryRow& r) {
  return {{"n", r.n},
          {"original", r.original},
          {"recovered", r.recovered},
          {"error", r.error},
          {"error_estimate", r.error_estimate},
          {"converged", r.converged}};
}

Json to_json(const PolarField& f) {
  Json pts = Json::array();
  double max_res = 0.0, max_bnd = 0.0;
  for (std::size_t i = 0; i < f.grid.size(); ++i) {
    Json p = {{"r", f.grid[i].r}, {"theta", f.grid[i].theta}, {"u", f.u[i]}, {"u_error", f.u_error[i]}};
    p["residual"] = f.residual[i] ? Json(*f.residual[i]) : Json(nullptr);
    if (f.residual[i]) max_res = std::max(max_res, std::fabs(*f.residual[i]));
    if (f.boundary_error[i]) {
      p["boundary_error"] = *f.boundary_error[i];
      max_bnd = std::max(max_bnd, *f.boundary_error[i]);
    }
    if (!f.diagnostic[i].empty()) p["diagnostic"] = f.diagnostic[i];
    pts.push_back(std::move(p));
  }
  Json j = {{"truncation_n", f.truncation_n},
            {"tolerance", f.tolerance},
            {"coefficients", to_json(f.coefficients)},
            {"max_abs_residual", max_res},
            {"max_boundary_error", max_bnd},
            {"checks_passed", f.checks_passed()},
            {"points", pts}};
  if (!f.coefficient_diagnostic.empty()) j["coefficient_diagnostic"] = f.coefficient_diagnostic;
  return j;
}

std::vector<IdentityCase> suite_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("suite must be a JSON array of cases");
  std::vector<IdentityCase> out;
  for (const auto& c : j) {
    if (!c.is_object() || !c.contains("identity_id")) throw std::invalid_argument("suite case needs an identity_id");
    IdentityCase ic;
    ic.identity_id = c.at("identity_id").get<std::string>();
    if (c.contains("params"))
      for (auto it = c.at("params").begin(); it != c.at("params").end(); ++it) ic.params[it.key()] = it.value().get<double>();
    ic.tolerance = c.contains("tolerance") ? c.at("tolerance").get<double>() : default_tolerance(ic.identity_id);
    out.push_back(std::move(ic));
  }
  return out;
}

std::string reports_to_csv(const std::vector<VerificationReport>& reports, bool timing) {
  std::string out = std::string("identity_id,params,lhs,rhs,abs_err,error_estimate,tolerance,passed") +
                    (timing ? ",seconds\n" : "\n");
  for (const auto& r : reports) {
    std::string params;
    for (const auto& [k, v] : r.params) params += (params.empty() ? "" : ";") + k + "=" + format_number(v);
    out += r.identity_id + "," + params + "," + format_number(r.lhs) + "," + format_number(r.rhs) + "," +
           format_number(r.abs_err) + "," + format_number(r.error_estimate) + "," + format_number(r.tolerance) + "," +
           (r.passed ? "true" : "false") + (timing ? "," + format_number(r.seconds) : "") + "\n";
  }
  return out;
}

std::string field_to_csv(const PolarField& f) {
  std::string out = "r,theta,u,residual\n";
  for (std::size_t i = 0; i < f.grid.size(); ++i)
    out += format_number(f.grid[i].r) + "," + format_number(f.grid[i].theta) + "," + format_number(f.u[i]) + "," +
           (f.residual[i] ? format_number(*f.residual[i]) : "") + "\n";
  return out;
}

}  // namespace dklt

#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "dklt/coefficients.hpp"
#include "dklt/helmholtz.hpp"
#include "dklt/kernels.hpp"
#include "dklt/transforms.hpp"
#include "dklt/verify.hpp"

namespace dklt {

using Json = nlohmann::json;

// 17 significant digits; "nan", "inf", "-inf" for non-finite values.
std::string format_number(double v);
// JSON text with every floating-point number at 17 significant digits and
// non-finite numbers as null.
std::string dump_json(const Json& j, int indent = 2);

// "1", "1,2,5", "a..b:N" (N equally spaced points, ends included); the
// literals pi and asinh_pi are accepted wherever a number is.
double parse_number(const std::string& s);
std::vector<double> parse_values(const std::string& s);

// Coefficient catalog, N listed terms:
//   zero, unit<m>, exp (e^{-n}), exp_half_pi_sq (e^{-pi n/2}/n^2),
//   cubic (n^{-3}), default (e^{-2 pi n}/n^3, theorem8, theta0 2.8)
CoefficientSequence named_coefficients(const std::string& name, int N = 8);
std::vector<std::string> coefficient_catalog();
// A JSON array [a_1, ...] or an object {"a": [...], "decay_class", "tail_bound",
// "delta", "theta0"}.
CoefficientSequence coefficients_from_json(const Json& j);
// Catalog name, inline JSON, or @path / path of a JSON file.
CoefficientSequence load_coefficients(const std::string& spec, int N = 8);

Json to_json(const KernelValue& k);
Json to_json(const CoefficientSequence& a);
// Wall-clock seconds only with timing.
Json to_json(const VerificationReport& r, bool timing = false);
Json to_json(const RecoveryRow& r);
Json to_json(const PolarField& f);

// Suite file: an array of {"identity_id", "params": {...}, "tolerance"?}.
std::vector<IdentityCase> suite_from_json(const Json& j);

std::string reports_to_csv(const std::vector<VerificationReport>& reports, bool timing = false);
// Header r,theta,u,residual; residual empty where not computed.
std::string field_to_csv(const PolarField& f);

}  // namespace dklt

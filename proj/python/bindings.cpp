#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dklt/errors.hpp"
#include "dklt/helmholtz.hpp"
#include "dklt/io.hpp"
#include "dklt/kernels.hpp"
#include "dklt/transforms.hpp"
#include "dklt/verify.hpp"

namespace py = pybind11;
using namespace dklt;

namespace {

std::pair<double, double> pair_of(const KernelValue& k) { return {k.value, k.error_estimate}; }

CutPoint cut(double w) { return CutPoint(w); }

}  // namespace

// Structured results cross the boundary as JSON text; the package wrapper decodes them.
PYBIND11_MODULE(_dklt, m) {
  auto domain = py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<OutsideCertifiedWedge>(m, "OutsideCertifiedWedge", domain.ptr());

  m.attr("PI_CUT") = CutPoint::pi().w;
  m.attr("ASINH_PI_CUT") = CutPoint::asinh_pi().w;

  m.def("macdonald_imag", [](double tau, double x) { return pair_of(macdonald_imag(tau, x)); }, py::arg("tau"), py::arg("x"));
  m.def("macdonald_real", [](double nu, double x) { return pair_of(macdonald_real(nu, x)); }, py::arg("nu"), py::arg("x"));
  m.def("j_incomplete", [](double x, int n, double w) { return pair_of(j_incomplete(x, n, cut(w))); },
        py::arg("x"), py::arg("n"), py::arg("w"));
  m.def("kc", [](double x, int n, double w) { return pair_of(kc(x, n, cut(w))); }, py::arg("x"), py::arg("n"), py::arg("w"));
  m.def("ks", [](double x, double tau, double w) { return pair_of(ks(x, tau, cut(w))); },
        py::arg("x"), py::arg("tau"), py::arg("w"));
  m.def("ode_residual_j", [](double x, int n, double w) { return ode_residual_j(x, n, cut(w)); },
        py::arg("x"), py::arg("n"), py::arg("w"));

  m.def("coefficients_json", [](const std::string& spec, int N) { return dump_json(to_json(load_coefficients(spec, N)), -1); },
        py::arg("spec"), py::arg("n") = 8);
  m.def("synthesize", [](const std::string& kernel, const std::string& coeffs, double x) {
          auto a = load_coefficients(coeffs);
          switch (series_kernel_from_string(kernel)) {
            case SeriesKernel::K: return pair_of(synthesize_K(a, x));
            case SeriesKernel::J: return pair_of(synthesize_J(a, x));
            case SeriesKernel::Kc: return pair_of(synthesize_Kc(a, x));
          }
          throw std::invalid_argument("unknown kernel");
        },
        py::arg("kernel"), py::arg("coeffs"), py::arg("x"));
  m.def("analyze", [](const std::string& kernel, const std::string& function, const std::map<std::string, double>& params, int n) {
          auto f = FunctionHandle::builtin(function, params);
          switch (series_kernel_from_string(kernel)) {
            case SeriesKernel::K: return pair_of(analyze_K(f, n));
            case SeriesKernel::J: return pair_of(analyze_J(f, n));
            case SeriesKernel::Kc: return pair_of(analyze_Kc(f, n));
          }
          throw std::invalid_argument("unknown kernel");
        },
        py::arg("kernel"), py::arg("function"), py::arg("params"), py::arg("n"));
  m.def("roundtrip_json", [](const std::string& pair, const std::string& coeffs, int n_last) {
          Json rows = Json::array();
          for (const auto& r : roundtrip(pair, load_coefficients(coeffs), n_last)) rows.push_back(to_json(r));
          return dump_json(rows, -1);
        },
        py::arg("pair"), py::arg("coeffs"), py::arg("n_last"));

  m.def("identity_ids", &identity_ids);
  m.def("default_tolerance", &default_tolerance, py::arg("identity_id"));
  m.def("verify_json", [](const std::string& id, const Params& params, double tol) {
          IdentityCase c{id, params, tol > 0 ? tol : default_tolerance(id)};
          py::gil_scoped_release release;
          return dump_json(to_json(run_case(c)), -1);
        },
        py::arg("identity_id"), py::arg("params"), py::arg("tolerance") = 0.0);

  m.def("solution_u", [](double r, double theta, const std::string& coeffs) {
          return pair_of(solution_u({r, theta}, load_coefficients(coeffs, 16)));
        },
        py::arg("r"), py::arg("theta"), py::arg("coeffs") = "default");
  m.def("pde_residual", [](double r, double theta, const std::string& coeffs) {
          return pde_residual({r, theta}, load_coefficients(coeffs, 16));
        },
        py::arg("r"), py::arg("theta"), py::arg("coeffs") = "default");
  m.def("bvp_json", [](const std::string& coeffs, double r0, double r1, int n_r, double t0, double t1, int n_theta) {
          auto spec = BoundarySpec::from_coefficients(load_coefficients(coeffs, 16));
          auto grid = polar_grid(r0, r1, n_r, t0, t1, n_theta);
          py::gil_scoped_release release;
          return dump_json(to_json(solve_field(spec, grid)), -1);
        },
        py::arg("coeffs"), py::arg("r0"), py::arg("r1"), py::arg("n_r"), py::arg("t0"), py::arg("t1"), py::arg("n_theta"));
}

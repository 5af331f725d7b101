#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tclab/errors.hpp"
#include "tclab/reports.hpp"
#include "tclab/verify.hpp"

namespace py = pybind11;
using namespace tclab;

namespace {

std::string dump(const Json& j) { return j.dump(); }

std::optional<Vec> to_vec(const std::optional<std::vector<long long>>& c) {
  if (!c) return std::nullopt;
  Vec v;
  for (long long x : *c) v.push_back(Integer(x));
  return v;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Reports from the tclab engine as JSON strings";
  static py::exception<Error> error(m, "TclabError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  m.def("cohomology", [](const std::string& g, const std::string& mod, int n, const std::string& flavor,
                         const std::string& cache) {
    return dump(cohomology_report(g, mod, n, flavor, ResolutionCache(cache)));
  }, py::arg("group"), py::arg("module"), py::arg("degree"), py::arg("flavor") = "default", py::arg("cache") = "");
  m.def("ext", [](const std::string& g, const std::string& mod, const std::string& a, int n) {
    return dump(ext_report(g, mod, a, n, ResolutionCache("")));
  }, py::arg("group"), py::arg("module"), py::arg("coeff"), py::arg("degree"));
  m.def("canonical", [](const std::string& g) { return dump(canonical_report(g)); }, py::arg("group"));
  m.def("power", [](const std::string& g, int n) { return dump(power_report(g, n)); }, py::arg("group"),
        py::arg("degree"));
  m.def("obstructions", [](const std::string& g, const std::string& a, int n,
                           const std::optional<std::vector<long long>>& c) {
    return dump(obstructions_report(g, a, n, to_vec(c)));
  }, py::arg("group"), py::arg("coeff"), py::arg("degree"), py::arg("coordinates") = py::none());
  m.def("essential", [](const std::string& g, const std::string& a, int n) { return dump(essential_report(g, a, n)); },
        py::arg("group"), py::arg("coeff"), py::arg("degree"));
  m.def("e0_check", [](const std::string& g, const std::string& a, int s_max, int r_max) {
    return dump(e0_report(g, a, s_max, r_max));
  }, py::arg("group"), py::arg("coeff") = "trivial-Z", py::arg("s_max") = 2, py::arg("r_max") = 2);
  m.def("phi_check", [](const std::string& g, const std::string& a, int i_max) { return dump(phi_report(g, a, i_max)); },
        py::arg("group"), py::arg("coeff") = "trivial-Z", py::arg("i_max") = 2);
  m.def("zdcl", [](const std::string& s) { return dump(zdcl_report(s)); }, py::arg("space"));
  m.def("tc_report", [](const std::string& s) { return dump(tc_space_report(s)); }, py::arg("space"));
  m.def("tc_bound", [](const std::string& g, const std::string& a, int n_max) {
    return dump(tc_group_report(g, a, n_max));
  }, py::arg("group"), py::arg("coeff") = "aug-ideal", py::arg("n_max") = 2);
  m.def("verify", [](const std::string& suite, const std::optional<std::string>& group) {
    if (!is_suite(suite)) fail(ErrorCode::UnknownSpec, "unknown suite " + suite);
    SuiteOptions opt;
    opt.group = group;
    return dump(suites_json(run_suites(suite, opt)));
  }, py::arg("suite"), py::arg("group") = py::none());
  m.def("suite_names", [] { return suite_names(); });
}

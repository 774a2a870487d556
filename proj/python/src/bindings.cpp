#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gapchannel/errors.hpp"
#include "gapchannel/harness/acceptance.hpp"
#include "gapchannel/harness/config.hpp"
#include "gapchannel/harness/csv.hpp"
#include "gapchannel/harness/presets.hpp"
#include "gapchannel/harness/runner.hpp"
#include "gapchannel/master/analytics.hpp"

namespace py = pybind11;
using namespace gapchannel;

namespace {

py::object cell_to_py(const harness::Cell& c) {
  return std::visit([](const auto& v) -> py::object { return py::cast(v); }, c);
}

// (metadata json, columns, rows) -> the Python layer turns this into a dict.
py::tuple table_to_py(const harness::Table& t) {
  py::list rows;
  for (const auto& row : t.rows) {
    py::list r;
    for (const auto& c : row) r.append(cell_to_py(c));
    rows.append(r);
  }
  return py::make_tuple(t.metadata.dump(), t.columns, rows);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Native core of the gapchannel simulations";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
  py::register_exception<RegimeError>(m, "RegimeError", PyExc_ArithmeticError);
  py::register_exception<StabilityError>(m, "StabilityError", PyExc_ArithmeticError);

  m.def("version", &harness::code_version);

  m.def(
      "run_config",
      [](const std::string& text, bool desk) { return table_to_py(harness::run_experiment(harness::parse_config(text), desk)); },
      py::arg("text"), py::arg("desk") = false, "Run one experiment from config text.");

  m.def("format_csv",
        [](const std::string& text, bool desk) { return harness::format_csv(harness::run_experiment(harness::parse_config(text), desk)); },
        py::arg("text"), py::arg("desk") = false);

  m.def("preset_names", &harness::preset_names);
  m.def(
      "preset_configs",
      [](const std::string& name, bool desk) {
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& r : harness::preset_runs(name, desk)) out.emplace_back(r.stem, r.config);
        return out;
      },
      py::arg("name"), py::arg("desk") = false);

  m.def(
      "master_coefficients",
      [](double Omega, double Omega0, double omega, int d) {
        const auto c = master::asymptotic_coefficients({Omega, Omega0, omega, d});
        py::dict out;
        out["x0"] = c.x0;
        out["x1"] = c.x1;
        out["y0"] = c.y0;
        out["y1"] = c.y1;
        out["regime"] = master::to_string(c.regime);
        return out;
      },
      py::arg("Omega"), py::arg("Omega0"), py::arg("omega"), py::arg("d"));

  m.def(
      "oscillation_frequency",
      [](double Omega, double Omega0, double omega, int d, double Ja) {
        const auto r = master::oscillation_frequency_residue({Omega, Omega0, omega, d}, Ja);
        return py::make_tuple(r.quadrature, r.frequency, r.branch);
      },
      py::arg("Omega"), py::arg("Omega0"), py::arg("omega"), py::arg("d"), py::arg("Ja"),
      "(quadrature, residue, residue branch)");

  m.def(
      "verify",
      [](std::vector<int> criteria, int chi) {
        harness::AcceptanceOptions o;
        o.criteria = std::move(criteria);
        o.chi = chi;
        std::vector<std::pair<bool, std::string>> out;
        for (const auto& r : harness::run_acceptance(o)) out.emplace_back(r.pass(), harness::format_result_line(r));
        return out;
      },
      py::arg("criteria"), py::arg("chi") = 10);
}

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "nanotrap/cli.hpp"
#include "nanotrap/constants.hpp"
#include "nanotrap/doublewell.hpp"
#include "nanotrap/errors.hpp"
#include "nanotrap/onedgas.hpp"
#include "nanotrap/singlewell.hpp"
#include "nanotrap/stability.hpp"

namespace py = pybind11;
using namespace nanotrap;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Nanowire atom-waveguide design calculator";

  auto base = py::register_exception<Error>(m, "NanotrapError", PyExc_RuntimeError);
  py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
  py::register_exception<SingularPointError>(m, "SingularPointError", base.ptr());
  py::register_exception<ResonanceError>(m, "ResonanceError", base.ptr());
  py::register_exception<NoBarrierError>(m, "NoBarrierError", base.ptr());
  py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());

  m.attr("CONSTANTS_VERSION") = std::string(kConstantsVersion);
  m.attr("hbar") = kConstants.hbar;
  m.attr("mu0") = kConstants.mu0;
  m.attr("muB") = kConstants.muB;
  m.attr("kB") = kConstants.kB;

  py::class_<AtomSpecies>(m, "AtomSpecies")
      .def_readwrite("mass", &AtomSpecies::mass)
      .def_readwrite("F", &AtomSpecies::F)
      .def_readwrite("mF", &AtomSpecies::mF)
      .def_readwrite("gF", &AtomSpecies::gF)
      .def_readwrite("a3d", &AtomSpecies::a3d)
      .def_property_readonly("moment", &AtomSpecies::moment);

  py::class_<NanowireSpec>(m, "NanowireSpec")
      .def_readwrite("length", &NanowireSpec::length)
      .def_readwrite("total_length", &NanowireSpec::total_length)
      .def_readwrite("outer_radius", &NanowireSpec::outer_radius)
      .def_readwrite("inner_radius", &NanowireSpec::inner_radius)
      .def_readwrite("young", &NanowireSpec::young)
      .def_readwrite("density", &NanowireSpec::density)
      .def_readwrite("conductivity", &NanowireSpec::conductivity)
      .def_readwrite("conduction_area", &NanowireSpec::conduction_area);

  m.def("default_rb87", &default_rb87);
  m.def("default_mwnt", &default_mwnt);

  py::class_<SingleWellTrap>(m, "SingleWellTrap")
      .def_readonly("I", &SingleWellTrap::I)
      .def_readonly("y0", &SingleWellTrap::y0)
      .def_readonly("omega", &SingleWellTrap::omega)
      .def_readonly("l0", &SingleWellTrap::l0)
      .def_readonly("d", &SingleWellTrap::d)
      .def_readonly("chi", &SingleWellTrap::chi)
      .def_readonly("Bx", &SingleWellTrap::Bx)
      .def_readonly("Bz", &SingleWellTrap::Bz)
      .def_readonly("loss_rate", &SingleWellTrap::loss_rate)
      .def_readonly("omega_L", &SingleWellTrap::omega_L)
      .def_property_readonly("warnings", [](const SingleWellTrap& t) {
        std::vector<std::string> codes;
        for (const auto& w : t.warnings) codes.push_back(w.code);
        return codes;
      });

  m.def("design_from_current_and_d", &design_from_current_and_d, py::arg("I"), py::arg("d"), py::arg("chi"),
        py::arg("species") = default_rb87());
  m.def("design_from_fields", &design_from_fields, py::arg("I"), py::arg("Bx"), py::arg("Bz"),
        py::arg("species") = default_rb87());
  m.def("majorana_loss_rate", &majorana_loss_rate, py::arg("omega"), py::arg("chi"));
  m.def("escape_barrier", &escape_barrier, py::arg("d"), py::arg("chi"));

  py::class_<GasProfile>(m, "GasProfile")
      .def_readonly("omega", &GasProfile::omega)
      .def_readonly("omega_z", &GasProfile::omega_z)
      .def_readonly("N", &GasProfile::N)
      .def_readonly("a1d", &GasProfile::a1d)
      .def_readonly("g1d", &GasProfile::g1d)
      .def_readonly("eta", &GasProfile::eta)
      .def_readonly("length", &GasProfile::length)
      .def_property_readonly("regime", [](const GasProfile& g) { return std::string(to_string(g.regime)); });

  m.def("a1d_from_confinement", &a1d_from_confinement, py::arg("a3d"), py::arg("l0"),
        py::arg("resonance_window") = 1e-6);
  m.def("characterize_gas", [](double omega, double omega_z, std::int64_t N, const AtomSpecies& s) {
    return characterize_gas(omega, omega_z, N, s);
  }, py::arg("omega"), py::arg("omega_z"), py::arg("N"), py::arg("species") = default_rb87());
  m.def("max_atoms_for_wire", [](double L, double omega_z, double a1d, double fill, const AtomSpecies& s) {
    return max_atoms_for_wire(L, omega_z, a1d, s, fill);
  }, py::arg("length"), py::arg("omega_z"), py::arg("a1d"), py::arg("fill_fraction") = 1.0,
     py::arg("species") = default_rb87());

  py::class_<DoubleWellTrap>(m, "DoubleWellTrap")
      .def_readonly("I", &DoubleWellTrap::I)
      .def_readonly("x0", &DoubleWellTrap::x0)
      .def_readonly("y0", &DoubleWellTrap::y0)
      .def_readonly("dx", &DoubleWellTrap::dx)
      .def_readonly("dy", &DoubleWellTrap::dy)
      .def_readonly("omega", &DoubleWellTrap::omega)
      .def_readonly("omega0", &DoubleWellTrap::omega0)
      .def_readonly("l0", &DoubleWellTrap::l0)
      .def_readonly("chi", &DoubleWellTrap::chi)
      .def_readonly("Bx", &DoubleWellTrap::Bx)
      .def_readonly("Bz", &DoubleWellTrap::Bz)
      .def_readonly("barrier_over_hbar_omega", &DoubleWellTrap::barrier_over_hbar_omega);

  py::class_<WkbResult>(m, "WkbResult")
      .def_readonly("x_a", &WkbResult::x_a)
      .def_readonly("x_b", &WkbResult::x_b)
      .def_readonly("action", &WkbResult::action)
      .def_readonly("ratio", &WkbResult::ratio);

  m.def("design_double", &design_double, py::arg("I"), py::arg("x0"), py::arg("y0"), py::arg("chi"),
        py::arg("species") = default_rb87());
  m.def("frequency_ratio", &frequency_ratio, py::arg("x0"), py::arg("y0"));
  m.def("barrier_height", &barrier_height, py::arg("dx"), py::arg("dy"), py::arg("chi"));
  m.def("wkb_tunneling", [](const DoubleWellTrap& t) { return wkb_tunneling(t); }, py::arg("trap"));

  m.def("fundamental_mode_frequency", &fundamental_mode_frequency, py::arg("wire"));
  m.def("thermal_sigma", &thermal_sigma, py::arg("wire"), py::arg("temperature"));
  m.def("stability_report", [](const SingleWellTrap& trap, double T, const NanowireSpec& wire) {
    const auto report = stability_report(trap, wire, T, default_rb87(), NoiseSpectrum::shot_noise(), {});
    return to_json(report).dump();
  }, py::arg("trap"), py::arg("temperature") = 300.0, py::arg("wire") = default_mwnt(),
     "Budget report as a JSON string.");

  m.def("run_cli", [](std::vector<std::string> args) {
    std::vector<const char*> argv{"nanotrap"};
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"), "Run the command-line front end; returns (exit_code, stdout, stderr).");
}

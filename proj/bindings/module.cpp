#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "snewton/diagnostics.hpp"
#include "snewton/evolve.hpp"
#include "snewton/experiments.hpp"
#include "snewton/io.hpp"
#include "snewton/poisson.hpp"
#include "snewton/quadrature.hpp"
#include "snewton/stationary.hpp"
#include "snewton/state.hpp"
#include "snewton/units.hpp"
#include "snewton/version.hpp"

namespace py = pybind11;
using namespace snewton;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) {
  return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

py::array_t<cdouble> to_array(const std::vector<cdouble>& v) {
  return py::array_t<cdouble>(static_cast<py::ssize_t>(v.size()), v.data());
}

std::vector<double> from_array(const py::array_t<double, py::array::c_style>& a) {
  return {a.data(), a.data() + a.size()};
}

std::vector<cdouble> from_array(const py::array_t<cdouble, py::array::c_style>& a) {
  return {a.data(), a.data() + a.size()};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "radial self-gravitating wave-packet evolution";
  m.attr("__version__") = kVersion;

  py::register_exception<grid_error>(m, "GridError", PyExc_ValueError);
  py::register_exception<insufficient_points_error>(m, "InsufficientPointsError",
                                                    PyExc_ValueError);
  py::register_exception<instability_error>(m, "InstabilityError", PyExc_RuntimeError);
  py::register_exception<bracketing_error>(m, "BracketingError", PyExc_RuntimeError);
  py::register_exception<no_peak_error>(m, "NoPeakError", PyExc_RuntimeError);
  py::register_exception<domain_exceeded_error>(m, "DomainExceededError", PyExc_RuntimeError);

  py::class_<CodeUnits>(m, "CodeUnits")
      .def(py::init<double>(), py::arg("sigma_si"))
      .def_property_readonly("sigma_si", &CodeUnits::sigma_si)
      .def_property_readonly("time_unit_si", &CodeUnits::time_unit_si)
      .def_property_readonly("mass_unit_si", &CodeUnits::mass_unit_si)
      .def_property_readonly("energy_unit_si", &CodeUnits::energy_unit_si)
      .def("length_to_si", &CodeUnits::length_to_si)
      .def("length_from_si", &CodeUnits::length_from_si)
      .def("time_to_si", &CodeUnits::time_to_si)
      .def("time_from_si", &CodeUnits::time_from_si)
      .def("mass_to_si", &CodeUnits::mass_to_si)
      .def("mass_from_si", &CodeUnits::mass_from_si)
      .def("energy_to_si", &CodeUnits::energy_to_si)
      .def("energy_from_si", &CodeUnits::energy_from_si);

  py::class_<RadialGrid>(m, "RadialGrid")
      .def(py::init<double, std::size_t>(), py::arg("dr"), py::arg("n_points"))
      .def_readonly("dr", &RadialGrid::dr)
      .def_readonly("n_points", &RadialGrid::n_points)
      .def_property_readonly("outer_radius", &RadialGrid::outer_radius)
      .def("r", &RadialGrid::r);

  py::class_<WaveState>(m, "WaveState")
      .def_readonly("grid", &WaveState::grid)
      .def_readwrite("mass", &WaveState::mass)
      .def_readwrite("t", &WaveState::t)
      .def_property(
          "u", [](const WaveState& s) { return to_array(s.u); },
          [](WaveState& s, const py::array_t<cdouble, py::array::c_style>& a) {
            s.u = from_array(a);
          });

  py::class_<PotentialField>(m, "PotentialField")
      .def_readonly("grid", &PotentialField::grid)
      .def_property_readonly("phi", [](const PotentialField& f) { return to_array(f.phi); })
      .def_property_readonly("absorber",
                             [](const PotentialField& f) { return to_array(f.absorber); });

  m.def("gaussian_initial", &gaussian_initial, py::arg("grid"), py::arg("mass"),
        py::arg("sigma"));
  m.def("apply_scale", &apply_scale, py::arg("state"), py::arg("lambda_"));
  m.def("rescale_mu", &rescale_mu, py::arg("state"), py::arg("mu"));

  py::enum_<CumulativeDirection>(m, "CumulativeDirection")
      .value("FROM_ORIGIN", CumulativeDirection::FromOrigin)
      .value("FROM_OUTER", CumulativeDirection::FromOuter);
  m.def(
      "newton_cotes_cumulative",
      [](const py::array_t<double, py::array::c_style>& f, double dr,
         CumulativeDirection dir) {
        return to_array(newton_cotes_cumulative(from_array(f), dr, dir));
      },
      py::arg("f"), py::arg("dr"), py::arg("direction") = CumulativeDirection::FromOrigin);
  m.def(
      "newton_cotes_integrate",
      [](const py::array_t<double, py::array::c_style>& f, double dr) {
        return newton_cotes_integrate(from_array(f), dr);
      },
      py::arg("f"), py::arg("dr"));

  m.def("compute_potential", &compute_potential, py::arg("state"));
  m.def("analytic_gaussian_potential", &analytic_gaussian_potential, py::arg("r"),
        py::arg("mass"), py::arg("sigma"));

  py::class_<EvolutionParams>(m, "EvolutionParams")
      .def(py::init<>())
      .def_readwrite("dt_factor", &EvolutionParams::dt_factor)
      .def_readwrite("absorber_amplitude", &EvolutionParams::absorber_amplitude)
      .def_readwrite("absorber_width", &EvolutionParams::absorber_width)
      .def_readwrite("absorber_steepness", &EvolutionParams::absorber_steepness)
      .def_readwrite("t_end", &EvolutionParams::t_end)
      .def_readwrite("snapshot_interval", &EvolutionParams::snapshot_interval)
      .def_readwrite("self_gravity", &EvolutionParams::self_gravity)
      .def("time_step", &EvolutionParams::time_step);

  m.def(
      "second_derivative",
      [](const py::array_t<cdouble, py::array::c_style>& u, const RadialGrid& grid) {
        return to_array(second_derivative(from_array(u), grid));
      },
      py::arg("u"), py::arg("grid"));
  m.def(
      "absorber_profile",
      [](const RadialGrid& grid, const EvolutionParams& params) {
        return to_array(absorber_profile(grid, params));
      },
      py::arg("grid"), py::arg("params"));
  m.def("rk4_step", &rk4_step, py::arg("state"), py::arg("params"));

  py::class_<DiagnosticsRecord>(m, "DiagnosticsRecord")
      .def_readonly("t", &DiagnosticsRecord::t)
      .def_readonly("norm", &DiagnosticsRecord::norm)
      .def_readonly("energy_expectation", &DiagnosticsRecord::energy_expectation)
      .def_readonly("sn_energy", &DiagnosticsRecord::sn_energy)
      .def_readonly("r_peak", &DiagnosticsRecord::r_peak)
      .def_readonly("peak_value", &DiagnosticsRecord::peak_value)
      .def_readonly("v_peak", &DiagnosticsRecord::v_peak)
      .def_readonly("v_escape", &DiagnosticsRecord::v_escape)
      .def_readonly("m_enclosed", &DiagnosticsRecord::m_enclosed);

  py::class_<EvolutionResult>(m, "EvolutionResult")
      .def_readonly("state", &EvolutionResult::state)
      .def_readonly("trajectory", &EvolutionResult::trajectory)
      .def_readonly("cancelled", &EvolutionResult::cancelled)
      .def_readonly("steps", &EvolutionResult::steps);

  m.def(
      "evolve",
      [](const WaveState& state, const EvolutionParams& params, const py::object& observer) {
        Observer cb;
        if (!observer.is_none())
          cb = [observer](const DiagnosticsRecord& rec, const WaveState& s) {
            observer(rec, s);
          };
        return evolve(state, params, cb);
      },
      py::arg("state"), py::arg("params"), py::arg("observer") = py::none());

  m.def("total_probability",
        py::overload_cast<const WaveState&, double>(&total_probability), py::arg("state"),
        py::arg("r_max"));
  m.def("total_probability", py::overload_cast<const WaveState&>(&total_probability),
        py::arg("state"));
  m.def(
      "hamiltonian_expectation",
      [](const WaveState& state, const PotentialField& field) {
        double residual = 0.0;
        const double value = hamiltonian_expectation(state, field, &residual);
        return py::make_tuple(value, residual);
      },
      py::arg("state"), py::arg("field"));
  m.def("sn_energy", &sn_energy, py::arg("state"), py::arg("field"));

  py::class_<Peak>(m, "Peak")
      .def_readonly("r", &Peak::r)
      .def_readonly("value", &Peak::value);
  m.def("find_peak", &find_peak, py::arg("state"));
  m.def("mass_within", &mass_within, py::arg("state"), py::arg("r"));
  m.def("escape_velocity", &escape_velocity, py::arg("state"));
  m.def(
      "peak_velocity",
      [](const py::array_t<double, py::array::c_style>& t,
         const py::array_t<double, py::array::c_style>& r) {
        return to_array(peak_velocity(from_array(t), from_array(r)));
      },
      py::arg("t"), py::arg("r_peak"));
  m.def("diagnose", &diagnose, py::arg("state"), py::arg("field"));

  py::class_<StationaryState>(m, "StationaryState")
      .def_readonly("grid", &StationaryState::grid)
      .def_property_readonly("u0", [](const StationaryState& s) { return to_array(s.u0); })
      .def_property_readonly("v", [](const StationaryState& s) { return to_array(s.v); })
      .def_readonly("phi_origin", &StationaryState::phi_origin)
      .def_readonly("energy", &StationaryState::energy)
      .def_readonly("node_count", &StationaryState::node_count)
      .def_readonly("mass", &StationaryState::mass);
  m.def("solve_groundstate", &solve_groundstate, py::arg("mass"), py::arg("grid"),
        py::call_guard<py::gil_scoped_release>());
  m.def("to_wave_state", &to_wave_state, py::arg("groundstate"));
  m.def("potential_of", &potential_of, py::arg("groundstate"));
  m.def("fractional_groundstate", &fractional_groundstate, py::arg("groundstate"),
        py::arg("p"));

  py::enum_<Fate>(m, "Fate")
      .value("BOUND", Fate::Bound)
      .value("ESCAPING", Fate::Escaping)
      .value("UNDECIDED", Fate::Undecided);

  py::class_<RunGridConfig>(m, "RunGridConfig")
      .def(py::init<>())
      .def_readwrite("dr", &RunGridConfig::dr)
      .def_readwrite("domain_radius", &RunGridConfig::domain_radius)
      .def_readwrite("sigma", &RunGridConfig::sigma)
      .def_readwrite("dt_factor", &RunGridConfig::dt_factor)
      .def_readwrite("snapshot_interval", &RunGridConfig::snapshot_interval)
      .def_readwrite("absorber_amplitude", &RunGridConfig::absorber_amplitude)
      .def_readwrite("absorber_width", &RunGridConfig::absorber_width)
      .def_readwrite("absorber_steepness", &RunGridConfig::absorber_steepness);

  py::class_<FateConfig>(m, "FateConfig")
      .def(py::init<>())
      .def_readwrite("run", &FateConfig::run)
      .def_readwrite("horizon", &FateConfig::horizon)
      .def_readwrite("turnaround_drop", &FateConfig::turnaround_drop)
      .def_readwrite("tail_fraction", &FateConfig::tail_fraction)
      .def_readwrite("max_horizon_doublings", &FateConfig::max_horizon_doublings)
      .def_readwrite("domain_guard_fraction", &FateConfig::domain_guard_fraction);

  py::class_<FateReport>(m, "FateReport")
      .def_readonly("mass", &FateReport::mass)
      .def_readonly("fate", &FateReport::fate)
      .def_readonly("r_peak_max", &FateReport::r_peak_max)
      .def_readonly("turnaround_time", &FateReport::turnaround_time)
      .def_readonly("v_peak_final", &FateReport::v_peak_final)
      .def_readonly("v_escape_final", &FateReport::v_escape_final)
      .def_readonly("horizon", &FateReport::horizon);

  py::class_<MassBracket>(m, "MassBracket")
      .def_readonly("lo", &MassBracket::lo)
      .def_readonly("hi", &MassBracket::hi);

  m.def(
      "classify_fate",
      [](double mass, double horizon, const FateConfig& config) {
        return classify_fate(mass, horizon, config);
      },
      py::arg("mass"), py::arg("horizon"), py::arg("config") = FateConfig(),
      py::call_guard<py::gil_scoped_release>());
  m.def("bisect_critical_mass", &bisect_critical_mass, py::arg("lo"), py::arg("hi"),
        py::arg("tol"), py::arg("config") = FateConfig(),
        py::call_guard<py::gil_scoped_release>());
  m.def("gaussian_shell_fraction", &gaussian_shell_fraction);
  m.def("force_balance_mass", &force_balance_mass);
  m.def("groundstate_energy", &groundstate_energy, py::arg("mass"),
        py::call_guard<py::gil_scoped_release>());
  m.def("free_gaussian_analytic", &free_gaussian_analytic, py::arg("r"), py::arg("t"),
        py::arg("mass"), py::arg("sigma"));

  py::class_<ConvergenceCurve>(m, "ConvergenceCurve")
      .def_readonly("dr", &ConvergenceCurve::dr)
      .def_property_readonly("x", [](const ConvergenceCurve& c) { return to_array(c.x); })
      .def_property_readonly("error",
                             [](const ConvergenceCurve& c) { return to_array(c.error); })
      .def_property_readonly(
          "scaled_error", [](const ConvergenceCurve& c) { return to_array(c.scaled_error); })
      .def_readonly("max_error", &ConvergenceCurve::max_error);
  m.def(
      "convergence_poisson",
      [](const std::vector<double>& resolutions, double domain_radius, double mass,
         double sigma) { return convergence_poisson(resolutions, domain_radius, mass, sigma); },
      py::arg("resolutions"), py::arg("domain_radius") = 16.0, py::arg("mass") = 1.0,
      py::arg("sigma") = 1.0, py::call_guard<py::gil_scoped_release>());
  m.def(
      "convergence_free_particle",
      [](const std::vector<double>& resolutions, double t_end, double domain_radius,
         double mass, double sigma, double dt_factor, double snapshot_interval) {
        return convergence_free_particle(resolutions, t_end, domain_radius, mass, sigma,
                                         dt_factor, snapshot_interval);
      },
      py::arg("resolutions"), py::arg("t_end"), py::arg("domain_radius") = 16.0,
      py::arg("mass") = 1.0, py::arg("sigma") = 1.0, py::arg("dt_factor") = 0.1,
      py::arg("snapshot_interval") = 0.05, py::call_guard<py::gil_scoped_release>());

  py::class_<ApproachSample>(m, "ApproachSample")
      .def_readonly("t", &ApproachSample::t)
      .def_readonly("energy", &ApproachSample::energy)
      .def_readonly("norm", &ApproachSample::norm)
      .def_readonly("target", &ApproachSample::target);
  py::class_<ApproachResult>(m, "ApproachResult")
      .def_readonly("series", &ApproachResult::series)
      .def_readonly("final_energy", &ApproachResult::final_energy)
      .def_readonly("final_norm", &ApproachResult::final_norm)
      .def_readonly("groundstate_energy", &ApproachResult::groundstate_energy)
      .def_readonly("relative_gap", &ApproachResult::relative_gap);
  m.def("groundstate_approach_run", &groundstate_approach_run, py::arg("mass"),
        py::arg("horizon"), py::arg("run") = RunGridConfig(),
        py::call_guard<py::gil_scoped_release>());

  m.def("write_timeseries",
        [](const std::vector<DiagnosticsRecord>& records, const std::filesystem::path& path) {
          write_timeseries(records, path);
        },
        py::arg("records"), py::arg("path"));
  m.def("write_snapshot", &write_snapshot, py::arg("state"), py::arg("field"),
        py::arg("path"));
  m.def("format_double", &format_double, py::arg("x"));
}

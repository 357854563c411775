// Python surface: configuration, synthesis, both recovery paths, scoring,
// feasibility, and the Monte-Carlo sweep (JSON spec in, CSV out).

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tenrad/errors.hpp"
#include "tenrad/harness.hpp"
#include "tenrad/metrics.hpp"
#include "tenrad/omp.hpp"
#include "tenrad/serialize.hpp"
#include "tenrad/synth.hpp"
#include "tenrad/tc.hpp"

namespace py = pybind11;
using namespace tenrad;

namespace {

std::vector<std::tuple<int, int, int>> triples_out(const std::vector<Triple>& ts) {
  std::vector<std::tuple<int, int, int>> out;
  for (const Triple& t : ts) out.emplace_back(t.i, t.j, t.k);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "sub-Nyquist MIMO radar simulation and recovery";

  py::register_exception<error>(m, "Error");

  py::class_<RadarConfig>(m, "RadarConfig")
      .def(py::init<>())
      .def_readwrite("wavelength", &RadarConfig::wavelength)
      .def_readwrite("full_tx_count", &RadarConfig::full_tx_count)
      .def_readwrite("full_rx_count", &RadarConfig::full_rx_count)
      .def_readwrite("tx_positions", &RadarConfig::tx_positions)
      .def_readwrite("rx_positions", &RadarConfig::rx_positions)
      .def_readwrite("pri", &RadarConfig::pri)
      .def_readwrite("pulse_count", &RadarConfig::pulse_count)
      .def_readwrite("pulse_schedule", &RadarConfig::pulse_schedule)
      .def_readwrite("coeffs_per_channel", &RadarConfig::coeffs_per_channel)
      .def_readwrite("fourier_bins", &RadarConfig::fourier_bins)
      .def_readwrite("tx_baseband_freqs", &RadarConfig::tx_baseband_freqs)
      .def_readwrite("freq_index_set", &RadarConfig::freq_index_set)
      .def_readwrite("narrowband", &RadarConfig::narrowband)
      .def("tx_count", &RadarConfig::tx_count)
      .def("rx_count", &RadarConfig::rx_count)
      .def("tn", &RadarConfig::tn)
      .def("tr", &RadarConfig::tr)
      .def("validate", &RadarConfig::validate)
      .def_static("from_json", [](const std::string& s) { return radar_from_json(json::parse(s)); })
      .def("to_json", [](const RadarConfig& c) { return to_json(c).dump(2); });

  py::class_<Target>(m, "Target")
      .def(py::init<>())
      .def(py::init([](cplx amplitude, double delay, double doa, double doppler) {
             return Target{amplitude, delay, doa, doppler};
           }),
           py::arg("amplitude"), py::arg("delay"), py::arg("doa"), py::arg("doppler"))
      .def_readwrite("amplitude", &Target::amplitude)
      .def_readwrite("delay", &Target::delay)
      .def_readwrite("doa", &Target::doa)
      .def_readwrite("doppler", &Target::doppler);

  py::class_<TargetScene>(m, "TargetScene")
      .def(py::init<>())
      .def_readwrite("targets", &TargetScene::targets)
      .def("validate", &TargetScene::validate)
      .def_static("from_json", [](const std::string& s) { return scene_from_json(json::parse(s)); })
      .def("to_json", [](const TargetScene& sc) { return to_json(sc).dump(2); });

  py::class_<IndexSets>(m, "IndexSets")
      .def_readonly("shape", &IndexSets::shape)
      .def_readonly("omega", &IndexSets::omega)
      .def_readonly("lambda_", &IndexSets::lambda)
      .def_readonly("pi", &IndexSets::pi)
      .def_readonly("per_tx_pulses", &IndexSets::per_tx_pulses)
      .def("__len__", &IndexSets::size)
      .def("triples", [](const IndexSets& s) { return triples_out(s.triples()); })
      .def("linearized", &IndexSets::linearized);

  py::class_<PartialMeasurementTensor>(m, "PartialMeasurementTensor")
      .def_readonly("shape", &PartialMeasurementTensor::shape)
      .def_property_readonly("support",
                             [](const PartialMeasurementTensor& z) { return triples_out(z.support); })
      .def_readwrite("values", &PartialMeasurementTensor::values)
      .def_readonly("noise_variance", &PartialMeasurementTensor::noise_variance)
      .def("to_json", [](const PartialMeasurementTensor& z) { return to_json(z).dump(); })
      .def_static("from_json",
                  [](const std::string& s) { return measurement_from_json(json::parse(s)); });

  py::class_<SparseSceneTensor>(m, "SparseSceneTensor")
      .def_readonly("shape", &SparseSceneTensor::shape)
      .def_property_readonly("support",
                             [](const SparseSceneTensor& x) { return triples_out(x.support); })
      .def_readonly("amplitudes", &SparseSceneTensor::amplitudes);

  py::class_<OmpResult>(m, "OmpResult")
      .def_property_readonly("support", [](const OmpResult& r) { return triples_out(r.support); })
      .def_readonly("amplitudes", &OmpResult::amplitudes)
      .def_readonly("residual_norm_history", &OmpResult::residual_norm_history)
      .def_readonly("recovered", &OmpResult::recovered);

  py::enum_<TcInit>(m, "TcInit")
      .value("omp_warm_start", TcInit::omp_warm_start)
      .value("random", TcInit::random);

  py::class_<TcSolverConfig>(m, "TcSolverConfig")
      .def(py::init<>())
      .def_readwrite("mu", &TcSolverConfig::mu)
      .def_readwrite("max_iters", &TcSolverConfig::max_iters)
      .def_readwrite("tol", &TcSolverConfig::tol)
      .def_readwrite("init", &TcSolverConfig::init)
      .def_readwrite("inner_admm_iters", &TcSolverConfig::inner_admm_iters)
      .def_readwrite("rho", &TcSolverConfig::rho)
      .def_readwrite("seed", &TcSolverConfig::seed);

  py::class_<CpFactors>(m, "CpFactors")
      .def_readonly("a_factors", &CpFactors::a_factors)
      .def_readonly("b_factors", &CpFactors::b_factors)
      .def_readonly("f_factors", &CpFactors::f_factors)
      .def_readonly("amplitudes", &CpFactors::amplitudes)
      .def("rank", &CpFactors::rank);

  py::class_<TcResult>(m, "TcResult")
      .def_readonly("factors", &TcResult::factors)
      .def_readonly("objective_history", &TcResult::objective_history)
      .def_readonly("converged", &TcResult::converged)
      .def_readonly("data_residual", &TcResult::data_residual);

  py::class_<HitMatch>(m, "HitMatch")
      .def_readonly("hits", &HitMatch::hits)
      .def_readonly("assignment", &HitMatch::assignment)
      .def_readonly("pair_is_hit", &HitMatch::pair_is_hit);

  py::class_<ApertureOccupancy>(m, "ApertureOccupancy")
      .def_readonly("ao", &ApertureOccupancy::ao)
      .def_readonly("nao", &ApertureOccupancy::nao);

  m.def("build_index_sets", &build_index_sets, py::arg("config"));
  m.def("synthesize", &synthesize, py::arg("scene"), py::arg("config"), py::arg("sets"));
  m.def("scene_to_tensor", &scene_to_tensor, py::arg("scene"), py::arg("config"));
  m.def("add_noise", &add_noise, py::arg("measurement"), py::arg("snr_db"), py::arg("config"),
        py::arg("seed"));
  m.def("noise_variance_for_snr", &noise_variance_for_snr, py::arg("snr_db"), py::arg("config"));
  m.def("omp_recover", &omp_recover, py::arg("measurement"), py::arg("sets"), py::arg("config"),
        py::arg("sparsity"));
  m.def("support_to_scene", &support_to_scene, py::arg("result"), py::arg("config"));
  m.def("hankelize", &hankelize, py::arg("vector"));
  m.def("tc_recover", &tc_recover, py::arg("measurement"), py::arg("sets"), py::arg("config"),
        py::arg("rank"), py::arg("solver") = TcSolverConfig{});
  m.def("extract_parameters",
        py::overload_cast<const CpFactors&, const RadarConfig&>(&extract_parameters),
        py::arg("factors"), py::arg("config"));
  m.def("extract_parameters",
        py::overload_cast<const CpFactors&, const RadarConfig&, const PartialMeasurementTensor&,
                          const IndexSets&>(&extract_parameters),
        py::arg("factors"), py::arg("config"), py::arg("measurement"), py::arg("sets"));
  m.def("hit_match", &hit_match, py::arg("truth"), py::arg("estimate"), py::arg("config"));
  m.def("hit_rate", &hit_rate, py::arg("trials"), py::arg("config"));
  m.def("aperture_occupancy", &aperture_occupancy, py::arg("config"));
  m.def("feasibility_check_json",
        [](const IndexSets& sets, int sparsity) {
          return to_json(feasibility_check(sets, sparsity)).dump(2);
        },
        py::arg("sets"), py::arg("sparsity"));
  m.def("run_sweep_json",
        [](const std::string& spec_json) {
          const ExperimentSpec spec = experiment_from_json(json::parse(spec_json));
          return results_to_csv(run_experiment(spec));
        },
        py::arg("spec_json"), "Run a Monte-Carlo sweep from a JSON spec string; returns CSV.");
}

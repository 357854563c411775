#include "tenrad/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "tenrad/errors.hpp"

namespace tenrad {

namespace {

json snr_to_json(double v) {
  if (std::isinf(v) && v > 0) return "inf";
  return v;
}

double snr_from_json(const json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
    throw io_error("unrecognized SNR value '" + s + "'");
  }
  return j.get<double>();
}

json complex_to_json(const cplx& z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

json to_json(const RadarConfig& c) {
  return json{{"wavelength_m", c.wavelength},
              {"full_tx_count", c.full_tx_count},
              {"full_rx_count", c.full_rx_count},
              {"tx_positions", c.tx_positions},
              {"rx_positions", c.rx_positions},
              {"pri_s", c.pri},
              {"pulse_count", c.pulse_count},
              {"pulse_schedule", c.pulse_schedule},
              {"fourier_bins", c.fourier_bins},
              {"freq_index_set", c.freq_index_set},
              {"tx_baseband_freqs_hz", c.tx_baseband_freqs},
              {"narrowband", c.narrowband}};
}

RadarConfig radar_from_json(const json& j) {
  RadarConfig c;
  c.wavelength = j.at("wavelength_m").get<double>();
  c.full_tx_count = j.at("full_tx_count").get<int>();
  c.full_rx_count = j.at("full_rx_count").get<int>();
  c.tx_positions = j.at("tx_positions").get<std::vector<int>>();
  c.rx_positions = j.at("rx_positions").get<std::vector<int>>();
  c.pri = j.at("pri_s").get<double>();
  c.pulse_count = j.at("pulse_count").get<int>();
  c.pulse_schedule = j.at("pulse_schedule").get<std::vector<std::vector<int>>>();
  c.fourier_bins = j.at("fourier_bins").get<int>();
  c.freq_index_set = j.at("freq_index_set").get<std::vector<int>>();
  c.coeffs_per_channel = j.value("coeffs_per_channel", static_cast<int>(c.freq_index_set.size()));
  c.tx_baseband_freqs = j.at("tx_baseband_freqs_hz").get<std::vector<double>>();
  c.narrowband = j.value("narrowband", false);
  c.validate();
  return c;
}

json to_json(const TargetScene& scene) {
  json targets = json::array();
  for (const Target& t : scene.targets)
    targets.push_back(json{{"amplitude_re", t.amplitude.real()},
                           {"amplitude_im", t.amplitude.imag()},
                           {"delay_s", t.delay},
                           {"doa", t.doa},
                           {"doppler_hz", t.doppler}});
  return json{{"targets", targets}};
}

TargetScene scene_from_json(const json& j) {
  TargetScene scene;
  for (const json& t : j.at("targets")) {
    Target tgt;
    tgt.amplitude = {t.at("amplitude_re").get<double>(), t.at("amplitude_im").get<double>()};
    tgt.delay = t.at("delay_s").get<double>();
    tgt.doa = t.at("doa").get<double>();
    tgt.doppler = t.at("doppler_hz").get<double>();
    scene.targets.push_back(tgt);
  }
  return scene;
}

json to_json(const PartialMeasurementTensor& z) {
  json entries = json::array();
  for (size_t i = 0; i < z.support.size(); ++i) {
    const Triple& t = z.support[i];
    const cplx v = z.values(static_cast<Eigen::Index>(i));
    entries.push_back(json::array({t.i, t.j, t.k, v.real(), v.imag()}));
  }
  return json{{"shape", z.shape}, {"noise_variance", z.noise_variance}, {"entries", entries}};
}

PartialMeasurementTensor measurement_from_json(const json& j) {
  PartialMeasurementTensor z;
  const auto shape = j.at("shape").get<std::vector<int>>();
  if (shape.size() != 3) throw io_error("measurement shape must have 3 entries");
  z.shape = {shape[0], shape[1], shape[2]};
  z.noise_variance = j.value("noise_variance", 0.0);
  const json& entries = j.at("entries");
  z.values = Vector::Zero(static_cast<Eigen::Index>(entries.size()));
  Eigen::Index row = 0;
  for (const json& e : entries) {
    z.support.push_back({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<int>()});
    z.values(row++) = cplx{e.at(3).get<double>(), e.at(4).get<double>()};
  }
  return z;
}

std::string measurement_to_csv(const PartialMeasurementTensor& z) {
  std::string out = "k,v,p,re,im\n";
  for (size_t i = 0; i < z.support.size(); ++i) {
    const Triple& t = z.support[i];
    const cplx v = z.values(static_cast<Eigen::Index>(i));
    out += std::to_string(t.i) + "," + std::to_string(t.j) + "," + std::to_string(t.k) + "," +
           format_double(v.real()) + "," + format_double(v.imag()) + "\n";
  }
  return out;
}

json to_json(const OmpResult& result, const RadarConfig& config) {
  json support = json::array();
  for (const Triple& t : result.support) support.push_back(json::array({t.i, t.j, t.k}));
  json amplitudes = json::array();
  for (const cplx& a : result.amplitudes) amplitudes.push_back(complex_to_json(a));
  return json{{"algorithm", "omp"},
              {"support", support},
              {"amplitudes", amplitudes},
              {"residual_norm_history", result.residual_norm_history},
              {"estimate", to_json(support_to_scene(result, config))}};
}

json to_json(const TcResult& result, const TargetScene& estimate) {
  json a = json::array(), b = json::array(), f = json::array(), amp = json::array();
  for (int l = 0; l < result.factors.rank(); ++l) {
    a.push_back(vector_to_json(result.factors.a_factors[static_cast<size_t>(l)]));
    b.push_back(vector_to_json(result.factors.b_factors[static_cast<size_t>(l)]));
    f.push_back(vector_to_json(result.factors.f_factors[static_cast<size_t>(l)]));
    amp.push_back(complex_to_json(result.factors.amplitudes[static_cast<size_t>(l)]));
  }
  return json{{"algorithm", "tc"},
              {"converged", result.converged},
              {"objective_history", result.objective_history},
              {"data_residual", result.data_residual},
              {"factors", json{{"a", a}, {"b", b}, {"f", f}, {"amplitudes", amp}}},
              {"estimate", to_json(estimate)}};
}

json to_json(const FeasibilityReport& report) {
  json axes = json::array();
  for (const AxisFeasibility& ax : report.axes) {
    json a{{"axis", ax.axis},
           {"observed", ax.observed},
           {"required", ax.required},
           {"count_ok", ax.count_ok}};
    if (ax.spark) a["spark"] = *ax.spark;
    if (ax.spark_ok) a["spark_ok"] = *ax.spark_ok;
    if (!ax.note.empty()) a["note"] = ax.note;
    axes.push_back(a);
  }
  return json{{"sparsity", report.sparsity}, {"axes", axes}, {"feasible", report.feasible}};
}

namespace {

json to_json(const TcSolverConfig& c) {
  return json{{"mu", c.mu},
              {"max_iters", c.max_iters},
              {"tol", c.tol},
              {"init", c.init == TcInit::omp_warm_start ? "omp_warm_start" : "random"},
              {"inner_admm_iters", c.inner_admm_iters},
              {"rho", c.rho},
              {"seed", c.seed}};
}

TcSolverConfig tc_config_from_json(const json& j) {
  TcSolverConfig c;
  c.mu = j.value("mu", c.mu);
  c.max_iters = j.value("max_iters", c.max_iters);
  c.tol = j.value("tol", c.tol);
  const std::string init = j.value("init", "omp_warm_start");
  if (init == "omp_warm_start")
    c.init = TcInit::omp_warm_start;
  else if (init == "random")
    c.init = TcInit::random;
  else
    throw io_error("unrecognized tc init '" + init + "'");
  c.inner_admm_iters = j.value("inner_admm_iters", c.inner_admm_iters);
  c.rho = j.value("rho", c.rho);
  c.seed = j.value("seed", c.seed);
  return c;
}

}  // namespace

json to_json(const ExperimentSpec& spec) {
  json scene{{"kind", spec.scene.kind == SceneKind::fixed
                          ? "fixed"
                          : (spec.scene.kind == SceneKind::random_on_grid ? "random_on_grid"
                                                                          : "random_off_grid")},
             {"targets", spec.scene.targets},
             {"min_amplitude", spec.scene.min_amplitude},
             {"max_amplitude", spec.scene.max_amplitude},
             {"min_separation_bins", spec.scene.min_separation_bins}};
  if (spec.scene.kind == SceneKind::fixed) scene["scene"] = to_json(spec.scene.fixed);
  json snr = json::array();
  for (double v : spec.snr_grid_db) snr.push_back(snr_to_json(v));
  return json{{"radar", to_json(spec.radar)},
              {"scene", scene},
              {"snr_grid_db", snr},
              {"trials", spec.trials},
              {"master_seed", spec.master_seed},
              {"algorithms", spec.algorithms},
              {"energy_mode", spec.energy_mode == EnergyMode::total_energy_fixed
                                  ? "total_energy_fixed"
                                  : "single_pulse_energy_fixed"},
              {"nao_ref", spec.nao_ref},
              {"sparsity", spec.sparsity},
              {"tc", to_json(spec.tc)},
              {"workers", spec.workers}};
}

ExperimentSpec experiment_from_json(const json& j) {
  ExperimentSpec spec;
  if (j.contains("radar_file"))
    spec.radar = radar_from_json(load_json(j.at("radar_file").get<std::string>()));
  else
    spec.radar = radar_from_json(j.at("radar"));

  const json& scene = j.at("scene");
  const std::string kind = scene.value("kind", "random_on_grid");
  if (kind == "fixed")
    spec.scene.kind = SceneKind::fixed;
  else if (kind == "random_on_grid")
    spec.scene.kind = SceneKind::random_on_grid;
  else if (kind == "random_off_grid")
    spec.scene.kind = SceneKind::random_off_grid;
  else
    throw io_error("unrecognized scene kind '" + kind + "'");
  spec.scene.targets = scene.value("targets", spec.scene.targets);
  spec.scene.min_amplitude = scene.value("min_amplitude", spec.scene.min_amplitude);
  spec.scene.max_amplitude = scene.value("max_amplitude", spec.scene.max_amplitude);
  spec.scene.min_separation_bins =
      scene.value("min_separation_bins", spec.scene.min_separation_bins);
  if (spec.scene.kind == SceneKind::fixed) {
    if (scene.contains("scene_file"))
      spec.scene.fixed = scene_from_json(load_json(scene.at("scene_file").get<std::string>()));
    else
      spec.scene.fixed = scene_from_json(scene.at("scene"));
  }

  for (const json& v : j.at("snr_grid_db")) spec.snr_grid_db.push_back(snr_from_json(v));
  spec.trials = j.value("trials", spec.trials);
  spec.master_seed = j.value("master_seed", spec.master_seed);
  spec.algorithms = j.value("algorithms", spec.algorithms);
  const std::string mode = j.value("energy_mode", "total_energy_fixed");
  if (mode == "total_energy_fixed" || mode == "tef")
    spec.energy_mode = EnergyMode::total_energy_fixed;
  else if (mode == "single_pulse_energy_fixed" || mode == "spef")
    spec.energy_mode = EnergyMode::single_pulse_energy_fixed;
  else
    throw io_error("unrecognized energy mode '" + mode + "'");
  spec.nao_ref = j.value("nao_ref", spec.nao_ref);
  spec.sparsity = j.value("sparsity", spec.sparsity);
  if (j.contains("tc")) spec.tc = tc_config_from_json(j.at("tc"));
  spec.workers = j.value("workers", spec.workers);
  spec.validate();
  return spec;
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open '" + path + "' for reading");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw io_error("cannot parse '" + path + "': " + e.what());
  }
}

void save_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw io_error("write to '" + path + "' failed");
}

}  // namespace tenrad

#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <limits>
#include <string>

#include "helpers.hpp"
#include "tenrad/errors.hpp"
#include "tenrad/harness.hpp"
#include "tenrad/index_sets.hpp"
#include "tenrad/metrics.hpp"
#include "tenrad/omp.hpp"
#include "tenrad/serialize.hpp"
#include "tenrad/synth.hpp"

using namespace tenrad;

TEST_CASE("radar config round-trips through JSON") {
  for (const RadarConfig& c : {fixtures::thinned(), fixtures::tiny(), fixtures::single_tx()}) {
    const json j = to_json(c);
    const RadarConfig back = radar_from_json(j);
    CHECK(to_json(back) == j);
    CHECK(back.tn() == c.tn());
    CHECK(back.freq_index_set == c.freq_index_set);
    CHECK(back.pulse_schedule == c.pulse_schedule);
    CHECK(back.narrowband == c.narrowband);
  }
}

TEST_CASE("loading a config re-validates it") {
  json j = to_json(fixtures::tiny());
  j["pulse_count"] = 0;
  CHECK_THROWS_AS(radar_from_json(j), config_error);
}

TEST_CASE("scene JSON preserves off-grid parameters exactly") {
  TargetScene s;
  s.targets.push_back({cplx(1.0, -0.25), 5.37e-6, -0.437, 18085.9375});
  s.targets.push_back({cplx(0.0, 2.0), 1.271e-5, -0.821, -20976.5625});
  const TargetScene back = scene_from_json(to_json(s));
  REQUIRE(back.targets.size() == 2);
  for (size_t l = 0; l < 2; ++l) {
    CHECK(back.targets[l].amplitude == s.targets[l].amplitude);
    CHECK(back.targets[l].delay == s.targets[l].delay);
    CHECK(back.targets[l].doa == s.targets[l].doa);
    CHECK(back.targets[l].doppler == s.targets[l].doppler);
  }
}

TEST_CASE("measurements round-trip with support order and values intact") {
  const RadarConfig c = fixtures::tiny();
  const IndexSets sets = build_index_sets(c);
  const PartialMeasurementTensor z =
      add_noise(synthesize(fixtures::scene_at(c, {{1, 2, 3}}), c, sets), 0.0, c, 9);
  const PartialMeasurementTensor back = measurement_from_json(to_json(z));
  CHECK(back.shape == z.shape);
  CHECK(back.support == z.support);
  CHECK((back.values - z.values).norm() == 0.0);
  CHECK(back.noise_variance == z.noise_variance);
}

TEST_CASE("measurement CSV has a header and one row per cell") {
  const RadarConfig c = fixtures::tiny();
  const IndexSets sets = build_index_sets(c);
  const PartialMeasurementTensor z = synthesize(fixtures::scene_at(c, {{0, 0, 0}}), c, sets);
  const std::string csv = measurement_to_csv(z);
  CHECK(csv.rfind("k,v,p,re,im\n", 0) == 0);
  CHECK(static_cast<size_t>(std::count(csv.begin(), csv.end(), '\n')) == sets.size() + 1);
}

TEST_CASE("greedy result JSON carries support, amplitudes and the estimate") {
  const RadarConfig c = fixtures::tiny();
  const IndexSets sets = build_index_sets(c);
  const PartialMeasurementTensor z = synthesize(fixtures::scene_at(c, {{1, 1, 1}}), c, sets);
  const OmpResult r = omp_recover(z, sets, c, 1);
  const json j = to_json(r, c);
  CHECK(j.at("algorithm") == "omp");
  CHECK(j.at("support").size() == 1);
  CHECK(j.at("support")[0] == json::array({1, 1, 1}));
  CHECK(j.at("amplitudes").size() == 1);
  CHECK(j.at("residual_norm_history").size() == 2);
  CHECK(j.at("estimate").at("targets").size() == 1);
}

TEST_CASE("feasibility JSON mirrors the report") {
  const FeasibilityReport r = feasibility_check(build_index_sets(fixtures::tiny()), 1);
  const json j = to_json(r);
  CHECK(j.at("sparsity") == 1);
  CHECK(j.at("feasible") == true);
  REQUIRE(j.at("axes").size() == 3);
  CHECK(j.at("axes")[0].at("axis") == "frequency");
  CHECK(j.at("axes")[0].at("spark") == 5);
  CHECK(j.at("axes")[1].contains("note"));
}

TEST_CASE("experiment specs round-trip including solver settings") {
  ExperimentSpec spec;
  spec.radar = fixtures::thinned();
  spec.scene.kind = SceneKind::random_on_grid;
  spec.scene.targets = 2;
  spec.scene.min_amplitude = 0.5;
  spec.scene.max_amplitude = 1.5;
  spec.snr_grid_db = {-30.0, -20.0, std::numeric_limits<double>::infinity()};
  spec.trials = 10;
  spec.master_seed = 42;
  spec.algorithms = {"omp", "tc"};
  spec.energy_mode = EnergyMode::single_pulse_energy_fixed;
  spec.nao_ref = 1.0;
  spec.sparsity = 2;
  spec.tc.max_iters = 77;
  spec.tc.init = TcInit::random;
  spec.tc.seed = 5;
  spec.workers = 2;

  const json j = to_json(spec);
  CHECK(j.at("snr_grid_db")[2] == "inf");
  CHECK(j.at("energy_mode") == "single_pulse_energy_fixed");

  const ExperimentSpec back = experiment_from_json(j);
  CHECK(to_json(back) == j);
  CHECK(std::isinf(back.snr_grid_db[2]));
  CHECK(back.tc.max_iters == 77);
  CHECK(back.tc.init == TcInit::random);
  CHECK(back.algorithms == std::vector<std::string>{"omp", "tc"});
}

TEST_CASE("experiment specs accept fixed scenes and short mode names") {
  ExperimentSpec spec;
  spec.radar = fixtures::tiny();
  spec.scene.kind = SceneKind::fixed;
  spec.scene.fixed = fixtures::scene_at(spec.radar, {{1, 1, 1}});
  spec.snr_grid_db = {0.0};
  spec.trials = 1;

  json j = to_json(spec);
  const ExperimentSpec back = experiment_from_json(j);
  CHECK(back.scene.kind == SceneKind::fixed);
  CHECK(back.scene.fixed.targets.size() == 1);

  j["energy_mode"] = "spef";
  CHECK(experiment_from_json(j).energy_mode == EnergyMode::single_pulse_energy_fixed);
  j["energy_mode"] = "tef";
  CHECK(experiment_from_json(j).energy_mode == EnergyMode::total_energy_fixed);
  j["energy_mode"] = "nonsense";
  CHECK_THROWS_AS(experiment_from_json(j), io_error);
}

TEST_CASE("malformed experiment fields are rejected") {
  ExperimentSpec spec;
  spec.radar = fixtures::tiny();
  spec.scene.kind = SceneKind::random_on_grid;
  spec.scene.targets = 1;
  spec.snr_grid_db = {0.0};

  json j = to_json(spec);
  j["scene"]["kind"] = "mystery";
  CHECK_THROWS_AS(experiment_from_json(j), io_error);

  j = to_json(spec);
  j["algorithms"] = json::array({"omp", "magic"});
  CHECK_THROWS_AS(experiment_from_json(j), config_error);

  j = to_json(spec);
  j["snr_grid_db"] = json::array({"-inf"});
  CHECK_THROWS_AS(experiment_from_json(j), io_error);

  j = to_json(spec);
  j["trials"] = 0;
  CHECK_THROWS_AS(experiment_from_json(j), config_error);
}

TEST_CASE("file IO wraps failures and round-trips text") {
  CHECK_THROWS_AS(load_json("/nonexistent/path/config.json"), io_error);

  const std::string path = "serialize_test_scratch.json";
  save_text(path, to_json(fixtures::tiny()).dump(2) + "\n");
  const json j = load_json(path);
  CHECK(radar_from_json(j).tr() == 4);
  std::remove(path.c_str());

  save_text(path, "{not json");
  CHECK_THROWS_AS(load_json(path), io_error);
  std::remove(path.c_str());

  CHECK_THROWS_AS(save_text("/nonexistent/dir/file.txt", "x"), io_error);
}

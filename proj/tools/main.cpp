// Command-line front end: synth / recover / sweep / feasibility.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <limits>
#include <string>

#include <CLI11.hpp>

#include "tenrad/errors.hpp"
#include "tenrad/harness.hpp"
#include "tenrad/metrics.hpp"
#include "tenrad/omp.hpp"
#include "tenrad/serialize.hpp"
#include "tenrad/synth.hpp"
#include "tenrad/tc.hpp"

namespace {

using namespace tenrad;

struct SynthArgs {
  std::string config_path, scene_path, out_path;
  double snr_db = std::numeric_limits<double>::infinity();
  std::uint64_t seed = 0;
  bool csv = false;
};

int run_synth(const SynthArgs& a) {
  const RadarConfig config = radar_from_json(load_json(a.config_path));
  const TargetScene scene = scene_from_json(load_json(a.scene_path));
  const IndexSets sets = build_index_sets(config);
  PartialMeasurementTensor z = synthesize(scene, config, sets);
  z = add_noise(z, a.snr_db, config, a.seed);
  if (a.csv)
    save_text(a.out_path, measurement_to_csv(z));
  else
    save_text(a.out_path, to_json(z).dump(2) + "\n");
  return 0;
}

struct RecoverArgs {
  std::string config_path, measurement_path, out_path;
  std::string algorithm = "omp";
  int sparsity = 1;
  bool timing = false;
  TcSolverConfig tc;
};

int run_recover(const RecoverArgs& a) {
  const RadarConfig config = radar_from_json(load_json(a.config_path));
  const IndexSets sets = build_index_sets(config);
  PartialMeasurementTensor z = measurement_from_json(load_json(a.measurement_path));
  if (z.support != sets.triples())
    throw shape_error("measurement support does not match the config's observation pattern");

  const auto started = std::chrono::steady_clock::now();
  json out;
  if (a.algorithm == "omp") {
    out = to_json(omp_recover(z, sets, config, a.sparsity), config);
  } else {
    const TcResult result = tc_recover(z, sets, config, a.sparsity, a.tc);
    out = to_json(result, extract_parameters(result.factors, config, z, sets));
  }
  if (a.timing) {
    const auto elapsed = std::chrono::steady_clock::now() - started;
    out["wall_time_s"] = std::chrono::duration<double>(elapsed).count();
  }
  save_text(a.out_path, out.dump(2) + "\n");
  return 0;
}

struct SweepArgs {
  std::string spec_path, out_path, scatter_path;
  int trials = -1;
  std::int64_t seed = -1;
  std::vector<double> snr_db;
};

int run_sweep(const SweepArgs& a) {
  ExperimentSpec spec = experiment_from_json(load_json(a.spec_path));
  if (a.trials > 0) spec.trials = a.trials;
  if (a.seed >= 0) spec.master_seed = static_cast<std::uint64_t>(a.seed);
  if (!a.snr_db.empty()) spec.snr_grid_db = a.snr_db;
  spec.validate();
  emit_plot_data(run_experiment(spec), a.out_path, a.scatter_path);
  return 0;
}

struct FeasibilityArgs {
  std::string config_path, out_path;
  int sparsity = 1;
};

int run_feasibility(const FeasibilityArgs& a) {
  const RadarConfig config = radar_from_json(load_json(a.config_path));
  const FeasibilityReport report = feasibility_check(build_index_sets(config), a.sparsity);
  const std::string text = to_json(report).dump(2) + "\n";
  if (a.out_path.empty())
    std::cout << text;
  else
    save_text(a.out_path, text);
  return 0;
}

void add_tc_options(CLI::App* cmd, TcSolverConfig* tc) {
  cmd->add_option("--mu", tc->mu, "data-term weight (<=0 selects automatically)");
  cmd->add_option("--max-iters", tc->max_iters, "outer sweep limit");
  cmd->add_option("--tol", tc->tol, "relative objective decrease to stop");
  cmd->add_option("--inner-iters", tc->inner_admm_iters, "ADMM iterations per factor update");
  cmd->add_option("--rho", tc->rho, "ADMM penalty");
  cmd->add_flag_callback("--random-init", [tc]() { tc->init = TcInit::random; },
                         "start from random factors instead of the greedy solution");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sub-Nyquist MIMO radar simulation and recovery toolkit"};
  app.require_subcommand(1);

  SynthArgs synth;
  CLI::App* synth_cmd = app.add_subcommand("synth", "synthesize a partial measurement tensor");
  synth_cmd->add_option("--config", synth.config_path, "radar config JSON")->required();
  synth_cmd->add_option("--scene", synth.scene_path, "target scene JSON")->required();
  synth_cmd->add_option("--out", synth.out_path, "output measurement file")->required();
  synth_cmd->add_option("--snr-db", synth.snr_db, "per the matched-filter definition; omit for noiseless");
  synth_cmd->add_option("--seed", synth.seed, "noise RNG seed");
  synth_cmd->add_flag("--csv", synth.csv, "write CSV rows instead of JSON");

  RecoverArgs recover;
  CLI::App* recover_cmd = app.add_subcommand("recover", "recover targets from a measurement file");
  recover_cmd->add_option("--config", recover.config_path, "radar config JSON")->required();
  recover_cmd->add_option("--measurement", recover.measurement_path, "measurement JSON")->required();
  recover_cmd->add_option("--algorithm", recover.algorithm, "omp or tc")
      ->check(CLI::IsMember({"omp", "tc"}));
  recover_cmd->add_option("--sparsity", recover.sparsity, "number of targets to recover")
      ->required();
  recover_cmd->add_option("--out", recover.out_path, "output result JSON")->required();
  recover_cmd->add_option("--seed", recover.tc.seed, "seed for the random initializer");
  recover_cmd->add_flag("--timing", recover.timing, "include wall time in the output");
  add_tc_options(recover_cmd, &recover.tc);

  SweepArgs sweep;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "run a Monte-Carlo experiment");
  sweep_cmd->add_option("--spec", sweep.spec_path, "experiment spec JSON")->required();
  sweep_cmd->add_option("--out", sweep.out_path, "output CSV")->required();
  sweep_cmd->add_option("--scatter", sweep.scatter_path, "optional scatter JSON");
  sweep_cmd->add_option("--trials", sweep.trials, "override trial count");
  sweep_cmd->add_option("--seed", sweep.seed, "override master seed");
  sweep_cmd->add_option("--snr-db", sweep.snr_db, "override the SNR grid")->delimiter(',');

  FeasibilityArgs feas;
  CLI::App* feas_cmd = app.add_subcommand("feasibility", "check recovery conditions for a config");
  feas_cmd->add_option("--config", feas.config_path, "radar config JSON")->required();
  feas_cmd->add_option("--sparsity", feas.sparsity, "target count L")->required();
  feas_cmd->add_option("--out", feas.out_path, "output JSON (stdout when omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*synth_cmd) return run_synth(synth);
    if (*recover_cmd) return run_recover(recover);
    if (*sweep_cmd) return run_sweep(sweep);
    if (*feas_cmd) return run_feasibility(feas);
  } catch (const config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const argument_error& e) {
    std::cerr << "argument error: " << e.what() << "\n";
    return 2;
  } catch (const grid_error& e) {
    std::cerr << "grid error: " << e.what() << "\n";
    return 2;
  } catch (const shape_error& e) {
    std::cerr << "shape error: " << e.what() << "\n";
    return 2;
  } catch (const index_error& e) {
    std::cerr << "index error: " << e.what() << "\n";
    return 2;
  } catch (const ambiguity_error& e) {
    std::cerr << "ambiguity error: " << e.what() << "\n";
    return 2;
  } catch (const capability_error& e) {
    std::cerr << "capability error: " << e.what() << "\n";
    return 3;
  } catch (const io_error& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 4;
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

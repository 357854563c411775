#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tenrad/tc.hpp"
#include "tenrad/types.hpp"

namespace tenrad {

enum class SceneKind { fixed, random_on_grid, random_off_grid };

struct SceneGenerator {
  SceneKind kind = SceneKind::random_on_grid;
  int targets = 2;            // ignored for fixed scenes
  TargetScene fixed;          // used when kind == fixed
  double min_amplitude = 1.0;  // modulus range for random draws (phase uniform)
  double max_amplitude = 1.0;
  // Random targets are kept at least this many bins apart (max-norm over the
  // three axes) so they are resolvable in principle.
  double min_separation_bins = 1.0;
};

enum class EnergyMode { total_energy_fixed, single_pulse_energy_fixed };

struct ExperimentSpec {
  RadarConfig radar;
  SceneGenerator scene;
  std::vector<double> snr_grid_db;  // +inf allowed as the noiseless sentinel
  int trials = 1;
  std::uint64_t master_seed = 0;
  std::vector<std::string> algorithms{"omp"};  // subset of {"omp", "tc"}
  EnergyMode energy_mode = EnergyMode::total_energy_fixed;
  double nao_ref = 1.0;  // occupancy the energy budget is quoted at
  int sparsity = 0;      // recovery order; 0 means "number of scene targets"
  TcSolverConfig tc;
  int workers = 1;

  void validate() const;
};

struct CurvePoint {
  std::string algorithm;
  double nao = 0.0;
  std::string energy_mode;
  double snr_db = 0.0;            // nominal (x-axis)
  double effective_snr_db = 0.0;  // after the energy-mode offset
  double hit_rate = 0.0;
  double ci_low = 0.0, ci_high = 0.0;  // 95% Wilson interval on the hit rate
  int trials = 0;  // scored trials
  int failed = 0;  // trials dropped on solver failure
};

struct ScatterRecord {
  std::string algorithm;
  double snr_db = 0.0;
  int trial = 0;
  double true_delay = 0.0, true_doa = 0.0, true_doppler = 0.0;
  double est_delay = 0.0, est_doa = 0.0, est_doppler = 0.0;
  bool hit = false;
};

struct ExperimentResults {
  std::vector<CurvePoint> points;
  std::vector<ScatterRecord> scatter;
};

}  // namespace tenrad

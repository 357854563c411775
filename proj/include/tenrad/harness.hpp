#pragma once

#include <cstdint>
#include <string>

#include "tenrad/harness_types.hpp"
#include "tenrad/rng.hpp"

namespace tenrad {

/// Draws a scene for one trial (deterministic in the seed); fixed scenes are
/// returned as configured.
TargetScene generate_scene(const SceneGenerator& gen, const RadarConfig& config,
                           std::uint64_t seed);

/// Effective per-entry SNR once the energy budget is applied: keeping total
/// energy fixed scales per-pulse energy by nao_ref/nao (20 log10 on the SNR
/// definition's per-entry axis), keeping per-pulse energy fixed only changes
/// how many pulses integrate (10 log10).
double effective_snr_db(double nominal_db, EnergyMode mode, double nao, double nao_ref);

/// Seeded Monte-Carlo sweep over the SNR grid and algorithm set. Scenes are
/// shared across grid points within a trial; noise is redrawn per point. A
/// solver failure marks that (algorithm, snr, trial) as failed and the run
/// continues. Deterministic for a given spec regardless of worker count.
ExperimentResults run_experiment(const ExperimentSpec& spec);

/// Writes the hit-rate table as CSV and, when scatter_path is nonempty, the
/// (true, estimated) parameter records as JSON.
void emit_plot_data(const ExperimentResults& results, const std::string& csv_path,
                    const std::string& scatter_path = "");

/// The CSV table alone (also what emit_plot_data writes).
std::string results_to_csv(const ExperimentResults& results);

}  // namespace tenrad

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "tenrad/index_sets.hpp"
#include "tenrad/tensor3.hpp"
#include "tenrad/types.hpp"

namespace tenrad {

/// Observed cells of the measurement tensor, aligned with the IndexSets entry
/// order (lexicographic in the global triple).
struct PartialMeasurementTensor {
  std::array<int, 3> shape{};    // (TN, TR, P)
  std::vector<Triple> support;   // the observed triples, sorted
  Vector values;                 // aligned with support
  double noise_variance = 0.0;   // per-entry variance actually applied

  Tensor3 to_dense() const;  // zero-filled at unobserved cells
};

/// Evaluates the channel response at every observed cell, for arbitrary
/// (possibly off-grid) target parameters. With config.narrowband the array
/// phase uses the ideal virtual-element index; otherwise it carries the
/// per-transmitter carrier-offset factor.
PartialMeasurementTensor synthesize(const TargetScene& scene, const RadarConfig& config,
                                    const IndexSets& sets);

/// Snaps an all-on-grid scene onto the sparse coefficient tensor. Off-grid
/// parameters are a grid_error; use synthesize for those.
SparseSceneTensor scene_to_tensor(const TargetScene& scene, const RadarConfig& config);

/// Adds i.i.d. circular complex Gaussian noise of the variance implied by the
/// matched-filter SNR definition to every observed entry. snr_db = +inf is the
/// noiseless sentinel; NaN or -inf is an argument_error.
PartialMeasurementTensor add_noise(const PartialMeasurementTensor& z, double snr_db,
                                   const RadarConfig& config, std::uint64_t seed);

/// Per-entry noise variance for a nominal SNR (dB): (M*K)^2 / (snr * K*Q*sum_m P_m).
double noise_variance_for_snr(double snr_db, const RadarConfig& config);

}  // namespace tenrad

#pragma once

#include <vector>

#include "tenrad/index_sets.hpp"
#include "tenrad/synth.hpp"
#include "tenrad/types.hpp"

namespace tenrad {

struct OmpResult {
  std::vector<Triple> support;          // one triple per iteration, distinct
  std::vector<cplx> amplitudes;         // least-squares refit, aligned
  std::vector<double> residual_norm_history;  // initial norm, then one per iteration
  SparseSceneTensor recovered;
};

/// Greedy sparse recovery on the measurement tensor: each iteration projects
/// the zero-filled residual through the adjoint dictionaries, selects the cell
/// of largest magnitude (lowest lexicographic triple on ties, never a repeat),
/// refits all amplitudes by least squares and updates the residual on the
/// observed cells. Runs exactly `sparsity` iterations.
OmpResult omp_recover(const PartialMeasurementTensor& z, const IndexSets& sets,
                      const RadarConfig& config, int sparsity);

/// Maps a recovered support back to physical target parameters through the
/// grid conventions.
TargetScene support_to_scene(const OmpResult& result, const RadarConfig& config);

}  // namespace tenrad

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "tenrad/types.hpp"

namespace tenrad {

/// One observed cell of the measurement tensor together with the physical
/// channel it came from.
struct ObservedEntry {
  Triple at;    // (global frequency index, virtual element index, pulse index)
  int tx = 0;   // transmitter m
  int rx = 0;   // receiver q
  int k_local = 0;  // position of the Fourier index within freq_index_set
};

/// The observation pattern: which tensor cells are measured, plus the
/// per-coordinate projections.
struct IndexSets {
  std::array<int, 3> shape{};            // (TN, TR, P)
  std::vector<ObservedEntry> entries;    // sorted lexicographically by `at`
  std::vector<int> omega;                // observed frequency rows, sorted
  std::vector<int> lambda;               // observed virtual elements, sorted
  std::vector<int> pi;                   // observed pulses, sorted
  std::vector<std::vector<int>> per_tx_pulses;  // active pulse indices per tx

  size_t size() const { return entries.size(); }
  std::vector<Triple> triples() const;
  /// Row-major order of a cell within the full tensor: i*d1*d2 + j*d2 + k.
  /// Strictly increasing over `entries` (ties impossible).
  std::vector<std::int64_t> linearized() const;
};

/// Enumerates the observed cells: (k + f_m tau, xi_m + zeta_q, p) for every
/// transmitter m, active pulse p, receiver q and selected Fourier index k.
/// Throws ambiguity_error when two transmitters' spectral supports overlap
/// (channel separation by frequency would be impossible).
IndexSets build_index_sets(const RadarConfig& config);

}  // namespace tenrad

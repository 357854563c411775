#pragma once

// Configurations and scenes shared across the unit tests. Everything is
// built in code so the binary runs from any working directory.

#include <complex>
#include <vector>

#include "tenrad/rng.hpp"
#include "tenrad/tensor3.hpp"
#include "tenrad/types.hpp"

namespace fixtures {

// Thinned 2x5 desk setup: T=2, R=10, TN=16, P=16, K=4 per channel,
// 8 of 32 tx/pulse slots active (NAO = 1/4), |observed| = 160.
inline tenrad::RadarConfig thinned() {
  tenrad::RadarConfig c;
  c.wavelength = 0.03;
  c.full_tx_count = 2;
  c.full_rx_count = 10;
  c.tx_positions = {0, 1};
  c.rx_positions = {2, 5, 11, 13, 15};
  c.pri = 1.6e-5;
  c.pulse_count = 16;
  c.pulse_schedule = {
      {1, 1, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0},
      {0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 1, 0},
  };
  c.coeffs_per_channel = 4;
  c.fourier_bins = 8;
  c.tx_baseband_freqs = {250000.0, 750000.0};
  c.freq_index_set = {0, 1, 2, 3};
  c.narrowband = true;
  return c;
}

// Same geometry with every tx firing every pulse (NAO = 1).
inline tenrad::RadarConfig thinned_full_pulses() {
  tenrad::RadarConfig c = thinned();
  c.pulse_schedule = {std::vector<int>(16, 1), std::vector<int>(16, 1)};
  return c;
}

// Small 4x4x4 grid, both transmitters on every pulse; observed cells are the
// per-transmitter frequency/element blocks (32 of 64 cells). Fast everywhere.
inline tenrad::RadarConfig tiny() {
  tenrad::RadarConfig c;
  c.wavelength = 0.03;
  c.full_tx_count = 2;
  c.full_rx_count = 2;
  c.tx_positions = {0, 1};
  c.rx_positions = {0, 2};
  c.pri = 1e-4;
  c.pulse_count = 4;
  c.pulse_schedule = {{1, 1, 1, 1}, {1, 1, 1, 1}};
  c.coeffs_per_channel = 2;
  c.fourier_bins = 2;
  c.tx_baseband_freqs = {0.0, 2.0 / 1e-4};
  c.freq_index_set = {0, 1};
  c.narrowband = true;
  return c;
}

// Fully observed 2x2x2 tensor: one transmitter, both elements, all bins,
// both pulses. The only fixture where the measurement has no missing cells.
inline tenrad::RadarConfig tiny_full() {
  tenrad::RadarConfig c;
  c.wavelength = 0.03;
  c.full_tx_count = 1;
  c.full_rx_count = 2;
  c.tx_positions = {0};
  c.rx_positions = {0, 1};
  c.pri = 1e-4;
  c.pulse_count = 2;
  c.pulse_schedule = {{1, 1}};
  c.coeffs_per_channel = 2;
  c.fourier_bins = 2;
  c.tx_baseband_freqs = {0.0};
  c.freq_index_set = {0, 1};
  c.narrowband = true;
  return c;
}

// One transmitter of a 2x10 desk firing the first 9 of 16 pulses.
inline tenrad::RadarConfig single_tx() {
  tenrad::RadarConfig c;
  c.wavelength = 0.03;
  c.full_tx_count = 2;
  c.full_rx_count = 10;
  c.tx_positions = {0};
  c.rx_positions = {0, 1, 2, 3, 4, 5, 6, 7, 8};
  c.pri = 1.6e-5;
  c.pulse_count = 16;
  c.pulse_schedule = {{1, 1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0}};
  c.coeffs_per_channel = 8;
  c.fourier_bins = 8;
  c.tx_baseband_freqs = {250000.0};
  c.freq_index_set = {0, 1, 2, 3, 4, 5, 6, 7};
  c.narrowband = true;
  return c;
}

// Scene whose targets sit exactly on the given grid cells. Amplitude defaults
// to 1; extra amplitudes beyond the cell list are ignored.
inline tenrad::TargetScene scene_at(const tenrad::RadarConfig& config,
                                    const std::vector<tenrad::Triple>& cells,
                                    const std::vector<tenrad::cplx>& amps = {}) {
  const tenrad::GridMaps grid(config);
  tenrad::TargetScene scene;
  for (std::size_t l = 0; l < cells.size(); ++l) {
    tenrad::Target t;
    t.amplitude = l < amps.size() ? amps[l] : tenrad::cplx(1.0, 0.0);
    t.delay = grid.delay_value(cells[l].i);
    t.doa = grid.doa_value(cells[l].j);
    t.doppler = grid.doppler_value(cells[l].k);
    scene.targets.push_back(t);
  }
  return scene;
}

inline tenrad::Matrix random_matrix(Eigen::Index rows, Eigen::Index cols, tenrad::Rng& rng) {
  tenrad::Matrix m(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c)
    for (Eigen::Index r = 0; r < rows; ++r) m(r, c) = {rng.gaussian(), rng.gaussian()};
  return m;
}

inline tenrad::Vector random_vector(Eigen::Index n, tenrad::Rng& rng) {
  tenrad::Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = {rng.gaussian(), rng.gaussian()};
  return v;
}

inline tenrad::Tensor3 random_tensor(int d0, int d1, int d2, tenrad::Rng& rng) {
  tenrad::Tensor3 t(d0, d1, d2);
  for (int k = 0; k < d2; ++k)
    for (int j = 0; j < d1; ++j)
      for (int i = 0; i < d0; ++i) t(i, j, k) = {rng.gaussian(), rng.gaussian()};
  return t;
}

}  // namespace fixtures

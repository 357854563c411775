#pragma once

#include <array>
#include <cmath>
#include <compare>
#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "tenrad/tensor3.hpp"

namespace tenrad {

inline constexpr double kSpeedOfLight = 299792458.0;

/// Index triple into the (delay, DoA, Doppler) grid / measurement tensor.
struct Triple {
  int i = 0;  // frequency / delay bin, in [0, TN)
  int j = 0;  // virtual element / DoA bin, in [0, TR)
  int k = 0;  // pulse / Doppler bin, in [0, P)

  auto operator<=>(const Triple&) const = default;
};

/// Full array/waveform geometry plus every thinning choice.
///
/// Positions are integers in units of half a wavelength; the virtual array
/// index of the (m,q) channel is tx_positions[m] + rx_positions[q]. The
/// per-channel Fourier index set is shared by all transmitters and shifted
/// by f_m * pri onto the global TN-point frequency grid.
struct RadarConfig {
  double wavelength = 0.0;           // lambda, meters
  int full_tx_count = 0;             // T
  int full_rx_count = 0;             // R
  std::vector<int> tx_positions;     // xi_m, length M
  std::vector<int> rx_positions;     // zeta_q, length Q
  double pri = 0.0;                  // tau, seconds
  int pulse_count = 0;               // P
  std::vector<std::vector<int>> pulse_schedule;  // M x P, entries 0/1
  int coeffs_per_channel = 0;        // K
  int fourier_bins = 0;              // N
  std::vector<double> tx_baseband_freqs;  // f_m, Hz, length M
  std::vector<int> freq_index_set;   // K selected per-channel indices
  // When true the synthesis phase uses the bare virtual element index;
  // when false it keeps the (1 + f_m/f_c) wideband correction.
  bool narrowband = false;

  int tx_count() const { return static_cast<int>(tx_positions.size()); }   // M
  int rx_count() const { return static_cast<int>(rx_positions.size()); }   // Q
  int tn() const { return full_tx_count * fourier_bins; }
  int tr() const { return full_tx_count * full_rx_count; }
  double carrier_freq() const { return kSpeedOfLight / wavelength; }

  /// Integer frequency-channel offset f_m * pri of transmitter m.
  int freq_offset(int m) const {
    return static_cast<int>(std::llround(tx_baseband_freqs[static_cast<std::size_t>(m)] * pri));
  }

  /// Pulses emitted by transmitter m.
  int pulses_of(int m) const {
    int n = 0;
    for (int d : pulse_schedule[static_cast<std::size_t>(m)]) n += d;
    return n;
  }

  /// Indices of the pulses transmitter m actually emits, ascending.
  std::vector<int> active_pulses(int m) const {
    std::vector<int> out;
    const auto& row = pulse_schedule[static_cast<std::size_t>(m)];
    for (int p = 0; p < pulse_count; ++p)
      if (row[static_cast<std::size_t>(p)] != 0) out.push_back(p);
    return out;
  }

  /// Total emitted pulse count, sum_m P_m (the aperture occupancy).
  int total_pulses() const {
    int n = 0;
    for (int m = 0; m < tx_count(); ++m) n += pulses_of(m);
    return n;
  }

  /// Spatial phase multiplier of channel (m,q): the virtual element index,
  /// optionally carrying the wideband (1 + f_m/f_c) term.
  double beta(int m, int q) const {
    const double v = tx_positions[static_cast<std::size_t>(m)] + rx_positions[static_cast<std::size_t>(q)];
    if (narrowband) return v;
    return v * (1.0 + tx_baseband_freqs[static_cast<std::size_t>(m)] / carrier_freq());
  }

  /// Throws config_error when any invariant is violated.
  void validate() const;
};

/// One point scatterer.
struct Target {
  cplx amplitude;        // alpha_l
  double delay = 0.0;    // tau_l, seconds, in [0, pri)
  double doa = 0.0;      // sin(theta_l), in [-1, 1)
  double doppler = 0.0;  // f^D_l, Hz, |f| <= 1/(2 pri)
};

struct TargetScene {
  std::vector<Target> targets;

  std::size_t size() const { return targets.size(); }

  /// Throws argument_error on out-of-range parameters or duplicate triples.
  void validate(const RadarConfig& config) const;
};

/// Bijections between grid indices and physical parameter values.
/// Bin widths are pri/TN (delay), 2/TR (DoA) and 1/(P*pri) (Doppler);
/// Doppler values wrap into [-1/(2 pri), 1/(2 pri)).
struct GridMaps {
  int tn = 0;
  int tr = 0;
  int pulses = 0;
  double pri = 0.0;

  explicit GridMaps(const RadarConfig& c) : tn(c.tn()), tr(c.tr()), pulses(c.pulse_count), pri(c.pri) {}

  double delay_bin_width() const { return pri / tn; }
  double doa_bin_width() const { return 2.0 / tr; }
  double doppler_bin_width() const { return 1.0 / (pulses * pri); }

  double delay_value(int n) const { return delay_bin_width() * n; }
  double doa_value(int j) const { return -1.0 + doa_bin_width() * j; }
  double doppler_value(int p) const {
    const double raw = p * doppler_bin_width();
    return (2 * p >= pulses) ? raw - 1.0 / pri : raw;
  }

  /// Inverse maps; nullopt when the value is off-grid (tolerance in bins).
  std::optional<int> delay_bin(double delay, double tol = 1e-9) const;
  std::optional<int> doa_bin(double doa, double tol = 1e-9) const;
  std::optional<int> doppler_bin(double doppler, double tol = 1e-9) const;
};

/// Sparse TN x TR x P scene tensor: amplitudes at support triples.
struct SparseSceneTensor {
  std::array<int, 3> shape{0, 0, 0};
  std::vector<Triple> support;
  std::vector<cplx> amplitudes;

  Tensor3 to_dense() const;

  /// Throws index_error on out-of-range or duplicate support triples.
  void validate() const;
};

}  // namespace tenrad

#include "tenrad/types.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "tenrad/errors.hpp"

namespace tenrad {

void RadarConfig::validate() const {
  if (!(wavelength > 0.0)) throw config_error("wavelength must be positive");
  if (!(pri > 0.0)) throw config_error("pri must be positive");
  if (full_tx_count < 1 || full_rx_count < 1) throw config_error("full array counts must be >= 1");
  if (pulse_count < 1) throw config_error("pulse_count must be >= 1");
  if (fourier_bins < 1) throw config_error("fourier_bins must be >= 1");

  const int m_count = tx_count();
  const int q_count = rx_count();
  if (m_count < 1 || m_count > full_tx_count)
    throw config_error("need 1 <= M <= T transmit positions");
  if (q_count < 1 || q_count > full_rx_count)
    throw config_error("need 1 <= Q <= R receive positions");

  // Virtual ULA indices xi_m + zeta_q must be distinct integers in [0, TR).
  std::set<int> virt;
  for (int m = 0; m < m_count; ++m) {
    if (tx_positions[static_cast<std::size_t>(m)] < 0) throw config_error("tx positions must be >= 0");
    for (int q = 0; q < q_count; ++q) {
      if (rx_positions[static_cast<std::size_t>(q)] < 0) throw config_error("rx positions must be >= 0");
      const int v = tx_positions[static_cast<std::size_t>(m)] + rx_positions[static_cast<std::size_t>(q)];
      if (v < 0 || v >= tr())
        throw config_error("virtual element index out of [0, TR): " + std::to_string(v));
      if (!virt.insert(v).second)
        throw config_error("virtual element indices must be distinct (collision at " + std::to_string(v) + ")");
    }
  }

  if (static_cast<int>(pulse_schedule.size()) != m_count)
    throw config_error("pulse_schedule must have one row per transmitter");
  for (int m = 0; m < m_count; ++m) {
    const auto& row = pulse_schedule[static_cast<std::size_t>(m)];
    if (static_cast<int>(row.size()) != pulse_count)
      throw config_error("pulse_schedule rows must have pulse_count entries");
    int pm = 0;
    for (int d : row) {
      if (d != 0 && d != 1) throw config_error("pulse_schedule entries must be 0 or 1");
      pm += d;
    }
    if (pm < 1) throw config_error("every transmitter must emit at least one pulse");
  }

  if (coeffs_per_channel < 1 || coeffs_per_channel > fourier_bins)
    throw config_error("need 1 <= K <= N Fourier coefficients per channel");
  if (static_cast<int>(freq_index_set.size()) != coeffs_per_channel)
    throw config_error("freq_index_set must have K entries");
  if (std::set<int>(freq_index_set.begin(), freq_index_set.end()).size() != freq_index_set.size())
    throw config_error("freq_index_set entries must be distinct");

  if (static_cast<int>(tx_baseband_freqs.size()) != m_count)
    throw config_error("tx_baseband_freqs must have one entry per transmitter");
  for (int m = 0; m < m_count; ++m) {
    const double ft = tx_baseband_freqs[static_cast<std::size_t>(m)] * pri;
    if (std::abs(ft - std::llround(ft)) > 1e-6)
      throw config_error("f_m * pri must be an integer so channel bins land on the global grid");
    for (int k : freq_index_set) {
      const int g = k + static_cast<int>(std::llround(ft));
      if (g < 0 || g >= tn())
        throw config_error("global frequency index out of [0, TN): " + std::to_string(g));
    }
  }
}

void TargetScene::validate(const RadarConfig& config) const {
  if (targets.empty()) throw argument_error("scene must contain at least one target");
  for (const auto& t : targets) {
    if (!(t.delay >= 0.0) || !(t.delay < config.pri))
      throw argument_error("target delay must lie in [0, pri)");
    if (std::abs(t.doa) > 1.0) throw argument_error("target DoA must lie in [-1, 1]");
    if (std::abs(t.doppler) > 0.5 / config.pri + 1e-12)
      throw argument_error("target Doppler must satisfy |f| <= 1/(2 pri)");
  }
  for (std::size_t a = 0; a < targets.size(); ++a)
    for (std::size_t b = a + 1; b < targets.size(); ++b)
      if (targets[a].delay == targets[b].delay && targets[a].doa == targets[b].doa &&
          targets[a].doppler == targets[b].doppler)
        throw argument_error("target parameter triples must be pairwise distinct");
}

namespace {

std::optional<int> snap(double value, double origin, double width, int count, double tol) {
  const double x = (value - origin) / width;
  const double r = std::round(x);
  if (std::abs(x - r) > tol) return std::nullopt;
  const int bin = static_cast<int>(r);
  if (bin < 0 || bin >= count) return std::nullopt;
  return bin;
}

}  // namespace

std::optional<int> GridMaps::delay_bin(double delay, double tol) const {
  return snap(delay, 0.0, delay_bin_width(), tn, tol);
}

std::optional<int> GridMaps::doa_bin(double doa, double tol) const {
  return snap(doa, -1.0, doa_bin_width(), tr, tol);
}

std::optional<int> GridMaps::doppler_bin(double doppler, double tol) const {
  // The Doppler axis is periodic with period 1/pri; fold onto bins 0..P-1.
  const double x = doppler * pulses * pri;
  const double r = std::round(x);
  if (std::abs(x - r) > tol) return std::nullopt;
  int bin = static_cast<int>(r) % pulses;
  if (bin < 0) bin += pulses;
  return bin;
}

Tensor3 SparseSceneTensor::to_dense() const {
  validate();
  Tensor3 out(shape[0], shape[1], shape[2]);
  for (std::size_t l = 0; l < support.size(); ++l)
    out(support[l].i, support[l].j, support[l].k) = amplitudes[l];
  return out;
}

void SparseSceneTensor::validate() const {
  if (support.size() != amplitudes.size())
    throw index_error("support and amplitude lists must align");
  std::set<Triple> seen;
  for (const auto& t : support) {
    if (t.i < 0 || t.i >= shape[0] || t.j < 0 || t.j >= shape[1] || t.k < 0 || t.k >= shape[2]) {
      std::ostringstream oss;
      oss << "support triple (" << t.i << "," << t.j << "," << t.k << ") outside grid";
      throw index_error(oss.str());
    }
    if (!seen.insert(t).second) throw index_error("support triples must be distinct");
  }
}

}  // namespace tenrad

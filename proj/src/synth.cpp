#include "tenrad/synth.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "tenrad/errors.hpp"
#include "tenrad/rng.hpp"

namespace tenrad {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

Tensor3 PartialMeasurementTensor::to_dense() const {
  Tensor3 t(shape[0], shape[1], shape[2]);
  for (size_t i = 0; i < support.size(); ++i)
    t(support[i].i, support[i].j, support[i].k) = values(static_cast<Eigen::Index>(i));
  return t;
}

PartialMeasurementTensor synthesize(const TargetScene& scene, const RadarConfig& config,
                                    const IndexSets& sets) {
  config.validate();
  if (!scene.targets.empty()) scene.validate(config);

  PartialMeasurementTensor z;
  z.shape = sets.shape;
  z.support = sets.triples();
  z.values = Vector::Zero(static_cast<Eigen::Index>(sets.size()));
  for (size_t r = 0; r < sets.entries.size(); ++r) {
    const ObservedEntry& e = sets.entries[r];
    const double beta = config.beta(e.tx, e.rx);
    cplx acc = 0.0;
    for (const Target& t : scene.targets) {
      // Delay and carrier phases combine through the global frequency row:
      // (2pi/tau) k tau_l + 2pi f_m tau_l = 2pi (k + f_m tau) (tau_l/tau).
      const double phase = kTwoPi * (beta * t.doa - e.at.i * t.delay / config.pri -
                                     t.doppler * e.at.k * config.pri);
      acc += t.amplitude * std::polar(1.0, phase);
    }
    z.values(static_cast<Eigen::Index>(r)) = acc;
  }
  return z;
}

SparseSceneTensor scene_to_tensor(const TargetScene& scene, const RadarConfig& config) {
  config.validate();
  scene.validate(config);
  const GridMaps grid(config);

  SparseSceneTensor x;
  x.shape = {config.tn(), config.tr(), config.pulse_count};
  for (const Target& t : scene.targets) {
    const auto i = grid.delay_bin(t.delay);
    const auto j = grid.doa_bin(t.doa);
    const auto k = grid.doppler_bin(t.doppler);
    if (!i || !j || !k)
      throw grid_error("target is off-grid (delay=" + std::to_string(t.delay) +
                       ", doa=" + std::to_string(t.doa) +
                       ", doppler=" + std::to_string(t.doppler) + ")");
    x.support.push_back({*i, *j, *k});
    x.amplitudes.push_back(t.amplitude);
  }
  x.validate();
  return x;
}

double noise_variance_for_snr(double snr_db, const RadarConfig& config) {
  const double snr = std::pow(10.0, snr_db / 10.0);
  const double m = config.tx_count();
  const double k = static_cast<double>(config.freq_index_set.size());
  const double cells = k * config.rx_count() * config.total_pulses();
  return (m * k) * (m * k) / (snr * cells);
}

PartialMeasurementTensor add_noise(const PartialMeasurementTensor& z, double snr_db,
                                   const RadarConfig& config, std::uint64_t seed) {
  if (std::isnan(snr_db) || snr_db == -std::numeric_limits<double>::infinity())
    throw argument_error("snr_db must be finite or +inf");
  if (snr_db == std::numeric_limits<double>::infinity()) return z;

  PartialMeasurementTensor out = z;
  out.noise_variance = noise_variance_for_snr(snr_db, config);
  Rng rng(seed);
  for (Eigen::Index i = 0; i < out.values.size(); ++i)
    out.values(i) += rng.complex_gaussian(out.noise_variance);
  return out;
}

}  // namespace tenrad

#include "tenrad/index_sets.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "tenrad/errors.hpp"

namespace tenrad {

std::vector<Triple> IndexSets::triples() const {
  std::vector<Triple> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.at);
  return out;
}

std::vector<std::int64_t> IndexSets::linearized() const {
  std::vector<std::int64_t> out;
  out.reserve(entries.size());
  const std::int64_t d1 = shape[1], d2 = shape[2];
  for (const auto& e : entries)
    out.push_back((static_cast<std::int64_t>(e.at.i) * d1 + e.at.j) * d2 + e.at.k);
  return out;
}

IndexSets build_index_sets(const RadarConfig& config) {
  config.validate();

  // Disjoint spectral supports across transmitters: otherwise a receiver bin
  // mixes two waveforms and the per-channel attribution below is wrong.
  std::set<int> spectrum;
  for (int m = 0; m < config.tx_count(); ++m) {
    const int off = config.freq_offset(m);
    for (int k : config.freq_index_set) {
      if (!spectrum.insert(k + off).second)
        throw ambiguity_error("transmitter spectral supports overlap at global bin " +
                              std::to_string(k + off));
    }
  }

  IndexSets sets;
  sets.shape = {config.tn(), config.tr(), config.pulse_count};
  std::set<int> omega, lambda, pi;
  for (int m = 0; m < config.tx_count(); ++m) {
    const int off = config.freq_offset(m);
    sets.per_tx_pulses.push_back(config.active_pulses(m));
    for (int p : sets.per_tx_pulses.back()) {
      pi.insert(p);
      for (int q = 0; q < config.rx_count(); ++q) {
        const int v = config.tx_positions[m] + config.rx_positions[q];
        lambda.insert(v);
        for (size_t kl = 0; kl < config.freq_index_set.size(); ++kl) {
          const int g = config.freq_index_set[kl] + off;
          omega.insert(g);
          sets.entries.push_back({Triple{g, v, p}, m, q, static_cast<int>(kl)});
        }
      }
    }
  }
  std::sort(sets.entries.begin(), sets.entries.end(),
            [](const ObservedEntry& a, const ObservedEntry& b) { return a.at < b.at; });
  for (size_t i = 1; i < sets.entries.size(); ++i)
    if (!(sets.entries[i - 1].at < sets.entries[i].at))
      throw ambiguity_error("duplicate observed cell in index set construction");
  sets.omega.assign(omega.begin(), omega.end());
  sets.lambda.assign(lambda.begin(), lambda.end());
  sets.pi.assign(pi.begin(), pi.end());
  return sets;
}

}  // namespace tenrad

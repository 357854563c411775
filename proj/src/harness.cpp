#include "tenrad/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <thread>

#include "tenrad/errors.hpp"
#include "tenrad/metrics.hpp"
#include "tenrad/omp.hpp"
#include "tenrad/serialize.hpp"
#include "tenrad/synth.hpp"
#include "tenrad/tc.hpp"

namespace tenrad {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

void ExperimentSpec::validate() const {
  radar.validate();
  tc.validate();
  if (trials < 1) throw config_error("trials must be at least 1");
  if (snr_grid_db.empty()) throw config_error("snr_grid_db must be nonempty");
  for (double v : snr_grid_db)
    if (std::isnan(v) || v == -std::numeric_limits<double>::infinity())
      throw config_error("snr_grid_db values must be finite or +inf");
  if (algorithms.empty()) throw config_error("algorithms must be nonempty");
  for (const auto& a : algorithms)
    if (a != "omp" && a != "tc") throw config_error("unknown algorithm '" + a + "'");
  if (!(nao_ref > 0.0)) throw config_error("nao_ref must be positive");
  if (sparsity < 0) throw config_error("sparsity must be nonnegative");
  if (workers < 1) throw config_error("workers must be at least 1");
  if (scene.kind == SceneKind::fixed) {
    if (scene.fixed.targets.empty()) throw config_error("fixed scene has no targets");
  } else {
    if (scene.targets < 1) throw config_error("random scenes need at least one target");
  }
  if (!(scene.min_amplitude > 0.0) || scene.max_amplitude < scene.min_amplitude)
    throw config_error("amplitude range must satisfy 0 < min <= max");
  if (scene.min_separation_bins < 0.0) throw config_error("min_separation_bins must be >= 0");
}

namespace {

double circular_abs(double x, double period) {
  double r = std::fmod(std::abs(x), period);
  return std::min(r, period - r);
}

double bin_distance(const Target& a, const Target& b, const GridMaps& grid, double pri) {
  const double dd = std::abs(a.delay - b.delay) / grid.delay_bin_width();
  const double dv = std::abs(a.doa - b.doa) / grid.doa_bin_width();
  const double df = circular_abs(a.doppler - b.doppler, 1.0 / pri) / grid.doppler_bin_width();
  return std::max({dd, dv, df});
}

}  // namespace

TargetScene generate_scene(const SceneGenerator& gen, const RadarConfig& config,
                           std::uint64_t seed) {
  if (gen.kind == SceneKind::fixed) {
    gen.fixed.validate(config);
    return gen.fixed;
  }
  const GridMaps grid(config);
  Rng rng(seed);
  TargetScene scene;
  // DoA draws stay in [-1, 0): grid points past the half-array are phase
  // aliases of earlier ones and cannot be told apart.
  const int doa_bins = grid.tr / 2;
  int attempts = 0;
  while (static_cast<int>(scene.targets.size()) < gen.targets) {
    if (++attempts > 1000 * gen.targets)
      throw argument_error("could not place targets with the requested separation");
    Target t;
    if (gen.kind == SceneKind::random_on_grid) {
      t.delay = grid.delay_value(static_cast<int>(rng.uniform_index(grid.tn)));
      t.doa = grid.doa_value(static_cast<int>(rng.uniform_index(doa_bins)));
      t.doppler = grid.doppler_value(static_cast<int>(rng.uniform_index(grid.pulses)));
    } else {
      t.delay = rng.uniform(0.0, config.pri);
      t.doa = rng.uniform(-1.0, 0.0);
      t.doppler = rng.uniform(-0.5 / config.pri, 0.5 / config.pri);
    }
    t.amplitude = std::polar(rng.uniform(gen.min_amplitude, gen.max_amplitude),
                             kTwoPi * rng.uniform());
    bool ok = true;
    for (const Target& other : scene.targets)
      if (bin_distance(t, other, grid, config.pri) < gen.min_separation_bins) {
        ok = false;
        break;
      }
    if (ok) scene.targets.push_back(t);
  }
  scene.validate(config);
  return scene;
}

double effective_snr_db(double nominal_db, EnergyMode mode, double nao, double nao_ref) {
  if (std::isinf(nominal_db)) return nominal_db;
  const double ratio = nao_ref / nao;
  const double factor = mode == EnergyMode::total_energy_fixed ? 20.0 : 10.0;
  return nominal_db + factor * std::log10(ratio);
}

namespace {

struct PointTally {
  long long hits = 0, targets = 0;
  int scored = 0, failed = 0;
};

void wilson_interval(long long hits, long long n, double* lo, double* hi) {
  if (n <= 0) {
    *lo = 0.0;
    *hi = 1.0;
    return;
  }
  const double z = 1.959963984540054;
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(hits) / nn;
  const double denom = 1.0 + z * z / nn;
  const double center = (p + z * z / (2.0 * nn)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / nn + z * z / (4.0 * nn * nn)) / denom;
  *lo = std::max(0.0, center - half);
  *hi = std::min(1.0, center + half);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

ExperimentResults run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  const IndexSets sets = build_index_sets(spec.radar);
  const ApertureOccupancy occ = aperture_occupancy(spec.radar);
  const int n_snr = static_cast<int>(spec.snr_grid_db.size());
  const int n_alg = static_cast<int>(spec.algorithms.size());
  const int sparsity = spec.sparsity > 0
                           ? spec.sparsity
                           : (spec.scene.kind == SceneKind::fixed
                                  ? static_cast<int>(spec.scene.fixed.targets.size())
                                  : spec.scene.targets);

  struct TrialOutcome {
    std::vector<long long> hits, targets;  // indexed alg * n_snr + s
    std::vector<char> failed;
    std::vector<ScatterRecord> scatter;
  };
  std::vector<TrialOutcome> outcomes(static_cast<size_t>(spec.trials));

  const auto run_trial = [&](int trial) {
    TrialOutcome& out = outcomes[static_cast<size_t>(trial)];
    out.hits.assign(static_cast<size_t>(n_alg * n_snr), 0);
    out.targets.assign(static_cast<size_t>(n_alg * n_snr), 0);
    out.failed.assign(static_cast<size_t>(n_alg * n_snr), 0);

    const TargetScene truth =
        generate_scene(spec.scene, spec.radar, mix_seed(spec.master_seed, static_cast<std::uint64_t>(trial)));
    const PartialMeasurementTensor clean = synthesize(truth, spec.radar, sets);

    for (int s = 0; s < n_snr; ++s) {
      const double snr_eff =
          effective_snr_db(spec.snr_grid_db[static_cast<size_t>(s)], spec.energy_mode, occ.nao,
                           spec.nao_ref);
      const PartialMeasurementTensor noisy =
          add_noise(clean, snr_eff, spec.radar,
                    mix_seed(spec.master_seed, static_cast<std::uint64_t>(trial),
                             static_cast<std::uint64_t>(s)));
      for (int a = 0; a < n_alg; ++a) {
        const size_t slot = static_cast<size_t>(a * n_snr + s);
        TargetScene estimate;
        try {
          if (spec.algorithms[static_cast<size_t>(a)] == "omp") {
            estimate = support_to_scene(omp_recover(noisy, sets, spec.radar, sparsity), spec.radar);
          } else {
            const TcResult tc = tc_recover(noisy, sets, spec.radar, sparsity, spec.tc);
            estimate = extract_parameters(tc.factors, spec.radar, noisy, sets);
          }
        } catch (const error&) {
          out.failed[slot] = 1;
          continue;
        }
        const HitMatch match = hit_match(truth, estimate, spec.radar);
        out.hits[slot] += match.hits;
        out.targets[slot] += static_cast<long long>(truth.targets.size());
        for (size_t p = 0; p < match.assignment.size(); ++p) {
          ScatterRecord rec;
          rec.algorithm = spec.algorithms[static_cast<size_t>(a)];
          rec.snr_db = spec.snr_grid_db[static_cast<size_t>(s)];
          rec.trial = trial;
          const Target& t = truth.targets[static_cast<size_t>(match.assignment[p].first)];
          const Target& e = estimate.targets[static_cast<size_t>(match.assignment[p].second)];
          rec.true_delay = t.delay;
          rec.true_doa = t.doa;
          rec.true_doppler = t.doppler;
          rec.est_delay = e.delay;
          rec.est_doa = e.doa;
          rec.est_doppler = e.doppler;
          rec.hit = match.pair_is_hit[p];
          out.scatter.push_back(rec);
        }
      }
    }
  };

  const int n_workers = std::min(spec.workers, spec.trials);
  if (n_workers <= 1) {
    for (int t = 0; t < spec.trials; ++t) run_trial(t);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < n_workers; ++w)
      pool.emplace_back([&]() {
        while (true) {
          const int t = next.fetch_add(1);
          if (t >= spec.trials) return;
          run_trial(t);
        }
      });
    for (auto& th : pool) th.join();
  }

  ExperimentResults results;
  for (int a = 0; a < n_alg; ++a)
    for (int s = 0; s < n_snr; ++s) {
      PointTally tally;
      for (const TrialOutcome& out : outcomes) {
        const size_t slot = static_cast<size_t>(a * n_snr + s);
        if (out.failed[slot]) {
          ++tally.failed;
          continue;
        }
        ++tally.scored;
        tally.hits += out.hits[slot];
        tally.targets += out.targets[slot];
      }
      CurvePoint pt;
      pt.algorithm = spec.algorithms[static_cast<size_t>(a)];
      pt.nao = occ.nao;
      pt.energy_mode = spec.energy_mode == EnergyMode::total_energy_fixed ? "tef" : "spef";
      pt.snr_db = spec.snr_grid_db[static_cast<size_t>(s)];
      pt.effective_snr_db = effective_snr_db(pt.snr_db, spec.energy_mode, occ.nao, spec.nao_ref);
      pt.hit_rate = tally.targets > 0
                        ? static_cast<double>(tally.hits) / static_cast<double>(tally.targets)
                        : 0.0;
      wilson_interval(tally.hits, tally.targets, &pt.ci_low, &pt.ci_high);
      pt.trials = tally.scored;
      pt.failed = tally.failed;
      results.points.push_back(pt);
    }
  for (const TrialOutcome& out : outcomes)
    results.scatter.insert(results.scatter.end(), out.scatter.begin(), out.scatter.end());
  return results;
}

std::string results_to_csv(const ExperimentResults& results) {
  std::string csv =
      "algorithm,nao,energy_mode,snr_db,hit_rate,ci_low,ci_high,trials,failed,effective_snr_db\n";
  for (const CurvePoint& p : results.points) {
    csv += p.algorithm + "," + format_double(p.nao) + "," + p.energy_mode + "," +
           format_double(p.snr_db) + "," + format_double(p.hit_rate) + "," +
           format_double(p.ci_low) + "," + format_double(p.ci_high) + "," +
           std::to_string(p.trials) + "," + std::to_string(p.failed) + "," +
           format_double(p.effective_snr_db) + "\n";
  }
  return csv;
}

void emit_plot_data(const ExperimentResults& results, const std::string& csv_path,
                    const std::string& scatter_path) {
  if (results.points.empty()) throw argument_error("no results to emit");
  save_text(csv_path, results_to_csv(results));
  if (!scatter_path.empty()) {
    json arr = json::array();
    for (const ScatterRecord& r : results.scatter)
      arr.push_back(json{{"algorithm", r.algorithm},
                         {"snr_db", std::isinf(r.snr_db) ? json("inf") : json(r.snr_db)},
                         {"trial", r.trial},
                         {"true", {r.true_delay, r.true_doa, r.true_doppler}},
                         {"estimated", {r.est_delay, r.est_doa, r.est_doppler}},
                         {"hit", r.hit}});
    save_text(scatter_path, arr.dump(2) + "\n");
  }
}

}  // namespace tenrad

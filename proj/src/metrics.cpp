#include "tenrad/metrics.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <tuple>

#include "tenrad/errors.hpp"

namespace tenrad {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double circular_abs(double x, double period) {
  double r = std::fmod(std::abs(x), period);
  return std::min(r, period - r);
}

// Max of the three bin-normalized errors.
double pair_distance(const Target& t, const Target& e, const GridMaps& grid, double pri) {
  const double d_delay = std::abs(t.delay - e.delay) / grid.delay_bin_width();
  const double d_doa = std::abs(t.doa - e.doa) / grid.doa_bin_width();
  const double d_dopp = circular_abs(t.doppler - e.doppler, 1.0 / pri) / grid.doppler_bin_width();
  return std::max({d_delay, d_doa, d_dopp});
}

}  // namespace

HitMatch hit_match(const TargetScene& truth, const TargetScene& estimate,
                   const RadarConfig& config) {
  const GridMaps grid(config);
  struct Cand {
    double dist;
    int t, e;
  };
  std::vector<Cand> cands;
  for (size_t t = 0; t < truth.targets.size(); ++t)
    for (size_t e = 0; e < estimate.targets.size(); ++e)
      cands.push_back({pair_distance(truth.targets[t], estimate.targets[e], grid, config.pri),
                       static_cast<int>(t), static_cast<int>(e)});
  std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
    return std::tie(a.dist, a.t, a.e) < std::tie(b.dist, b.t, b.e);
  });

  HitMatch match;
  std::vector<bool> t_used(truth.targets.size(), false), e_used(estimate.targets.size(), false);
  for (const Cand& c : cands) {
    if (t_used[static_cast<size_t>(c.t)] || e_used[static_cast<size_t>(c.e)]) continue;
    t_used[static_cast<size_t>(c.t)] = e_used[static_cast<size_t>(c.e)] = true;
    match.assignment.emplace_back(c.t, c.e);
    match.pair_is_hit.push_back(c.dist < 1.0);
    if (c.dist < 1.0) ++match.hits;
  }
  return match;
}

double hit_rate(const std::vector<std::pair<TargetScene, TargetScene>>& trials,
                const RadarConfig& config) {
  if (trials.empty()) throw argument_error("hit_rate needs at least one trial");
  long long hits = 0, total = 0;
  for (const auto& [truth, estimate] : trials) {
    hits += hit_match(truth, estimate, config).hits;
    total += static_cast<long long>(truth.targets.size());
  }
  if (total == 0) throw argument_error("hit_rate needs at least one true target");
  return static_cast<double>(hits) / static_cast<double>(total);
}

ApertureOccupancy aperture_occupancy(const RadarConfig& config) {
  ApertureOccupancy occ;
  for (const auto& row : config.pulse_schedule)
    for (int d : row) occ.ao += d;
  const double denom = static_cast<double>(config.pulse_schedule.size()) * config.pulse_count;
  occ.nao = denom > 0 ? occ.ao / denom : 0.0;
  return occ;
}

namespace {

bool columns_dependent(const Matrix& cols) {
  if (cols.cols() > cols.rows()) return true;  // rank can't reach the column count
  Eigen::JacobiSVD<Matrix> svd(cols);
  const auto& s = svd.singularValues();
  if (s(0) <= 0.0) return true;
  return s(s.size() - 1) < 1e-9 * s(0);
}

}  // namespace

int exact_spark(const Matrix& m) {
  const int cols = static_cast<int>(m.cols());
  const int rows = static_cast<int>(m.rows());
  if (cols > 12)
    throw capability_error("exact spark limited to 12 columns, got " + std::to_string(cols));
  if (cols == 0) throw argument_error("spark of an empty matrix");

  const int max_size = std::min(cols, rows + 1);
  std::vector<int> pick;
  for (int s = 2; s <= max_size; ++s) {
    pick.resize(static_cast<size_t>(s));
    for (int i = 0; i < s; ++i) pick[static_cast<size_t>(i)] = i;
    while (true) {
      Matrix sub(rows, s);
      for (int i = 0; i < s; ++i) sub.col(i) = m.col(pick[static_cast<size_t>(i)]);
      if (columns_dependent(sub)) return s;
      // next combination
      int j = s - 1;
      while (j >= 0 && pick[static_cast<size_t>(j)] == cols - s + j) --j;
      if (j < 0) break;
      ++pick[static_cast<size_t>(j)];
      for (int i = j + 1; i < s; ++i) pick[static_cast<size_t>(i)] = pick[static_cast<size_t>(i - 1)] + 1;
    }
  }
  return cols + 1;  // every subset independent
}

namespace {

Matrix drop_duplicate_columns(const Matrix& m, int* removed) {
  std::vector<int> keep;
  for (int c = 0; c < m.cols(); ++c) {
    bool dup = false;
    for (int k : keep)
      if ((m.col(c) - m.col(k)).norm() < 1e-9 * std::sqrt(static_cast<double>(m.rows()))) {
        dup = true;
        break;
      }
    if (!dup) keep.push_back(c);
  }
  *removed = static_cast<int>(m.cols()) - static_cast<int>(keep.size());
  Matrix out(m.rows(), static_cast<Eigen::Index>(keep.size()));
  for (size_t i = 0; i < keep.size(); ++i) out.col(static_cast<Eigen::Index>(i)) = m.col(keep[i]);
  return out;
}

AxisFeasibility check_axis(const std::string& name, const std::vector<int>& observed_rows,
                           const Matrix& restricted, int sparsity) {
  AxisFeasibility ax;
  ax.axis = name;
  ax.observed = static_cast<int>(observed_rows.size());
  ax.required = 2 * sparsity;
  ax.count_ok = ax.observed >= ax.required;

  int removed = 0;
  const Matrix unique_cols = drop_duplicate_columns(restricted, &removed);
  if (removed > 0)
    ax.note = std::to_string(removed) + " aliased grid columns counted once; ";
  if (2 * sparsity > 6) {
    ax.note += "spark skipped (2L > 6)";
    return ax;
  }
  try {
    ax.spark = exact_spark(unique_cols);
    ax.spark_ok = *ax.spark > 2 * sparsity;
  } catch (const capability_error& e) {
    ax.note += std::string("spark skipped (") + e.what() + ")";
  }
  return ax;
}

}  // namespace

FeasibilityReport feasibility_check(const IndexSets& sets, int sparsity) {
  if (sparsity < 1) throw argument_error("sparsity must be at least 1");
  const int tn = sets.shape[0], tr = sets.shape[1], p = sets.shape[2];

  Matrix a(static_cast<Eigen::Index>(sets.omega.size()), tn);
  for (size_t r = 0; r < sets.omega.size(); ++r)
    for (int n = 0; n < tn; ++n)
      a(static_cast<Eigen::Index>(r), n) = std::polar(1.0, -kTwoPi * sets.omega[r] * n / tn);
  Matrix b(static_cast<Eigen::Index>(sets.lambda.size()), tr);
  for (size_t r = 0; r < sets.lambda.size(); ++r)
    for (int j = 0; j < tr; ++j)
      b(static_cast<Eigen::Index>(r), j) =
          std::polar(1.0, kTwoPi * sets.lambda[r] * (-1.0 + 2.0 * j / tr));
  Matrix f(static_cast<Eigen::Index>(sets.pi.size()), p);
  for (size_t r = 0; r < sets.pi.size(); ++r)
    for (int c = 0; c < p; ++c)
      f(static_cast<Eigen::Index>(r), c) = std::polar(1.0, -kTwoPi * sets.pi[r] * c / p);

  FeasibilityReport report;
  report.sparsity = sparsity;
  report.axes.push_back(check_axis("frequency", sets.omega, a, sparsity));
  report.axes.push_back(check_axis("element", sets.lambda, b, sparsity));
  report.axes.push_back(check_axis("pulse", sets.pi, f, sparsity));
  report.feasible = true;
  for (const auto& ax : report.axes) {
    if (!ax.count_ok) report.feasible = false;
    if (ax.spark_ok && !*ax.spark_ok) report.feasible = false;
  }
  return report;
}

}  // namespace tenrad

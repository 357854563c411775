#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tenrad/index_sets.hpp"
#include "tenrad/tensor3.hpp"
#include "tenrad/types.hpp"

namespace tenrad {

struct HitMatch {
  int hits = 0;
  // (truth index, estimate index) pairs in match order; includes non-hit pairs.
  std::vector<std::pair<int, int>> assignment;
  std::vector<bool> pair_is_hit;  // aligned with assignment
};

/// Greedy one-to-one pairing, nearest pair first, distance = max of the three
/// bin-normalized parameter errors (Doppler circular with period 1/pri). A
/// matched pair counts as a hit iff that distance is strictly below one bin.
HitMatch hit_match(const TargetScene& truth, const TargetScene& estimate,
                   const RadarConfig& config);

/// Total hits over total true targets across (truth, estimate) pairs.
double hit_rate(const std::vector<std::pair<TargetScene, TargetScene>>& trials,
                const RadarConfig& config);

struct ApertureOccupancy {
  int ao = 0;        // total emitted pulses
  double nao = 0.0;  // ao / (tx_count * pulse_count)
};

ApertureOccupancy aperture_occupancy(const RadarConfig& config);

/// Smallest number of linearly dependent columns (columns+1 when all columns
/// are independent). Exhaustive subset enumeration; refuses matrices wider
/// than 12 columns (capability_error).
int exact_spark(const Matrix& m);

struct AxisFeasibility {
  std::string axis;           // "frequency" | "element" | "pulse"
  int observed = 0;           // number of distinct sampled indices
  int required = 0;           // 2L
  bool count_ok = false;
  std::optional<int> spark;   // exact spark of the row-selected dictionary
  std::optional<bool> spark_ok;  // spark > 2L
  std::string note;
};

struct FeasibilityReport {
  int sparsity = 0;
  std::vector<AxisFeasibility> axes;
  bool feasible = false;  // every axis passes each check it could run
};

/// Counting checks (each axis needs at least 2L distinct samples) plus, when
/// the instance is small enough (mode size <= 12 and 2L <= 6), exact spark of
/// the row-selected dictionary matrices. Above those limits the spark check
/// degrades to counting only, with the refusal noted.
FeasibilityReport feasibility_check(const IndexSets& sets, int sparsity);

}  // namespace tenrad

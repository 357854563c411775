#pragma once

#include <string>

#include <json.hpp>

#include "tenrad/harness_types.hpp"
#include "tenrad/metrics.hpp"
#include "tenrad/omp.hpp"
#include "tenrad/synth.hpp"
#include "tenrad/tc.hpp"
#include "tenrad/types.hpp"

namespace tenrad {

using json = nlohmann::json;

json to_json(const RadarConfig& config);
RadarConfig radar_from_json(const json& j);

json to_json(const TargetScene& scene);
TargetScene scene_from_json(const json& j);

json to_json(const PartialMeasurementTensor& z);
PartialMeasurementTensor measurement_from_json(const json& j);
std::string measurement_to_csv(const PartialMeasurementTensor& z);

json to_json(const OmpResult& result, const RadarConfig& config);
json to_json(const TcResult& result, const TargetScene& estimate);
json to_json(const FeasibilityReport& report);

json to_json(const ExperimentSpec& spec);
ExperimentSpec experiment_from_json(const json& j);

/// Reads/writes whole files; wraps stream failures in io_error.
json load_json(const std::string& path);
void save_text(const std::string& path, const std::string& text);

}  // namespace tenrad

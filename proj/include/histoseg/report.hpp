#pragma once

#include <json.hpp>

#include "histoseg/metrics.hpp"
#include "histoseg/threshold.hpp"

namespace histoseg {

// {x, value, deriv1_abs, prominence}
void to_json(nlohmann::json& j, const Minimum& m);

// {method, threshold_norm, gray_level, candidates, rejected}
void to_json(nlohmann::json& j, const ThresholdResult& r);

// {contours_ref, contours_test, deviation, mse_mean, mse_sum, width, height,
//  connectivity}; deviation is null when the reference has no contours.
void to_json(nlohmann::json& j, const MetricsReport& r);

}  // namespace histoseg

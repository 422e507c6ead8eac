#include "histoseg/report.hpp"

namespace histoseg {

void to_json(nlohmann::json& j, const Minimum& m) {
    j = nlohmann::json{{"x", m.x},
                       {"value", m.value},
                       {"deriv1_abs", m.deriv1_abs},
                       {"prominence", m.prominence}};
}

void to_json(nlohmann::json& j, const ThresholdResult& r) {
    j = nlohmann::json{{"method", std::string(to_string(r.method))},
                       {"threshold_norm", r.threshold_norm},
                       {"gray_level", r.gray_level},
                       {"candidates", r.candidates},
                       {"rejected", r.rejected}};
}

void to_json(nlohmann::json& j, const MetricsReport& r) {
    j = nlohmann::json{{"contours_ref", r.contours_ref},
                       {"contours_test", r.contours_test},
                       {"deviation", nullptr},
                       {"mse_mean", r.mse_mean},
                       {"mse_sum", r.mse_sum},
                       {"width", r.width},
                       {"height", r.height},
                       {"connectivity", static_cast<int>(r.connectivity)}};
    if (r.deviation) j["deviation"] = *r.deviation;
}

}  // namespace histoseg

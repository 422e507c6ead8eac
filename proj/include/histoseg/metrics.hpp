#pragma once

#include <cstdint>
#include <optional>

#include "histoseg/image.hpp"
#include "histoseg/postprocess.hpp"

namespace histoseg {

/// Number of foreground connected components.
std::int64_t count_contours(const BinaryImage& bin, Connectivity conn = Connectivity::eight);

/// |ps_count - it_count| / ps_count. Throws zero_reference when ps_count == 0.
double deviation(std::int64_t ps_count, std::int64_t it_count);

enum class MseNorm {
    mean,  ///< divided by W*H
    sum,   ///< plain sum of squared differences
};

/// Squared-difference score on 0..255 intensities. Throws dimension_mismatch.
double mse(const GrayImage& ps, const GrayImage& it, MseNorm norm);
/// Binary inputs are rendered to 0/255 first.
double mse(const BinaryImage& ps, const BinaryImage& it, MseNorm norm);

struct MetricsReport {
    std::int64_t contours_ref = 0;
    std::int64_t contours_test = 0;
    std::optional<double> deviation;  ///< empty when the reference has no contours
    double mse_mean = 0.0;
    double mse_sum = 0.0;
    int width = 0;
    int height = 0;
    Connectivity connectivity = Connectivity::eight;
};

/// Scores `test` against `reference`. `reference_count` overrides the
/// reference contour count (the reference image still supplies the MSE).
MetricsReport score(const BinaryImage& reference, const BinaryImage& test,
                    Connectivity conn = Connectivity::eight,
                    std::optional<std::int64_t> reference_count = std::nullopt);

}  // namespace histoseg

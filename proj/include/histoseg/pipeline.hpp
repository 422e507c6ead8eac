#pragma once

#include <memory>
#include <optional>
#include <string_view>
#include <utility>

#include "histoseg/curve.hpp"
#include "histoseg/histogram.hpp"
#include "histoseg/image.hpp"
#include "histoseg/postprocess.hpp"
#include "histoseg/threshold.hpp"

namespace histoseg {

enum class Preprocess { none, equalize, adjust };

struct Postprocess {
    enum class Kind { none, blur, small };
    Kind kind = Kind::none;
    std::size_t min_area = 0;  ///< used by Kind::small
    int blur_length = kDefaultBlurLength;
    BlurAngle blur_angle = BlurAngle::horizontal;
};

/// Parses "none", "equalize" or "adjust".
Preprocess parse_preprocess(std::string_view text);
/// Parses "none", "blur" or "small:N".
Postprocess parse_postprocess(std::string_view text);

struct SegmentOptions {
    Method method = Method::spline;
    int degree = 10;
    double min_prominence = kDefaultMinProminence;
    double grid_step = kDefaultGridStep;
    SplineBoundary boundary = SplineBoundary::not_a_knot;
    Preprocess preprocess = Preprocess::none;
    Postprocess postprocess;
    Connectivity connectivity = Connectivity::eight;
    /// When set, the output uses the band rule with these thresholds instead
    /// of the single selected threshold.
    std::optional<std::pair<double, double>> band;
};

GrayImage apply_preprocess(const GrayImage& img, Preprocess pre);
BinaryImage apply_postprocess(const BinaryImage& bin, const Postprocess& post,
                              Connectivity conn = Connectivity::eight);

/// Curve through the 256 histogram counts over [0, 255]: the interpolating
/// spline for Method::spline, the least-squares polynomial for
/// Method::polyfit. Otsu has no curve and is rejected.
std::unique_ptr<Curve1D> fit_histogram(const Histogram& hist, const SegmentOptions& opts);

/// Threshold for an already preprocessed image.
ThresholdResult select_for(const GrayImage& img, const SegmentOptions& opts);

struct Segmentation {
    ThresholdResult threshold;
    BinaryImage image;
};

/// Preprocess, threshold, binarize (or band-binarize), postprocess.
Segmentation segment_image(const GrayImage& img, const SegmentOptions& opts);

}  // namespace histoseg

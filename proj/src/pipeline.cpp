#include "histoseg/pipeline.hpp"

#include <charconv>
#include <string>
#include <vector>

#include "histoseg/error.hpp"
#include "histoseg/segment.hpp"

namespace histoseg {

Preprocess parse_preprocess(std::string_view text) {
    if (text == "none") return Preprocess::none;
    if (text == "equalize") return Preprocess::equalize;
    if (text == "adjust") return Preprocess::adjust;
    throw Error(Errc::invalid_argument, "unknown preprocess '" + std::string(text) +
                                            "' (expected none, equalize or adjust)");
}

Postprocess parse_postprocess(std::string_view text) {
    Postprocess post;
    if (text == "none") return post;
    if (text == "blur") {
        post.kind = Postprocess::Kind::blur;
        return post;
    }
    constexpr std::string_view prefix = "small:";
    if (text.substr(0, prefix.size()) == prefix) {
        const auto digits = text.substr(prefix.size());
        std::size_t area = 0;
        const auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), area);
        if (ec == std::errc{} && end == digits.data() + digits.size() && !digits.empty()) {
            post.kind = Postprocess::Kind::small;
            post.min_area = area;
            return post;
        }
    }
    throw Error(Errc::invalid_argument, "unknown postprocess '" + std::string(text) +
                                            "' (expected none, blur or small:N)");
}

GrayImage apply_preprocess(const GrayImage& img, Preprocess pre) {
    switch (pre) {
        case Preprocess::none: return img;
        case Preprocess::equalize: return equalize(img);
        case Preprocess::adjust: return adjust_intensity(img);
    }
    return img;
}

BinaryImage apply_postprocess(const BinaryImage& bin, const Postprocess& post, Connectivity conn) {
    switch (post.kind) {
        case Postprocess::Kind::none: return bin;
        case Postprocess::Kind::blur: return motion_blur_clean(bin, post.blur_length, post.blur_angle);
        case Postprocess::Kind::small: return remove_small(bin, post.min_area, conn);
    }
    return bin;
}

std::unique_ptr<Curve1D> fit_histogram(const Histogram& hist, const SegmentOptions& opts) {
    std::vector<double> xs(kGrayLevels), ys(kGrayLevels);
    for (int v = 0; v < kGrayLevels; ++v) {
        xs[v] = v;
        ys[v] = static_cast<double>(hist.counts[v]);
    }
    switch (opts.method) {
        case Method::spline:
            return std::make_unique<PiecewiseCubic>(fit_spline(xs, ys, opts.boundary));
        case Method::polyfit:
            return std::make_unique<PolyCurve>(fit_poly(xs, ys, opts.degree));
        case Method::otsu: break;
    }
    throw Error(Errc::invalid_argument, "Otsu thresholding does not fit a curve");
}

ThresholdResult select_for(const GrayImage& img, const SegmentOptions& opts) {
    const auto hist = compute_histogram(img);
    if (opts.method == Method::otsu) return otsu(hist);
    const auto curve = fit_histogram(hist, opts);
    return curve_threshold(*curve, opts.method, opts.grid_step, opts.min_prominence);
}

Segmentation segment_image(const GrayImage& img, const SegmentOptions& opts) {
    const auto prepared = apply_preprocess(img, opts.preprocess);
    auto threshold = select_for(prepared, opts);
    auto bin = opts.band ? binarize_band(prepared, opts.band->first, opts.band->second)
                         : binarize(prepared, threshold.threshold_norm);
    return {std::move(threshold), apply_postprocess(bin, opts.postprocess, opts.connectivity)};
}

}  // namespace histoseg

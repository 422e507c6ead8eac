#include "histoseg/segment.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "histoseg/error.hpp"

namespace histoseg {

namespace {

void check_fraction(double th, const char* name) {
    if (!(th >= 0.0 && th <= 1.0)) {
        throw Error(Errc::invalid_argument,
                    std::string(name) + " must lie in [0, 1], got " + std::to_string(th));
    }
}

template <typename Pred>
BinaryImage label_where(const GrayImage& img, Pred pred) {
    std::vector<std::uint8_t> labels(img.size());
    const auto px = img.pixels();
    std::transform(px.begin(), px.end(), labels.begin(),
                   [&](std::uint8_t v) { return static_cast<std::uint8_t>(pred(v) ? 1 : 0); });
    return BinaryImage(img.width(), img.height(), std::move(labels));
}

}  // namespace

BinaryImage binarize(const GrayImage& img, double th_norm) {
    check_fraction(th_norm, "threshold");
    const double th = th_norm * 255.0;
    return label_where(img, [th](std::uint8_t v) { return static_cast<double>(v) >= th; });
}

BinaryImage binarize_band(const GrayImage& img, double th1_norm, double th2_norm) {
    check_fraction(th1_norm, "lower band threshold");
    check_fraction(th2_norm, "upper band threshold");
    if (th1_norm > th2_norm) {
        throw Error(Errc::invalid_argument, "inverted band: lower threshold " +
                                                std::to_string(th1_norm) + " exceeds upper " +
                                                std::to_string(th2_norm));
    }
    const double lo = th1_norm * 255.0;
    const double hi = th2_norm * 255.0;
    return label_where(img, [lo, hi](std::uint8_t v) {
        const auto p = static_cast<double>(v);
        return p >= lo && p <= hi;
    });
}

}  // namespace histoseg

#pragma once

#include <cstdint>
#include <vector>

#include "histoseg/image.hpp"

namespace histoseg {

enum class Connectivity { four = 4, eight = 8 };

/// Foreground components; labels are 0 for background and 1..count in raster
/// order of each component's first pixel.
struct ComponentMap {
    int width = 0;
    int height = 0;
    std::vector<std::int32_t> labels;
    std::vector<std::size_t> sizes;  ///< sizes[k] is the pixel count of label k+1

    std::size_t count() const noexcept { return sizes.size(); }
};

ComponentMap label_components(const BinaryImage& bin, Connectivity conn = Connectivity::eight);

enum class BlurAngle { horizontal = 0, vertical = 90 };

inline constexpr int kDefaultBlurLength = 9;

/// Convolves the label field with a normalized 1 x length line kernel
/// (replicate padding) and keeps pixels whose blurred value is >= 0.5.
/// `length` must be odd and positive.
BinaryImage motion_blur_clean(const BinaryImage& bin, int length = kDefaultBlurLength,
                              BlurAngle angle = BlurAngle::horizontal);

/// Clears foreground components smaller than min_area pixels.
BinaryImage remove_small(const BinaryImage& bin, std::size_t min_area,
                         Connectivity conn = Connectivity::eight);

}  // namespace histoseg

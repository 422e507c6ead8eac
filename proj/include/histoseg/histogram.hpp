#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>

#include "histoseg/image.hpp"

namespace histoseg {

inline constexpr int kGrayLevels = 256;

struct Histogram {
    std::array<std::uint64_t, kGrayLevels> counts{};

    std::uint64_t total() const noexcept;
    /// Count of gray levels with at least one pixel.
    int occupied_bins() const noexcept;
};

Histogram compute_histogram(const GrayImage& img);

/// Global equalization: v -> round(255 * cdf(v)).
GrayImage equalize(const GrayImage& img);

/// Saturating linear stretch. The low cut is the first level whose cdf
/// exceeds low_frac, the high cut the first level whose cdf reaches
/// high_frac; levels between map linearly onto 0..255.
GrayImage adjust_intensity(const GrayImage& img, double low_frac = 0.01, double high_frac = 0.99);

/// `bin,count` with a header row and 256 data rows.
void write_histogram_csv(const Histogram& hist, std::ostream& out);

}  // namespace histoseg

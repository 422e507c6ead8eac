#include "histoseg/histogram.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <string>

#include "histoseg/error.hpp"

namespace histoseg {

std::uint64_t Histogram::total() const noexcept {
    return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

int Histogram::occupied_bins() const noexcept {
    return static_cast<int>(std::count_if(counts.begin(), counts.end(),
                                          [](std::uint64_t c) { return c > 0; }));
}

Histogram compute_histogram(const GrayImage& img) {
    Histogram h;
    for (const auto v : img.pixels()) ++h.counts[v];
    return h;
}

namespace {

using LevelMap = std::array<std::uint8_t, kGrayLevels>;

GrayImage apply_map(const GrayImage& img, const LevelMap& map) {
    std::vector<std::uint8_t> out(img.size());
    const auto px = img.pixels();
    std::transform(px.begin(), px.end(), out.begin(), [&](std::uint8_t v) { return map[v]; });
    return GrayImage(img.width(), img.height(), std::move(out));
}

std::array<std::uint64_t, kGrayLevels> cumulative(const Histogram& h) {
    std::array<std::uint64_t, kGrayLevels> cum{};
    std::partial_sum(h.counts.begin(), h.counts.end(), cum.begin());
    return cum;
}

}  // namespace

GrayImage equalize(const GrayImage& img) {
    const auto cum = cumulative(compute_histogram(img));
    const std::uint64_t n = img.size();
    LevelMap map{};
    for (int v = 0; v < kGrayLevels; ++v) {
        // round-half-up of 255 * cum / n in integers
        map[v] = static_cast<std::uint8_t>((2 * 255 * cum[v] + n) / (2 * n));
    }
    return apply_map(img, map);
}

GrayImage adjust_intensity(const GrayImage& img, double low_frac, double high_frac) {
    if (!(low_frac >= 0.0 && low_frac < 1.0 && high_frac > 0.0 && high_frac <= 1.0 &&
          low_frac < high_frac)) {
        throw Error(Errc::invalid_argument,
                    "intensity adjustment needs 0 <= low < high <= 1, got " +
                        std::to_string(low_frac) + ", " + std::to_string(high_frac));
    }
    const auto cum = cumulative(compute_histogram(img));
    const double n = static_cast<double>(img.size());

    int lo = kGrayLevels - 1;
    for (int v = 0; v < kGrayLevels; ++v) {
        if (static_cast<double>(cum[v]) / n > low_frac) {
            lo = v;
            break;
        }
    }
    int hi = kGrayLevels - 1;
    for (int v = 0; v < kGrayLevels; ++v) {
        if (static_cast<double>(cum[v]) / n >= high_frac) {
            hi = v;
            break;
        }
    }
    if (hi <= lo) {
        throw Error(Errc::degenerate_range, "intensity range collapses to a single level (" +
                                                std::to_string(lo) + ")");
    }

    const auto span = static_cast<std::uint64_t>(hi - lo);
    LevelMap map{};
    for (int v = 0; v < kGrayLevels; ++v) {
        if (v <= lo) {
            map[v] = 0;
        } else if (v >= hi) {
            map[v] = 255;
        } else {
            const auto d = static_cast<std::uint64_t>(v - lo);
            map[v] = static_cast<std::uint8_t>((2 * 255 * d + span) / (2 * span));
        }
    }
    return apply_map(img, map);
}

void write_histogram_csv(const Histogram& hist, std::ostream& out) {
    out << "bin,count\n";
    for (int v = 0; v < kGrayLevels; ++v) out << v << ',' << hist.counts[v] << '\n';
}

}  // namespace histoseg

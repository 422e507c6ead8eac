#include "histoseg/postprocess.hpp"

#include <algorithm>
#include <array>
#include <string>
#include <utility>

#include "histoseg/error.hpp"

namespace histoseg {

ComponentMap label_components(const BinaryImage& bin, Connectivity conn) {
    const int w = bin.width();
    const int h = bin.height();
    ComponentMap map;
    map.width = w;
    map.height = h;
    map.labels.assign(bin.size(), 0);

    static constexpr std::array<std::pair<int, int>, 8> kOffsets{{
        {1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};
    const std::size_t neighbours = conn == Connectivity::four ? 4 : 8;

    // Flood fill with an explicit stack; recursion would overflow on large blobs.
    std::vector<std::pair<int, int>> stack;
    const auto labels = bin.labels();
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const auto idx = static_cast<std::size_t>(y) * w + x;
            if (labels[idx] == 0 || map.labels[idx] != 0) continue;

            const auto label = static_cast<std::int32_t>(map.sizes.size() + 1);
            std::size_t size = 0;
            map.labels[idx] = label;
            stack.emplace_back(x, y);
            while (!stack.empty()) {
                const auto [cx, cy] = stack.back();
                stack.pop_back();
                ++size;
                for (std::size_t k = 0; k < neighbours; ++k) {
                    const int nx = cx + kOffsets[k].first;
                    const int ny = cy + kOffsets[k].second;
                    if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
                    const auto nidx = static_cast<std::size_t>(ny) * w + nx;
                    if (labels[nidx] == 0 || map.labels[nidx] != 0) continue;
                    map.labels[nidx] = label;
                    stack.emplace_back(nx, ny);
                }
            }
            map.sizes.push_back(size);
        }
    }
    return map;
}

BinaryImage motion_blur_clean(const BinaryImage& bin, int length, BlurAngle angle) {
    if (length < 1 || length % 2 == 0) {
        throw Error(Errc::invalid_argument,
                    "motion blur length must be odd and positive, got " + std::to_string(length));
    }
    const int w = bin.width();
    const int h = bin.height();
    const int half = length / 2;
    const bool horizontal = angle == BlurAngle::horizontal;
    const auto in = bin.labels();

    // blurred >= 0.5  <=>  2 * window_sum >= length, kept in integers.
    std::vector<std::uint8_t> out(bin.size());
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            int sum = 0;
            for (int k = -half; k <= half; ++k) {
                const int sx = horizontal ? std::clamp(x + k, 0, w - 1) : x;
                const int sy = horizontal ? y : std::clamp(y + k, 0, h - 1);
                sum += in[static_cast<std::size_t>(sy) * w + sx];
            }
            out[static_cast<std::size_t>(y) * w + x] = 2 * sum >= length ? 1 : 0;
        }
    }
    return BinaryImage(w, h, std::move(out));
}

BinaryImage remove_small(const BinaryImage& bin, std::size_t min_area, Connectivity conn) {
    if (min_area == 0) return bin;
    const auto map = label_components(bin, conn);
    std::vector<std::uint8_t> out(bin.labels().begin(), bin.labels().end());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const auto label = map.labels[i];
        if (label != 0 && map.sizes[static_cast<std::size_t>(label - 1)] < min_area) out[i] = 0;
    }
    return BinaryImage(bin.width(), bin.height(), std::move(out));
}

}  // namespace histoseg

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace histoseg {

/// 8-bit grayscale image, row-major. Width and height are at least 1 and the
/// buffer always holds exactly width*height samples.
class GrayImage {
public:
    GrayImage(int width, int height, std::vector<std::uint8_t> pixels);
    /// Constant image.
    GrayImage(int width, int height, std::uint8_t fill = 0);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t size() const noexcept { return pixels_.size(); }

    std::uint8_t at(int x, int y) const { return pixels_[index(x, y)]; }
    void set(int x, int y, std::uint8_t v) { pixels_[index(x, y)] = v; }

    std::span<const std::uint8_t> pixels() const noexcept { return pixels_; }
    std::span<std::uint8_t> pixels() noexcept { return pixels_; }

    friend bool operator==(const GrayImage&, const GrayImage&) = default;

private:
    std::size_t index(int x, int y) const noexcept {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(x);
    }

    int width_;
    int height_;
    std::vector<std::uint8_t> pixels_;
};

/// Label field with values in {0, 1}. Foreground renders as 255.
class BinaryImage {
public:
    static constexpr std::uint8_t kForegroundLevel = 255;

    BinaryImage(int width, int height, std::vector<std::uint8_t> labels);
    BinaryImage(int width, int height, std::uint8_t fill = 0);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t size() const noexcept { return labels_.size(); }

    std::uint8_t at(int x, int y) const { return labels_[index(x, y)]; }
    void set(int x, int y, bool on) { labels_[index(x, y)] = on ? 1 : 0; }

    std::span<const std::uint8_t> labels() const noexcept { return labels_; }

    std::size_t foreground_count() const noexcept;

    /// 0 -> 0, 1 -> 255.
    GrayImage render() const;

    friend bool operator==(const BinaryImage&, const BinaryImage&) = default;

private:
    std::size_t index(int x, int y) const noexcept {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(x);
    }

    int width_;
    int height_;
    std::vector<std::uint8_t> labels_;
};

}  // namespace histoseg

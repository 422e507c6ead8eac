#include "histoseg/image.hpp"

#include <algorithm>
#include <string>

#include "histoseg/error.hpp"

namespace histoseg {

std::string_view to_string(Errc code) noexcept {
    switch (code) {
        case Errc::file_not_found: return "file not found";
        case Errc::malformed_header: return "malformed header";
        case Errc::unsupported_bit_depth: return "unsupported bit depth";
        case Errc::unsupported_format: return "unsupported format";
        case Errc::image_too_large: return "image too large";
        case Errc::io_error: return "I/O error";
        case Errc::invalid_argument: return "invalid argument";
        case Errc::out_of_domain: return "out of domain";
        case Errc::dimension_mismatch: return "dimension mismatch";
        case Errc::no_candidate: return "no candidate minima";
        case Errc::degenerate_histogram: return "degenerate histogram";
        case Errc::degenerate_range: return "degenerate range";
        case Errc::zero_reference: return "zero reference count";
    }
    return "unknown error";
}

namespace {

void check_dims(int width, int height, std::size_t n) {
    if (width < 1 || height < 1) {
        throw Error(Errc::invalid_argument, "image dimensions must be positive, got " +
                                                std::to_string(width) + "x" +
                                                std::to_string(height));
    }
    if (n != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
        throw Error(Errc::invalid_argument,
                    "buffer holds " + std::to_string(n) + " samples, expected " +
                        std::to_string(static_cast<std::size_t>(width) *
                                       static_cast<std::size_t>(height)));
    }
}

}  // namespace

GrayImage::GrayImage(int width, int height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
    check_dims(width_, height_, pixels_.size());
}

GrayImage::GrayImage(int width, int height, std::uint8_t fill)
    : width_(width), height_(height) {
    check_dims(width, height, static_cast<std::size_t>(std::max(width, 0)) *
                                  static_cast<std::size_t>(std::max(height, 0)));
    pixels_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

BinaryImage::BinaryImage(int width, int height, std::vector<std::uint8_t> labels)
    : width_(width), height_(height), labels_(std::move(labels)) {
    check_dims(width_, height_, labels_.size());
    if (std::any_of(labels_.begin(), labels_.end(), [](std::uint8_t v) { return v > 1; })) {
        throw Error(Errc::invalid_argument, "binary labels must be 0 or 1");
    }
}

BinaryImage::BinaryImage(int width, int height, std::uint8_t fill)
    : width_(width), height_(height) {
    check_dims(width, height, static_cast<std::size_t>(std::max(width, 0)) *
                                  static_cast<std::size_t>(std::max(height, 0)));
    if (fill > 1) throw Error(Errc::invalid_argument, "binary labels must be 0 or 1");
    labels_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

std::size_t BinaryImage::foreground_count() const noexcept {
    return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), std::uint8_t{1}));
}

GrayImage BinaryImage::render() const {
    std::vector<std::uint8_t> out(labels_.size());
    std::transform(labels_.begin(), labels_.end(), out.begin(),
                   [](std::uint8_t v) { return v ? kForegroundLevel : std::uint8_t{0}; });
    return GrayImage(width_, height_, std::move(out));
}

}  // namespace histoseg

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>

#include "histoseg/image.hpp"

namespace histoseg {

/// Largest accepted image, in pixels.
inline constexpr std::uint64_t kMaxPixels = std::uint64_t{1} << 26;

/// BT.601 luma, rounded half-up.
std::uint8_t luma(std::uint8_t r, std::uint8_t g, std::uint8_t b) noexcept;

/// Reads PGM (P2/P5) and PPM (P3/P6) with maxval <= 255, plus 8-bit gray or
/// RGB PNG when built with libpng. Color input is converted with luma().
/// Samples from files with maxval < 255 are rescaled to the full 0..255 range.
GrayImage load_gray(const std::filesystem::path& path);
GrayImage read_pnm(std::istream& in);

bool png_supported() noexcept;

/// P5, maxval 255.
void save_gray(const GrayImage& img, const std::filesystem::path& path);
void write_pgm(const GrayImage& img, std::ostream& out);

/// P5, maxval 255; label 1 is stored as 255.
void save_binary(const BinaryImage& img, const std::filesystem::path& path);

}  // namespace histoseg

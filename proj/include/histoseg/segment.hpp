#pragma once

#include "histoseg/image.hpp"

namespace histoseg {

/// Label 1 iff p >= th_norm * 255. The comparison is exact; the threshold is
/// not rounded to an integer level first.
BinaryImage binarize(const GrayImage& img, double th_norm);

/// Label 1 iff th1_norm * 255 <= p <= th2_norm * 255.
BinaryImage binarize_band(const GrayImage& img, double th1_norm, double th2_norm);

}  // namespace histoseg

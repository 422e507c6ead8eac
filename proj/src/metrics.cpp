#include "histoseg/metrics.hpp"

#include <cstdlib>
#include <string>

#include "histoseg/error.hpp"

namespace histoseg {

std::int64_t count_contours(const BinaryImage& bin, Connectivity conn) {
    return static_cast<std::int64_t>(label_components(bin, conn).count());
}

double deviation(std::int64_t ps_count, std::int64_t it_count) {
    if (ps_count <= 0) {
        throw Error(Errc::zero_reference, "deviation needs a positive reference count, got " +
                                              std::to_string(ps_count));
    }
    if (it_count < 0) throw Error(Errc::invalid_argument, "contour count cannot be negative");
    return static_cast<double>(std::llabs(ps_count - it_count)) / static_cast<double>(ps_count);
}

double mse(const GrayImage& ps, const GrayImage& it, MseNorm norm) {
    if (ps.width() != it.width() || ps.height() != it.height()) {
        throw Error(Errc::dimension_mismatch,
                    "images differ in size: " + std::to_string(ps.width()) + "x" +
                        std::to_string(ps.height()) + " vs " + std::to_string(it.width()) + "x" +
                        std::to_string(it.height()));
    }
    const auto a = ps.pixels();
    const auto b = it.pixels();
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto d = static_cast<std::int64_t>(a[i]) - static_cast<std::int64_t>(b[i]);
        acc += static_cast<std::uint64_t>(d * d);
    }
    const auto total = static_cast<double>(acc);
    return norm == MseNorm::sum ? total : total / static_cast<double>(a.size());
}

double mse(const BinaryImage& ps, const BinaryImage& it, MseNorm norm) {
    return mse(ps.render(), it.render(), norm);
}

MetricsReport score(const BinaryImage& reference, const BinaryImage& test, Connectivity conn,
                    std::optional<std::int64_t> reference_count) {
    MetricsReport r;
    r.mse_mean = mse(reference, test, MseNorm::mean);
    r.mse_sum = mse(reference, test, MseNorm::sum);
    r.contours_ref = reference_count ? *reference_count : count_contours(reference, conn);
    r.contours_test = count_contours(test, conn);
    if (r.contours_ref > 0) r.deviation = deviation(r.contours_ref, r.contours_test);
    r.width = test.width();
    r.height = test.height();
    r.connectivity = conn;
    return r;
}

}  // namespace histoseg

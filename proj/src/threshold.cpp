#include "histoseg/threshold.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "histoseg/error.hpp"

namespace histoseg {

std::string_view to_string(Method m) noexcept {
    switch (m) {
        case Method::spline: return "spline";
        case Method::polyfit: return "polyfit";
        case Method::otsu: return "otsu";
    }
    return "unknown";
}

Method parse_method(std::string_view name) {
    if (name == "spline") return Method::spline;
    if (name == "polyfit") return Method::polyfit;
    if (name == "otsu") return Method::otsu;
    throw Error(Errc::invalid_argument,
                "unknown method '" + std::string(name) + "' (expected spline, polyfit or otsu)");
}

namespace {

constexpr double kBisectionWidth = 1e-6;

void check_grid_step(double grid_step) {
    if (!(grid_step > 0.0) || !std::isfinite(grid_step)) {
        throw Error(Errc::invalid_argument, "grid step must be positive");
    }
}

}  // namespace

MinimaSearch find_minima(const Curve1D& curve, double grid_step, double min_prominence_frac) {
    check_grid_step(grid_step);
    if (!(min_prominence_frac >= 0.0 && min_prominence_frac < 1.0)) {
        throw Error(Errc::invalid_argument, "minimum prominence fraction must lie in [0, 1)");
    }

    const auto grid = uniform_grid(curve.lower(), curve.upper(), grid_step);
    const std::size_t n = grid.size();
    std::vector<double> d1(n), vals(n);
    for (std::size_t k = 0; k < n; ++k) {
        d1[k] = curve.deriv1(grid[k]);
        vals[k] = curve.value(grid[k]);
    }
    const double peak = *std::max_element(vals.begin(), vals.end());
    const double floor = min_prominence_frac * peak;

    MinimaSearch out;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (!(d1[k] < 0.0 && d1[k + 1] >= 0.0)) continue;

        double a = grid[k];
        double b = grid[k + 1];
        while (b - a >= kBisectionWidth) {
            const double mid = 0.5 * (a + b);
            if (curve.deriv1(mid) < 0.0) {
                a = mid;
            } else {
                b = mid;
            }
        }
        const double x = 0.5 * (a + b);
        if (!(curve.deriv2(x) > 0.0)) continue;

        Minimum m;
        m.x = x;
        m.value = curve.value(x);
        const std::size_t nearest = (x - grid[k] <= grid[k + 1] - x) ? k : k + 1;
        m.deriv1_abs = std::abs(d1[nearest]);

        // The grid neighbours can undercut the refined value by rounding.
        const double base = std::min({m.value, vals[k], vals[k + 1]});
        double left_max = base;
        for (std::size_t i = k + 1; i-- > 0;) {
            if (vals[i] < base) break;
            left_max = std::max(left_max, vals[i]);
        }
        double right_max = base;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (vals[i] < base) break;
            right_max = std::max(right_max, vals[i]);
        }
        m.prominence = std::min(left_max, right_max) - m.value;

        if (m.prominence < floor) {
            out.rejected.push_back(m);
        } else {
            out.accepted.push_back(m);
        }
    }
    return out;
}

ThresholdResult ThresholdResult::from_gray_level(Method method, double gray_level) {
    ThresholdResult r;
    r.method = method;
    r.threshold_norm = gray_level / 255.0;
    // Reported level is derived from the normalized value so that
    // threshold_norm * 255 reproduces it exactly; it differs from the input
    // by at most one ulp.
    r.gray_level = r.threshold_norm * 255.0;
    return r;
}

ThresholdResult select_threshold(std::span<const Minimum> candidates, const Curve1D& curve,
                                 double grid_step, Method method) {
    check_grid_step(grid_step);
    if (candidates.empty()) {
        throw Error(Errc::no_candidate,
                    "no candidate minima survived; lower the minimum prominence");
    }

    const auto grid = uniform_grid(curve.lower(), curve.upper(), grid_step);
    std::vector<double> slope_abs(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) slope_abs[k] = std::abs(curve.deriv1(grid[k]));

    std::vector<std::size_t> order(grid.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        if (slope_abs[i] != slope_abs[j]) return slope_abs[i] < slope_abs[j];
        return grid[i] < grid[j];
    });

    const Minimum* chosen = nullptr;
    for (const std::size_t k : order) {
        double best_dist = 0.0;
        for (const auto& c : candidates) {
            const double dist = std::abs(c.x - grid[k]);
            if (dist > grid_step) continue;
            if (chosen == nullptr || dist < best_dist || (dist == best_dist && c.x < chosen->x)) {
                chosen = &c;
                best_dist = dist;
            }
        }
        if (chosen != nullptr) break;
    }
    if (chosen == nullptr) {
        chosen = &*std::min_element(candidates.begin(), candidates.end(),
                                    [](const Minimum& l, const Minimum& r) {
                                        if (l.deriv1_abs != r.deriv1_abs) {
                                            return l.deriv1_abs < r.deriv1_abs;
                                        }
                                        return l.x < r.x;
                                    });
    }

    auto result = ThresholdResult::from_gray_level(method, chosen->x);
    result.candidates.assign(candidates.begin(), candidates.end());
    std::sort(result.candidates.begin(), result.candidates.end(),
              [](const Minimum& l, const Minimum& r) { return l.x < r.x; });
    return result;
}

ThresholdResult curve_threshold(const Curve1D& curve, Method method, double grid_step,
                                double min_prominence_frac) {
    auto search = find_minima(curve, grid_step, min_prominence_frac);
    if (search.accepted.empty()) {
        throw Error(Errc::no_candidate,
                    "no candidate minima survived the prominence filter (" +
                        std::to_string(search.rejected.size()) +
                        " rejected); lower --min-prominence");
    }
    auto result = select_threshold(search.accepted, curve, grid_step, method);
    result.rejected = std::move(search.rejected);
    return result;
}

ThresholdResult otsu(const Histogram& hist) {
    if (hist.occupied_bins() < 2) {
        throw Error(Errc::degenerate_histogram,
                    "Otsu needs mass in at least two gray levels");
    }
    const std::uint64_t total = hist.total();
    unsigned __int128 total_sum = 0;
    for (int v = 0; v < kGrayLevels; ++v) total_sum += static_cast<unsigned __int128>(v) * hist.counts[v];

    // sigma_b^2 * N^2 = (S0 * n1 - S1 * n0)^2 / (n0 * n1), with S the
    // intensity sums of each class. Exact integer numerators make plateaus
    // tie exactly so the smallest maximizer is well defined.
    std::uint64_t n0 = 0;
    unsigned __int128 s0 = 0;
    double best = -1.0;
    int best_t = 0;
    for (int t = 0; t < kGrayLevels; ++t) {
        n0 += hist.counts[t];
        s0 += static_cast<unsigned __int128>(t) * hist.counts[t];
        const std::uint64_t n1 = total - n0;
        double sigma = 0.0;
        if (n0 > 0 && n1 > 0) {
            const unsigned __int128 s1 = total_sum - s0;
            const auto lhs = static_cast<__int128>(s0 * n1);
            const auto rhs = static_cast<__int128>(s1 * n0);
            const auto diff = static_cast<double>(lhs - rhs);
            sigma = diff * diff / (static_cast<double>(n0) * static_cast<double>(n1));
        }
        if (sigma > best) {
            best = sigma;
            best_t = t;
        }
    }
    return ThresholdResult::from_gray_level(Method::otsu, static_cast<double>(best_t));
}

}  // namespace histoseg

#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "histoseg/curve.hpp"
#include "histoseg/histogram.hpp"

namespace histoseg {

enum class Method { spline, polyfit, otsu };

std::string_view to_string(Method m) noexcept;
/// Throws invalid_argument for unknown names.
Method parse_method(std::string_view name);

inline constexpr double kDefaultGridStep = 0.25;
inline constexpr double kDefaultMinProminence = 0.02;

struct Minimum {
    double x = 0.0;           ///< gray level of the refined minimum
    double value = 0.0;       ///< curve ordinate at x
    double deriv1_abs = 0.0;  ///< |f'| at the grid point nearest x
    double prominence = 0.0;  ///< rise to the lower flanking maximum

    friend bool operator==(const Minimum&, const Minimum&) = default;
};

struct MinimaSearch {
    std::vector<Minimum> accepted;
    std::vector<Minimum> rejected;  ///< below the prominence floor
};

/// Scans deriv1 on a uniform grid, refines every negative-to-positive sign
/// change by bisection and keeps points with deriv2 > 0. Minima whose
/// prominence falls below min_prominence_frac times the curve's maximum go to
/// `rejected`.
///
/// Prominence walks outward from the minimum on the grid until the curve
/// drops below the minimum's value or the domain ends; the lower of the two
/// maxima met on the way, minus the minimum's value, is the prominence.
MinimaSearch find_minima(const Curve1D& curve, double grid_step = kDefaultGridStep,
                         double min_prominence_frac = kDefaultMinProminence);

struct ThresholdResult {
    Method method = Method::spline;
    double threshold_norm = 0.0;  ///< gray_level / 255
    double gray_level = 0.0;
    std::vector<Minimum> candidates;
    std::vector<Minimum> rejected;

    static ThresholdResult from_gray_level(Method method, double gray_level);
};

/// Sorts the grid points by |deriv1| ascending (ties: smaller x first) and
/// returns the candidate lying within grid_step of the first grid point that
/// has one. When several candidates qualify the nearest wins, then the
/// smaller x. If no grid point matches, the candidate with the smallest
/// deriv1_abs is used. Throws no_candidate on an empty list.
ThresholdResult select_threshold(std::span<const Minimum> candidates, const Curve1D& curve,
                                 double grid_step = kDefaultGridStep,
                                 Method method = Method::spline);

/// find_minima followed by select_threshold; the result carries both lists.
ThresholdResult curve_threshold(const Curve1D& curve, Method method,
                                double grid_step = kDefaultGridStep,
                                double min_prominence_frac = kDefaultMinProminence);

/// Smallest t maximizing the between-class variance with class 0 = bins <= t.
/// Throws degenerate_histogram when fewer than two bins are occupied.
ThresholdResult otsu(const Histogram& hist);

}  // namespace histoseg

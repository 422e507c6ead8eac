#include "histoseg/curve.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <string>

#include "histoseg/error.hpp"

namespace histoseg {

// ---------------------------------------------------------------------------
// Curve1D

void Curve1D::check_domain(double x) const {
    if (!contains(x)) {
        throw Error(Errc::out_of_domain, "x = " + std::to_string(x) + " outside [" +
                                             std::to_string(lower()) + ", " +
                                             std::to_string(upper()) + "]");
    }
}

double Curve1D::value(double x) const {
    check_domain(x);
    return value_at(x);
}

double Curve1D::deriv1(double x) const {
    check_domain(x);
    return deriv1_at(x);
}

double Curve1D::deriv2(double x) const {
    check_domain(x);
    return deriv2_at(x);
}

// ---------------------------------------------------------------------------
// PiecewiseCubic

PiecewiseCubic::PiecewiseCubic(std::vector<double> breaks, std::vector<CubicPiece> pieces)
    : breaks_(std::move(breaks)), pieces_(std::move(pieces)) {
    if (breaks_.size() < 2 || pieces_.size() + 1 != breaks_.size()) {
        throw Error(Errc::invalid_argument, "piecewise cubic needs n >= 2 breaks and n-1 pieces");
    }
    for (std::size_t i = 1; i < breaks_.size(); ++i) {
        if (!(breaks_[i] > breaks_[i - 1])) {
            throw Error(Errc::invalid_argument, "breaks must be strictly increasing");
        }
    }
}

std::size_t PiecewiseCubic::piece_index(double x) const noexcept {
    const auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
    const auto i = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - breaks_.begin() - 1, 0));
    return std::min(i, pieces_.size() - 1);
}

double PiecewiseCubic::value_at(double x) const {
    const auto i = piece_index(x);
    const auto& p = pieces_[i];
    const double t = x - breaks_[i];
    return p.a + t * (p.b + t * (p.c + t * p.d));
}

double PiecewiseCubic::deriv1_at(double x) const {
    const auto i = piece_index(x);
    const auto& p = pieces_[i];
    const double t = x - breaks_[i];
    return p.b + t * (2.0 * p.c + t * 3.0 * p.d);
}

double PiecewiseCubic::deriv2_at(double x) const {
    const auto i = piece_index(x);
    const auto& p = pieces_[i];
    const double t = x - breaks_[i];
    return 2.0 * p.c + 6.0 * p.d * t;
}

namespace {

void validate_samples(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) {
        throw Error(Errc::invalid_argument, "abscissae and ordinates differ in length (" +
                                                std::to_string(xs.size()) + " vs " +
                                                std::to_string(ys.size()) + ")");
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!std::isfinite(xs[i]) || !std::isfinite(ys[i])) {
            throw Error(Errc::invalid_argument, "samples must be finite");
        }
    }
}

// Solves a tridiagonal system in place. sub[0] and sup[n-1] are ignored.
std::vector<double> thomas_solve(std::vector<double> sub, std::vector<double> diag,
                                 std::vector<double> sup, std::vector<double> rhs) {
    const std::size_t n = diag.size();
    for (std::size_t i = 1; i < n; ++i) {
        const double w = sub[i] / diag[i - 1];
        diag[i] -= w * sup[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    std::vector<double> x(n);
    x[n - 1] = rhs[n - 1] / diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) x[i] = (rhs[i] - sup[i] * x[i + 1]) / diag[i];
    return x;
}

// Hermite form: given knot slopes, build the per-interval cubic.
PiecewiseCubic from_slopes(std::span<const double> xs, std::span<const double> ys,
                           const std::vector<double>& slopes) {
    std::vector<CubicPiece> pieces(xs.size() - 1);
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        const double h = xs[i + 1] - xs[i];
        const double m = (ys[i + 1] - ys[i]) / h;
        const double s0 = slopes[i];
        const double s1 = slopes[i + 1];
        pieces[i] = {ys[i], s0, (3.0 * m - 2.0 * s0 - s1) / h, (s0 + s1 - 2.0 * m) / (h * h)};
    }
    return PiecewiseCubic(std::vector<double>(xs.begin(), xs.end()), std::move(pieces));
}

}  // namespace

PiecewiseCubic fit_spline(std::span<const double> xs, std::span<const double> ys,
                          SplineBoundary boundary) {
    validate_samples(xs, ys);
    const std::size_t n = xs.size();
    if (n < 2) throw Error(Errc::invalid_argument, "spline needs at least 2 points");
    for (std::size_t i = 1; i < n; ++i) {
        if (!(xs[i] > xs[i - 1])) {
            throw Error(Errc::invalid_argument, "spline abscissae must be strictly increasing");
        }
    }

    std::vector<double> dx(n - 1), slope(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        dx[i] = xs[i + 1] - xs[i];
        slope[i] = (ys[i + 1] - ys[i]) / dx[i];
    }

    if (n == 2) return from_slopes(xs, ys, {slope[0], slope[0]});

    if (n == 3 && boundary == SplineBoundary::not_a_knot) {
        // Not-a-knot on three points degenerates to the interpolating parabola.
        const double curv = (slope[1] - slope[0]) / (xs[2] - xs[0]);
        const double s0 = slope[0] - curv * dx[0];
        const double s1 = slope[0] + curv * dx[0];
        const double s2 = slope[1] + curv * dx[1];
        return from_slopes(xs, ys, {s0, s1, s2});
    }

    std::vector<double> sub(n, 0.0), diag(n, 0.0), sup(n, 0.0), rhs(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        sub[i] = dx[i];
        diag[i] = 2.0 * (dx[i - 1] + dx[i]);
        sup[i] = dx[i - 1];
        rhs[i] = 3.0 * (dx[i] * slope[i - 1] + dx[i - 1] * slope[i]);
    }

    if (boundary == SplineBoundary::natural) {
        diag[0] = 2.0;
        sup[0] = 1.0;
        rhs[0] = 3.0 * slope[0];
        sub[n - 1] = 1.0;
        diag[n - 1] = 2.0;
        rhs[n - 1] = 3.0 * slope[n - 2];
    } else {
        // Third derivative continuous across the second and penultimate knots.
        const double d0 = dx[0] + dx[1];
        diag[0] = dx[1];
        sup[0] = d0;
        rhs[0] = ((dx[0] + 2.0 * d0) * dx[1] * slope[0] + dx[0] * dx[0] * slope[1]) / d0;

        const double hl = dx[n - 2];
        const double hp = dx[n - 3];
        const double dn = hl + hp;
        sub[n - 1] = dn;
        diag[n - 1] = hp;
        rhs[n - 1] = (hl * hl * slope[n - 3] + (2.0 * dn + hl) * hp * slope[n - 2]) / dn;
    }

    return from_slopes(xs, ys, thomas_solve(std::move(sub), std::move(diag), std::move(sup),
                                            std::move(rhs)));
}

// ---------------------------------------------------------------------------
// PolyCurve

PolyCurve::PolyCurve(std::vector<double> coeffs, double x_mid, double x_half)
    : PolyCurve(std::move(coeffs), x_mid, x_half, x_mid - x_half, x_mid + x_half) {}

PolyCurve::PolyCurve(std::vector<double> coeffs, double x_mid, double x_half, double lower,
                     double upper)
    : coeffs_(std::move(coeffs)), x_mid_(x_mid), x_half_(x_half), lower_(lower), upper_(upper) {
    if (coeffs_.empty()) throw Error(Errc::invalid_argument, "polynomial needs at least one coefficient");
    if (!(x_half_ > 0.0) || !std::isfinite(x_half_)) {
        throw Error(Errc::invalid_argument, "polynomial scale must be positive");
    }
    if (!(lower_ <= upper_)) throw Error(Errc::invalid_argument, "polynomial domain is empty");
}

double PolyCurve::value_at(double x) const {
    const double u = to_scaled(x);
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * u + *it;
    return acc;
}

double PolyCurve::deriv1_at(double x) const {
    const double u = to_scaled(x);
    double acc = 0.0;
    for (std::size_t k = coeffs_.size() - 1; k >= 1; --k) {
        acc = acc * u + static_cast<double>(k) * coeffs_[k];
    }
    return acc / x_half_;
}

double PolyCurve::deriv2_at(double x) const {
    const double u = to_scaled(x);
    double acc = 0.0;
    for (std::size_t k = coeffs_.size() - 1; k >= 2; --k) {
        acc = acc * u + static_cast<double>(k * (k - 1)) * coeffs_[k];
    }
    return acc / (x_half_ * x_half_);
}

PolyCurve fit_poly(std::span<const double> xs, std::span<const double> ys, int degree) {
    validate_samples(xs, ys);
    if (degree < 0) throw Error(Errc::invalid_argument, "polynomial degree must be >= 0");
    const auto cols = static_cast<std::size_t>(degree) + 1;
    if (xs.size() < cols) {
        throw Error(Errc::invalid_argument, "underdetermined fit: " + std::to_string(xs.size()) +
                                                " points for degree " + std::to_string(degree));
    }
    const auto [min_it, max_it] = std::minmax_element(xs.begin(), xs.end());
    const double lo = *min_it;
    const double hi = *max_it;
    if (!(hi > lo)) throw Error(Errc::invalid_argument, "degenerate abscissae: all x identical");

    std::vector<double> sorted(xs.begin(), xs.end());
    std::sort(sorted.begin(), sorted.end());
    const auto distinct = static_cast<std::size_t>(
        std::unique(sorted.begin(), sorted.end()) - sorted.begin());
    if (distinct < cols) {
        throw Error(Errc::invalid_argument, "underdetermined fit: " + std::to_string(distinct) +
                                                " distinct abscissae for degree " +
                                                std::to_string(degree));
    }

    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const auto rows = static_cast<Eigen::Index>(xs.size());
    Eigen::MatrixXd vander(rows, static_cast<Eigen::Index>(cols));
    Eigen::VectorXd rhs(rows);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const double u = (xs[static_cast<std::size_t>(r)] - mid) / half;
        double p = 1.0;
        for (Eigen::Index c = 0; c < static_cast<Eigen::Index>(cols); ++c) {
            vander(r, c) = p;
            p *= u;
        }
        rhs(r) = ys[static_cast<std::size_t>(r)];
    }
    const Eigen::VectorXd sol = vander.colPivHouseholderQr().solve(rhs);
    return PolyCurve(std::vector<double>(sol.data(), sol.data() + sol.size()), mid, half, lo, hi);
}

double sum_squared_residual(const Curve1D& curve, std::span<const double> xs,
                            std::span<const double> ys) {
    validate_samples(xs, ys);
    double acc = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - curve.value(xs[i]);
        acc += r * r;
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Sampling

std::vector<double> uniform_grid(double lower, double upper, double step) {
    if (!(step > 0.0) || !std::isfinite(step)) {
        throw Error(Errc::invalid_argument, "grid step must be positive");
    }
    if (!(upper >= lower)) throw Error(Errc::invalid_argument, "grid bounds are reversed");
    // The tolerance absorbs representation error in ratios such as 25.5 / 0.1.
    const double ratio = (upper - lower) / step;
    const auto intervals = static_cast<std::size_t>(std::ceil(ratio - 1e-9));
    std::vector<double> grid(intervals + 1);
    for (std::size_t k = 0; k < intervals; ++k) grid[k] = lower + static_cast<double>(k) * step;
    grid[intervals] = upper;
    return grid;
}

void write_curve_csv(const Curve1D& curve, double step, std::ostream& out) {
    const auto grid = uniform_grid(curve.lower(), curve.upper(), step);
    const auto old_precision = out.precision(17);
    out << "x,value,deriv1,deriv2\n";
    for (const double x : grid) {
        out << x << ',' << curve.value(x) << ',' << curve.deriv1(x) << ',' << curve.deriv2(x)
            << '\n';
    }
    out.precision(old_precision);
}

}  // namespace histoseg

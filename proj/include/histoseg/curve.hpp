#pragma once

#include <iosfwd>
#include <span>
#include <vector>

namespace histoseg {

/// A fitted curve over a closed interval with analytic first and second
/// derivatives. Evaluating outside [lower(), upper()] throws out_of_domain.
class Curve1D {
public:
    virtual ~Curve1D() = default;

    virtual double lower() const noexcept = 0;
    virtual double upper() const noexcept = 0;

    double value(double x) const;
    double deriv1(double x) const;
    double deriv2(double x) const;

    bool contains(double x) const noexcept { return x >= lower() && x <= upper(); }

protected:
    virtual double value_at(double x) const = 0;
    virtual double deriv1_at(double x) const = 0;
    virtual double deriv2_at(double x) const = 0;

private:
    void check_domain(double x) const;
};

/// On [breaks[i], breaks[i+1]] the curve is a + b*t + c*t^2 + d*t^3 with
/// t = x - breaks[i].
struct CubicPiece {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;
};

class PiecewiseCubic final : public Curve1D {
public:
    PiecewiseCubic(std::vector<double> breaks, std::vector<CubicPiece> pieces);

    double lower() const noexcept override { return breaks_.front(); }
    double upper() const noexcept override { return breaks_.back(); }

    std::span<const double> breaks() const noexcept { return breaks_; }
    std::span<const CubicPiece> pieces() const noexcept { return pieces_; }

private:
    std::size_t piece_index(double x) const noexcept;

    double value_at(double x) const override;
    double deriv1_at(double x) const override;
    double deriv2_at(double x) const override;

    std::vector<double> breaks_;
    std::vector<CubicPiece> pieces_;
};

enum class SplineBoundary { not_a_knot, natural };

/// Interpolating cubic spline through (xs[i], ys[i]). Knot slopes come from
/// a tridiagonal system solved with the Thomas algorithm. Two points give a
/// straight segment; three points under not-a-knot give the single parabola
/// through them.
PiecewiseCubic fit_spline(std::span<const double> xs, std::span<const double> ys,
                          SplineBoundary boundary = SplineBoundary::not_a_knot);

/// Polynomial in the scaled variable u = (x - x_mid) / x_half, coefficients in
/// ascending powers of u.
class PolyCurve final : public Curve1D {
public:
    /// Domain defaults to [x_mid - x_half, x_mid + x_half].
    PolyCurve(std::vector<double> coeffs, double x_mid, double x_half);
    PolyCurve(std::vector<double> coeffs, double x_mid, double x_half, double lower, double upper);

    double lower() const noexcept override { return lower_; }
    double upper() const noexcept override { return upper_; }

    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    std::span<const double> coeffs() const noexcept { return coeffs_; }
    double x_mid() const noexcept { return x_mid_; }
    double x_half() const noexcept { return x_half_; }

    double to_scaled(double x) const noexcept { return (x - x_mid_) / x_half_; }

private:
    double value_at(double x) const override;
    double deriv1_at(double x) const override;
    double deriv2_at(double x) const override;

    std::vector<double> coeffs_;
    double x_mid_;
    double x_half_;
    double lower_;
    double upper_;
};

/// Least-squares polynomial of the given degree, solved by column-pivoted
/// Householder QR on the Vandermonde matrix in the scaled variable.
PolyCurve fit_poly(std::span<const double> xs, std::span<const double> ys, int degree);

/// Sum of squared residuals of `curve` against the samples.
double sum_squared_residual(const Curve1D& curve, std::span<const double> xs,
                            std::span<const double> ys);

/// lower, lower + step, ..., with the final point pinned to upper. Holds
/// ceil((upper - lower) / step) + 1 points.
std::vector<double> uniform_grid(double lower, double upper, double step);

/// `x,value,deriv1,deriv2` sampled on uniform_grid over the curve domain.
void write_curve_csv(const Curve1D& curve, double step, std::ostream& out);

}  // namespace histoseg

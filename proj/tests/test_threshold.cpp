#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>

#include "histoseg/curve.hpp"
#include "histoseg/error.hpp"
#include "histoseg/pipeline.hpp"
#include "histoseg/threshold.hpp"
#include "support/synthetic.hpp"

namespace histoseg {
namespace {

// Curve given by closed-form value and derivatives.
class FunctionCurve final : public Curve1D {
public:
    using Fn = std::function<double(double)>;
    FunctionCurve(double lo, double hi, Fn f, Fn d1, Fn d2)
        : lo_(lo), hi_(hi), f_(std::move(f)), d1_(std::move(d1)), d2_(std::move(d2)) {}

    double lower() const noexcept override { return lo_; }
    double upper() const noexcept override { return hi_; }

private:
    double value_at(double x) const override { return f_(x); }
    double deriv1_at(double x) const override { return d1_(x); }
    double deriv2_at(double x) const override { return d2_(x); }

    double lo_, hi_;
    Fn f_, d1_, d2_;
};

FunctionCurve parabola_at_128() {
    return FunctionCurve(
        0.0, 255.0, [](double x) { return (x - 128.0) * (x - 128.0); },
        [](double x) { return 2.0 * (x - 128.0); }, [](double) { return 2.0; });
}

// Between-class variance from scratch for each split: the independent oracle.
int otsu_oracle(const Histogram& h, std::vector<double>* sigmas = nullptr) {
    const double total = static_cast<double>(h.total());
    double best = -1.0;
    int best_t = 0;
    for (int t = 0; t < 256; ++t) {
        double n0 = 0, s0 = 0, n1 = 0, s1 = 0;
        for (int v = 0; v < 256; ++v) {
            const double c = static_cast<double>(h.counts[v]);
            if (v <= t) {
                n0 += c;
                s0 += c * v;
            } else {
                n1 += c;
                s1 += c * v;
            }
        }
        double sigma = 0.0;
        if (n0 > 0 && n1 > 0) {
            const double w0 = n0 / total, w1 = n1 / total;
            const double mu0 = s0 / n0, mu1 = s1 / n1;
            sigma = w0 * w1 * (mu0 - mu1) * (mu0 - mu1);
        }
        if (sigmas) sigmas->push_back(sigma);
        if (sigma > best) {
            best = sigma;
            best_t = t;
        }
    }
    return best_t;
}

PiecewiseCubic spline_of(const std::vector<double>& counts) {
    std::vector<double> xs(counts.size());
    std::iota(xs.begin(), xs.end(), 0.0);
    return fit_spline(xs, counts);
}

// --------------------------------------------------------------------------
// find_minima

TEST(FindMinimaTest, ParabolaHasOneMinimum) {
    const auto curve = parabola_at_128();
    const auto found = find_minima(curve);
    ASSERT_EQ(found.accepted.size(), 1u);
    EXPECT_TRUE(found.rejected.empty());
    const auto& m = found.accepted.front();
    EXPECT_NEAR(m.x, 128.0, 1e-4);
    EXPECT_NEAR(m.value, 0.0, 1e-8);
    // The flanking maxima are the domain ends: 128^2 at x = 0, 127^2 at x = 255.
    // Prominence measures the rise to the lower of the two.
    EXPECT_NEAR(m.prominence, 127.0 * 127.0, 1e-6);
    EXPECT_LE(m.deriv1_abs, 2.0 * 0.125 + 1e-12);
}

TEST(FindMinimaTest, MonotoneCurveHasNone) {
    const FunctionCurve rising(0.0, 255.0, [](double x) { return x * x * x; },
                               [](double x) { return 3 * x * x; }, [](double x) { return 6 * x; });
    const auto found = find_minima(rising);
    EXPECT_TRUE(found.accepted.empty());
    EXPECT_TRUE(found.rejected.empty());
}

TEST(FindMinimaTest, TwoGaussianHistogramValley) {
    const double valley = testing::mixture_argmin(60.0, 180.0, 15.0);
    ASSERT_NEAR(valley, 120.0, 1e-3);  // symmetric mixture
    const auto counts = testing::mixture_counts(1e6, 60.0, 180.0, 15.0);
    const auto curve = spline_of(counts);
    const auto found = find_minima(curve);
    ASSERT_EQ(found.accepted.size(), 1u);
    EXPECT_NEAR(found.accepted.front().x, valley, 3.0);
}

TEST(FindMinimaTest, ProminenceFloorRejectsRipples) {
    // Large valley at 120 plus a shallow ripple near 40.
    const FunctionCurve wavy(
        0.0, 255.0,
        [](double x) { return 1000.0 * std::cos((x - 120.0) * M_PI / 120.0) + 3.0 * std::sin(x); },
        [](double x) {
            return -1000.0 * M_PI / 120.0 * std::sin((x - 120.0) * M_PI / 120.0) + 3.0 * std::cos(x);
        },
        [](double x) {
            return -1000.0 * (M_PI / 120.0) * (M_PI / 120.0) * std::cos((x - 120.0) * M_PI / 120.0) -
                   3.0 * std::sin(x);
        });
    // cos((x-120)pi/120) is minimal at x = 0 and 240, maximal at 120: flip it.
    const FunctionCurve valley(
        0.0, 255.0, [&](double x) { return 2000.0 - wavy.value(x); },
        [&](double x) { return -wavy.deriv1(x); }, [&](double x) { return -wavy.deriv2(x); });
    const auto found = find_minima(valley, 0.25, 0.02);
    ASSERT_EQ(found.accepted.size(), 1u);
    EXPECT_NEAR(found.accepted.front().x, 120.0, 5.0);
    EXPECT_FALSE(found.rejected.empty());
    for (const auto& r : found.rejected) EXPECT_LT(r.prominence, 0.02 * 3000.0 + 10.0);

    const auto all = find_minima(valley, 0.25, 0.0);
    EXPECT_EQ(all.accepted.size(), found.accepted.size() + found.rejected.size());
    EXPECT_TRUE(all.rejected.empty());
}

TEST(FindMinimaTest, RejectsBadParameters) {
    const auto curve = parabola_at_128();
    EXPECT_THROW((void)find_minima(curve, 0.0), Error);
    EXPECT_THROW((void)find_minima(curve, 0.25, 1.0), Error);
    EXPECT_THROW((void)find_minima(curve, 0.25, -0.1), Error);
}

TEST(FindMinimaProperty, MinimaCarryCertificates) {
    std::mt19937_64 rng(testing::seed_from_env(301));
    for (int trial = 0; trial < 20; ++trial) {
        const auto img = testing::bimodal_image(64, 64, 70.0, 170.0, 20.0, rng());
        const auto hist = compute_histogram(img);
        std::vector<double> counts(256);
        double scale = 1.0;
        for (int v = 0; v < 256; ++v) {
            counts[v] = static_cast<double>(hist.counts[v]);
            scale = std::max(scale, counts[v]);
        }
        const auto curve = spline_of(counts);
        const auto found = find_minima(curve, 0.25, 0.0);
        for (const auto& m : found.accepted) {
            EXPECT_GT(curve.deriv2(m.x), 0.0);
            EXPECT_LT(std::abs(curve.deriv1(m.x)), 1e-6 * scale);
            EXPECT_GE(m.x, 0.0);
            EXPECT_LE(m.x, 255.0);
            EXPECT_GE(m.prominence, 0.0);
        }
    }
}

// --------------------------------------------------------------------------
// select_threshold

TEST(SelectThresholdTest, SingleCandidate) {
    const auto curve = parabola_at_128();
    const std::vector<Minimum> c{{128.0, 0.0, 0.0, 16129.0}};
    const auto r = select_threshold(c, curve);
    EXPECT_EQ(r.gray_level, 128.0);
    EXPECT_DOUBLE_EQ(r.threshold_norm, 128.0 / 255.0);
    EXPECT_NEAR(r.threshold_norm, 0.50196, 1e-5);
    EXPECT_EQ(r.threshold_norm * 255.0, r.gray_level);
    ASSERT_EQ(r.candidates.size(), 1u);
}

TEST(SelectThresholdTest, FlatValleyBeatsSteepNotch) {
    // A wide well at 60 (sigma 30) and a narrow notch at 180 (sigma 3).
    const auto g = [](double x, double mu, double s) { return std::exp(-0.5 * (x - mu) * (x - mu) / (s * s)); };
    const auto f = [&](double x) { return 1000.0 - 500.0 * g(x, 60, 30) - 500.0 * g(x, 180, 3); };
    const auto d1 = [&](double x) {
        return 500.0 * (x - 60) / 900.0 * g(x, 60, 30) + 500.0 * (x - 180) / 9.0 * g(x, 180, 3);
    };
    const auto d2 = [&](double x) {
        return 500.0 * (1.0 - (x - 60) * (x - 60) / 900.0) / 900.0 * g(x, 60, 30) +
               500.0 * (1.0 - (x - 180) * (x - 180) / 9.0) / 9.0 * g(x, 180, 3);
    };
    const FunctionCurve curve(0.0, 255.0, f, d1, d2);
    const auto found = find_minima(curve, 0.25, 0.0);
    ASSERT_EQ(found.accepted.size(), 2u);

    // Oracle: exhaustive sort of every grid slope, then first match.
    const auto grid = uniform_grid(0.0, 255.0, 0.25);
    std::vector<std::pair<double, double>> slopes;
    for (double x : grid) slopes.emplace_back(std::abs(d1(x)), x);
    std::sort(slopes.begin(), slopes.end());
    double expected = -1.0;
    for (const auto& [s, x] : slopes) {
        for (const auto& m : found.accepted) {
            if (std::abs(m.x - x) <= 0.25) {
                expected = m.x;
                break;
            }
        }
        if (expected >= 0.0) break;
    }

    const auto r = select_threshold(found.accepted, curve);
    EXPECT_NEAR(r.gray_level, expected, 1e-12);
    EXPECT_NEAR(r.gray_level, 60.0, 1e-3);
}

TEST(SelectThresholdTest, SymmetricTieGoesToSmallerX) {
    // ((x-150)^2 - 2500)^2 has mirror-image minima at 100 and 200.
    const FunctionCurve curve(
        0.0, 255.0,
        [](double x) {
            const double q = (x - 150) * (x - 150) - 2500;
            return q * q;
        },
        [](double x) { return 4 * ((x - 150) * (x - 150) - 2500) * (x - 150); },
        [](double x) { return 12 * (x - 150) * (x - 150) - 10000; });
    const std::vector<Minimum> candidates{{200.0, 0.0, 0.0, 1.0}, {100.0, 0.0, 0.0, 1.0}};
    const auto r = select_threshold(candidates, curve);
    EXPECT_EQ(r.gray_level, 100.0);
}

TEST(SelectThresholdTest, EmptyCandidatesIsAnError) {
    const auto curve = parabola_at_128();
    try {
        (void)select_threshold({}, curve);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::no_candidate);
    }
}

TEST(SelectThresholdProperty, PermutationInvariant) {
    std::mt19937_64 rng(testing::seed_from_env(302));
    for (int trial = 0; trial < 20; ++trial) {
        const auto img = testing::bimodal_image(64, 64, 60.0, 190.0, 18.0, rng());
        const auto h = compute_histogram(img);
        std::vector<double> counts(256);
        for (int v = 0; v < 256; ++v) counts[v] = static_cast<double>(h.counts[v]);
        const auto curve = spline_of(counts);
        auto cands = find_minima(curve, 0.25, 0.0).accepted;
        if (cands.empty()) continue;
        const auto ref = select_threshold(cands, curve);
        for (int p = 0; p < 5; ++p) {
            std::shuffle(cands.begin(), cands.end(), rng);
            const auto r = select_threshold(cands, curve);
            EXPECT_EQ(r.gray_level, ref.gray_level);
            EXPECT_EQ(r.candidates, ref.candidates);
        }
    }
}

TEST(ThresholdResultTest, NormalizationIsExact) {
    std::mt19937_64 rng(testing::seed_from_env(303));
    std::uniform_real_distribution<double> level(0.0, 255.0);
    for (int i = 0; i < 100000; ++i) {
        // Perturb the low bits; raw uniform draws are too round to be a test.
        double g = level(rng);
        for (int k = i % 7; k > 0; --k) g = std::nextafter(g, 0.0);
        const auto r = ThresholdResult::from_gray_level(Method::spline, g);
        ASSERT_EQ(r.threshold_norm * 255.0, r.gray_level);
        ASSERT_NEAR(r.gray_level, g, 1e-12);
        ASSERT_GE(r.threshold_norm, 0.0);
        ASSERT_LE(r.threshold_norm, 1.0);
    }
    for (int t = 0; t < 256; ++t) {
        const auto r = ThresholdResult::from_gray_level(Method::otsu, t);
        ASSERT_EQ(r.threshold_norm * 255.0, static_cast<double>(t));
    }
}

// --------------------------------------------------------------------------
// Otsu

TEST(OtsuTest, TwoSpikesPlateauReturnsLeftEdge) {
    Histogram h;
    h.counts[50] = 500;
    h.counts[200] = 500;
    std::vector<double> sigmas;
    const int oracle = otsu_oracle(h, &sigmas);
    for (int t = 50; t < 200; ++t) EXPECT_NEAR(sigmas[t], sigmas[50], 1e-12 * sigmas[50]);
    EXPECT_LT(sigmas[49], sigmas[50]);
    EXPECT_LT(sigmas[200], sigmas[50]);
    EXPECT_EQ(oracle, 50);

    const auto r = otsu(h);
    EXPECT_EQ(r.gray_level, 50.0);
    EXPECT_EQ(r.method, Method::otsu);
    EXPECT_TRUE(r.candidates.empty());
}

TEST(OtsuTest, SingleBinIsDegenerate) {
    Histogram h;
    h.counts[77] = 10;
    try {
        (void)otsu(h);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::degenerate_histogram);
    }
    EXPECT_THROW((void)otsu(Histogram{}), Error);
}

TEST(OtsuProperty, MatchesExhaustiveScan) {
    std::mt19937_64 rng(testing::seed_from_env(304));
    for (int trial = 0; trial < 100; ++trial) {
        const auto h = testing::random_histogram(rng);
        ASSERT_EQ(otsu(h).gray_level, otsu_oracle(h)) << "trial " << trial;
    }
}

TEST(OtsuProperty, SparseHistogramsMatchScan) {
    std::mt19937_64 rng(testing::seed_from_env(305));
    std::uniform_int_distribution<int> bin(0, 255), count(1, 50), spikes(2, 6);
    for (int trial = 0; trial < 200; ++trial) {
        Histogram h;
        const int k = spikes(rng);
        while (h.occupied_bins() < k) h.counts[bin(rng)] += count(rng);
        ASSERT_EQ(otsu(h).gray_level, otsu_oracle(h)) << "trial " << trial;
    }
}

// --------------------------------------------------------------------------
// Scale invariance

TEST(ScaleInvariance, OtsuAndSplineIgnoreUniformScaling) {
    std::mt19937_64 rng(testing::seed_from_env(306));
    for (int trial = 0; trial < 10; ++trial) {
        const auto img = testing::bimodal_image(128, 128, 60.0, 180.0, 15.0, rng());
        const auto h = compute_histogram(img);
        for (std::uint64_t k : {2u, 3u, 8u}) {
            Histogram scaled = h;
            for (auto& c : scaled.counts) c *= k;
            EXPECT_EQ(otsu(scaled).gray_level, otsu(h).gray_level);

            SegmentOptions opts;
            const auto base = curve_threshold(*fit_histogram(h, opts), Method::spline);
            const auto big = curve_threshold(*fit_histogram(scaled, opts), Method::spline);
            EXPECT_NEAR(big.gray_level, base.gray_level, 1e-6) << "k = " << k;
        }
    }
}

TEST(MethodNames, ParseAndPrint) {
    for (auto m : {Method::spline, Method::polyfit, Method::otsu}) {
        EXPECT_EQ(parse_method(to_string(m)), m);
    }
    EXPECT_THROW((void)parse_method("kmeans"), Error);
}

}  // namespace
}  // namespace histoseg

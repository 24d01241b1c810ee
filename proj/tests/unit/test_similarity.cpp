#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "pbrkit/error.hpp"
#include "pbrkit/similarity.hpp"

using namespace pbrkit;
using namespace pbrkit::similarity;

namespace {

const Rgb kGreen{0, 255, 0};
const Rgb kRed{255, 0, 0};

Measure of(MeasureKind k) {
    Measure m;
    m.kind = k;
    return m;
}

double eval(MeasureKind k, const Rgb& a, const Rgb& b) { return measure(a, b, of(k)); }

Rgb random_rgb(std::mt19937_64& g) {
    std::uniform_real_distribution<double> u(0.0, 255.0);
    return {u(g), u(g), u(g)};
}

// Integral of |F_a - F_b| for the two 3-point empirical distributions,
// walking the merged breakpoints.
double cdf_oracle(const Rgb& a, const Rgb& b) {
    std::vector<double> xs(a.begin(), a.end());
    xs.insert(xs.end(), b.begin(), b.end());
    std::sort(xs.begin(), xs.end());
    auto cdf = [](const Rgb& v, double x) {
        return static_cast<double>(std::count_if(v.begin(), v.end(), [&](double t) { return t <= x; })) / 3.0;
    };
    double area = 0.0;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        area += std::abs(cdf(a, xs[i]) - cdf(b, xs[i])) * (xs[i + 1] - xs[i]);
    }
    return area;
}

Rgb lerp_path(double t) {
    return {200.0 * t, 255.0 + t * (30.0 - 255.0), 30.0 * t};
}

}  // namespace

TEST(Measures, NamesRoundTrip) {
    for (auto k : kAllMeasureKinds) EXPECT_EQ(parse_measure_kind(to_string(k)), k);
    EXPECT_THROW(parse_measure_kind("chebyshev"), Error);
}

TEST(Measures, GreenVersusRed) {
    EXPECT_NEAR(eval(MeasureKind::euclidean, kGreen, kRed), 255.0 * std::sqrt(2.0), 1e-9);
    EXPECT_NEAR(eval(MeasureKind::euclidean, kGreen, kRed), 360.624, 1e-3);
    EXPECT_EQ(eval(MeasureKind::manhattan, kGreen, kRed), 510.0);
    EXPECT_EQ(eval(MeasureKind::hamming, kGreen, kRed), 2.0);
    EXPECT_EQ(eval(MeasureKind::cosine, kGreen, kGreen), 1.0);
    EXPECT_EQ(eval(MeasureKind::cosine, kGreen, kRed), 0.0);
    EXPECT_EQ(eval(MeasureKind::bray_curtis, kGreen, kRed), 1.0);
    EXPECT_EQ(eval(MeasureKind::tanimoto, kGreen, kGreen), 1.0);
    EXPECT_EQ(eval(MeasureKind::tanimoto, kGreen, kRed), 0.0);
    EXPECT_EQ(eval(MeasureKind::wasserstein, kGreen, kRed), 0.0);
    EXPECT_EQ(cdf_oracle(kGreen, kRed), 0.0);
    EXPECT_EQ(eval(MeasureKind::pearson, kGreen, kGreen), 1.0);
    EXPECT_NEAR(eval(MeasureKind::pearson, kGreen, kRed), -0.5, 1e-12);
    EXPECT_NEAR(eval(MeasureKind::minkowski, kGreen, kRed), 255.0 * std::cbrt(2.0), 1e-9);
}

TEST(Measures, KulczynskiGuard) {
    const double got = eval(MeasureKind::kulczynski, {10, 250, 5}, kGreen);
    const double expect = (10.0 / 1e-9 + 5.0 / 250.0 + 5.0 / 1e-9) / 3.0;
    EXPECT_TRUE(std::isfinite(got));
    EXPECT_NEAR(got / expect, 1.0, 1e-12);
    EXPECT_EQ(eval(MeasureKind::kulczynski, kGreen, kGreen), 0.0);
    Measure m = of(MeasureKind::kulczynski);
    m.epsilon = 1.0;
    EXPECT_NEAR(measure({10, 250, 5}, kGreen, m), (10.0 + 5.0 / 250.0 + 5.0) / 3.0, 1e-12);
}

TEST(Measures, HammingQuantization) {
    Measure m = of(MeasureKind::hamming);
    EXPECT_EQ(measure({10.2, 20, 30}, {9.8, 20, 31}, m), 1.0);
    m.hamming_quantization = 10;
    EXPECT_EQ(measure({10.2, 20, 30}, {9.8, 20, 31}, m), 0.0);
    m.hamming_quantization = 4;  // 10.2 and 9.8 land in different buckets
    EXPECT_EQ(measure({10.2, 20, 30}, {9.8, 20, 31}, m), 1.0);
    m.hamming_quantization = 0;
    EXPECT_THROW(measure(kGreen, kRed, m), Error);
}

TEST(Measures, UndefinedInputs) {
    auto code = [](auto&& fn) {
        try {
            fn();
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::InvalidArgument;
    };
    EXPECT_EQ(code([] { eval(MeasureKind::cosine, {0, 0, 0}, kGreen); }), ErrorCode::UndefinedMeasure);
    EXPECT_EQ(code([] { eval(MeasureKind::tanimoto, {0, 0, 0}, {0, 0, 0}); }), ErrorCode::UndefinedMeasure);
    EXPECT_EQ(code([] { eval(MeasureKind::pearson, {7, 7, 7}, kGreen); }), ErrorCode::UndefinedMeasure);
    Measure m = of(MeasureKind::minkowski);
    m.minkowski_p = 0.5;
    EXPECT_EQ(code([&] { measure(kGreen, kRed, m); }), ErrorCode::InvalidP);
    EXPECT_EQ(eval(MeasureKind::tanimoto, {0, 0, 0}, kGreen), 0.0);
}

TEST(Measures, MinkowskiReductions) {
    std::mt19937_64 g(1);
    Measure p1 = of(MeasureKind::minkowski), p2 = of(MeasureKind::minkowski);
    p1.minkowski_p = 1;
    p2.minkowski_p = 2;
    for (int i = 0; i < 10000; ++i) {
        const auto a = random_rgb(g), b = random_rgb(g);
        EXPECT_NEAR(measure(a, b, p1), eval(MeasureKind::manhattan, a, b), 1e-9);
        EXPECT_NEAR(measure(a, b, p2), eval(MeasureKind::euclidean, a, b), 1e-9);
    }
}

TEST(Measures, MetricAxioms) {
    std::mt19937_64 g(2);
    for (auto k : {MeasureKind::euclidean, MeasureKind::manhattan, MeasureKind::minkowski}) {
        for (int i = 0; i < 10000; ++i) {
            const auto a = random_rgb(g), b = random_rgb(g), c = random_rgb(g);
            const double ab = eval(k, a, b);
            EXPECT_GE(ab, 0.0);
            EXPECT_EQ(ab, eval(k, b, a));
            EXPECT_EQ(eval(k, a, a), 0.0);
            EXPECT_GT(ab, 0.0);
            EXPECT_LE(eval(k, a, c), ab + eval(k, b, c) + 1e-9);
        }
    }
}

TEST(Measures, SymmetryAndRanges) {
    std::mt19937_64 g(3);
    for (int i = 0; i < 10000; ++i) {
        const auto a = random_rgb(g), b = random_rgb(g);
        for (auto k : kAllMeasureKinds) EXPECT_EQ(eval(k, a, b), eval(k, b, a)) << to_string(k);
        const double cos = eval(MeasureKind::cosine, a, b);
        const double r = eval(MeasureKind::pearson, a, b);
        const double t = eval(MeasureKind::tanimoto, a, b);
        const double bc = eval(MeasureKind::bray_curtis, a, b);
        EXPECT_TRUE(cos >= -1 && cos <= 1);
        EXPECT_TRUE(r >= -1 && r <= 1);
        EXPECT_TRUE(t >= 0 && t <= 1);
        EXPECT_TRUE(bc >= 0 && bc <= 1);
    }
}

TEST(Measures, WassersteinMatchesCdfIntegral) {
    std::mt19937_64 g(4);
    for (int i = 0; i < 2000; ++i) {
        const auto a = random_rgb(g), b = random_rgb(g);
        EXPECT_NEAR(eval(MeasureKind::wasserstein, a, b), cdf_oracle(a, b), 1e-9);
    }
    // Blind to which channel holds which value.
    EXPECT_EQ(eval(MeasureKind::wasserstein, {1, 2, 3}, {3, 1, 2}), 0.0);
}

TEST(Measures, CosineScaleInvariance) {
    std::mt19937_64 g(5);
    for (int i = 0; i < 1000; ++i) {
        const auto a = random_rgb(g), b = random_rgb(g);
        const double base = eval(MeasureKind::cosine, a, b);
        for (double k : {0.25, 0.5, 2.0, 8.0}) {
            const Rgb ka{k * a[0], k * a[1], k * a[2]}, kb{k * b[0], k * b[1], k * b[2]};
            EXPECT_EQ(eval(MeasureKind::cosine, ka, kb), base);
        }
        const Rgb ka{0.83 * a[0], 0.83 * a[1], 0.83 * a[2]}, kb{0.83 * b[0], 0.83 * b[1], 0.83 * b[2]};
        EXPECT_NEAR(eval(MeasureKind::cosine, ka, kb), base, 1e-12);
    }
}

TEST(SignedDifference, Convention) {
    EXPECT_EQ(signed_difference(kGreen, kGreen, of(MeasureKind::euclidean)).value, 0.0);
    EXPECT_EQ(signed_difference(kGreen, kGreen, of(MeasureKind::cosine)).value, 0.0);
    for (auto k : kAllMeasureKinds) {
        const auto d = signed_difference({200, 30, 30}, kGreen, of(k));
        EXPECT_EQ(d.measure.kind, k);
        if (is_distance(k)) EXPECT_LT(d.value, 0.0) << to_string(k);
        EXPECT_LE(d.value, 0.0) << to_string(k);
    }
    EXPECT_NEAR(signed_difference({200, 30, 30}, kGreen, of(MeasureKind::euclidean)).value,
                -std::sqrt(200.0 * 200 + 225.0 * 225 + 30.0 * 30), 1e-9);
}

TEST(SignedDifference, MonotoneAlongAgingPath) {
    for (auto k : {MeasureKind::euclidean, MeasureKind::manhattan, MeasureKind::minkowski, MeasureKind::cosine,
                   MeasureKind::tanimoto, MeasureKind::bray_curtis}) {
        double prev = 0.0;
        for (int step = 0; step <= 120; ++step) {
            const double mag = std::abs(signed_difference(lerp_path(step / 120.0), kGreen, of(k)).value);
            EXPECT_GE(mag, prev - 1e-12) << to_string(k) << " step " << step;
            prev = mag;
        }
    }
}

TEST(SignedDifference, IdenticalInputsAreExactlyZero) {
    std::mt19937_64 g(6);
    for (int i = 0; i < 1000; ++i) {
        const auto a = random_rgb(g);
        for (auto k : kAllMeasureKinds) EXPECT_EQ(signed_difference(a, a, of(k)).value, 0.0) << to_string(k);
    }
}

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include "pbrkit/error.hpp"
#include "pbrkit/similarity.hpp"
#include "pbrkit/vision.hpp"

using namespace pbrkit;
using namespace pbrkit::vision;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorCode::InvalidArgument;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

std::uint8_t rounded(double v) { return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L)); }

}  // namespace

TEST(Grid, SmallAndPaperResolution) {
    auto p = grid_points(6, 6);
    const int expect[3] = {1, 3, 5};
    for (std::size_t i = 0; i < 9; ++i) {
        EXPECT_EQ(p[i].x, expect[i % 3]);
        EXPECT_EQ(p[i].y, expect[i / 3]);
    }
    p = grid_points(2667, 2000);
    EXPECT_EQ(p[0], (Pixel{444, 333}));
    EXPECT_EQ(p[4], (Pixel{1333, 1000}));
    EXPECT_EQ(p[8], (Pixel{2222, 1666}));
    EXPECT_EQ(code_of([] { grid_points(2, 2); }), ErrorCode::ImageTooSmall);
}

TEST(Sampling, SpecValidation) {
    SamplingSpec s;
    EXPECT_NO_THROW(s.validate());
    s.center_weight = 0.3;
    EXPECT_EQ(code_of([&] { s.validate(); }), ErrorCode::InvalidSamplingSpec);
    s = {};
    s.cluster_size = 0;
    EXPECT_EQ(code_of([&] { s.validate(); }), ErrorCode::InvalidSamplingSpec);
    s = {};
    s.cluster_variance = -1;
    EXPECT_EQ(code_of([&] { s.validate(); }), ErrorCode::InvalidSamplingSpec);
}

TEST(Sampling, UniformIsExactForAnySeed) {
    const ImageRaster img(40, 30, {0, 255, 0});
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        SamplingSpec spec;
        spec.rng_seed = seed;
        EXPECT_EQ(sample_cluster(img, {20, 15}, spec), (RgbMean{0, 255, 0}));
        EXPECT_EQ(nine_grid_color(img, spec), (RgbMean{0, 255, 0}));
    }
    const ImageRaster odd(17, 9, {13, 77, 201});
    EXPECT_EQ(nine_grid_color(odd, {}), (RgbMean{13, 77, 201}));
}

TEST(Sampling, ZeroVarianceReadsCentre) {
    ImageRaster img(9, 9, {1, 2, 3});
    img.set(4, 4, {250, 100, 7});
    SamplingSpec spec;
    spec.cluster_variance = 0;
    EXPECT_EQ(sample_cluster(img, {4, 4}, spec), (RgbMean{250, 100, 7}));
}

TEST(Sampling, DarkCentreWeighting) {
    // Centre cell of the 3x3 partition black, everything else green.
    ImageRaster img(30, 30, {0, 255, 0});
    for (int y = 10; y < 20; ++y)
        for (int x = 10; x < 20; ++x) img.set(x, y, {0, 0, 0});
    SamplingSpec spec;
    spec.cluster_variance = 0;
    const auto c = nine_grid_color(img, spec);
    EXPECT_EQ(c[0], 0.0);
    EXPECT_NEAR(c[1], 204.0, 1e-9);
    EXPECT_EQ(c[2], 0.0);
}

TEST(Sampling, HalfBlackHalfWhiteBinomialBound) {
    ImageRaster img(120, 120, {255, 255, 255});
    for (int y = 0; y < 120; ++y)
        for (int x = 0; x < 60; ++x) img.set(x, y, {0, 0, 0});
    SamplingSpec spec;
    spec.rng_seed = 42;
    const auto mean = sample_cluster(img, {60, 60}, spec);
    // x rounds to >= 60 (white) when sigma * z >= -0.5.
    const double sigma = std::sqrt(spec.cluster_variance);
    const double p = normal_cdf(0.5 / sigma);
    const double n = spec.cluster_size;
    const double bound = 3.0 * 255.0 * std::sqrt(p * (1 - p) / n);
    for (double ch : mean) EXPECT_LE(std::abs(ch - 255.0 * p), bound);
    EXPECT_EQ(mean[0], mean[1]);
}

TEST(Sampling, SeedDeterminism) {
    const auto img = generate_synthetic_frame(12, 30, 0.9, 5);
    SamplingSpec spec;
    spec.rng_seed = 9;
    EXPECT_EQ(nine_grid_color(img, spec), nine_grid_color(img, spec));
    const SyntheticFrameSpec fs;
    const auto a = extract_observation(img, fs.test_region(), fs.control_region(), 12, spec);
    const auto b = extract_observation(img, fs.test_region(), fs.control_region(), 12, spec);
    EXPECT_EQ(a.test_rgb, b.test_rgb);
    EXPECT_EQ(a.control_rgb, b.control_rgb);
}

TEST(Sampling, MeansStayInRange) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto img = generate_synthetic_frame(static_cast<double>(seed), 20, 1.5, seed);
        SamplingSpec spec;
        spec.rng_seed = seed;
        for (double ch : nine_grid_color(img, spec)) {
            EXPECT_GE(ch, 0.0);
            EXPECT_LE(ch, 255.0);
        }
    }
}

TEST(Extract, CarriesRenderedColours) {
    SyntheticFrameSpec fs;
    fs.noise_sigma = 0;
    const RgbMean algae{20, 200, 30}, control{10, 240, 12};
    const auto img = render_frame(algae, control, 0.95, 1, fs);
    const auto obs = extract_observation(img, fs.test_region(), fs.control_region(), 3, {});
    EXPECT_EQ(obs.day, 3);
    for (std::size_t k = 0; k < 3; ++k) {
        EXPECT_EQ(obs.test_rgb[k], rounded(0.95 * algae[k]));
        EXPECT_EQ(obs.control_rgb[k], rounded(0.95 * control[k]));
    }
}

TEST(Extract, RegionErrors) {
    const ImageRaster img(50, 40);
    const Region ok{0, 0, 10, 10};
    EXPECT_EQ(code_of([&] { extract_observation(img, ok, {45, 0, 10, 10}, 0); }),
              ErrorCode::ControlRegionOutOfBounds);
    EXPECT_EQ(code_of([&] { extract_observation(img, {-1, 0, 10, 10}, ok, 0); }),
              ErrorCode::TestRegionOutOfBounds);
    EXPECT_EQ(code_of([&] { extract_observation(img, ok, {0, 0, 0, 5}, 0); }),
              ErrorCode::ControlRegionOutOfBounds);
}

TEST(Synthetic, LerpEndpointsAndGain) {
    const auto fresh = synthetic_algae_color(0, 30, 1.0);
    EXPECT_EQ(fresh, (RgbMean{0, 255, 0}));
    EXPECT_EQ(synthetic_algae_color(30, 30, 1.0), (RgbMean{200, 30, 30}));
    const auto half = synthetic_algae_color(15, 30, 0.8);
    EXPECT_DOUBLE_EQ(half[0], 0.8 * 100);
    EXPECT_DOUBLE_EQ(half[1], 0.8 * 142.5);
    EXPECT_EQ(code_of([] { synthetic_algae_color(31, 30, 1.0); }), ErrorCode::InvalidArgument);
    EXPECT_EQ(code_of([] { synthetic_algae_color(1, 30, 0.0); }), ErrorCode::InvalidArgument);
}

TEST(Synthetic, FrameRegionMeans) {
    const SyntheticFrameSpec fs;
    SamplingSpec spec;
    spec.rng_seed = 3;
    auto obs = extract_observation(generate_synthetic_frame(0, 30, 1.0, 1), fs.test_region(),
                                   fs.control_region(), 0, spec);
    // Noise sigma 3 averaged over 900 draws; the green channel saturates at 255.
    EXPECT_NEAR(obs.test_rgb[0], 0, 1.5);
    EXPECT_NEAR(obs.test_rgb[1], 255, 1.5);
    EXPECT_NEAR(obs.control_rgb[1], 255, 1.5);
    obs = extract_observation(generate_synthetic_frame(30, 30, 1.0, 2), fs.test_region(), fs.control_region(),
                              30, spec);
    EXPECT_NEAR(obs.test_rgb[0], 200, 1.0);
    EXPECT_NEAR(obs.test_rgb[1], 30, 1.0);
    EXPECT_NEAR(obs.test_rgb[2], 30, 1.0);
}

TEST(Synthetic, SharedGainScalesBothRegions) {
    SyntheticFrameSpec fs;
    fs.noise_sigma = 0;
    const auto a = generate_synthetic_frame(10, 30, 1.0, 0, fs);
    const auto b = generate_synthetic_frame(10, 30, 0.5, 0, fs);
    const auto t = fs.test_region();
    const auto c = fs.control_region();
    const auto algae = synthetic_algae_color(10, 30, 1.0, fs);
    for (std::size_t k = 0; k < 3; ++k) {
        EXPECT_EQ(a.at(t.x, t.y)[k], rounded(algae[k]));
        EXPECT_EQ(b.at(t.x, t.y)[k], rounded(0.5 * algae[k]));
        EXPECT_EQ(b.at(c.x, c.y)[k], rounded(0.5 * fs.control_color[k]));
    }
}

TEST(Synthetic, SeededFramesRepeat) {
    const auto a = generate_synthetic_frame(7, 30, 0.9, 11);
    const auto b = generate_synthetic_frame(7, 30, 0.9, 11);
    const auto c = generate_synthetic_frame(7, 30, 0.9, 12);
    EXPECT_EQ(a.bytes(), b.bytes());
    EXPECT_NE(a.bytes(), c.bytes());
}

TEST(Lighting, ScaleInvariantMeasuresIgnoreGain) {
    // Exact on the noise-free colours.
    for (double day : {0.0, 7.0, 19.0, 30.0}) {
        const auto t1 = synthetic_algae_color(day, 30, 1.0);
        const auto t2 = synthetic_algae_color(day, 30, 0.8);
        RgbMean c1, c2;
        for (std::size_t k = 0; k < 3; ++k) {
            c1[k] = 1.0 * SyntheticFrameSpec{}.control_color[k];
            c2[k] = 0.8 * SyntheticFrameSpec{}.control_color[k];
        }
        for (auto kind : {similarity::MeasureKind::cosine, similarity::MeasureKind::tanimoto}) {
            similarity::Measure m;
            m.kind = kind;
            EXPECT_NEAR(similarity::measure(t1, c1, m), similarity::measure(t2, c2, m), 1e-12);
        }
    }

    // Through the 8-bit pipeline, averaged over 20 seeds. Rounding to whole
    // channel values caps how close the two gains can get.
    const SyntheticFrameSpec fs;
    similarity::Measure cosine;
    cosine.kind = similarity::MeasureKind::cosine;
    for (double day : {5.0, 20.0}) {
        double mean[2] = {0, 0};
        const double gains[2] = {1.0, 0.8};
        for (int g = 0; g < 2; ++g) {
            for (std::uint64_t seed = 0; seed < 20; ++seed) {
                SamplingSpec spec;
                spec.rng_seed = seed;
                const auto obs = extract_observation(generate_synthetic_frame(day, 30, gains[g], 100 + seed),
                                                     fs.test_region(), fs.control_region(), day, spec);
                mean[g] += similarity::measure(obs.test_rgb, obs.control_rgb, cosine) / 20.0;
            }
        }
        EXPECT_NEAR(mean[0], mean[1], 2e-3) << "day " << day;
    }
}

TEST(Png, RoundTrip) {
    const auto img = generate_synthetic_frame(4, 30, 1.0, 8);
    const auto path = std::filesystem::temp_directory_path() / "pbrkit_png_roundtrip.png";
    write_png(img, path);
    const auto back = read_png(path);
    EXPECT_EQ(back.width(), img.width());
    EXPECT_EQ(back.height(), img.height());
    EXPECT_EQ(back.bytes(), img.bytes());
    EXPECT_EQ(encode_png(img), encode_png(back));
    std::filesystem::remove(path);
    EXPECT_EQ(code_of([&] { read_png(path); }), ErrorCode::IoError);
}

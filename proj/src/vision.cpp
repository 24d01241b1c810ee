#include "pbrkit/vision.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pbrkit/error.hpp"

namespace pbrkit::vision {

namespace {

constexpr long kMaxRedraws = 1'000'000;

std::uint8_t to_channel(double v) {
    return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

}  // namespace

std::array<Pixel, 9> grid_points(int width, int height) {
    if (width < 3 || height < 3) {
        throw Error(ErrorCode::ImageTooSmall, "nine-grid sampling needs at least 3x3 pixels, got " +
                                                  std::to_string(width) + "x" +
                                                  std::to_string(height));
    }
    const std::array<int, 3> xs = {width / 6, width / 2, 5 * width / 6};
    const std::array<int, 3> ys = {height / 6, height / 2, 5 * height / 6};
    std::array<Pixel, 9> out;
    for (std::size_t r = 0; r < 3; ++r) {
        for (std::size_t c = 0; c < 3; ++c) out[r * 3 + c] = {xs[c], ys[r]};
    }
    return out;
}

void SamplingSpec::validate() const {
    if (cluster_size < 1) throw Error(ErrorCode::InvalidSamplingSpec, "cluster_size must be >= 1");
    if (!(cluster_variance >= 0.0)) {
        throw Error(ErrorCode::InvalidSamplingSpec, "cluster_variance must be >= 0");
    }
    if (std::abs(center_weight + 8.0 * outer_weight - 1.0) > 1e-12) {
        throw Error(ErrorCode::InvalidSamplingSpec, "grid weights must satisfy w0 + 8 w1 = 1");
    }
}

RgbMean sample_cluster(const ImageRaster& image, Pixel center, const SamplingSpec& spec, Rng& rng) {
    if (!image.contains(center.x, center.y)) {
        throw Error(ErrorCode::InvalidArgument, "cluster centre outside the image");
    }
    const double sigma = std::sqrt(spec.cluster_variance);
    std::array<std::uint64_t, 3> sum{};
    for (int i = 0; i < spec.cluster_size; ++i) {
        long x = center.x;
        long y = center.y;
        if (sigma > 0.0) {
            long tries = 0;
            do {
                if (++tries > kMaxRedraws) {
                    throw Error(ErrorCode::InvalidSamplingSpec, "cluster keeps leaving the image");
                }
                x = std::lround(center.x + sigma * rng.normal());
                y = std::lround(center.y + sigma * rng.normal());
            } while (!image.contains(static_cast<int>(x), static_cast<int>(y)));
        }
        const Rgb8 c = image.at(static_cast<int>(x), static_cast<int>(y));
        for (std::size_t k = 0; k < 3; ++k) sum[k] += c[k];
    }
    RgbMean mean;
    for (std::size_t k = 0; k < 3; ++k) {
        mean[k] = static_cast<double>(sum[k]) / spec.cluster_size;
    }
    return mean;
}

RgbMean sample_cluster(const ImageRaster& image, Pixel center, const SamplingSpec& spec) {
    Rng rng(spec.rng_seed);
    return sample_cluster(image, center, spec, rng);
}

RgbMean nine_grid_color(const ImageRaster& image, const SamplingSpec& spec) {
    spec.validate();
    const auto points = grid_points(image.width(), image.height());
    Rng rng(spec.rng_seed);
    std::array<RgbMean, 9> samples;
    for (std::size_t i = 0; i < points.size(); ++i) {
        samples[i] = sample_cluster(image, points[i], spec, rng);
    }
    // w0 c0 + w1 sum(ci) rewritten around the centre sample; equal because
    // the weights sum to one, and exact when all samples agree.
    RgbMean out = samples[kGridCenter];
    for (std::size_t k = 0; k < 3; ++k) {
        double offset = 0.0;
        for (std::size_t i = 0; i < samples.size(); ++i) {
            if (i != kGridCenter) offset += samples[i][k] - samples[kGridCenter][k];
        }
        out[k] = std::clamp(out[k] + spec.outer_weight * offset, 0.0, 255.0);
    }
    return out;
}

ImageRaster crop(const ImageRaster& image, const Region& region) {
    if (!region.inside(image)) throw Error(ErrorCode::InvalidArgument, "crop region out of bounds");
    ImageRaster out(region.width, region.height);
    for (int y = 0; y < region.height; ++y) {
        for (int x = 0; x < region.width; ++x) out.set(x, y, image.at(region.x + x, region.y + y));
    }
    return out;
}

ColorObservation extract_observation(const ImageRaster& image, const Region& test_region,
                                     const Region& control_region, double day,
                                     const SamplingSpec& spec) {
    if (!test_region.inside(image)) {
        throw Error(ErrorCode::TestRegionOutOfBounds, "test region lies outside the image");
    }
    if (!control_region.inside(image)) {
        throw Error(ErrorCode::ControlRegionOutOfBounds, "control region lies outside the image");
    }
    SamplingSpec test_spec = spec;
    test_spec.rng_seed = derive_seed(spec.rng_seed, 0);
    SamplingSpec control_spec = spec;
    control_spec.rng_seed = derive_seed(spec.rng_seed, 1);
    return {day, nine_grid_color(crop(image, test_region), test_spec),
            nine_grid_color(crop(image, control_region), control_spec)};
}

Region SyntheticFrameSpec::test_region() const { return {0, 0, width / 2, height}; }

Region SyntheticFrameSpec::control_region() const {
    const int half = width - width / 2;
    return {width / 2 + half / 4, height / 4, half / 2, height / 2};
}

RgbMean synthetic_algae_color(double day, double total_days, double gain,
                              const SyntheticFrameSpec& spec) {
    if (!(total_days > 0.0) || !(day >= 0.0 && day <= total_days)) {
        throw Error(ErrorCode::InvalidArgument, "day must lie in [0, total_days]");
    }
    if (!(gain > 0.0 && gain <= 1.5)) {
        throw Error(ErrorCode::InvalidArgument, "lighting gain must lie in (0, 1.5]");
    }
    const double t = day / total_days;
    RgbMean c;
    for (std::size_t k = 0; k < 3; ++k) {
        c[k] = gain * (spec.fresh_color[k] + t * (spec.aged_color[k] - spec.fresh_color[k]));
    }
    return c;
}

ImageRaster render_frame(const RgbMean& algae, const RgbMean& control, double gain,
                         std::uint64_t seed, const SyntheticFrameSpec& spec) {
    if (spec.width < 3 || spec.height < 3) {
        throw Error(ErrorCode::ImageTooSmall, "synthetic frame must be at least 3x3");
    }
    if (!(gain > 0.0 && gain <= 1.5)) {
        throw Error(ErrorCode::InvalidArgument, "lighting gain must lie in (0, 1.5]");
    }
    const Region test = spec.test_region();
    const Region ctrl = spec.control_region();
    auto in = [](const Region& r, int x, int y) {
        return x >= r.x && y >= r.y && x < r.x + r.width && y < r.y + r.height;
    };
    Rng rng(seed);
    ImageRaster img(spec.width, spec.height);
    for (int y = 0; y < spec.height; ++y) {
        for (int x = 0; x < spec.width; ++x) {
            const RgbMean& base = in(test, x, y) ? algae
                                  : in(ctrl, x, y) ? control
                                                   : spec.background_color;
            Rgb8 px;
            for (std::size_t k = 0; k < 3; ++k) {
                const double noise = spec.noise_sigma > 0.0 ? spec.noise_sigma * rng.normal() : 0.0;
                px[k] = to_channel(gain * base[k] + noise);
            }
            img.set(x, y, px);
        }
    }
    return img;
}

ImageRaster generate_synthetic_frame(double day, double total_days, double gain,
                                     std::uint64_t seed, const SyntheticFrameSpec& spec) {
    return render_frame(synthetic_algae_color(day, total_days, 1.0, spec), spec.control_color,
                        gain, seed, spec);
}

}  // namespace pbrkit::vision

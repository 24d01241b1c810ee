#pragma once

#include <array>
#include <cstdint>

#include "pbrkit/image.hpp"
#include "pbrkit/random.hpp"

namespace pbrkit::vision {

/// Mean colour with real-valued channels in [0, 255].
using RgbMean = std::array<double, 3>;

struct Pixel {
    int x = 0;
    int y = 0;
    friend constexpr bool operator==(const Pixel&, const Pixel&) = default;
};

/// Index of the centre point in grid_points().
inline constexpr std::size_t kGridCenter = 4;

/// Centres of the 3x3 partition, row-major: x in {W/6, W/2, 5W/6} and
/// y in {H/6, H/2, 5H/6}, each floored. Throws ImageTooSmall below 3x3.
std::array<Pixel, 9> grid_points(int width, int height);

struct SamplingSpec {
    int cluster_size = 100;
    double cluster_variance = 80.0;  ///< per-axis variance in px^2
    double center_weight = 0.2;
    double outer_weight = 0.1;
    std::uint64_t rng_seed = 0;

    /// Throws InvalidSamplingSpec unless cluster_size >= 1, variance >= 0 and
    /// center_weight + 8 * outer_weight == 1 within 1e-12.
    void validate() const;
};

/// Mean colour of `cluster_size` pixels drawn from an isotropic Gaussian
/// around `center`. Draws landing outside the image are redrawn; positions
/// round to the nearest pixel.
RgbMean sample_cluster(const ImageRaster& image, Pixel center, const SamplingSpec& spec, Rng& rng);
RgbMean sample_cluster(const ImageRaster& image, Pixel center, const SamplingSpec& spec);

/// Weighted blend of the nine grid clusters, centre weighted by
/// center_weight. A single generator seeded from spec.rng_seed feeds the nine
/// clusters in grid order.
RgbMean nine_grid_color(const ImageRaster& image, const SamplingSpec& spec);

struct Region {
    int x = 0;
    int y = 0;
    int width = 0;
    int height = 0;

    bool inside(const ImageRaster& image) const {
        return x >= 0 && y >= 0 && width > 0 && height > 0 && x + width <= image.width() &&
               y + height <= image.height();
    }
};

ImageRaster crop(const ImageRaster& image, const Region& region);

struct ColorObservation {
    double day = 0.0;
    RgbMean test_rgb{};
    RgbMean control_rgb{};
};

/// Nine-grid colour of the algae region and of the control patch, each treated
/// as its own sub-image. The two regions draw from streams 0 and 1 derived
/// from spec.rng_seed. Throws TestRegionOutOfBounds / ControlRegionOutOfBounds.
ColorObservation extract_observation(const ImageRaster& image, const Region& test_region,
                                     const Region& control_region, double day,
                                     const SamplingSpec& spec = {});

/// Layout and colours of the synthetic aging frames.
struct SyntheticFrameSpec {
    int width = 320;
    int height = 240;
    double noise_sigma = 3.0;
    RgbMean fresh_color = {0.0, 255.0, 0.0};
    RgbMean aged_color = {200.0, 30.0, 30.0};
    RgbMean control_color = {0.0, 255.0, 0.0};
    RgbMean background_color = {128.0, 128.0, 128.0};

    /// Left half of the frame.
    Region test_region() const;
    /// Centred patch in the right half, half its width and height.
    Region control_region() const;
};

/// Noise-free algae colour: gain * lerp(fresh, aged, day / total_days).
RgbMean synthetic_algae_color(double day, double total_days, double gain,
                              const SyntheticFrameSpec& spec = {});

/// Frame with the algae region, control patch and background, all scaled by
/// `gain`, plus per-channel Gaussian pixel noise; rounded and clamped.
/// Requires 0 <= day <= total_days and gain in (0, 1.5].
ImageRaster generate_synthetic_frame(double day, double total_days, double gain,
                                     std::uint64_t seed, const SyntheticFrameSpec& spec = {});

/// Same layout with explicit algae / control colours (before gain).
ImageRaster render_frame(const RgbMean& algae, const RgbMean& control, double gain,
                         std::uint64_t seed, const SyntheticFrameSpec& spec = {});

}  // namespace pbrkit::vision

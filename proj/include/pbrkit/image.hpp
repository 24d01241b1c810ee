#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace pbrkit::vision {

using Rgb8 = std::array<std::uint8_t, 3>;

/// Row-major 8-bit RGB raster.
class ImageRaster {
public:
    ImageRaster() = default;
    ImageRaster(int width, int height, Rgb8 fill = {0, 0, 0});

    int width() const { return width_; }
    int height() const { return height_; }
    bool contains(int x, int y) const { return x >= 0 && y >= 0 && x < width_ && y < height_; }

    Rgb8 at(int x, int y) const {
        const auto i = index(x, y);
        return {data_[i], data_[i + 1], data_[i + 2]};
    }
    void set(int x, int y, Rgb8 c) {
        const auto i = index(x, y);
        data_[i] = c[0];
        data_[i + 1] = c[1];
        data_[i + 2] = c[2];
    }

    const std::vector<std::uint8_t>& bytes() const { return data_; }
    std::vector<std::uint8_t>& bytes() { return data_; }

private:
    std::size_t index(int x, int y) const {
        return (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
                static_cast<std::size_t>(x)) * 3;
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> data_;
};

/// Any PNG libpng can read, converted to 8-bit RGB. Throws IoError.
ImageRaster read_png(const std::filesystem::path& path);
std::string encode_png(const ImageRaster& image);
void write_png(const ImageRaster& image, const std::filesystem::path& path);

}  // namespace pbrkit::vision

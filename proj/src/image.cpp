#include "pbrkit/image.hpp"

#include <png.h>

#include <cstring>

#include "pbrkit/error.hpp"
#include "pbrkit/fileutil.hpp"

namespace pbrkit::vision {

ImageRaster::ImageRaster(int width, int height, Rgb8 fill) : width_(width), height_(height) {
    if (width < 0 || height < 0) throw Error(ErrorCode::InvalidArgument, "negative image size");
    data_.resize(static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * 3);
    for (std::size_t i = 0; i < data_.size(); i += 3) {
        data_[i] = fill[0];
        data_[i + 1] = fill[1];
        data_[i + 2] = fill[2];
    }
}

ImageRaster read_png(const std::filesystem::path& path) {
    const std::string bytes = read_file(path);
    png_image img;
    std::memset(&img, 0, sizeof img);
    img.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_memory(&img, bytes.data(), bytes.size())) {
        throw Error(ErrorCode::IoError, path.string() + ": " + img.message);
    }
    img.format = PNG_FORMAT_RGB;
    ImageRaster out(static_cast<int>(img.width), static_cast<int>(img.height));
    if (!png_image_finish_read(&img, nullptr, out.bytes().data(), 0, nullptr)) {
        png_image_free(&img);
        throw Error(ErrorCode::IoError, path.string() + ": " + img.message);
    }
    return out;
}

std::string encode_png(const ImageRaster& image) {
    png_image img;
    std::memset(&img, 0, sizeof img);
    img.version = PNG_IMAGE_VERSION;
    img.width = static_cast<png_uint_32>(image.width());
    img.height = static_cast<png_uint_32>(image.height());
    img.format = PNG_FORMAT_RGB;

    png_alloc_size_t size = 0;
    if (!png_image_write_to_memory(&img, nullptr, &size, 0, image.bytes().data(), 0, nullptr)) {
        throw Error(ErrorCode::IoError, std::string("png encode: ") + img.message);
    }
    std::string out(size, '\0');
    if (!png_image_write_to_memory(&img, out.data(), &size, 0, image.bytes().data(), 0, nullptr)) {
        throw Error(ErrorCode::IoError, std::string("png encode: ") + img.message);
    }
    out.resize(size);
    return out;
}

void write_png(const ImageRaster& image, const std::filesystem::path& path) {
    write_file_atomic(path, encode_png(image));
}

}  // namespace pbrkit::vision

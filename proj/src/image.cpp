#include "colorvibe/image.hpp"

#include <png.h>

#include <stdexcept>

#include "colorvibe/util.hpp"

namespace colorvibe {

Image Image::solid(int width, int height, const SrgbColor& fill) {
    if (width <= 0 || height <= 0) {
        throw std::invalid_argument("image dimensions must be positive");
    }
    validate(fill);
    Image img;
    img.width = width;
    img.height = height;
    img.pixels.resize(3 * static_cast<std::size_t>(width) * height);
    for (std::size_t i = 0; i < img.pixels.size(); i += 3) {
        img.pixels[i] = static_cast<std::uint8_t>(fill.r);
        img.pixels[i + 1] = static_cast<std::uint8_t>(fill.g);
        img.pixels[i + 2] = static_cast<std::uint8_t>(fill.b);
    }
    return img;
}

Image read_png(const std::string& path) {
    png_image png{};
    png.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&png, path.c_str())) {
        throw std::runtime_error("failed to read PNG " + path + ": " +
                                 png.message);
    }
    png.format = PNG_FORMAT_RGB;
    Image img;
    img.width = static_cast<int>(png.width);
    img.height = static_cast<int>(png.height);
    img.pixels.resize(PNG_IMAGE_SIZE(png));
    if (!png_image_finish_read(&png, nullptr, img.pixels.data(), 0, nullptr)) {
        png_image_free(&png);
        throw std::runtime_error("failed to decode PNG " + path + ": " +
                                 png.message);
    }
    return img;
}

void write_png(const std::string& path, const Image& img) {
    if (img.width <= 0 || img.height <= 0 ||
        img.pixels.size() !=
            3 * static_cast<std::size_t>(img.width) * img.height) {
        throw std::invalid_argument("write_png: malformed image");
    }
    png_image png{};
    png.version = PNG_IMAGE_VERSION;
    png.width = static_cast<png_uint_32>(img.width);
    png.height = static_cast<png_uint_32>(img.height);
    png.format = PNG_FORMAT_RGB;

    // Encode to memory first so the file write can go through the atomic
    // temp-file + rename path.
    png_alloc_size_t size = 0;
    if (!png_image_write_to_memory(&png, nullptr, &size, 0, img.pixels.data(),
                                   0, nullptr)) {
        throw std::runtime_error(std::string("PNG encode failed: ") +
                                 png.message);
    }
    std::string buf(size, '\0');
    if (!png_image_write_to_memory(&png, buf.data(), &size, 0,
                                   img.pixels.data(), 0, nullptr)) {
        throw std::runtime_error(std::string("PNG encode failed: ") +
                                 png.message);
    }
    buf.resize(size);
    write_file_atomic(path, buf);
}

}  // namespace colorvibe

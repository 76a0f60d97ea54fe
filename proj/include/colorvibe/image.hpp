#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "colorvibe/color.hpp"

namespace colorvibe {

// 8-bit RGB raster, interleaved, row-major, no alpha.
struct Image {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;  // 3 * width * height bytes

    static Image solid(int width, int height, const SrgbColor& fill);

    std::uint8_t* at(int x, int y) {
        return pixels.data() + 3 * (static_cast<std::size_t>(y) * width + x);
    }
    const std::uint8_t* at(int x, int y) const {
        return pixels.data() + 3 * (static_cast<std::size_t>(y) * width + x);
    }
    void set(int x, int y, const SrgbColor& c) {
        auto* p = at(x, y);
        p[0] = static_cast<std::uint8_t>(c.r);
        p[1] = static_cast<std::uint8_t>(c.g);
        p[2] = static_cast<std::uint8_t>(c.b);
    }
    SrgbColor get(int x, int y) const {
        const auto* p = at(x, y);
        return SrgbColor{p[0], p[1], p[2]};
    }

    bool operator==(const Image&) const = default;
};

Image read_png(const std::string& path);

// Writes atomically: the file appears complete or not at all.
void write_png(const std::string& path, const Image& img);

}  // namespace colorvibe

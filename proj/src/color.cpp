#include "colorvibe/color.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "convert_kernel.hpp"

namespace colorvibe {

using detail::kRgbToXyz;

const WhitePoint& d65_white() {
    // Row sums of the forward matrix: the tristimulus of RGB (1, 1, 1).
    static const WhitePoint wp{
        (kRgbToXyz.m[0][0] + kRgbToXyz.m[0][1]) + kRgbToXyz.m[0][2],
        (kRgbToXyz.m[1][0] + kRgbToXyz.m[1][1]) + kRgbToXyz.m[1][2],
        (kRgbToXyz.m[2][0] + kRgbToXyz.m[2][1]) + kRgbToXyz.m[2][2]};
    return wp;
}

const detail::QuantTable& detail::quant_table() {
    static const QuantTable table;
    return table;
}

bool is_valid(const SrgbColor& c) {
    return c.r >= 0 && c.r <= 255 && c.g >= 0 && c.g <= 255 && c.b >= 0 &&
           c.b <= 255;
}

void validate(const SrgbColor& c) {
    if (!is_valid(c)) {
        throw std::invalid_argument("sRGB channel code outside [0, 255]: (" +
                                    std::to_string(c.r) + ", " +
                                    std::to_string(c.g) + ", " +
                                    std::to_string(c.b) + ")");
    }
}

void validate(const LabColor& lab) {
    if (!(std::isfinite(lab.l) && std::isfinite(lab.a) &&
          std::isfinite(lab.b)) ||
        lab.l < 0.0 || lab.l > 100.0) {
        throw std::invalid_argument("Lab color with L* outside [0, 100]");
    }
}

double srgb_to_linear(int code) {
    if (code < 0 || code > 255) {
        throw std::invalid_argument("channel code outside [0, 255]: " +
                                    std::to_string(code));
    }
    return detail::srgb_eotf(code / 255.0);
}

LabColor srgb_to_lab(const SrgbColor& c, const WhitePoint& wp) {
    validate(c);
    const double rl = detail::srgb_eotf(c.r / 255.0);
    const double gl = detail::srgb_eotf(c.g / 255.0);
    const double bl = detail::srgb_eotf(c.b / 255.0);
    const auto& m = kRgbToXyz.m;
    const double x = (m[0][0] * rl + m[0][1] * gl) + m[0][2] * bl;
    const double y = (m[1][0] * rl + m[1][1] * gl) + m[1][2] * bl;
    const double z = (m[2][0] * rl + m[2][1] * gl) + m[2][2] * bl;
    const double fx = detail::lab_f(x / wp.x);
    const double fy = detail::lab_f(y / wp.y);
    const double fz = detail::lab_f(z / wp.z);
    return LabColor{116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

std::optional<SrgbColor> lab_to_srgb(const LabColor& lab,
                                     const WhitePoint& wp) {
    validate(lab);
    const detail::LinearRgb lin = detail::lab_to_linear(lab, wp);
    if (!detail::linear_in_gamut(lin)) {
        return std::nullopt;
    }
    return SrgbColor{detail::quantize_signal(lin.r),
                     detail::quantize_signal(lin.g),
                     detail::quantize_signal(lin.b)};
}

SrgbColor lab_to_srgb_clipped(const LabColor& lab, const WhitePoint& wp) {
    validate(lab);
    const detail::LinearRgb lin = detail::lab_to_linear(lab, wp);
    // quantize_signal clamps to [0, 1] before the OETF.
    return SrgbColor{detail::quantize_signal(lin.r),
                     detail::quantize_signal(lin.g),
                     detail::quantize_signal(lin.b)};
}

bool in_gamut(const LabColor& lab, const WhitePoint& wp) {
    validate(lab);
    return detail::linear_in_gamut(detail::lab_to_linear(lab, wp));
}

}  // namespace colorvibe

#pragma once

#include <optional>

namespace colorvibe {

/// Display color as 8-bit sRGB channel codes, each in [0, 255].
struct SrgbColor {
    int r = 0;
    int g = 0;
    int b = 0;

    bool operator==(const SrgbColor&) const = default;
};

/// CIELAB coordinate. l is L* in [0, 100]; a and b are the chromaticity
/// axes (practical sRGB range is roughly [-128, 128]).
struct LabColor {
    double l = 0.0;
    double a = 0.0;
    double b = 0.0;
};

/// Reference white tristimulus values, normalized so y == 1.
struct WhitePoint {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

/// D65 reference white of the pinned sRGB matrix (its row sums), so that
/// neutral RGB inputs map to a* == b* == 0 up to rounding. See
/// docs/colorspace.md for the exact constants.
const WhitePoint& d65_white();

bool is_valid(const SrgbColor& c);

/// Throws std::invalid_argument when a channel is outside [0, 255].
void validate(const SrgbColor& c);

/// Throws std::invalid_argument when L* is outside [0, 100] or a
/// component is not finite.
void validate(const LabColor& lab);

/// sRGB electro-optical transfer function for one 8-bit channel code.
/// Monotone, with srgb_to_linear(0) == 0 and srgb_to_linear(255) == 1.
/// Throws std::invalid_argument for codes outside [0, 255].
double srgb_to_linear(int code);

LabColor srgb_to_lab(const SrgbColor& c, const WhitePoint& wp = d65_white());

/// Inverse conversion. Returns std::nullopt when any pre-quantization
/// linear channel falls outside [0, 1]: out-of-gamut candidates are
/// discarded, never clipped. Channel codes are rounded half away from
/// zero.
std::optional<SrgbColor> lab_to_srgb(const LabColor& lab,
                                     const WhitePoint& wp = d65_white());

/// Displayable conversion: linear channels are clamped to [0, 1] before
/// quantization, so every Lab input maps to what an 8-bit panel actually
/// shows. The pair search classifies on these clipped codes.
SrgbColor lab_to_srgb_clipped(const LabColor& lab,
                              const WhitePoint& wp = d65_white());

/// True iff lab_to_srgb succeeds on the same input.
bool in_gamut(const LabColor& lab, const WhitePoint& wp = d65_white());

}  // namespace colorvibe

#pragma once

// Internal conversion kernel shared by the scalar color API and the batched
// search. Everything here is inline so that the serial and batch paths run
// the exact same sequence of floating-point operations (the library is built
// with -ffp-contract=off for the same reason); result parity between the two
// search implementations depends on it.

#include <array>
#include <cmath>

#include "colorvibe/color.hpp"

namespace colorvibe::detail {

struct Mat3 {
    double m[3][3];
};

// IEC 61966-2-1 sRGB -> XYZ (D65, 2 degree observer), 4-digit form.
inline constexpr Mat3 kRgbToXyz{{
    {0.4124, 0.3576, 0.1805},
    {0.2126, 0.7152, 0.0722},
    {0.0193, 0.1192, 0.9505},
}};

constexpr Mat3 inverse(const Mat3& a) {
    const auto& m = a.m;
    const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                       m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                       m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    Mat3 r{};
    r.m[0][0] = (m[1][1] * m[2][2] - m[1][2] * m[2][1]) / det;
    r.m[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) / det;
    r.m[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) / det;
    r.m[1][0] = (m[1][2] * m[2][0] - m[1][0] * m[2][2]) / det;
    r.m[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) / det;
    r.m[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) / det;
    r.m[2][0] = (m[1][0] * m[2][1] - m[1][1] * m[2][0]) / det;
    r.m[2][1] = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) / det;
    r.m[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) / det;
    return r;
}

// Analytic inverse of the forward matrix, so a round trip composes to the
// identity at machine precision.
inline constexpr Mat3 kXyzToRgb = inverse(kRgbToXyz);

// CIE L*a*b* constants: epsilon = (6/29)^3, kappa = (29/3)^3.
inline constexpr double kLabEpsilon = 216.0 / 24389.0;
inline constexpr double kLabKappa = 24389.0 / 27.0;

// Reciprocals folded at compile time. The hot path multiplies by these
// instead of dividing; divisions dominate the vectorized inverse transform
// otherwise. Each is the nearest double to the true reciprocal, so results
// can differ from a literal division by at most one ulp — far below the
// gamut epsilon and quantization margins.
inline constexpr double kInvKappa = 27.0 / 24389.0;
inline constexpr double kInv500 = 1.0 / 500.0;
inline constexpr double kInv200 = 1.0 / 200.0;

// Tolerance for the pre-quantization gamut test; absorbs round-trip FP dust
// at the 0 and 1 channel boundaries. Candidates beyond it are discarded.
inline constexpr double kGamutEps = 1e-12;

inline double lab_f(double t) {
    return t > kLabEpsilon ? std::cbrt(t) : (kLabKappa * t + 16.0) / 116.0;
}

inline double lab_f_inv(double u) {
    const double u3 = (u * u) * u;
    return u3 > kLabEpsilon ? u3 : (116.0 * u - 16.0) * kInvKappa;
}

// sRGB EOTF on the normalized [0, 1] signal.
inline double srgb_eotf(double u) {
    return u <= 0.04045 ? u / 12.92 : std::pow((u + 0.055) / 1.055, 2.4);
}

// sRGB OETF: linear intensity -> normalized [0, 1] signal.
inline double srgb_oetf(double x) {
    return x <= 0.0031308 ? 12.92 * x : 1.055 * std::pow(x, 1.0 / 2.4) - 0.055;
}

struct LinearRgb {
    double r, g, b;
};

inline bool linear_in_gamut(const LinearRgb& c) {
    return c.r >= -kGamutEps && c.r <= 1.0 + kGamutEps && c.g >= -kGamutEps &&
           c.g <= 1.0 + kGamutEps && c.b >= -kGamutEps && c.b <= 1.0 + kGamutEps;
}

inline LinearRgb lab_to_linear(const LabColor& lab, const WhitePoint& wp) {
    const double fy = (lab.l + 16.0) / 116.0;
    const double fx = fy + lab.a * kInv500;
    const double fz = fy - lab.b * kInv200;
    const double x = wp.x * lab_f_inv(fx);
    const double y = wp.y * lab_f_inv(fy);
    const double z = wp.z * lab_f_inv(fz);
    const auto& m = kXyzToRgb.m;
    return LinearRgb{(m[0][0] * x + m[0][1] * y) + m[0][2] * z,
                     (m[1][0] * x + m[1][1] * y) + m[1][2] * z,
                     (m[2][0] * x + m[2][1] * y) + m[2][2] * z};
}

// Pre-quantization channel value in code units (255 * OETF of the clamped
// linear intensity); the continuous delta mode classifies on this.
inline double signal_value(double linear) {
    const double x = linear < 0.0 ? 0.0 : (linear > 1.0 ? 1.0 : linear);
    return 255.0 * srgb_oetf(x);
}

// Round half away from zero; signal values are always >= 0 here.
inline int quantize_signal(double linear) {
    return static_cast<int>(std::floor(signal_value(linear) + 0.5));
}

// Quantization threshold table: thresholds[c] is the smallest linear (double)
// value that quantizes to a code >= c. Lets the batch path map linear values
// to codes with table lookups instead of pow(), bit-identically to
// quantize_signal by construction.
struct QuantTable {
    std::array<double, 256> thresholds;  // thresholds[0] == 0.0 sentinel
    std::array<unsigned char, 4097> guess;  // bucket floor codes over [0, 1]

    QuantTable() {
        thresholds[0] = 0.0;
        for (int code = 1; code <= 255; ++code) {
            double lo = thresholds[code - 1];
            double hi = 1.0;
            while (std::nextafter(lo, 1.0) < hi) {
                const double mid = 0.5 * (lo + hi);
                if (quantize_signal(mid) >= code) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            thresholds[code] = hi;
        }
        for (int i = 0; i <= 4096; ++i) {
            guess[i] =
                static_cast<unsigned char>(quantize_signal(i / 4096.0));
        }
    }

    int code(double linear) const {
        if (linear <= 0.0) return 0;
        if (linear >= 1.0) return 255;
        int c = guess[static_cast<int>(linear * 4096.0)];
        while (c < 255 && linear >= thresholds[c + 1]) ++c;
        return c;
    }
};

const QuantTable& quant_table();

}  // namespace colorvibe::detail

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "colorvibe/color.hpp"

namespace colorvibe {

/// 3-bit RGB signal. "000" is not a signal and is rejected by parse().
struct BitPattern {
    bool r = false;
    bool g = false;
    bool b = false;

    static BitPattern parse(std::string_view s);
    std::string str() const;
    bool any() const { return r || g || b; }

    bool operator==(const BitPattern&) const = default;
};

/// Classification thresholds: a channel reads 1 when its delta exceeds
/// v_th, 0 when it is within v_th * r_novib; the band in between satisfies
/// neither.
struct Thresholds {
    double v_th = 0.0;
    double r_novib = 0.0;

    double low_band() const { return v_th * r_novib; }
    void validate() const;  // throws std::invalid_argument
};

/// Displacement grid: radii are Lab chroma magnitudes (>= 0, ascending),
/// angles are radians in [0, 2pi), ascending.
struct VibrationGrid {
    std::vector<double> radii;
    std::vector<double> angles;

    /// Inclusive ranges; angles given in degrees (converted to radians).
    static VibrationGrid uniform(double radius_min, double radius_max,
                                 double radius_step, double angle_min_deg,
                                 double angle_max_deg, double angle_step_deg);

    /// radius 1..100 step 1, angle 0..359 step 1 degree.
    static VibrationGrid standard();

    void validate() const;
    std::size_t candidate_count() const { return radii.size() * angles.size(); }
};

/// Per-channel deviations of a pair from its target. Under the default
/// basis each entry is max(|plus - target|, |minus - target|): the largest
/// excursion a sensor sees against the fused color over the two frames.
struct ChannelDeltas {
    double dr = 0.0;
    double dg = 0.0;
    double db = 0.0;

    bool operator==(const ChannelDeltas&) const = default;
};

/// A point-symmetric displaced pair whose displayable (gamut-clipped,
/// quantized) endpoints pass classification, with the generating grid
/// point. The Lab endpoints are reconstructible as
/// displaced_pair(srgb_to_lab(target), radius, angle).
struct ColorPair {
    SrgbColor target{};
    SrgbColor plus{};
    SrgbColor minus{};
    double radius = 0.0;
    double angle = 0.0;
    ChannelDeltas deltas{};

    bool operator==(const ColorPair&) const = default;
};

enum class DeltaMode {
    Quantized,   // deltas of 8-bit channel codes (what the display shows)
    Continuous,  // pre-quantization deltas, for sensitivity analysis
};

enum class DeltaBasis {
    TargetSwing,  // max per-frame deviation from the target (default)
    FrameDiff,    // |plus - minus| between the two frames
};

struct SearchOptions {
    DeltaMode delta_mode = DeltaMode::Quantized;
    DeltaBasis delta_basis = DeltaBasis::TargetSwing;
    int workers = 0;  // batch_search only; 0 = hardware concurrency
    WhitePoint white_point = d65_white();
};

/// plus = (L, a + r sin j, b + r cos j), minus mirrors the offsets.
std::pair<LabColor, LabColor> displaced_pair(const LabColor& target,
                                             double radius, double angle);

/// TargetSwing deltas: per channel, max(|plus - target|, |minus - target|).
ChannelDeltas channel_deltas(const SrgbColor& target, const SrgbColor& plus,
                             const SrgbColor& minus);

/// FrameDiff deltas: per channel, |plus - minus|.
ChannelDeltas frame_deltas(const SrgbColor& plus, const SrgbColor& minus);

/// True iff every 1-bit channel delta is strictly above v_th and every
/// 0-bit channel delta is at most v_th * r_novib.
bool classify_pair(const ChannelDeltas& deltas, const BitPattern& pattern,
                   const Thresholds& th);

/// Baseline: one candidate at a time through the scalar conversion API.
/// Results are in canonical order (radius ascending, then angle ascending).
std::vector<ColorPair> serial_search(const SrgbColor& target,
                                     const VibrationGrid& grid,
                                     const BitPattern& pattern,
                                     const Thresholds& th,
                                     const SearchOptions& opts = {});

/// Batched evaluation of the whole grid (hoisted fixed-L* terms, per-angle
/// trig, table-driven quantization) with a filtering pass. Output is
/// list-identical to serial_search on the same inputs, independent of the
/// worker count.
std::vector<ColorPair> batch_search(const SrgbColor& target,
                                    const VibrationGrid& grid,
                                    const BitPattern& pattern,
                                    const Thresholds& th,
                                    const SearchOptions& opts = {});

/// Margin of the implied high/low classification of a pair's deltas:
/// min over channels of (delta - v_th) for deltas above v_th and
/// (v_th * r_novib - delta) otherwise.
double classification_margin(const ColorPair& pair, const Thresholds& th);

/// Pair with the maximum classification margin; ties broken by smaller
/// radius, then smaller angle. Throws std::invalid_argument when empty.
const ColorPair& select_best(const std::vector<ColorPair>& pairs,
                             const Thresholds& th);

}  // namespace colorvibe

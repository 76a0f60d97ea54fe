#pragma once

#include <array>
#include <string>
#include <vector>

#include "colorvibe/image.hpp"
#include "colorvibe/search.hpp"

namespace colorvibe {

struct DisplayParams {
    double refresh_hz = 60.0;
    double ccff_hz = 25.0;  // critical color fusion frequency

    // Frames alternate every refresh period, so the vibration runs at
    // refresh_hz / 2; that must exceed the fusion frequency or the two
    // colors would be seen separately.
    void validate() const;
};

struct BlockSpec {
    int x = 0;
    int y = 0;
    std::string color_name;
    SrgbColor color{};
    BitPattern pattern{};
};

struct BlockLayout {
    int block_width = 0;
    int block_height = 0;
    std::vector<BlockSpec> blocks;

    // Bounds and pairwise-overlap checks against the carrier image size.
    void validate(int image_width, int image_height) const;
};

struct FramePair {
    Image frame_a;
    Image frame_b;
    BlockLayout layout;
};

// Single full-image block showing the best pair for (color, pattern).
FramePair make_testcard(const SrgbColor& color, const BitPattern& pattern,
                        const Thresholds& th, const VibrationGrid& grid,
                        const DisplayParams& disp, int width, int height,
                        const SearchOptions& opts = {});

// Paints each block's selected pair over the base image: plus color into
// frame_a, minus into frame_b; pixels outside blocks are copied unchanged.
FramePair embed_blocks(const Image& base, const BlockLayout& layout,
                       const Thresholds& th, const VibrationGrid& grid,
                       const DisplayParams& disp,
                       const SearchOptions& opts = {});

enum class BlockStatus { Pattern, NoSignal, Ambiguous };

struct BlockResult {
    BlockStatus status = BlockStatus::NoSignal;
    BitPattern pattern{};                 // valid when status == Pattern
    std::array<double, 3> mean_deltas{};  // per-channel decoded deviations
};

// Per block and channel, takes each frame's mean and measures the worst
// deviation from the block's nominal channel value; above v_th reads as a
// 1 bit, within v_th * r_novib as a 0, anything between is Ambiguous.
// NoSignal when every channel is quiet.
std::vector<BlockResult> decode_blocks(const FramePair& fp,
                                       const Thresholds& th);

// Sidecar carrying everything a decoder needs besides the two frames.
std::string layout_to_json(const BlockLayout& layout, const Thresholds& th);
struct Sidecar {
    BlockLayout layout;
    Thresholds thresholds;
};
Sidecar layout_from_json(const std::string& text);

std::string decode_report_json(const BlockLayout& layout, const Thresholds& th,
                               const std::vector<BlockResult>& results);

}  // namespace colorvibe

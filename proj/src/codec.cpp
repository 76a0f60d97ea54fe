#include "colorvibe/codec.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "colorvibe/util.hpp"
#include "json.hpp"

namespace colorvibe {

using ordered_json = nlohmann::ordered_json;

void DisplayParams::validate() const {
    if (!(std::isfinite(refresh_hz) && refresh_hz > 0.0)) {
        throw std::invalid_argument("display: refresh_hz must be positive");
    }
    if (!(refresh_hz / 2.0 > ccff_hz)) {
        throw std::invalid_argument(
            "display: refresh_hz / 2 must exceed the color fusion frequency (" +
            fmt_g6(ccff_hz) + " Hz); got " + fmt_g6(refresh_hz) + " Hz");
    }
}

void BlockLayout::validate(int image_width, int image_height) const {
    if (block_width <= 0 || block_height <= 0) {
        throw std::invalid_argument("layout: block size must be positive");
    }
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        const auto& b = blocks[i];
        colorvibe::validate(b.color);
        if (b.x < 0 || b.y < 0 || b.x + block_width > image_width ||
            b.y + block_height > image_height) {
            throw std::invalid_argument("layout: block " + std::to_string(i) +
                                        " (" + b.color_name +
                                        ") exceeds image bounds");
        }
        for (std::size_t j = i + 1; j < blocks.size(); ++j) {
            const auto& c = blocks[j];
            const bool overlap = b.x < c.x + block_width &&
                                 c.x < b.x + block_width &&
                                 b.y < c.y + block_height &&
                                 c.y < b.y + block_height;
            if (overlap) {
                throw std::invalid_argument(
                    "layout: blocks " + std::to_string(i) + " and " +
                    std::to_string(j) + " overlap");
            }
        }
    }
}

namespace {

void paint(Image& img, int x0, int y0, int w, int h, const SrgbColor& c) {
    for (int y = y0; y < y0 + h; ++y) {
        for (int x = x0; x < x0 + w; ++x) {
            img.set(x, y, c);
        }
    }
}

}  // namespace

FramePair embed_blocks(const Image& base, const BlockLayout& layout,
                       const Thresholds& th, const VibrationGrid& grid,
                       const DisplayParams& disp, const SearchOptions& opts) {
    disp.validate();
    th.validate();
    grid.validate();
    layout.validate(base.width, base.height);

    FramePair fp;
    fp.frame_a = base;
    fp.frame_b = base;
    fp.layout = layout;

    for (std::size_t i = 0; i < layout.blocks.size(); ++i) {
        const auto& block = layout.blocks[i];
        const auto pairs =
            batch_search(block.color, grid, block.pattern, th, opts);
        if (pairs.empty()) {
            throw std::runtime_error(
                "embed: block " + std::to_string(i) + " (" + block.color_name +
                ", pattern " + block.pattern.str() +
                "): no pair satisfies the thresholds on this grid");
        }
        const ColorPair best = select_best(pairs, th);
        paint(fp.frame_a, block.x, block.y, layout.block_width,
              layout.block_height, best.plus);
        paint(fp.frame_b, block.x, block.y, layout.block_width,
              layout.block_height, best.minus);
    }
    return fp;
}

FramePair make_testcard(const SrgbColor& color, const BitPattern& pattern,
                        const Thresholds& th, const VibrationGrid& grid,
                        const DisplayParams& disp, int width, int height,
                        const SearchOptions& opts) {
    BlockLayout layout;
    layout.block_width = width;
    layout.block_height = height;
    layout.blocks.push_back(BlockSpec{0, 0, "target", color, pattern});
    return embed_blocks(Image::solid(width, height, color), layout, th, grid,
                        disp, opts);
}

std::vector<BlockResult> decode_blocks(const FramePair& fp,
                                       const Thresholds& th) {
    th.validate();
    if (fp.frame_a.width != fp.frame_b.width ||
        fp.frame_a.height != fp.frame_b.height) {
        throw std::invalid_argument("decode: frame dimensions differ");
    }
    fp.layout.validate(fp.frame_a.width, fp.frame_a.height);

    const double low = th.low_band();
    std::vector<BlockResult> results;
    results.reserve(fp.layout.blocks.size());
    for (const auto& block : fp.layout.blocks) {
        double sum_a[3] = {0.0, 0.0, 0.0};
        double sum_b[3] = {0.0, 0.0, 0.0};
        for (int y = block.y; y < block.y + fp.layout.block_height; ++y) {
            for (int x = block.x; x < block.x + fp.layout.block_width; ++x) {
                const auto* pa = fp.frame_a.at(x, y);
                const auto* pb = fp.frame_b.at(x, y);
                for (int c = 0; c < 3; ++c) {
                    sum_a[c] += pa[c];
                    sum_b[c] += pb[c];
                }
            }
        }
        const double n = static_cast<double>(fp.layout.block_width) *
                         fp.layout.block_height;
        const int tgt[3] = {block.color.r, block.color.g, block.color.b};
        BlockResult res;
        bool ambiguous = false;
        bool any_high = false;
        bool bits[3] = {false, false, false};
        for (int c = 0; c < 3; ++c) {
            // Same deviation the search classifies on: worst per-frame mean
            // departure from the block's nominal channel value.
            const double dev = std::max(std::abs(sum_a[c] / n - tgt[c]),
                                        std::abs(sum_b[c] / n - tgt[c]));
            res.mean_deltas[c] = dev;
            if (dev > th.v_th) {
                bits[c] = true;
                any_high = true;
            } else if (!(dev <= low)) {
                ambiguous = true;  // inside (v_th * r_novib, v_th]
            }
        }
        if (ambiguous) {
            res.status = BlockStatus::Ambiguous;
        } else if (!any_high) {
            res.status = BlockStatus::NoSignal;
        } else {
            res.status = BlockStatus::Pattern;
            res.pattern = BitPattern{bits[0], bits[1], bits[2]};
        }
        results.push_back(res);
    }
    return results;
}

std::string layout_to_json(const BlockLayout& layout, const Thresholds& th) {
    ordered_json j;
    j["version"] = 1;
    j["block_width"] = layout.block_width;
    j["block_height"] = layout.block_height;
    j["v_th"] = th.v_th;
    j["r_novib"] = th.r_novib;
    auto blocks = ordered_json::array();
    for (const auto& b : layout.blocks) {
        blocks.push_back({{"x", b.x},
                          {"y", b.y},
                          {"color_name", b.color_name},
                          {"rgb", {b.color.r, b.color.g, b.color.b}},
                          {"pattern", b.pattern.str()}});
    }
    j["blocks"] = blocks;
    return j.dump(2) + "\n";
}

Sidecar layout_from_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("sidecar: invalid JSON: ") +
                                    e.what());
    }
    Sidecar sc;
    try {
        if (j.value("version", 0) != 1) {
            throw std::invalid_argument("sidecar: missing or unsupported version");
        }
        sc.layout.block_width = j.at("block_width").get<int>();
        sc.layout.block_height = j.at("block_height").get<int>();
        sc.thresholds.v_th = j.at("v_th").get<double>();
        sc.thresholds.r_novib = j.at("r_novib").get<double>();
        for (const auto& b : j.at("blocks")) {
            const auto rgb = b.at("rgb").get<std::vector<int>>();
            if (rgb.size() != 3) {
                throw std::invalid_argument("sidecar: rgb must have 3 entries");
            }
            sc.layout.blocks.push_back(BlockSpec{
                b.at("x").get<int>(), b.at("y").get<int>(),
                b.value("color_name", std::string{}),
                SrgbColor{rgb[0], rgb[1], rgb[2]},
                BitPattern::parse(b.at("pattern").get<std::string>())});
        }
    } catch (const ordered_json::exception& e) {
        throw std::invalid_argument(std::string("sidecar: ") + e.what());
    }
    sc.thresholds.validate();
    return sc;
}

std::string decode_report_json(const BlockLayout& layout, const Thresholds& th,
                               const std::vector<BlockResult>& results) {
    if (layout.blocks.size() != results.size()) {
        throw std::invalid_argument("decode report: result count mismatch");
    }
    ordered_json j;
    j["version"] = 1;
    j["v_th"] = th.v_th;
    j["r_novib"] = th.r_novib;
    auto blocks = ordered_json::array();
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& b = layout.blocks[i];
        const auto& r = results[i];
        ordered_json e;
        e["index"] = i;
        e["x"] = b.x;
        e["y"] = b.y;
        e["color_name"] = b.color_name;
        e["embedded_pattern"] = b.pattern.str();
        switch (r.status) {
            case BlockStatus::Pattern:
                e["result"] = "pattern";
                e["pattern"] = r.pattern.str();
                break;
            case BlockStatus::NoSignal:
                e["result"] = "no_signal";
                break;
            case BlockStatus::Ambiguous:
                e["result"] = "ambiguous";
                break;
        }
        e["mean_deltas"] = {r.mean_deltas[0], r.mean_deltas[1],
                            r.mean_deltas[2]};
        blocks.push_back(e);
    }
    j["blocks"] = blocks;
    return j.dump(2) + "\n";
}

}  // namespace colorvibe

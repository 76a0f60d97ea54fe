#include "colorvibe/search.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "convert_kernel.hpp"

namespace colorvibe {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

int default_workers() {
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

void validate_inputs(const SrgbColor& target, const VibrationGrid& grid,
                     const BitPattern& pattern, const Thresholds& th) {
    validate(target);
    grid.validate();
    th.validate();
    if (!pattern.any()) {
        throw std::invalid_argument("bit pattern has no set bits");
    }
}

}  // namespace

BitPattern BitPattern::parse(std::string_view s) {
    if (s.size() != 3 || s.find_first_not_of("01") != std::string_view::npos) {
        throw std::invalid_argument("bit pattern must be three binary digits");
    }
    BitPattern p{s[0] == '1', s[1] == '1', s[2] == '1'};
    if (!p.any()) {
        throw std::invalid_argument("bit pattern \"000\" carries no signal");
    }
    return p;
}

std::string BitPattern::str() const {
    return {r ? '1' : '0', g ? '1' : '0', b ? '1' : '0'};
}

void Thresholds::validate() const {
    if (!(std::isfinite(v_th) && v_th > 0.0)) {
        throw std::invalid_argument("v_th must be positive");
    }
    if (!(std::isfinite(r_novib) && r_novib > 0.0 && r_novib <= 1.0)) {
        throw std::invalid_argument("r_novib must be in (0, 1]");
    }
}

VibrationGrid VibrationGrid::uniform(double radius_min, double radius_max,
                                     double radius_step, double angle_min_deg,
                                     double angle_max_deg,
                                     double angle_step_deg) {
    if (!(radius_step > 0.0) || !(angle_step_deg > 0.0)) {
        throw std::invalid_argument("grid steps must be positive");
    }
    if (radius_min < 0.0 || radius_max < radius_min) {
        throw std::invalid_argument("invalid radius range");
    }
    if (angle_min_deg < 0.0 || angle_max_deg < angle_min_deg ||
        angle_max_deg >= 360.0) {
        throw std::invalid_argument("angle range must lie within [0, 360)");
    }
    VibrationGrid grid;
    for (int k = 0;; ++k) {
        const double v = radius_min + k * radius_step;
        if (v > radius_max + 1e-9) break;
        grid.radii.push_back(v);
    }
    constexpr double kDegToRad = std::numbers::pi / 180.0;
    for (int k = 0;; ++k) {
        const double deg = angle_min_deg + k * angle_step_deg;
        if (deg > angle_max_deg + 1e-9) break;
        grid.angles.push_back(deg * kDegToRad);
    }
    grid.validate();
    return grid;
}

VibrationGrid VibrationGrid::standard() {
    return uniform(1.0, 100.0, 1.0, 0.0, 359.0, 1.0);
}

void VibrationGrid::validate() const {
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (!(std::isfinite(radii[i]) && radii[i] >= 0.0)) {
            throw std::invalid_argument("grid radii must be non-negative");
        }
        if (i > 0 && !(radii[i] > radii[i - 1])) {
            throw std::invalid_argument("grid radii must be strictly increasing");
        }
    }
    for (std::size_t i = 0; i < angles.size(); ++i) {
        if (!(std::isfinite(angles[i]) && angles[i] >= 0.0 &&
              angles[i] < kTwoPi)) {
            throw std::invalid_argument("grid angles must lie in [0, 2pi)");
        }
        if (i > 0 && !(angles[i] > angles[i - 1])) {
            throw std::invalid_argument(
                "grid angles must be strictly increasing");
        }
    }
}

std::pair<LabColor, LabColor> displaced_pair(const LabColor& target,
                                             double radius, double angle) {
    validate(target);
    if (!(std::isfinite(radius) && radius >= 0.0) || !std::isfinite(angle)) {
        throw std::invalid_argument("displacement radius must be >= 0");
    }
    const double da = radius * std::sin(angle);
    const double db = radius * std::cos(angle);
    return {LabColor{target.l, target.a + da, target.b + db},
            LabColor{target.l, target.a - da, target.b - db}};
}

ChannelDeltas channel_deltas(const SrgbColor& target, const SrgbColor& plus,
                             const SrgbColor& minus) {
    validate(target);
    validate(plus);
    validate(minus);
    const auto dev = [](int t, int p, int m) {
        return static_cast<double>(std::max(std::abs(p - t), std::abs(m - t)));
    };
    return ChannelDeltas{dev(target.r, plus.r, minus.r),
                         dev(target.g, plus.g, minus.g),
                         dev(target.b, plus.b, minus.b)};
}

ChannelDeltas frame_deltas(const SrgbColor& plus, const SrgbColor& minus) {
    validate(plus);
    validate(minus);
    return ChannelDeltas{static_cast<double>(std::abs(plus.r - minus.r)),
                         static_cast<double>(std::abs(plus.g - minus.g)),
                         static_cast<double>(std::abs(plus.b - minus.b))};
}

bool classify_pair(const ChannelDeltas& deltas, const BitPattern& pattern,
                   const Thresholds& th) {
    th.validate();
    if (!pattern.any()) {
        throw std::invalid_argument("bit pattern has no set bits");
    }
    const double low = th.low_band();
    const bool r_ok = pattern.r ? deltas.dr > th.v_th : deltas.dr <= low;
    const bool g_ok = pattern.g ? deltas.dg > th.v_th : deltas.dg <= low;
    const bool b_ok = pattern.b ? deltas.db > th.v_th : deltas.db <= low;
    return r_ok && g_ok && b_ok;
}

namespace {

ChannelDeltas continuous_deltas(const SrgbColor& target,
                                const detail::LinearRgb& lp,
                                const detail::LinearRgb& lm,
                                DeltaBasis basis) {
    const double pr = detail::signal_value(lp.r);
    const double pg = detail::signal_value(lp.g);
    const double pb = detail::signal_value(lp.b);
    const double mr = detail::signal_value(lm.r);
    const double mg = detail::signal_value(lm.g);
    const double mb = detail::signal_value(lm.b);
    if (basis == DeltaBasis::FrameDiff) {
        return ChannelDeltas{std::abs(pr - mr), std::abs(pg - mg),
                             std::abs(pb - mb)};
    }
    const auto dev = [](double t, double p, double m) {
        return std::max(std::abs(p - t), std::abs(m - t));
    };
    return ChannelDeltas{dev(target.r, pr, mr), dev(target.g, pg, mg),
                         dev(target.b, pb, mb)};
}

}  // namespace

std::vector<ColorPair> serial_search(const SrgbColor& target,
                                     const VibrationGrid& grid,
                                     const BitPattern& pattern,
                                     const Thresholds& th,
                                     const SearchOptions& opts) {
    validate_inputs(target, grid, pattern, th);
    const WhitePoint& wp = opts.white_point;
    const LabColor lab = srgb_to_lab(target, wp);
    std::vector<ColorPair> hits;
    for (double radius : grid.radii) {
        for (double angle : grid.angles) {
            const auto [plus, minus] = displaced_pair(lab, radius, angle);
            const auto lp = detail::lab_to_linear(plus, wp);
            const auto lm = detail::lab_to_linear(minus, wp);
            const SrgbColor sp{detail::quantize_signal(lp.r),
                               detail::quantize_signal(lp.g),
                               detail::quantize_signal(lp.b)};
            const SrgbColor sm{detail::quantize_signal(lm.r),
                               detail::quantize_signal(lm.g),
                               detail::quantize_signal(lm.b)};
            ChannelDeltas d;
            if (opts.delta_mode == DeltaMode::Quantized) {
                d = opts.delta_basis == DeltaBasis::TargetSwing
                        ? channel_deltas(target, sp, sm)
                        : frame_deltas(sp, sm);
            } else {
                d = continuous_deltas(target, lp, lm, opts.delta_basis);
            }
            if (classify_pair(d, pattern, th)) {
                hits.push_back(ColorPair{target, sp, sm, radius, angle, d});
            }
        }
    }
    return hits;
}

namespace {

// Pass 1 for one radius row: linear endpoint channels for every angle, plus
// the classification band predicate. A channel passes when both endpoints
// fall inside [band_lo, band_hi) XOR inv: quiet bands keep inv == 0 (both
// frames must stay near the target), loud bands set inv == 1 (some frame
// must leave the window around the target). Kept as a leaf with raw
// restrict pointers so the loop auto-vectorizes; the arithmetic must stay
// expression-for-expression identical to lab_to_linear for serial/batch
// parity.
void pass1_row(double radius, double fy, double ta, double tb, double cy_r,
               double cy_g, double cy_b, double wx, double wz, double lo_r,
               double hi_r, double lo_g, double hi_g, double lo_b, double hi_b,
               unsigned char inv_r, unsigned char inv_g, unsigned char inv_b,
               const double* __restrict sa, const double* __restrict ca,
               double* __restrict pr, double* __restrict pg,
               double* __restrict pb, double* __restrict mr,
               double* __restrict mg, double* __restrict mb,
               unsigned char* __restrict okp, std::size_t n) {
    const auto& m = detail::kXyzToRgb.m;
    const double m00 = m[0][0], m02 = m[0][2];
    const double m10 = m[1][0], m12 = m[1][2];
    const double m20 = m[2][0], m22 = m[2][2];
    for (std::size_t j = 0; j < n; ++j) {
        const double da = radius * sa[j];
        const double db = radius * ca[j];

        const double fxp = fy + (ta + da) * detail::kInv500;
        const double fzp = fy - (tb + db) * detail::kInv200;
        const double xp = wx * detail::lab_f_inv(fxp);
        const double zp = wz * detail::lab_f_inv(fzp);
        const double vr = (m00 * xp + cy_r) + m02 * zp;
        const double vg = (m10 * xp + cy_g) + m12 * zp;
        const double vb = (m20 * xp + cy_b) + m22 * zp;

        const double fxm = fy + (ta - da) * detail::kInv500;
        const double fzm = fy - (tb - db) * detail::kInv200;
        const double xm = wx * detail::lab_f_inv(fxm);
        const double zm = wz * detail::lab_f_inv(fzm);
        const double wr = (m00 * xm + cy_r) + m02 * zm;
        const double wg = (m10 * xm + cy_g) + m12 * zm;
        const double wb = (m20 * xm + cy_b) + m22 * zm;

        pr[j] = vr;
        pg[j] = vg;
        pb[j] = vb;
        mr[j] = wr;
        mg[j] = wg;
        mb[j] = wb;
        const unsigned char in_r = static_cast<unsigned char>(
            (vr >= lo_r) & (vr < hi_r) & (wr >= lo_r) & (wr < hi_r));
        const unsigned char in_g = static_cast<unsigned char>(
            (vg >= lo_g) & (vg < hi_g) & (wg >= lo_g) & (wg < hi_g));
        const unsigned char in_b = static_cast<unsigned char>(
            (vb >= lo_b) & (vb < hi_b) & (wb >= lo_b) & (wb < hi_b));
        okp[j] = static_cast<unsigned char>((in_r ^ inv_r) & (in_g ^ inv_g) &
                                            (in_b ^ inv_b));
    }
}

// Per-channel linear bands equivalent to the integer classification. With
// integer deltas, d > v_th  <=>  d >= k1 where k1 = floor(v_th) + 1, and
// d <= low_band  <=>  d <= floor(low_band); code(x) >= c  <=>
// x >= thresholds[c] turns both into interval tests on the unquantized
// linear channel, so pass 1 can reject candidates without quantizing.
struct ChannelBands {
    double lo[3];
    double hi[3];
    unsigned char inv[3];
};

ChannelBands make_bands(const SrgbColor& target, const BitPattern& pattern,
                        const Thresholds& th, const SearchOptions& opts) {
    ChannelBands bands{};
    const bool exact = opts.delta_mode == DeltaMode::Quantized &&
                       opts.delta_basis == DeltaBasis::TargetSwing;
    const auto& qt = detail::quant_table();
    const double low_band = th.low_band();
    const int k1 = th.v_th >= 255.0 ? 256 : static_cast<int>(th.v_th) + 1;
    const int q0 = low_band >= 255.0 ? 255 : static_cast<int>(low_band);
    const int tgt[3] = {target.r, target.g, target.b};
    const bool bits[3] = {pattern.r, pattern.g, pattern.b};
    for (int k = 0; k < 3; ++k) {
        if (!exact) {
            // Other delta modes classify exactly in pass 2.
            bands.lo[k] = -HUGE_VAL;
            bands.hi[k] = HUGE_VAL;
            bands.inv[k] = 0;
            continue;
        }
        if (bits[k]) {
            // Loud channel: pass iff some endpoint code is <= t - k1 or
            // >= t + k1, i.e. NOT both inside [t - k1 + 1, t + k1 - 1].
            bands.lo[k] = tgt[k] - k1 + 1 >= 1 ? qt.thresholds[tgt[k] - k1 + 1]
                                               : -HUGE_VAL;
            bands.hi[k] =
                tgt[k] + k1 <= 255 ? qt.thresholds[tgt[k] + k1] : HUGE_VAL;
            bands.inv[k] = 1;
        } else {
            // Quiet channel: both endpoint codes inside [t - q0, t + q0].
            bands.lo[k] =
                tgt[k] - q0 >= 1 ? qt.thresholds[tgt[k] - q0] : -HUGE_VAL;
            bands.hi[k] = tgt[k] + q0 + 1 <= 255
                              ? qt.thresholds[tgt[k] + q0 + 1]
                              : HUGE_VAL;
            bands.inv[k] = 0;
        }
    }
    return bands;
}

// Evaluates the radius rows [row_begin, row_end) of the grid against one
// target. Pass 1 computes linear endpoint channels for the whole row with
// the fixed-L* terms hoisted and filters through the classification bands;
// pass 2 quantizes the survivors and re-classifies them exactly.
void batch_rows(const SrgbColor& target, const LabColor& lab,
                const VibrationGrid& grid, const BitPattern& pattern,
                const Thresholds& th, const SearchOptions& opts,
                const std::vector<double>& sin_a,
                const std::vector<double>& cos_a, std::size_t row_begin,
                std::size_t row_end, std::vector<ColorPair>& out) {
    const WhitePoint& wp = opts.white_point;
    const auto& m = detail::kXyzToRgb.m;
    const std::size_t n = grid.angles.size();

    const double fy = (lab.l + 16.0) / 116.0;
    const double yv = wp.y * detail::lab_f_inv(fy);
    // Y contribution of each linear channel; identical bit pattern to the
    // scalar path's m[i][1] * y term.
    const double cy_r = m[0][1] * yv;
    const double cy_g = m[1][1] * yv;
    const double cy_b = m[2][1] * yv;
    const double ta = lab.a;
    const double tb = lab.b;
    const double wx = wp.x;
    const double wz = wp.z;

    std::vector<double> buf(6 * n);
    std::vector<unsigned char> ok(n);
    double* __restrict pr = buf.data();
    double* __restrict pg = buf.data() + n;
    double* __restrict pb = buf.data() + 2 * n;
    double* __restrict mr = buf.data() + 3 * n;
    double* __restrict mg = buf.data() + 4 * n;
    double* __restrict mb = buf.data() + 5 * n;
    const double* __restrict sa = sin_a.data();
    const double* __restrict ca = cos_a.data();
    unsigned char* __restrict okp = ok.data();

    const auto& qt = detail::quant_table();
    const ChannelBands bands = make_bands(target, pattern, th, opts);

    for (std::size_t ri = row_begin; ri < row_end; ++ri) {
        const double radius = grid.radii[ri];
        pass1_row(radius, fy, ta, tb, cy_r, cy_g, cy_b, wx, wz, bands.lo[0],
                  bands.hi[0], bands.lo[1], bands.hi[1], bands.lo[2],
                  bands.hi[2], bands.inv[0], bands.inv[1], bands.inv[2], sa,
                  ca, pr, pg, pb, mr, mg, mb, okp, n);

        for (std::size_t j = 0; j < n; ++j) {
            if (!okp[j]) continue;
            const SrgbColor sp{qt.code(pr[j]), qt.code(pg[j]), qt.code(pb[j])};
            const SrgbColor sm{qt.code(mr[j]), qt.code(mg[j]), qt.code(mb[j])};
            ChannelDeltas d;
            if (opts.delta_mode == DeltaMode::Quantized) {
                d = opts.delta_basis == DeltaBasis::TargetSwing
                        ? channel_deltas(target, sp, sm)
                        : frame_deltas(sp, sm);
            } else {
                d = continuous_deltas(
                    target, detail::LinearRgb{pr[j], pg[j], pb[j]},
                    detail::LinearRgb{mr[j], mg[j], mb[j]}, opts.delta_basis);
            }
            if (classify_pair(d, pattern, th)) {
                out.push_back(
                    ColorPair{target, sp, sm, radius, grid.angles[j], d});
            }
        }
    }
}

}  // namespace

std::vector<ColorPair> batch_search(const SrgbColor& target,
                                    const VibrationGrid& grid,
                                    const BitPattern& pattern,
                                    const Thresholds& th,
                                    const SearchOptions& opts) {
    validate_inputs(target, grid, pattern, th);
    if (grid.radii.empty() || grid.angles.empty()) {
        return {};
    }
    const LabColor lab = srgb_to_lab(target, opts.white_point);

    std::vector<double> sin_a(grid.angles.size());
    std::vector<double> cos_a(grid.angles.size());
    for (std::size_t j = 0; j < grid.angles.size(); ++j) {
        sin_a[j] = std::sin(grid.angles[j]);
        cos_a[j] = std::cos(grid.angles[j]);
    }

    const std::size_t rows = grid.radii.size();
    int workers = opts.workers > 0 ? opts.workers : default_workers();
    workers = static_cast<int>(
        std::min<std::size_t>(static_cast<std::size_t>(workers), rows));

    if (workers <= 1) {
        std::vector<ColorPair> hits;
        batch_rows(target, lab, grid, pattern, th, opts, sin_a, cos_a, 0, rows,
                   hits);
        return hits;
    }

    // Contiguous radius slices; concatenating slice outputs in order keeps
    // the canonical (radius, angle) ordering for any worker count.
    std::vector<std::vector<ColorPair>> slices(workers);
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        const std::size_t begin = rows * w / workers;
        const std::size_t end = rows * (w + 1) / workers;
        threads.emplace_back([&, w, begin, end] {
            batch_rows(target, lab, grid, pattern, th, opts, sin_a, cos_a,
                       begin, end, slices[w]);
        });
    }
    for (auto& t : threads) t.join();

    std::size_t total = 0;
    for (const auto& s : slices) total += s.size();
    std::vector<ColorPair> hits;
    hits.reserve(total);
    for (auto& s : slices) {
        hits.insert(hits.end(), s.begin(), s.end());
    }
    return hits;
}

double classification_margin(const ColorPair& pair, const Thresholds& th) {
    th.validate();
    const double low = th.low_band();
    const auto chan = [&](double d) {
        return d > th.v_th ? d - th.v_th : low - d;
    };
    return std::min(
        {chan(pair.deltas.dr), chan(pair.deltas.dg), chan(pair.deltas.db)});
}

const ColorPair& select_best(const std::vector<ColorPair>& pairs,
                             const Thresholds& th) {
    if (pairs.empty()) {
        throw std::invalid_argument("select_best: empty pair list");
    }
    const ColorPair* best = &pairs.front();
    double best_margin = classification_margin(*best, th);
    for (std::size_t i = 1; i < pairs.size(); ++i) {
        const double m = classification_margin(pairs[i], th);
        const bool better =
            m > best_margin ||
            (m == best_margin &&
             (pairs[i].radius < best->radius ||
              (pairs[i].radius == best->radius &&
               pairs[i].angle < best->angle)));
        if (better) {
            best = &pairs[i];
            best_margin = m;
        }
    }
    return *best;
}

}  // namespace colorvibe

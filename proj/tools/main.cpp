// colorvibe: search for imperceptible color-vibration pairs, reproduce the
// feasibility matrix, benchmark the batch search, and run the frame-pair
// codec end to end.

#include <cstdio>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "colorvibe/bench.hpp"
#include "colorvibe/codec.hpp"
#include "colorvibe/feasibility.hpp"
#include "colorvibe/util.hpp"

namespace cv = colorvibe;

namespace {

constexpr double kRadToDeg = 180.0 / std::numbers::pi;

cv::SrgbColor parse_rgb(const std::string& s) {
    int r, g, b;
    char tail;
    if (std::sscanf(s.c_str(), "%d,%d,%d%c", &r, &g, &b, &tail) != 3) {
        throw CLI::ValidationError("--rgb", "expected R,G,B (e.g. 170,170,170)");
    }
    const cv::SrgbColor c{r, g, b};
    cv::validate(c);
    return c;
}

cv::VibrationGrid parse_grid(const std::string& s) {
    double rmin, rmax, rstep, amin, amax, astep;
    char tail;
    if (std::sscanf(s.c_str(), "%lf:%lf:%lf,%lf:%lf:%lf%c", &rmin, &rmax,
                    &rstep, &amin, &amax, &astep, &tail) != 6) {
        throw CLI::ValidationError(
            "--grid", "expected rmin:rmax:rstep,amin:amax:astep (degrees)");
    }
    return cv::VibrationGrid::uniform(rmin, rmax, rstep, amin, amax, astep);
}

std::string pairs_to_csv(const std::vector<cv::ColorPair>& pairs) {
    std::ostringstream out;
    out << "radius,angle_deg,plus_r,plus_g,plus_b,minus_r,minus_g,minus_b,"
           "dr,dg,db\n";
    for (const auto& p : pairs) {
        out << cv::fmt_g6(p.radius) << ',' << cv::fmt_g6(p.angle * kRadToDeg)
            << ',' << p.plus.r << ',' << p.plus.g << ',' << p.plus.b << ','
            << p.minus.r << ',' << p.minus.g << ',' << p.minus.b << ','
            << cv::fmt_g6(p.deltas.dr) << ',' << cv::fmt_g6(p.deltas.dg)
            << ',' << cv::fmt_g6(p.deltas.db) << '\n';
    }
    return out.str();
}

std::string pairs_to_json(const std::vector<cv::ColorPair>& pairs) {
    std::ostringstream out;
    out << "[\n";
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto& p = pairs[i];
        out << "  {\"radius\": " << cv::fmt_g6(p.radius)
            << ", \"angle_deg\": " << cv::fmt_g6(p.angle * kRadToDeg)
            << ", \"plus\": [" << p.plus.r << ", " << p.plus.g << ", "
            << p.plus.b << "], \"minus\": [" << p.minus.r << ", " << p.minus.g
            << ", " << p.minus.b << "], \"deltas\": ["
            << cv::fmt_g6(p.deltas.dr) << ", " << cv::fmt_g6(p.deltas.dg)
            << ", " << cv::fmt_g6(p.deltas.db) << "]}"
            << (i + 1 < pairs.size() ? ",\n" : "\n");
    }
    out << "]\n";
    return out.str();
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
    } else {
        cv::write_file_atomic(out_path, content);
    }
}

cv::SearchConfig load_config(const std::string& path,
                             cv::SearchConfig fallback) {
    if (path.empty()) return fallback;
    return cv::config_from_json(cv::read_file(path));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "colorvibe: imperceptible color-vibration pair search and codec"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);
    app.footer(
        "The COLORVIBE_SEED environment variable is reserved for future "
        "randomized components and is currently ignored.");

    std::string rgb_str, pattern_str, grid_str, config_path, out_path;
    std::string format_str = "csv";
    double vth = 50.0, rnovib = 0.5;
    int workers = 0;
    bool aggregated = false;

    // ---- convert ---------------------------------------------------------
    auto* convert =
        app.add_subcommand("convert", "Convert an sRGB color to CIELAB");
    convert->add_option("--rgb", rgb_str, "Input color as R,G,B")->required();
    convert->callback([&] {
        const auto lab = cv::srgb_to_lab(parse_rgb(rgb_str));
        std::cout << "L* = " << cv::fmt_g6(lab.l) << "\n"
                  << "a* = " << cv::fmt_g6(lab.a) << "\n"
                  << "b* = " << cv::fmt_g6(lab.b) << "\n";
    });

    // ---- search ----------------------------------------------------------
    auto* search = app.add_subcommand(
        "search", "List every color pair satisfying a pattern for one target");
    search->add_option("--rgb", rgb_str, "Target color as R,G,B")->required();
    search->add_option("--pattern", pattern_str, "3-bit pattern, e.g. 101")
        ->required();
    search->add_option("--vth", vth, "Perception threshold V_th (codes)");
    search->add_option("--rnovib", rnovib, "No-vibration band ratio R_novib");
    search->add_option("--grid", grid_str,
                       "Search grid rmin:rmax:rstep,amin:amax:astep (degrees)");
    search->add_option("--workers", workers, "Worker threads (0 = auto)");
    search->add_option("--out", out_path, "Output file (default: stdout)");
    search->add_option("--format", format_str, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    search->callback([&] {
        const auto grid = grid_str.empty() ? cv::VibrationGrid::standard()
                                           : parse_grid(grid_str);
        cv::SearchOptions opts;
        opts.workers = workers;
        const auto pairs =
            cv::batch_search(parse_rgb(rgb_str), grid,
                             cv::BitPattern::parse(pattern_str),
                             cv::Thresholds{vth, rnovib}, opts);
        emit(out_path, format_str == "csv" ? pairs_to_csv(pairs)
                                           : pairs_to_json(pairs));
        if (!out_path.empty()) {
            std::cout << "wrote " << out_path << " (" << pairs.size()
                      << " pairs)\n";
        }
    });

    // ---- matrix ----------------------------------------------------------
    auto* matrix = app.add_subcommand(
        "matrix", "Run the full feasibility sweep and export the matrix");
    matrix->add_option("--config", config_path,
                       "Sweep config JSON (default: built-in sweep)");
    matrix->add_option("--grid", grid_str, "Override the search grid");
    matrix->add_option("--workers", workers, "Worker threads (0 = auto)");
    matrix->add_option("--out", out_path, "Output file (default: derived name)");
    matrix->add_option("--format", format_str, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    matrix->add_flag("--aggregated", aggregated,
                     "Collapse thresholds: one feasible/infeasible cell per "
                     "(pattern, color)");
    matrix->callback([&] {
        cv::SearchConfig cfg =
            load_config(config_path, cv::SearchConfig::defaults());
        if (!grid_str.empty()) cfg.grid = parse_grid(grid_str);
        if (workers > 0) cfg.workers = workers;
        cfg.validate();
        const auto m = cv::feasibility_matrix(cfg);
        const auto format = cv::parse_export_format(format_str);
        const std::string path =
            out_path.empty() ? cv::matrix_filename(format, aggregated)
                             : out_path;
        cv::write_file_atomic(path, cv::export_matrix(m, format, aggregated));
        std::size_t feasible = 0;
        for (const auto& c : m.cells) feasible += c.feasible;
        std::cout << "wrote " << path << " (" << feasible << " of "
                  << m.cells.size() << " cells feasible)\n";
    });

    // ---- bench -----------------------------------------------------------
    auto* bench = app.add_subcommand(
        "bench", "Time serial vs batch search on the configured workload");
    bench->add_option("--config", config_path,
                      "Sweep config JSON (default: built-in sweep)");
    bench->add_option("--workers", workers, "Worker threads (0 = auto)");
    bench->add_option("--out", out_path, "Report file (default: stdout)");
    bench->callback([&] {
        cv::SearchConfig cfg =
            load_config(config_path, cv::SearchConfig::benchmark_defaults());
        if (workers > 0) cfg.workers = workers;
        const auto report = cv::run_benchmark(cfg);
        emit(out_path, cv::bench_report_json(report));
        if (!out_path.empty()) {
            std::cout << "wrote " << out_path << " (speedup "
                      << cv::fmt_g6(report.speedup) << "x, parity "
                      << (report.result_parity ? "ok" : "FAILED") << ")\n";
        }
    });

    // ---- testcard --------------------------------------------------------
    std::string size_str = "256x256";
    std::string out_prefix = "testcard";
    double refresh_hz = 60.0;
    auto* testcard = app.add_subcommand(
        "testcard", "Render a single-block frame pair for one color/pattern");
    testcard->add_option("--rgb", rgb_str, "Target color as R,G,B")->required();
    testcard->add_option("--pattern", pattern_str, "3-bit pattern")->required();
    testcard->add_option("--vth", vth, "Perception threshold V_th (codes)");
    testcard->add_option("--rnovib", rnovib, "No-vibration band ratio R_novib");
    testcard->add_option("--grid", grid_str, "Search grid override");
    testcard->add_option("--workers", workers, "Worker threads (0 = auto)");
    testcard->add_option("--size", size_str, "Card size WxH in pixels");
    testcard->add_option("--refresh", refresh_hz, "Display refresh rate (Hz)");
    testcard->add_option("--out", out_prefix,
                         "Output prefix: writes <out>_a.png, <out>_b.png, "
                         "<out>.json");
    testcard->callback([&] {
        int w, h;
        char tail;
        if (std::sscanf(size_str.c_str(), "%dx%d%c", &w, &h, &tail) != 2) {
            throw CLI::ValidationError("--size", "expected WxH, e.g. 256x256");
        }
        const auto grid = grid_str.empty()
                              ? cv::SearchConfig::defaults().grid
                              : parse_grid(grid_str);
        cv::SearchOptions opts;
        opts.workers = workers;
        const cv::Thresholds th{vth, rnovib};
        const auto fp = cv::make_testcard(
            parse_rgb(rgb_str), cv::BitPattern::parse(pattern_str), th, grid,
            cv::DisplayParams{refresh_hz}, w, h, opts);
        cv::write_png(out_prefix + "_a.png", fp.frame_a);
        cv::write_png(out_prefix + "_b.png", fp.frame_b);
        cv::write_file_atomic(out_prefix + ".json",
                              cv::layout_to_json(fp.layout, th));
        std::cout << "wrote " << out_prefix << "_a.png, " << out_prefix
                  << "_b.png, " << out_prefix << ".json\n";
    });

    // ---- embed -----------------------------------------------------------
    std::string base_path;
    auto* embed = app.add_subcommand(
        "embed", "Embed the blocks described by a layout sidecar into an image");
    embed->add_option("base", base_path, "Carrier PNG image")
        ->required()
        ->check(CLI::ExistingFile);
    embed->add_option("--config", config_path,
                      "Layout sidecar JSON (blocks + thresholds)")
        ->required()
        ->check(CLI::ExistingFile);
    embed->add_option("--grid", grid_str, "Search grid override");
    embed->add_option("--workers", workers, "Worker threads (0 = auto)");
    embed->add_option("--refresh", refresh_hz, "Display refresh rate (Hz)");
    embed->add_option("--out", out_prefix, "Output prefix");
    embed->callback([&] {
        const auto sc = cv::layout_from_json(cv::read_file(config_path));
        const auto base = cv::read_png(base_path);
        const auto grid = grid_str.empty()
                              ? cv::SearchConfig::defaults().grid
                              : parse_grid(grid_str);
        cv::SearchOptions opts;
        opts.workers = workers;
        const auto fp =
            cv::embed_blocks(base, sc.layout, sc.thresholds, grid,
                             cv::DisplayParams{refresh_hz}, opts);
        cv::write_png(out_prefix + "_a.png", fp.frame_a);
        cv::write_png(out_prefix + "_b.png", fp.frame_b);
        cv::write_file_atomic(out_prefix + ".json",
                              cv::layout_to_json(fp.layout, sc.thresholds));
        std::cout << "wrote " << out_prefix << "_a.png, " << out_prefix
                  << "_b.png, " << out_prefix << ".json\n";
    });

    // ---- decode ----------------------------------------------------------
    std::string frame_a_path, frame_b_path;
    auto* decode = app.add_subcommand(
        "decode", "Recover per-block bit patterns from a frame pair");
    decode->add_option("frame_a", frame_a_path, "First frame PNG")
        ->required()
        ->check(CLI::ExistingFile);
    decode->add_option("frame_b", frame_b_path, "Second frame PNG")
        ->required()
        ->check(CLI::ExistingFile);
    decode->add_option("--config", config_path,
                       "Layout sidecar JSON written alongside the frames")
        ->required()
        ->check(CLI::ExistingFile);
    decode->add_option("--out", out_path, "Report file (default: stdout)");
    decode->callback([&] {
        const auto sc = cv::layout_from_json(cv::read_file(config_path));
        cv::FramePair fp;
        fp.frame_a = cv::read_png(frame_a_path);
        fp.frame_b = cv::read_png(frame_b_path);
        fp.layout = sc.layout;
        const auto results = cv::decode_blocks(fp, sc.thresholds);
        emit(out_path,
             cv::decode_report_json(sc.layout, sc.thresholds, results));
        if (!out_path.empty()) {
            std::cout << "wrote " << out_path << " (" << results.size()
                      << " blocks)\n";
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

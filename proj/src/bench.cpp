#include "colorvibe/bench.hpp"

#include <chrono>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace colorvibe {

namespace {

using Clock = std::chrono::steady_clock;

// One full sweep over every (color, pattern, v_th, r_novib) combination.
// Returns the total number of pairs found so the compiler cannot discard
// the work.
template <typename SearchFn>
std::size_t sweep(const SearchConfig& cfg, const SearchOptions& opts,
                  SearchFn&& search) {
    std::size_t found = 0;
    for (const auto& color : cfg.colors) {
        for (const auto& pattern : cfg.patterns) {
            for (double v_th : cfg.v_th_values) {
                for (double r_novib : cfg.r_novib_values) {
                    found += search(color.rgb, cfg.grid, pattern,
                                    Thresholds{v_th, r_novib}, opts)
                                 .size();
                }
            }
        }
    }
    return found;
}

template <typename SweepFn>
double best_of(int repetitions, std::size_t expected_found, SweepFn&& fn) {
    double best = 0.0;
    for (int i = 0; i < repetitions; ++i) {
        const auto t0 = Clock::now();
        const std::size_t found = fn();
        const auto t1 = Clock::now();
        if (found != expected_found) {
            throw std::runtime_error("benchmark: pair count changed between runs");
        }
        const double s = std::chrono::duration<double>(t1 - t0).count();
        if (i == 0 || s < best) best = s;
    }
    return best;
}

}  // namespace

BenchReport run_benchmark(const SearchConfig& cfg, int repetitions) {
    cfg.validate();
    if (repetitions < 1) {
        throw std::invalid_argument("benchmark: repetitions must be >= 1");
    }

    const SearchOptions opts = cfg.options();
    SearchOptions single = opts;
    single.workers = 1;

    BenchReport report;
    report.config_hash = config_hash(cfg);
    report.combos = cfg.combo_count();
    report.candidates = cfg.grid.candidate_count();
    report.repetitions = repetitions;
    report.workers = opts.workers > 0
                         ? opts.workers
                         : static_cast<int>(std::max(
                               1u, std::thread::hardware_concurrency()));

    // Untimed warm-up pass that doubles as the parity check: every combo's
    // batch output must equal the serial output element for element.
    std::size_t found = 0;
    for (const auto& color : cfg.colors) {
        for (const auto& pattern : cfg.patterns) {
            for (double v_th : cfg.v_th_values) {
                for (double r_novib : cfg.r_novib_values) {
                    const Thresholds th{v_th, r_novib};
                    const auto s = serial_search(color.rgb, cfg.grid, pattern,
                                                 th, opts);
                    const auto b = batch_search(color.rgb, cfg.grid, pattern,
                                                th, opts);
                    if (s != b) {
                        throw std::runtime_error(
                            "benchmark: batch result diverged from serial for "
                            "color " + color.name + " pattern " +
                            pattern.str());
                    }
                    found += s.size();
                }
            }
        }
    }
    report.pairs_found = found;
    report.result_parity = true;

    report.serial_seconds = best_of(repetitions, found, [&] {
        return sweep(cfg, opts, serial_search);
    });
    report.batch_seconds = best_of(repetitions, found, [&] {
        return sweep(cfg, opts, batch_search);
    });
    report.batch_single_seconds = best_of(repetitions, found, [&] {
        return sweep(cfg, single, batch_search);
    });

    report.speedup = report.batch_seconds > 0.0
                         ? report.serial_seconds / report.batch_seconds
                         : 0.0;
    report.speedup_single =
        report.batch_single_seconds > 0.0
            ? report.serial_seconds / report.batch_single_seconds
            : 0.0;
    return report;
}

std::string bench_report_json(const BenchReport& r) {
    nlohmann::ordered_json j;
    j["version"] = 1;
    j["config_hash"] = r.config_hash;
    j["combos"] = r.combos;
    j["candidates_per_combo"] = r.candidates;
    j["pairs_found"] = r.pairs_found;
    j["repetitions"] = r.repetitions;
    j["workers"] = r.workers;
    j["serial_seconds"] = r.serial_seconds;
    j["batch_seconds"] = r.batch_seconds;
    j["batch_single_worker_seconds"] = r.batch_single_seconds;
    j["speedup"] = r.speedup;
    j["speedup_single_worker"] = r.speedup_single;
    j["result_parity"] = r.result_parity;
    return j.dump(2) + "\n";
}

}  // namespace colorvibe

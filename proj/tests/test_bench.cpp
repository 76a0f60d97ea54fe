#include <stdexcept>

#include "colorvibe/bench.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace colorvibe;

namespace {

SearchConfig bench_config() {
    SearchConfig cfg = SearchConfig::defaults();
    cfg.colors = {cfg.colors[1]};  // Gray
    cfg.patterns = {BitPattern::parse("101"), BitPattern::parse("111")};
    cfg.v_th_values = {50.0};
    cfg.r_novib_values = {0.5};
    cfg.grid = VibrationGrid::uniform(1.0, 61.0, 20.0, 0.0, 315.0, 45.0);
    return cfg;
}

}  // namespace

TEST_CASE("benchmark on a small workload") {
    const SearchConfig cfg = bench_config();
    const BenchReport r = run_benchmark(cfg, 2);

    CHECK(r.result_parity);
    CHECK(r.combos == cfg.combo_count());
    CHECK(r.candidates == cfg.grid.candidate_count());
    CHECK(r.repetitions == 2);
    CHECK(r.workers >= 1);
    CHECK(r.serial_seconds > 0.0);
    CHECK(r.batch_seconds > 0.0);
    CHECK(r.batch_single_seconds > 0.0);
    CHECK(r.speedup == r.serial_seconds / r.batch_seconds);
    CHECK(r.speedup_single == r.serial_seconds / r.batch_single_seconds);
    CHECK(r.config_hash == config_hash(cfg));

    // Pair totals must agree with an independent sweep.
    std::size_t found = 0;
    for (const auto& p : cfg.patterns) {
        found += serial_search(cfg.colors[0].rgb, cfg.grid, p,
                               Thresholds{50.0, 0.5}, cfg.options())
                     .size();
    }
    CHECK(r.pairs_found == found);

    CHECK_THROWS_AS(run_benchmark(cfg, 0), std::invalid_argument);
}

TEST_CASE("benchmark report serialization") {
    const BenchReport r = run_benchmark(bench_config(), 1);
    const auto j = nlohmann::json::parse(bench_report_json(r));
    CHECK(j.at("version") == 1);
    CHECK(j.at("combos") == r.combos);
    CHECK(j.at("candidates_per_combo") == r.candidates);
    CHECK(j.at("pairs_found") == r.pairs_found);
    CHECK(j.at("result_parity") == true);
    CHECK(j.at("speedup").get<double>() > 0.0);
    CHECK(j.at("serial_seconds").get<double>() > 0.0);
    CHECK(j.at("batch_single_worker_seconds").get<double>() > 0.0);
    CHECK(j.at("config_hash") == r.config_hash);
}

TEST_CASE("workload metadata scales with the grid") {
    SearchConfig cfg = bench_config();
    cfg.grid = VibrationGrid::uniform(1.0, 61.0, 20.0, 0.0, 270.0, 90.0);
    const BenchReport small = run_benchmark(cfg, 1);
    cfg.grid = VibrationGrid::uniform(1.0, 61.0, 20.0, 0.0, 350.0, 10.0);
    const BenchReport big = run_benchmark(cfg, 1);
    CHECK(big.candidates > small.candidates);
    CHECK(big.combos == small.combos);
    // The denser angle set is a superset, so it finds at least as much.
    CHECK(big.pairs_found >= small.pairs_found);
}

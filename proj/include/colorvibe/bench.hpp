#pragma once

#include <cstddef>
#include <string>

#include "colorvibe/feasibility.hpp"

namespace colorvibe {

struct BenchReport {
    std::string config_hash;
    std::size_t combos = 0;           // (color, pattern, v_th, r_novib) tuples
    std::size_t candidates = 0;       // grid points evaluated per combo
    std::size_t pairs_found = 0;      // feasible pairs over the whole workload
    int repetitions = 0;
    int workers = 0;                  // worker count used for the batch run
    double serial_seconds = 0.0;      // best-of-N wall time, serial sweep
    double batch_seconds = 0.0;       // best-of-N wall time, batch sweep
    double batch_single_seconds = 0.0;  // batch constrained to one worker
    double speedup = 0.0;             // serial_seconds / batch_seconds
    double speedup_single = 0.0;      // serial_seconds / batch_single_seconds
    bool result_parity = false;       // batch output matched serial exactly
};

// Times the full workload described by `cfg` with both search
// implementations and cross-checks their outputs pair-for-pair before any
// clock starts. Throws std::runtime_error if the outputs ever differ.
BenchReport run_benchmark(const SearchConfig& cfg, int repetitions = 3);

std::string bench_report_json(const BenchReport& report);

}  // namespace colorvibe

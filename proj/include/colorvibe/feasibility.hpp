#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "colorvibe/search.hpp"

namespace colorvibe {

struct NamedColor {
    std::string name;
    SrgbColor rgb;
};

/// Full sweep configuration. defaults() is the nine reference colors, the
/// seven signal patterns, v_th in {50, 100, 150, 200}, r_novib in
/// {0.5, 0.25, 0.125} and the sparse matrix grid; benchmark_defaults()
/// swaps in the dense standard grid so the serial/batch gap is measurable.
struct SearchConfig {
    std::vector<NamedColor> colors;
    std::vector<BitPattern> patterns;
    std::vector<double> v_th_values;
    std::vector<double> r_novib_values;
    VibrationGrid grid;
    WhitePoint white_point = d65_white();
    DeltaMode delta_mode = DeltaMode::Quantized;
    DeltaBasis delta_basis = DeltaBasis::TargetSwing;
    int workers = 0;

    static SearchConfig defaults();
    static SearchConfig benchmark_defaults();

    void validate() const;  // throws std::invalid_argument
    SearchOptions options() const;

    /// colors x patterns x v_th x r_novib.
    std::size_t combo_count() const;
};

/// Parses a JSON config (requires "version": 1). Absent fields keep their
/// defaults, so "{}"-style overrides reproduce the standard sweep.
SearchConfig config_from_json(const std::string& text);
std::string config_to_json(const SearchConfig& cfg);

/// FNV-1a over the canonical JSON form; stable workload identifier.
std::string config_hash(const SearchConfig& cfg);

struct FeasibilityCell {
    std::size_t color_index = 0;
    std::size_t pattern_index = 0;
    std::size_t v_th_index = 0;
    std::size_t r_novib_index = 0;
    bool feasible = false;
    std::size_t pair_count = 0;
    std::optional<ColorPair> best_pair;  // present iff feasible
};

/// One cell per (color, pattern, v_th, r_novib), color-major in config
/// order.
struct FeasibilityMatrix {
    SearchConfig config;
    std::vector<FeasibilityCell> cells;

    const FeasibilityCell& cell(std::size_t color, std::size_t pattern,
                                std::size_t v_th, std::size_t r_novib) const;
};

FeasibilityMatrix feasibility_matrix(const SearchConfig& cfg);

/// Per (pattern, color) OR over the threshold grid, in config order.
struct AggregateMatrix {
    std::vector<std::string> patterns;
    std::vector<std::string> colors;
    std::vector<unsigned char> any;  // pattern-major

    bool at(std::size_t pattern, std::size_t color) const {
        return any[pattern * colors.size() + color] != 0;
    }
};

AggregateMatrix aggregate_any(const FeasibilityMatrix& m);

enum class ExportFormat { Csv, Json };

ExportFormat parse_export_format(const std::string& s);

/// Aggregated form is the pattern-rows x color-columns 0/1 table; the full
/// form carries every per-threshold cell. Byte-stable for equal matrices.
std::string export_matrix(const FeasibilityMatrix& m, ExportFormat format,
                          bool aggregated);

/// "matrix_aggregated.csv", "matrix_full.json", ...
std::string matrix_filename(ExportFormat format, bool aggregated);

}  // namespace colorvibe

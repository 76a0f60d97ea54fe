#include "colorvibe/feasibility.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

#include "colorvibe/util.hpp"
#include "json.hpp"

namespace colorvibe {

using ordered_json = nlohmann::ordered_json;

SearchConfig SearchConfig::defaults() {
    SearchConfig cfg;
    cfg.colors = {
        {"Black", {100, 100, 100}}, {"Gray", {170, 170, 170}},
        {"White", {240, 240, 240}}, {"Red", {240, 100, 100}},
        {"Green", {100, 240, 100}}, {"Blue", {100, 100, 240}},
        {"Yellow", {240, 240, 100}}, {"Cyan", {100, 240, 240}},
        {"Magenta", {240, 100, 240}},
    };
    for (const char* s : {"100", "010", "001", "110", "101", "011", "111"}) {
        cfg.patterns.push_back(BitPattern::parse(s));
    }
    cfg.v_th_values = {50.0, 100.0, 150.0, 200.0};
    cfg.r_novib_values = {0.5, 0.25, 0.125};
    // Sparse sweep used for the reference feasibility matrix: six radii
    // (1..76 step 15) by thirty angles (9..357 deg step 12). Denser grids
    // admit degenerate near-clip pairs and flip cells that should stay
    // infeasible.
    cfg.grid = VibrationGrid::uniform(1.0, 76.0, 15.0, 9.0, 359.0, 12.0);
    return cfg;
}

SearchConfig SearchConfig::benchmark_defaults() {
    SearchConfig cfg = defaults();
    // Dense 100 x 360 grid; big enough that the serial/batch gap is
    // measurable instead of noise.
    cfg.grid = VibrationGrid::standard();
    return cfg;
}

void SearchConfig::validate() const {
    if (colors.empty()) {
        throw std::invalid_argument("config: color list is empty");
    }
    std::set<std::string> names;
    for (const auto& c : colors) {
        if (c.name.empty()) {
            throw std::invalid_argument("config: color with empty name");
        }
        if (!names.insert(c.name).second) {
            throw std::invalid_argument("config: duplicate color name " +
                                        c.name);
        }
        colorvibe::validate(c.rgb);
    }
    if (patterns.empty()) {
        throw std::invalid_argument("config: pattern list is empty");
    }
    for (const auto& p : patterns) {
        if (!p.any()) {
            throw std::invalid_argument("config: pattern \"000\" is invalid");
        }
    }
    if (v_th_values.empty() || r_novib_values.empty()) {
        throw std::invalid_argument("config: threshold lists must be non-empty");
    }
    for (double v : v_th_values) {
        if (!(std::isfinite(v) && v > 0.0)) {
            throw std::invalid_argument("config: v_th values must be positive");
        }
    }
    for (double r : r_novib_values) {
        if (!(std::isfinite(r) && r > 0.0 && r <= 1.0)) {
            throw std::invalid_argument("config: r_novib values must be in (0, 1]");
        }
    }
    grid.validate();
    if (grid.radii.empty() || grid.angles.empty()) {
        throw std::invalid_argument("config: degenerate grid");
    }
    if (!(white_point.x > 0.0 && white_point.y > 0.0 && white_point.z > 0.0)) {
        throw std::invalid_argument("config: white point must be positive");
    }
    if (workers < 0) {
        throw std::invalid_argument("config: workers must be >= 0");
    }
}

SearchOptions SearchConfig::options() const {
    return SearchOptions{delta_mode, delta_basis, workers, white_point};
}

std::size_t SearchConfig::combo_count() const {
    return colors.size() * patterns.size() * v_th_values.size() *
           r_novib_values.size();
}

namespace {

VibrationGrid grid_from_json(const ordered_json& j) {
    if (j.contains("radii") || j.contains("angles_rad")) {
        VibrationGrid g;
        g.radii = j.at("radii").get<std::vector<double>>();
        g.angles = j.at("angles_rad").get<std::vector<double>>();
        g.validate();
        return g;
    }
    const auto& r = j.at("radius");
    const auto& a = j.at("angle_deg");
    return VibrationGrid::uniform(
        r.at("min").get<double>(), r.at("max").get<double>(),
        r.at("step").get<double>(), a.at("min").get<double>(),
        a.at("max").get<double>(), a.at("step").get<double>());
}

}  // namespace

SearchConfig config_from_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("config: invalid JSON: ") +
                                    e.what());
    }
    if (!j.is_object()) {
        throw std::invalid_argument("config: top level must be an object");
    }
    if (!j.contains("version") || !j["version"].is_number_integer() ||
        j["version"].get<int>() != 1) {
        throw std::invalid_argument("config: missing or unsupported version");
    }
    SearchConfig cfg = SearchConfig::defaults();
    try {
        if (j.contains("colors")) {
            cfg.colors.clear();
            for (const auto& c : j.at("colors")) {
                const auto rgb = c.at("rgb").get<std::vector<int>>();
                if (rgb.size() != 3) {
                    throw std::invalid_argument(
                        "config: color rgb must have 3 entries");
                }
                cfg.colors.push_back(NamedColor{
                    c.at("name").get<std::string>(),
                    SrgbColor{rgb[0], rgb[1], rgb[2]}});
            }
        }
        if (j.contains("patterns")) {
            cfg.patterns.clear();
            for (const auto& p : j.at("patterns")) {
                cfg.patterns.push_back(
                    BitPattern::parse(p.get<std::string>()));
            }
        }
        if (j.contains("v_th")) {
            cfg.v_th_values = j.at("v_th").get<std::vector<double>>();
        }
        if (j.contains("r_novib")) {
            cfg.r_novib_values = j.at("r_novib").get<std::vector<double>>();
        }
        if (j.contains("grid")) {
            cfg.grid = grid_from_json(j.at("grid"));
        }
        if (j.value("half_sweep", false)) {
            // Keep only angles in [0, pi); the mirrored half would return
            // the same pairs with endpoints swapped.
            auto& a = cfg.grid.angles;
            a.erase(std::find_if(a.begin(), a.end(),
                                 [](double v) { return v >= std::numbers::pi; }),
                    a.end());
        }
        if (j.contains("white_point")) {
            const auto wp = j.at("white_point").get<std::vector<double>>();
            if (wp.size() != 3) {
                throw std::invalid_argument(
                    "config: white_point must have 3 entries");
            }
            cfg.white_point = WhitePoint{wp[0], wp[1], wp[2]};
        }
        if (j.contains("delta_mode")) {
            const auto mode = j.at("delta_mode").get<std::string>();
            if (mode == "quantized") {
                cfg.delta_mode = DeltaMode::Quantized;
            } else if (mode == "continuous") {
                cfg.delta_mode = DeltaMode::Continuous;
            } else {
                throw std::invalid_argument("config: unknown delta_mode " +
                                            mode);
            }
        }
        if (j.contains("delta_basis")) {
            const auto basis = j.at("delta_basis").get<std::string>();
            if (basis == "target_swing") {
                cfg.delta_basis = DeltaBasis::TargetSwing;
            } else if (basis == "frame_diff") {
                cfg.delta_basis = DeltaBasis::FrameDiff;
            } else {
                throw std::invalid_argument("config: unknown delta_basis " +
                                            basis);
            }
        }
        if (j.contains("workers")) {
            cfg.workers = j.at("workers").get<int>();
        }
    } catch (const ordered_json::exception& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

std::string config_to_json(const SearchConfig& cfg) {
    ordered_json j;
    j["version"] = 1;
    j["colors"] = ordered_json::array();
    for (const auto& c : cfg.colors) {
        j["colors"].push_back(
            {{"name", c.name}, {"rgb", {c.rgb.r, c.rgb.g, c.rgb.b}}});
    }
    j["patterns"] = ordered_json::array();
    for (const auto& p : cfg.patterns) {
        j["patterns"].push_back(p.str());
    }
    j["v_th"] = cfg.v_th_values;
    j["r_novib"] = cfg.r_novib_values;
    j["grid"] = {{"radii", cfg.grid.radii}, {"angles_rad", cfg.grid.angles}};
    j["white_point"] = {cfg.white_point.x, cfg.white_point.y,
                        cfg.white_point.z};
    j["delta_mode"] =
        cfg.delta_mode == DeltaMode::Quantized ? "quantized" : "continuous";
    j["delta_basis"] = cfg.delta_basis == DeltaBasis::TargetSwing
                           ? "target_swing"
                           : "frame_diff";
    j["workers"] = cfg.workers;
    return j.dump(2) + "\n";
}

std::string config_hash(const SearchConfig& cfg) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(
                      fnv1a64(config_to_json(cfg))));
    return buf;
}

const FeasibilityCell& FeasibilityMatrix::cell(std::size_t color,
                                               std::size_t pattern,
                                               std::size_t v_th,
                                               std::size_t r_novib) const {
    const std::size_t np = config.patterns.size();
    const std::size_t nv = config.v_th_values.size();
    const std::size_t nr = config.r_novib_values.size();
    return cells.at(((color * np + pattern) * nv + v_th) * nr + r_novib);
}

FeasibilityMatrix feasibility_matrix(const SearchConfig& cfg) {
    cfg.validate();
    FeasibilityMatrix m;
    m.config = cfg;
    m.cells.reserve(cfg.combo_count());
    const SearchOptions opts = cfg.options();
    for (std::size_t ci = 0; ci < cfg.colors.size(); ++ci) {
        for (std::size_t pi = 0; pi < cfg.patterns.size(); ++pi) {
            for (std::size_t vi = 0; vi < cfg.v_th_values.size(); ++vi) {
                for (std::size_t ri = 0; ri < cfg.r_novib_values.size(); ++ri) {
                    const Thresholds th{cfg.v_th_values[vi],
                                        cfg.r_novib_values[ri]};
                    const auto pairs = batch_search(cfg.colors[ci].rgb,
                                                    cfg.grid,
                                                    cfg.patterns[pi], th, opts);
                    FeasibilityCell cell;
                    cell.color_index = ci;
                    cell.pattern_index = pi;
                    cell.v_th_index = vi;
                    cell.r_novib_index = ri;
                    cell.feasible = !pairs.empty();
                    cell.pair_count = pairs.size();
                    if (cell.feasible) {
                        cell.best_pair = select_best(pairs, th);
                    }
                    m.cells.push_back(std::move(cell));
                }
            }
        }
    }
    return m;
}

AggregateMatrix aggregate_any(const FeasibilityMatrix& m) {
    AggregateMatrix agg;
    for (const auto& p : m.config.patterns) agg.patterns.push_back(p.str());
    for (const auto& c : m.config.colors) agg.colors.push_back(c.name);
    agg.any.assign(agg.patterns.size() * agg.colors.size(), 0);
    for (const auto& cell : m.cells) {
        if (cell.feasible) {
            agg.any[cell.pattern_index * agg.colors.size() +
                    cell.color_index] = 1;
        }
    }
    return agg;
}

ExportFormat parse_export_format(const std::string& s) {
    if (s == "csv") return ExportFormat::Csv;
    if (s == "json") return ExportFormat::Json;
    throw std::invalid_argument("unsupported format: " + s +
                                " (expected csv or json)");
}

namespace {

constexpr double kRadToDeg = 180.0 / std::numbers::pi;

ordered_json pair_to_json(const ColorPair& p) {
    return ordered_json{
        {"radius", p.radius},
        {"angle_deg", p.angle * kRadToDeg},
        {"plus", {p.plus.r, p.plus.g, p.plus.b}},
        {"minus", {p.minus.r, p.minus.g, p.minus.b}},
        {"deltas", {p.deltas.dr, p.deltas.dg, p.deltas.db}},
    };
}

std::string export_aggregated_csv(const FeasibilityMatrix& m) {
    const AggregateMatrix agg = aggregate_any(m);
    std::ostringstream out;
    out << "pattern";
    for (const auto& c : agg.colors) out << ',' << c;
    out << '\n';
    for (std::size_t pi = 0; pi < agg.patterns.size(); ++pi) {
        out << agg.patterns[pi];
        for (std::size_t ci = 0; ci < agg.colors.size(); ++ci) {
            out << ',' << (agg.at(pi, ci) ? '1' : '0');
        }
        out << '\n';
    }
    return out.str();
}

std::string export_aggregated_json(const FeasibilityMatrix& m) {
    const AggregateMatrix agg = aggregate_any(m);
    ordered_json j;
    j["version"] = 1;
    j["layout"] = "patterns x colors";
    j["patterns"] = agg.patterns;
    j["colors"] = agg.colors;
    auto rows = ordered_json::array();
    for (std::size_t pi = 0; pi < agg.patterns.size(); ++pi) {
        auto row = ordered_json::array();
        for (std::size_t ci = 0; ci < agg.colors.size(); ++ci) {
            row.push_back(agg.at(pi, ci));
        }
        rows.push_back(row);
    }
    j["feasible"] = rows;
    return j.dump(2) + "\n";
}

std::string export_full_csv(const FeasibilityMatrix& m) {
    std::ostringstream out;
    out << "color,pattern,v_th,r_novib,feasible,pair_count,best_radius,"
           "best_angle_deg,best_dr,best_dg,best_db\n";
    for (const auto& cell : m.cells) {
        const auto& cfg = m.config;
        out << cfg.colors[cell.color_index].name << ','
            << cfg.patterns[cell.pattern_index].str() << ','
            << fmt_g6(cfg.v_th_values[cell.v_th_index]) << ','
            << fmt_g6(cfg.r_novib_values[cell.r_novib_index]) << ','
            << (cell.feasible ? '1' : '0') << ',' << cell.pair_count;
        if (cell.best_pair) {
            const auto& p = *cell.best_pair;
            out << ',' << fmt_g6(p.radius) << ','
                << fmt_g6(p.angle * kRadToDeg) << ',' << fmt_g6(p.deltas.dr)
                << ',' << fmt_g6(p.deltas.dg) << ',' << fmt_g6(p.deltas.db);
        } else {
            out << ",,,,,";
        }
        out << '\n';
    }
    return out.str();
}

std::string export_full_json(const FeasibilityMatrix& m) {
    const auto& cfg = m.config;
    ordered_json j;
    j["version"] = 1;
    j["config_hash"] = config_hash(cfg);
    auto colors = ordered_json::array();
    for (const auto& c : cfg.colors) {
        colors.push_back({{"name", c.name}, {"rgb", {c.rgb.r, c.rgb.g, c.rgb.b}}});
    }
    j["colors"] = colors;
    auto patterns = ordered_json::array();
    for (const auto& p : cfg.patterns) patterns.push_back(p.str());
    j["patterns"] = patterns;
    j["v_th"] = cfg.v_th_values;
    j["r_novib"] = cfg.r_novib_values;
    auto cells = ordered_json::array();
    for (const auto& cell : m.cells) {
        ordered_json c;
        c["color"] = cfg.colors[cell.color_index].name;
        c["pattern"] = cfg.patterns[cell.pattern_index].str();
        c["v_th"] = cfg.v_th_values[cell.v_th_index];
        c["r_novib"] = cfg.r_novib_values[cell.r_novib_index];
        c["feasible"] = cell.feasible;
        c["pair_count"] = cell.pair_count;
        if (cell.best_pair) {
            c["best_pair"] = pair_to_json(*cell.best_pair);
        }
        cells.push_back(c);
    }
    j["cells"] = cells;
    return j.dump(2) + "\n";
}

}  // namespace

std::string export_matrix(const FeasibilityMatrix& m, ExportFormat format,
                          bool aggregated) {
    if (aggregated) {
        return format == ExportFormat::Csv ? export_aggregated_csv(m)
                                           : export_aggregated_json(m);
    }
    return format == ExportFormat::Csv ? export_full_csv(m)
                                       : export_full_json(m);
}

std::string matrix_filename(ExportFormat format, bool aggregated) {
    return std::string("matrix_") + (aggregated ? "aggregated" : "full") +
           (format == ExportFormat::Csv ? ".csv" : ".json");
}

}  // namespace colorvibe

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <numbers>
#include <sstream>

#include "colorvibe/bench.hpp"
#include "colorvibe/codec.hpp"
#include "colorvibe/feasibility.hpp"

namespace py = pybind11;
using namespace colorvibe;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Imperceptible color-vibration pair search";

    py::class_<SrgbColor>(m, "SrgbColor")
        .def(py::init<int, int, int>(), py::arg("r"), py::arg("g"),
             py::arg("b"))
        .def_readwrite("r", &SrgbColor::r)
        .def_readwrite("g", &SrgbColor::g)
        .def_readwrite("b", &SrgbColor::b)
        .def(py::self == py::self)
        .def("__repr__", [](const SrgbColor& c) {
            std::ostringstream s;
            s << "SrgbColor(" << c.r << ", " << c.g << ", " << c.b << ")";
            return s.str();
        });

    py::class_<LabColor>(m, "LabColor")
        .def(py::init<double, double, double>(), py::arg("l"), py::arg("a"),
             py::arg("b"))
        .def_readwrite("l", &LabColor::l)
        .def_readwrite("a", &LabColor::a)
        .def_readwrite("b", &LabColor::b)
        .def("__repr__", [](const LabColor& c) {
            std::ostringstream s;
            s << "LabColor(" << c.l << ", " << c.a << ", " << c.b << ")";
            return s.str();
        });

    py::class_<BitPattern>(m, "BitPattern")
        .def(py::init([](const std::string& s) { return BitPattern::parse(s); }),
             py::arg("bits"))
        .def_static("parse", &BitPattern::parse)
        .def_readwrite("r", &BitPattern::r)
        .def_readwrite("g", &BitPattern::g)
        .def_readwrite("b", &BitPattern::b)
        .def("__str__", &BitPattern::str)
        .def("__repr__", [](const BitPattern& p) {
            return "BitPattern(\"" + p.str() + "\")";
        });

    py::class_<Thresholds>(m, "Thresholds")
        .def(py::init<double, double>(), py::arg("v_th"), py::arg("r_novib"))
        .def_readwrite("v_th", &Thresholds::v_th)
        .def_readwrite("r_novib", &Thresholds::r_novib)
        .def("low_band", &Thresholds::low_band);

    py::class_<VibrationGrid>(m, "VibrationGrid")
        .def(py::init<>())
        .def_static("uniform", &VibrationGrid::uniform, py::arg("radius_min"),
                    py::arg("radius_max"), py::arg("radius_step"),
                    py::arg("angle_min_deg"), py::arg("angle_max_deg"),
                    py::arg("angle_step_deg"))
        .def_static("standard", &VibrationGrid::standard)
        .def_readwrite("radii", &VibrationGrid::radii)
        .def_readwrite("angles", &VibrationGrid::angles)
        .def("candidate_count", &VibrationGrid::candidate_count);

    py::class_<ChannelDeltas>(m, "ChannelDeltas")
        .def_readonly("dr", &ChannelDeltas::dr)
        .def_readonly("dg", &ChannelDeltas::dg)
        .def_readonly("db", &ChannelDeltas::db)
        .def(py::self == py::self);

    py::class_<ColorPair>(m, "ColorPair")
        .def_readonly("target", &ColorPair::target)
        .def_readonly("plus", &ColorPair::plus)
        .def_readonly("minus", &ColorPair::minus)
        .def_readonly("radius", &ColorPair::radius)
        .def_readonly("angle", &ColorPair::angle)
        .def_readonly("deltas", &ColorPair::deltas)
        .def(py::self == py::self)
        .def_property_readonly("angle_deg", [](const ColorPair& p) {
            return p.angle * 180.0 / std::numbers::pi;
        });

    py::enum_<DeltaMode>(m, "DeltaMode")
        .value("QUANTIZED", DeltaMode::Quantized)
        .value("CONTINUOUS", DeltaMode::Continuous);

    py::enum_<DeltaBasis>(m, "DeltaBasis")
        .value("TARGET_SWING", DeltaBasis::TargetSwing)
        .value("FRAME_DIFF", DeltaBasis::FrameDiff);

    m.def("srgb_to_lab",
          [](const SrgbColor& c) { return srgb_to_lab(c); },
          py::arg("color"));
    m.def("lab_to_srgb",
          [](const LabColor& c) { return lab_to_srgb(c); },
          py::arg("color"),
          "Returns None when the color falls outside the sRGB gamut");
    m.def("lab_to_srgb_clipped",
          [](const LabColor& c) { return lab_to_srgb_clipped(c); },
          py::arg("color"),
          "Clamps out-of-gamut channels before quantizing");
    m.def("displaced_pair", &displaced_pair, py::arg("target"),
          py::arg("radius"), py::arg("angle"));
    m.def(
        "serial_search",
        [](const SrgbColor& target, const VibrationGrid& grid,
           const BitPattern& pattern, const Thresholds& th, int workers) {
            SearchOptions opts;
            opts.workers = workers;
            return serial_search(target, grid, pattern, th, opts);
        },
        py::arg("target"), py::arg("grid"), py::arg("pattern"),
        py::arg("thresholds"), py::arg("workers") = 0);
    m.def(
        "batch_search",
        [](const SrgbColor& target, const VibrationGrid& grid,
           const BitPattern& pattern, const Thresholds& th, int workers) {
            SearchOptions opts;
            opts.workers = workers;
            return batch_search(target, grid, pattern, th, opts);
        },
        py::arg("target"), py::arg("grid"), py::arg("pattern"),
        py::arg("thresholds"), py::arg("workers") = 0,
        py::call_guard<py::gil_scoped_release>());
    m.def("channel_deltas", &channel_deltas, py::arg("target"),
          py::arg("plus"), py::arg("minus"));
    m.def("frame_deltas", &frame_deltas, py::arg("plus"), py::arg("minus"));
    m.def("classify_pair", &classify_pair, py::arg("deltas"),
          py::arg("pattern"), py::arg("thresholds"),
          "True when every channel delta satisfies its bit's band");
    m.def("select_best", &select_best, py::arg("pairs"), py::arg("thresholds"));

    py::class_<NamedColor>(m, "NamedColor")
        .def(py::init<std::string, SrgbColor>(), py::arg("name"),
             py::arg("rgb"))
        .def_readwrite("name", &NamedColor::name)
        .def_readwrite("rgb", &NamedColor::rgb);

    py::class_<SearchConfig>(m, "SearchConfig")
        .def(py::init(&SearchConfig::defaults))
        .def_static("defaults", &SearchConfig::defaults)
        .def_static("benchmark_defaults", &SearchConfig::benchmark_defaults)
        .def_readwrite("colors", &SearchConfig::colors)
        .def_readwrite("patterns", &SearchConfig::patterns)
        .def_readwrite("v_th_values", &SearchConfig::v_th_values)
        .def_readwrite("r_novib_values", &SearchConfig::r_novib_values)
        .def_readwrite("grid", &SearchConfig::grid)
        .def_readwrite("delta_mode", &SearchConfig::delta_mode)
        .def_readwrite("delta_basis", &SearchConfig::delta_basis)
        .def_readwrite("workers", &SearchConfig::workers)
        .def("validate", &SearchConfig::validate)
        .def("combo_count", &SearchConfig::combo_count);
    m.def("config_from_json", &config_from_json, py::arg("text"));
    m.def("config_to_json", &config_to_json, py::arg("config"));
    m.def("config_hash", &config_hash, py::arg("config"));

    py::class_<FeasibilityCell>(m, "FeasibilityCell")
        .def_readonly("color_index", &FeasibilityCell::color_index)
        .def_readonly("pattern_index", &FeasibilityCell::pattern_index)
        .def_readonly("v_th_index", &FeasibilityCell::v_th_index)
        .def_readonly("r_novib_index", &FeasibilityCell::r_novib_index)
        .def_readonly("feasible", &FeasibilityCell::feasible)
        .def_readonly("pair_count", &FeasibilityCell::pair_count)
        .def_readonly("best_pair", &FeasibilityCell::best_pair);

    py::class_<FeasibilityMatrix>(m, "FeasibilityMatrix")
        .def_readonly("config", &FeasibilityMatrix::config)
        .def_readonly("cells", &FeasibilityMatrix::cells)
        .def("cell", &FeasibilityMatrix::cell, py::arg("color"),
             py::arg("pattern"), py::arg("v_th"), py::arg("r_novib"),
             py::return_value_policy::reference_internal);

    py::class_<AggregateMatrix>(m, "AggregateMatrix")
        .def_readonly("patterns", &AggregateMatrix::patterns)
        .def_readonly("colors", &AggregateMatrix::colors)
        .def("at", &AggregateMatrix::at, py::arg("pattern"), py::arg("color"));

    m.def("feasibility_matrix", &feasibility_matrix, py::arg("config"),
          py::call_guard<py::gil_scoped_release>());
    m.def("aggregate_any", &aggregate_any, py::arg("matrix"));
    m.def(
        "export_matrix",
        [](const FeasibilityMatrix& mat, const std::string& format,
           bool aggregated) {
            return export_matrix(mat, parse_export_format(format), aggregated);
        },
        py::arg("matrix"), py::arg("format") = "csv",
        py::arg("aggregated") = true);

    py::class_<BenchReport>(m, "BenchReport")
        .def_readonly("config_hash", &BenchReport::config_hash)
        .def_readonly("combos", &BenchReport::combos)
        .def_readonly("candidates", &BenchReport::candidates)
        .def_readonly("pairs_found", &BenchReport::pairs_found)
        .def_readonly("repetitions", &BenchReport::repetitions)
        .def_readonly("workers", &BenchReport::workers)
        .def_readonly("serial_seconds", &BenchReport::serial_seconds)
        .def_readonly("batch_seconds", &BenchReport::batch_seconds)
        .def_readonly("batch_single_seconds",
                      &BenchReport::batch_single_seconds)
        .def_readonly("speedup", &BenchReport::speedup)
        .def_readonly("speedup_single", &BenchReport::speedup_single)
        .def_readonly("result_parity", &BenchReport::result_parity);
    m.def("run_benchmark", &run_benchmark, py::arg("config"),
          py::arg("repetitions") = 3,
          py::call_guard<py::gil_scoped_release>());
    m.def("bench_report_json", &bench_report_json, py::arg("report"));

    py::class_<Image>(m, "Image")
        .def_static("solid", &Image::solid, py::arg("width"),
                    py::arg("height"), py::arg("fill"))
        .def_readonly("width", &Image::width)
        .def_readonly("height", &Image::height)
        .def("get", &Image::get, py::arg("x"), py::arg("y"))
        .def("set", &Image::set, py::arg("x"), py::arg("y"), py::arg("color"))
        .def(py::self == py::self);
    m.def("read_png", &read_png, py::arg("path"));
    m.def("write_png", &write_png, py::arg("path"), py::arg("image"));

    py::class_<DisplayParams>(m, "DisplayParams")
        .def(py::init<>())
        .def(py::init([](double hz) {
                 DisplayParams d;
                 d.refresh_hz = hz;
                 return d;
             }),
             py::arg("refresh_hz"))
        .def_readwrite("refresh_hz", &DisplayParams::refresh_hz)
        .def_readwrite("ccff_hz", &DisplayParams::ccff_hz)
        .def("validate", &DisplayParams::validate);

    py::class_<BlockSpec>(m, "BlockSpec")
        .def(py::init<>())
        .def_readwrite("x", &BlockSpec::x)
        .def_readwrite("y", &BlockSpec::y)
        .def_readwrite("color_name", &BlockSpec::color_name)
        .def_readwrite("color", &BlockSpec::color)
        .def_readwrite("pattern", &BlockSpec::pattern);

    py::class_<BlockLayout>(m, "BlockLayout")
        .def(py::init<>())
        .def_readwrite("block_width", &BlockLayout::block_width)
        .def_readwrite("block_height", &BlockLayout::block_height)
        .def_readwrite("blocks", &BlockLayout::blocks);

    py::class_<FramePair>(m, "FramePair")
        .def_readonly("frame_a", &FramePair::frame_a)
        .def_readonly("frame_b", &FramePair::frame_b)
        .def_readonly("layout", &FramePair::layout);

    py::enum_<BlockStatus>(m, "BlockStatus")
        .value("PATTERN", BlockStatus::Pattern)
        .value("NO_SIGNAL", BlockStatus::NoSignal)
        .value("AMBIGUOUS", BlockStatus::Ambiguous);

    py::class_<BlockResult>(m, "BlockResult")
        .def_readonly("status", &BlockResult::status)
        .def_readonly("pattern", &BlockResult::pattern)
        .def_readonly("mean_deltas", &BlockResult::mean_deltas);

    m.def(
        "make_testcard",
        [](const SrgbColor& color, const BitPattern& pattern,
           const Thresholds& th, const VibrationGrid& grid,
           const DisplayParams& disp, int width, int height, int workers) {
            SearchOptions opts;
            opts.workers = workers;
            return make_testcard(color, pattern, th, grid, disp, width, height,
                                 opts);
        },
        py::arg("color"), py::arg("pattern"), py::arg("thresholds"),
        py::arg("grid"), py::arg("display"), py::arg("width"),
        py::arg("height"), py::arg("workers") = 0);
    m.def(
        "embed_blocks",
        [](const Image& base, const BlockLayout& layout, const Thresholds& th,
           const VibrationGrid& grid, const DisplayParams& disp, int workers) {
            SearchOptions opts;
            opts.workers = workers;
            return embed_blocks(base, layout, th, grid, disp, opts);
        },
        py::arg("base"), py::arg("layout"), py::arg("thresholds"),
        py::arg("grid"), py::arg("display"), py::arg("workers") = 0);
    m.def("decode_blocks", &decode_blocks, py::arg("frames"),
          py::arg("thresholds"));
    m.def("layout_to_json", &layout_to_json, py::arg("layout"),
          py::arg("thresholds"));
    m.def("decode_report_json", &decode_report_json, py::arg("layout"),
          py::arg("thresholds"), py::arg("results"));
}

"""Imperceptible color-vibration pair search.

Thin re-export of the compiled extension; everything of substance lives in
the C++ core.
"""

from ._core import (
    AggregateMatrix,
    BenchReport,
    BitPattern,
    BlockLayout,
    BlockResult,
    BlockSpec,
    BlockStatus,
    ChannelDeltas,
    ColorPair,
    DeltaBasis,
    DeltaMode,
    DisplayParams,
    FeasibilityCell,
    FeasibilityMatrix,
    FramePair,
    Image,
    LabColor,
    NamedColor,
    SearchConfig,
    SrgbColor,
    Thresholds,
    VibrationGrid,
    aggregate_any,
    batch_search,
    bench_report_json,
    channel_deltas,
    classify_pair,
    config_from_json,
    config_hash,
    config_to_json,
    decode_blocks,
    decode_report_json,
    displaced_pair,
    embed_blocks,
    export_matrix,
    feasibility_matrix,
    frame_deltas,
    lab_to_srgb,
    lab_to_srgb_clipped,
    layout_to_json,
    make_testcard,
    read_png,
    run_benchmark,
    select_best,
    serial_search,
    srgb_to_lab,
    write_png,
)

__all__ = [
    "AggregateMatrix",
    "BenchReport",
    "BitPattern",
    "BlockLayout",
    "BlockResult",
    "BlockSpec",
    "BlockStatus",
    "ChannelDeltas",
    "ColorPair",
    "DeltaBasis",
    "DeltaMode",
    "DisplayParams",
    "FeasibilityCell",
    "FeasibilityMatrix",
    "FramePair",
    "Image",
    "LabColor",
    "NamedColor",
    "SearchConfig",
    "SrgbColor",
    "Thresholds",
    "VibrationGrid",
    "aggregate_any",
    "batch_search",
    "bench_report_json",
    "channel_deltas",
    "classify_pair",
    "config_from_json",
    "config_hash",
    "config_to_json",
    "decode_blocks",
    "decode_report_json",
    "displaced_pair",
    "embed_blocks",
    "export_matrix",
    "feasibility_matrix",
    "frame_deltas",
    "lab_to_srgb",
    "lab_to_srgb_clipped",
    "layout_to_json",
    "make_testcard",
    "read_png",
    "run_benchmark",
    "select_best",
    "serial_search",
    "srgb_to_lab",
    "write_png",
]

__version__ = "0.1.0"

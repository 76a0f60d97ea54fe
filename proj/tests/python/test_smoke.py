"""Smoke checks for the Python bindings; run directly by ctest."""

import json
import math

import colorvibe as cv


def test_convert_landmarks():
    lab = cv.srgb_to_lab(cv.SrgbColor(255, 255, 255))
    assert abs(lab.l - 100.0) < 1e-9
    assert abs(lab.a) < 1e-9 and abs(lab.b) < 1e-9

    gray = cv.srgb_to_lab(cv.SrgbColor(170, 170, 170))
    assert 69.0 < gray.l < 71.0

    back = cv.lab_to_srgb(gray)
    assert back is not None
    assert (back.r, back.g, back.b) == (170, 170, 170)

    # Far outside the gamut: rejected by the strict converter, clipped by
    # the displayable one.
    wild = cv.LabColor(50.0, 200.0, 0.0)
    assert cv.lab_to_srgb(wild) is None
    clipped = cv.lab_to_srgb_clipped(wild)
    assert 0 <= clipped.r <= 255


def test_search_parity_and_invariants():
    grid = cv.VibrationGrid.uniform(1.0, 91.0, 10.0, 0.0, 350.0, 10.0)
    target = cv.SrgbColor(170, 170, 170)
    pattern = cv.BitPattern.parse("101")
    th = cv.Thresholds(50.0, 0.5)

    serial = cv.serial_search(target, grid, pattern, th)
    batch = cv.batch_search(target, grid, pattern, th)
    assert serial == batch
    assert len(serial) > 0

    best = cv.select_best(serial, th)
    assert best.deltas.dr > 50.0 and best.deltas.db > 50.0
    assert best.deltas.dg <= 25.0

    lab = cv.srgb_to_lab(target)
    plus, minus = cv.displaced_pair(lab, best.radius, best.angle)
    assert math.isclose(plus.l, lab.l, abs_tol=1e-9)
    assert math.isclose(minus.l, lab.l, abs_tol=1e-9)


def test_config_round_trip():
    cfg = cv.SearchConfig.defaults()
    assert len(cfg.colors) == 9
    assert len(cfg.patterns) == 7
    assert len(cfg.v_th_values) == 4
    assert len(cfg.r_novib_values) == 3
    assert cfg.delta_basis == cv.DeltaBasis.TARGET_SWING

    text = cv.config_to_json(cfg)
    parsed = json.loads(text)
    assert parsed["version"] == 1
    again = cv.config_from_json(text)
    assert cv.config_to_json(again) == text
    assert cv.config_hash(again) == cv.config_hash(cfg)

    bench = cv.SearchConfig.benchmark_defaults()
    assert bench.grid.candidate_count() == 36000


def test_matrix_and_codec():
    cfg = cv.SearchConfig.defaults()
    cfg.colors = [c for c in cfg.colors if c.name in ("Gray", "Blue")]
    cfg.patterns = [cv.BitPattern.parse("101"), cv.BitPattern.parse("010")]
    cfg.v_th_values = [50.0]
    cfg.r_novib_values = [0.5]

    m = cv.feasibility_matrix(cfg)
    agg = cv.aggregate_any(m)
    assert agg.at(0, 0) and agg.at(0, 1)          # 101 feasible for both
    assert not agg.at(1, 0) and not agg.at(1, 1)  # 010 feasible for neither

    th = cv.Thresholds(50.0, 0.5)
    fp = cv.make_testcard(cv.SrgbColor(170, 170, 170),
                          cv.BitPattern.parse("101"), th, cfg.grid,
                          cv.DisplayParams(), 16, 16)
    results = cv.decode_blocks(fp, th)
    assert len(results) == 1
    assert results[0].status == cv.BlockStatus.PATTERN
    assert str(results[0].pattern) == "101"

    deltas = cv.frame_deltas(fp.frame_a.get(0, 0), fp.frame_b.get(0, 0))
    assert deltas.dr > 0 and deltas.db > 0


def main():
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    for fn in tests:
        fn()
        print(f"{fn.__name__} ok")
    print(f"{len(tests)} smoke tests passed")


if __name__ == "__main__":
    main()

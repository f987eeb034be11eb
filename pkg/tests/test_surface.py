"""Surface sweeps, grid statistics and the CSV/JSON exports."""
import random

import numpy as np
import pytest

from permadss import (
    FuzzyError,
    OutOfRangeError,
    export_grid,
    grid_from_json,
    grid_stats,
    line_verdict,
    sweep,
)
from permadss.engine import infer
from permadss.surface import MONOTONE_TOL, grid_to_csv, grid_to_json


@pytest.fixture(scope="module")
def high_npv_grid(stable_fis):
    return sweep(stable_fis, ("NPV", 20e6), "GEN", "DIVERS", 21)


class TestSweep:
    def test_shape_and_bounds(self, high_npv_grid):
        assert high_npv_grid.values.shape == (21, 21)
        assert high_npv_grid.values.size == 441
        assert float(high_npv_grid.values.min()) >= 55.0
        assert high_npv_grid.stats.max == pytest.approx(85.7, abs=0.5)

    def test_axes_span_full_universes(self, high_npv_grid):
        assert (high_npv_grid.x_axis.lo, high_npv_grid.x_axis.hi) == (0.0, 30.0)
        assert (high_npv_grid.y_axis.lo, high_npv_grid.y_axis.hi) == (0.0, 5.0)

    def test_two_step_corners_match_direct_inference(self, stable_fis):
        grid = sweep(stable_fis, ("NPV", 20e6), "GEN", "DIVERS", 2)
        for iy, divers in enumerate((0.0, 5.0)):
            for ix, gen in enumerate((0.0, 30.0)):
                direct = infer(stable_fis, {"NPV": 20e6, "GEN": gen, "DIVERS": divers}).output
                assert grid.values[iy, ix] == direct

    def test_random_cells_match_direct_inference(self, stable_fis, high_npv_grid):
        rnd = random.Random(2)
        xs = high_npv_grid.x_axis.coords
        ys = high_npv_grid.y_axis.coords
        for _ in range(20):
            ix, iy = rnd.randrange(21), rnd.randrange(21)
            direct = infer(
                stable_fis, {"NPV": 20e6, "GEN": float(xs[ix]), "DIVERS": float(ys[iy])}
            ).output
            assert high_npv_grid.values[iy, ix] == direct

    def test_duplicate_variable_rejected(self, stable_fis):
        with pytest.raises(FuzzyError, match="distinct"):
            sweep(stable_fis, ("NPV", 20e6), "NPV", "DIVERS", 5)

    def test_must_cover_all_inputs(self, stable_fis):
        with pytest.raises(FuzzyError, match="cover"):
            sweep(stable_fis, ("NPV", 20e6), "GEN", "BOGUS", 5)

    def test_fixed_value_must_be_in_range(self, stable_fis):
        with pytest.raises(OutOfRangeError, match="NPV"):
            sweep(stable_fis, ("NPV", 999e6), "GEN", "DIVERS", 5)

    def test_steps_floor(self, stable_fis):
        with pytest.raises(FuzzyError, match="steps"):
            sweep(stable_fis, ("NPV", 20e6), "GEN", "DIVERS", 1)


class TestGridStats:
    def test_constant_grid(self, stable_fis):
        grid = sweep(stable_fis, ("NPV", 20e6), "GEN", "DIVERS", 3)
        stats = grid_stats(grid)
        assert stats.min <= stats.max
        flat = np.ones((4, 4)) * 3.25
        from permadss.surface import _compute_stats

        s = _compute_stats(flat)
        assert s.min == s.max == 3.25
        assert s.x_monotonicity == "non_decreasing"
        assert s.y_monotonicity == "non_decreasing"

    def test_low_npv_cap(self, stable_fis):
        grid = sweep(stable_fis, ("NPV", 0.0), "GEN", "DIVERS", 21)
        assert grid.stats.max <= 32.0

    def test_mid_npv_growth_top_line_unimodal(self, growth_fis):
        grid = sweep(growth_fis, ("NPV", 10e6), "GEN", "DIVERS", 21)
        top = grid.values[-1, :]  # DIVERS = 5 line along GEN
        assert line_verdict(top) == "unimodal"
        peak = int(np.argmax(top))
        assert 0 < peak < 20

    def test_line_verdicts(self):
        assert line_verdict([1, 2, 3]) == "non_decreasing"
        assert line_verdict([3, 2, 1]) == "non_increasing"
        assert line_verdict([2, 2, 2]) == "non_decreasing"
        assert line_verdict([1, 3, 2]) == "unimodal"
        assert line_verdict([1, 3, 2, 4]) == "none"
        assert line_verdict([1, 1 - MONOTONE_TOL / 2, 2]) == "non_decreasing"


def test_stable_slices_monotone_on_both_axes(stable_fis):
    # KNOWN FAILURE: centroid defuzzification of min-clipped sets dips
    # ~0.5 output units under partial-membership blends, so no rule table
    # that also meets the band anchors can keep every 21-step line
    # monotone within 1e-6.  Kept failing on purpose; see README
    # "Known limitations" and the calibration report.
    for fixed_value in (-0.5e6, 10e6, 20e6):
        grid = sweep(stable_fis, ("NPV", fixed_value), "GEN", "DIVERS", 21)
        worst = min(
            float(np.diff(grid.values, axis=0).min()),
            float(np.diff(grid.values, axis=1).min()),
        )
        assert worst >= -MONOTONE_TOL, f"NPV={fixed_value}: worst step {worst}"


@pytest.fixture(scope="module")
def small_grid(stable_fis):
    return sweep(stable_fis, ("NPV", 20e6), "GEN", "DIVERS", 2)


class TestExports:
    def test_csv_shape(self, small_grid):
        text = grid_to_csv(small_grid)
        lines = text.strip().splitlines()
        assert lines[0] == "NPV,2e+07,GEN,DIVERS"
        assert lines[1].startswith(",")
        data_cells = [cell for row in lines[2:] for cell in row.split(",")[1:]]
        assert len(data_cells) == 4

    def test_csv_cells_are_finite_numbers(self, high_npv_grid):
        text = grid_to_csv(high_npv_grid)
        for row in text.strip().splitlines()[2:]:
            for cell in row.split(",")[1:]:
                assert np.isfinite(float(cell))

    def test_json_roundtrip(self, high_npv_grid):
        text = grid_to_json(high_npv_grid)
        parsed = grid_from_json(text)
        assert grid_to_json(parsed) == text  # canonical form is a fixed point
        assert parsed == grid_from_json(grid_to_json(parsed))
        assert np.allclose(parsed.values, high_npv_grid.values, rtol=1e-5)
        assert parsed.fixed == ("NPV", 20e6)
        assert parsed.stats.x_monotonicity == high_npv_grid.stats.x_monotonicity

    def test_export_bytes(self, small_grid):
        csv_payload = export_grid(small_grid, "csv")
        json_payload = export_grid(small_grid, "json")
        assert isinstance(csv_payload, bytes) and isinstance(json_payload, bytes)
        assert csv_payload.decode("utf-8") == grid_to_csv(small_grid)

    def test_unknown_format(self, small_grid):
        with pytest.raises(FuzzyError, match="format"):
            export_grid(small_grid, "xml")

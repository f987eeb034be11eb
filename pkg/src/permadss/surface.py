"""Response surfaces: sweep two inputs over a grid with the third fixed.

Cells are independent inferences, so results are deterministic and safe
to compute concurrently.  Exports use 6-significant-digit formatting;
in-memory values keep full precision so monotonicity verdicts are not
polluted by display rounding.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .engine import FisDefinition, infer
from .errors import FuzzyError, OutOfRangeError

__all__ = [
    "MONOTONE_TOL",
    "Axis",
    "GridStats",
    "SurfaceGrid",
    "sweep",
    "grid_stats",
    "line_verdict",
    "export_grid",
    "grid_to_csv",
    "grid_to_doc",
    "grid_to_json",
    "grid_from_json",
]

MONOTONE_TOL = 1e-6


@dataclass(frozen=True)
class Axis:
    var: str
    lo: float
    hi: float
    steps: int

    @property
    def coords(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.steps)


@dataclass(frozen=True)
class GridStats:
    min: float
    max: float
    argmin: tuple[int, int]
    argmax: tuple[int, int]
    x_monotonicity: str
    y_monotonicity: str


@dataclass(frozen=True, eq=False)
class SurfaceGrid:
    """Outputs over a steps x steps grid; values[iy][ix] follows y rows."""

    fixed: tuple[str, float]
    x_axis: Axis
    y_axis: Axis
    values: np.ndarray = field(repr=False)
    stats: GridStats

    def __eq__(self, other):
        if not isinstance(other, SurfaceGrid):
            return NotImplemented
        return (
            self.fixed == other.fixed
            and self.x_axis == other.x_axis
            and self.y_axis == other.y_axis
            and self.stats == other.stats
            and np.array_equal(self.values, other.values)
        )


def line_verdict(values: Iterable[float], tol: float = MONOTONE_TOL) -> str:
    """Classify one line of outputs: how it evolves along an axis."""
    vals = np.asarray(list(values), dtype=float)
    diffs = np.diff(vals)
    if diffs.size == 0:
        return "non_decreasing"
    if np.all(diffs >= -tol):
        return "non_decreasing"
    if np.all(diffs <= tol):
        return "non_increasing"
    p = int(np.argmax(vals))
    rises = np.all(diffs[:p] >= -tol)
    falls = np.all(diffs[p:] <= tol)
    interior = vals[p] > vals[0] + tol and vals[p] > vals[-1] + tol
    if rises and falls and interior:
        return "unimodal"
    return "none"


def _axis_verdict(lines: np.ndarray, tol: float) -> str:
    verdicts = [line_verdict(line, tol) for line in lines]
    for kind in ("non_decreasing", "non_increasing"):
        if all(v == kind for v in verdicts):
            return kind
    if all(v in ("unimodal", "non_decreasing", "non_increasing") for v in verdicts):
        return "unimodal"
    return "mixed"


def _compute_stats(values: np.ndarray, tol: float = MONOTONE_TOL) -> GridStats:
    iy_min, ix_min = np.unravel_index(int(np.argmin(values)), values.shape)
    iy_max, ix_max = np.unravel_index(int(np.argmax(values)), values.shape)
    return GridStats(
        min=float(values.min()),
        max=float(values.max()),
        argmin=(int(ix_min), int(iy_min)),
        argmax=(int(ix_max), int(iy_max)),
        x_monotonicity=_axis_verdict(values, tol),
        y_monotonicity=_axis_verdict(values.T, tol),
    )


def grid_stats(grid: SurfaceGrid) -> GridStats:
    """Recompute summary statistics from a grid's values."""
    return _compute_stats(grid.values)


def sweep(
    fis: FisDefinition,
    fixed: tuple[str, float],
    x: str,
    y: str,
    steps: int = 21,
) -> SurfaceGrid:
    """Evaluate the system over the full x/y universes with one input fixed."""
    if steps < 2:
        raise FuzzyError(f"steps must be at least 2, got {steps}")
    fixed_var, fixed_value = fixed[0], float(fixed[1])
    names = (fixed_var, x, y)
    if len(set(names)) != 3:
        raise FuzzyError(f"fixed, x and y must be three distinct variables, got {names}")
    if set(names) != set(fis.input_names):
        raise FuzzyError(
            f"sweep variables {sorted(names)} must cover exactly the inputs {sorted(fis.input_names)}"
        )
    lo, hi = fis.input(fixed_var).universe
    if not (lo <= fixed_value <= hi):
        raise OutOfRangeError(fixed_var, fixed_value, lo, hi)

    x_var, y_var = fis.input(x), fis.input(y)
    x_axis = Axis(x, x_var.universe[0], x_var.universe[1], steps)
    y_axis = Axis(y, y_var.universe[0], y_var.universe[1], steps)
    values = np.empty((steps, steps))
    for iy, yv in enumerate(y_axis.coords):
        for ix, xv in enumerate(x_axis.coords):
            values[iy, ix] = infer(fis, {fixed_var: fixed_value, x: float(xv), y: float(yv)}).output
    values.flags.writeable = False
    return SurfaceGrid(
        fixed=(fixed_var, fixed_value),
        x_axis=x_axis,
        y_axis=y_axis,
        values=values,
        stats=_compute_stats(values),
    )


def _f6(x: float) -> str:
    return f"{float(x):.6g}"


def _r6(x: float) -> float:
    return float(_f6(x))


def grid_to_csv(grid: SurfaceGrid) -> str:
    """Metadata row, then the x-coordinate header, then one row per y value."""
    lines = [f"{grid.fixed[0]},{_f6(grid.fixed[1])},{grid.x_axis.var},{grid.y_axis.var}"]
    lines.append("," + ",".join(_f6(v) for v in grid.x_axis.coords))
    for yv, row in zip(grid.y_axis.coords, grid.values):
        lines.append(_f6(yv) + "," + ",".join(_f6(v) for v in row))
    return "\n".join(lines) + "\n"


def _axis_doc(axis: Axis) -> dict:
    return {"var": axis.var, "lo": _r6(axis.lo), "hi": _r6(axis.hi), "steps": axis.steps}


def grid_to_doc(grid: SurfaceGrid) -> dict:
    """JSON-ready dict for a grid, numbers at 6 significant digits."""
    return {
        "fixed": {"var": grid.fixed[0], "value": _r6(grid.fixed[1])},
        "x_axis": _axis_doc(grid.x_axis),
        "y_axis": _axis_doc(grid.y_axis),
        "values": [[_r6(v) for v in row] for row in grid.values],
        "stats": {
            "min": _r6(grid.stats.min),
            "max": _r6(grid.stats.max),
            "argmin": list(grid.stats.argmin),
            "argmax": list(grid.stats.argmax),
            "x_monotonicity": grid.stats.x_monotonicity,
            "y_monotonicity": grid.stats.y_monotonicity,
        },
    }


def grid_to_json(grid: SurfaceGrid) -> str:
    return json.dumps(grid_to_doc(grid)) + "\n"


def grid_from_json(text: str) -> SurfaceGrid:
    doc = json.loads(text)
    values = np.array(doc["values"], dtype=float)
    values.flags.writeable = False
    stats = GridStats(
        min=float(doc["stats"]["min"]),
        max=float(doc["stats"]["max"]),
        argmin=tuple(doc["stats"]["argmin"]),
        argmax=tuple(doc["stats"]["argmax"]),
        x_monotonicity=doc["stats"]["x_monotonicity"],
        y_monotonicity=doc["stats"]["y_monotonicity"],
    )
    def axis(d):
        return Axis(d["var"], float(d["lo"]), float(d["hi"]), int(d["steps"]))
    return SurfaceGrid(
        fixed=(doc["fixed"]["var"], float(doc["fixed"]["value"])),
        x_axis=axis(doc["x_axis"]),
        y_axis=axis(doc["y_axis"]),
        values=values,
        stats=stats,
    )


def export_grid(grid: SurfaceGrid, format: str) -> bytes:
    """Serialize a grid as UTF-8 CSV or JSON bytes."""
    if format == "csv":
        return grid_to_csv(grid).encode("utf-8")
    if format == "json":
        return grid_to_json(grid).encode("utf-8")
    raise FuzzyError(f"unknown export format {format!r}; expected 'csv' or 'json'")

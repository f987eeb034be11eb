"""The bundled decision systems: market-permanence incentive scoring.

Three inputs drive the incentive score: expected net present value (NPV,
euros), portfolio size (GEN, number of generics) and diversification
(DIVERS, 0-5 points).  The output PERM-INCENT is a percentage in
[0, 100].  Two 27-rule bases cover a stable and a growth market regime;
they ship as editable text files under ``models/`` and are loaded, not
hard-coded, so analysts can re-calibrate without rebuilding.
"""
from __future__ import annotations

import os
import time
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path

import numpy as np

from .engine import FisDefinition, FuzzyRule, InferenceResult, infer
from .errors import FuzzyError, OutOfRangeError, UnknownScenarioError
from .fistext import parse_fis, serialize_fis
from .membership import (
    LinguisticVariable,
    make_symmetric_partition,
    trapezoidal,
    triangular,
)
from .surface import MONOTONE_TOL, SurfaceGrid, line_verdict, sweep

__all__ = [
    "SCENARIOS",
    "NPV_RANGE",
    "GEN_RANGE",
    "DIVERS_RANGE",
    "INCENTIVE_RANGE",
    "PermanenceInput",
    "CashFlowSchedule",
    "npv",
    "build_permanence_fis",
    "evaluate_permanence",
    "write_default_models",
    "AnchorResult",
    "CalibrationReport",
    "check_calibration",
]

SCENARIOS = ("stable", "growth")
MODELS_DIR_ENV = "PERMADSS_MODELS_DIR"

NPV_RANGE = (-0.5e6, 185e6)
GEN_RANGE = (0.0, 30.0)
DIVERS_RANGE = (0.0, 5.0)
INCENTIVE_RANGE = (0.0, 100.0)

_INPUT_LABELS = ("low", "med", "high")
_OUTPUT_LABELS = tuple(f"mf{k}" for k in range(1, 9))

# Grid step 1/70 puts the 100/7-spaced output breakpoints (and the clip
# corners produced by decile firing strengths) on sample nodes, so the
# centroid of a clipped symmetric set stays at its peak to ~1e-12.
MODEL_RESOLUTION = 7001

# Consequent tables: [npv label][gen row][divers column] -> output label index.
_RULE_TABLES = {
    "stable": {
        "low": ((1, 3, 3), (2, 3, 3), (2, 3, 3)),
        "med": ((3, 3, 4), (3, 4, 5), (3, 4, 5)),
        "high": ((5, 5, 5), (5, 5, 6), (5, 6, 7)),
    },
    "growth": {
        "low": ((2, 3, 4), (2, 3, 5), (2, 3, 4)),
        "med": ((3, 4, 5), (3, 5, 6), (3, 5, 5)),
        "high": ((6, 6, 7), (6, 7, 7), (7, 7, 8)),
    },
}

# Representative fixed values used by the sweep reproduction suite.
NPV_FIXES = (0.0, 10e6, 20e6)
GEN_FIXES = (0.0, 15.0, 30.0)
DIVERS_FIXES = (0.0, 2.5, 5.0)

REFERENCE_SCENARIO = "stable"
REFERENCE_INPUT_VALUES = (20e6, 18.0, 4.0)
REFERENCE_TARGET = 71.4
REFERENCE_TOL = 5.0


@dataclass(frozen=True)
class PermanenceInput:
    """One lab's situation: expected NPV, portfolio size, diversification."""

    npv: float
    gen: float
    divers: float

    def validate(self) -> None:
        for name, value, (lo, hi) in (
            ("npv", self.npv, NPV_RANGE),
            ("gen", self.gen, GEN_RANGE),
            ("divers", self.divers, DIVERS_RANGE),
        ):
            if not (lo <= value <= hi):
                raise OutOfRangeError(name, value, lo, hi)

    def clamped(self) -> "PermanenceInput":
        def snap(v, lo, hi):
            return min(max(float(v), lo), hi)

        return PermanenceInput(
            npv=snap(self.npv, *NPV_RANGE),
            gen=snap(self.gen, *GEN_RANGE),
            divers=snap(self.divers, *DIVERS_RANGE),
        )


@dataclass(frozen=True)
class CashFlowSchedule:
    """Dated cash flows with a constant per-period discount rate."""

    flows: tuple[tuple[int, float], ...]
    rate: float

    def __post_init__(self):
        object.__setattr__(self, "flows", tuple((int(t), float(a)) for t, a in self.flows))
        if any(t < 0 for t, _ in self.flows):
            raise ValueError("cash-flow periods must be non-negative")
        if not self.rate > -1.0:
            raise ValueError(f"discount rate must be greater than -1, got {self.rate!r}")


def npv(schedule: CashFlowSchedule) -> float:
    """Discounted sum of the schedule's cash flows."""
    return sum(amount / (1.0 + schedule.rate) ** t for t, amount in schedule.flows)


def _npv_variable() -> LinguisticVariable:
    lo, hi = NPV_RANGE
    return LinguisticVariable(
        "NPV",
        (lo, hi),
        (
            ("low", trapezoidal(lo, lo, 2e6, 10e6)),
            ("med", triangular(2e6, 10e6, 20e6)),
            ("high", trapezoidal(10e6, 20e6, hi, hi)),
        ),
    )


def _construct_system(scenario: str) -> FisDefinition:
    """Build a scenario system from the calibration tables (used to
    regenerate the bundled model files; runtime loading goes through
    :func:`build_permanence_fis`)."""
    _check_scenario(scenario)
    inputs = (
        _npv_variable(),
        make_symmetric_partition("GEN", *GEN_RANGE, _INPUT_LABELS),
        make_symmetric_partition("DIVERS", *DIVERS_RANGE, _INPUT_LABELS),
    )
    output = make_symmetric_partition("PERM-INCENT", *INCENTIVE_RANGE, _OUTPUT_LABELS)
    table = _RULE_TABLES[scenario]
    rules = []
    for n in _INPUT_LABELS:
        for j, g in enumerate(_INPUT_LABELS):
            for k, d in enumerate(_INPUT_LABELS):
                consequent = _OUTPUT_LABELS[table[n][j][k] - 1]
                rules.append(
                    FuzzyRule(
                        antecedent=(("NPV", n), ("GEN", g), ("DIVERS", d)),
                        consequent=("PERM-INCENT", consequent),
                    )
                )
    return FisDefinition(
        name=f"permanence_{scenario}",
        inputs=inputs,
        output=output,
        rules=tuple(rules),
        resolution=MODEL_RESOLUTION,
    )


def write_default_models(directory: str | os.PathLike) -> list[Path]:
    """Regenerate the bundled model files from the calibration tables."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for scenario in SCENARIOS:
        path = directory / f"permanence_{scenario}.fis"
        path.write_text(serialize_fis(_construct_system(scenario)), encoding="utf-8")
        written.append(path)
    return written


def _check_scenario(scenario: str) -> None:
    if scenario not in SCENARIOS:
        raise UnknownScenarioError(scenario, SCENARIOS)


def _read_model_text(scenario: str, models_dir: str | None) -> str:
    filename = f"permanence_{scenario}.fis"
    if models_dir:
        path = Path(models_dir) / filename
        if not path.is_file():
            raise FuzzyError(f"model file not found: {path}")
        return path.read_text(encoding="utf-8")
    return resources.files(__package__).joinpath("models", filename).read_text(encoding="utf-8")


@lru_cache(maxsize=8)
def _load_system(scenario: str, models_dir: str | None) -> FisDefinition:
    return parse_fis(_read_model_text(scenario, models_dir))


def build_permanence_fis(scenario: str, models_dir: str | os.PathLike | None = None) -> FisDefinition:
    """Load the scenario's system from its model file (cached per directory).

    The directory is the explicit argument, else ``PERMADSS_MODELS_DIR``,
    else the bundled package data.
    """
    _check_scenario(scenario)
    directory = models_dir if models_dir is not None else os.environ.get(MODELS_DIR_ENV)
    return _load_system(scenario, str(directory) if directory else None)


def evaluate_permanence(
    scenario: str,
    inp: PermanenceInput,
    models_dir: str | os.PathLike | None = None,
) -> InferenceResult:
    """Score the incentive to remain in the market, with full trace."""
    inp.validate()
    fis = build_permanence_fis(scenario, models_dir)
    return infer(fis, {"NPV": inp.npv, "GEN": inp.gen, "DIVERS": inp.divers})


# --- calibration anchors -------------------------------------------------

@dataclass(frozen=True)
class AnchorResult:
    name: str
    passed: bool
    measured: float
    target: str

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name}: measured {self.measured:.6g} (target {self.target})"


@dataclass(frozen=True)
class CalibrationReport:
    anchors: tuple[AnchorResult, ...]

    @property
    def ok(self) -> bool:
        return all(a.passed for a in self.anchors)

    def lines(self) -> list[str]:
        return [a.line() for a in self.anchors]


def _worst_step(values: np.ndarray, axis: int) -> float:
    return float(np.diff(values, axis=axis).min())


def _cells(fis: FisDefinition, fixed_var: str, value: float, steps: int) -> SurfaceGrid:
    axes = [n for n in fis.input_names if n != fixed_var]
    return sweep(fis, (fixed_var, value), axes[0], axes[1], steps)


def check_calibration(
    stable: FisDefinition | None = None,
    growth: FisDefinition | None = None,
    steps: int = 21,
    models_dir: str | os.PathLike | None = None,
) -> CalibrationReport:
    """Run every calibration anchor against the bundled (or given) systems.

    Anchors pin the reference inference, the response-surface summaries
    for the representative fixed values, growth-over-stable dominance,
    and the sum-to-one property of every variable's partition.
    """
    stable = stable or build_permanence_fis("stable", models_dir)
    growth = growth or build_permanence_fis("growth", models_dir)
    anchors: list[AnchorResult] = []

    def add(name: str, passed: bool, measured: float, target: str):
        anchors.append(AnchorResult(name, bool(passed), float(measured), target))

    ref_values = {"NPV": REFERENCE_INPUT_VALUES[0], "GEN": REFERENCE_INPUT_VALUES[1],
                  "DIVERS": REFERENCE_INPUT_VALUES[2]}
    ref = infer(stable, ref_values).output
    lo, hi = REFERENCE_TARGET - REFERENCE_TOL, REFERENCE_TARGET + REFERENCE_TOL
    add("reference_output", lo <= ref <= hi, ref, f"{REFERENCE_TARGET} +/- {REFERENCE_TOL}")

    best = min(
        _timed(lambda: infer(stable, ref_values)) for _ in range(10)
    )
    add("reference_runtime_ms", best < 10.0, best, "< 10 ms")

    hi_np = _cells(stable, "NPV", NPV_FIXES[2], steps)
    add("stable_high_npv_min", 55 <= hi_np.stats.min <= 65, hi_np.stats.min, "[55, 65]")
    add("stable_high_npv_max", 80 <= hi_np.stats.max <= 90, hi_np.stats.max, "[80, 90]")
    worst = min(_worst_step(hi_np.values, 1), _worst_step(hi_np.values, 0))
    add("stable_high_npv_monotone", worst >= -MONOTONE_TOL, worst, f"worst step >= -{MONOTONE_TOL}")

    mid_dv = _cells(stable, "DIVERS", DIVERS_FIXES[1], steps)  # x=NPV, y=GEN
    npv_coords = mid_dv.x_axis.coords
    floor = float(mid_dv.values[:, npv_coords >= 2e7].min())
    add("stable_mid_divers_floor", floor >= 50.0, floor, ">= 50 for NPV >= 2e7")
    add("stable_mid_divers_max", 65 <= mid_dv.stats.max <= 76, mid_dv.stats.max, "[65, 76]")

    lo_np = _cells(stable, "NPV", NPV_FIXES[0], steps)  # x=GEN, y=DIVERS
    add("stable_low_npv_cap", lo_np.stats.max <= 32.0, lo_np.stats.max, "<= 32")
    worst_d = _worst_step(lo_np.values, 0)  # along DIVERS, per GEN column
    add("stable_low_npv_divers_monotone", worst_d >= -MONOTONE_TOL, worst_d,
        f"worst step >= -{MONOTONE_TOL}")
    gain_low = float(lo_np.values[-1, 0] - lo_np.values[0, 0])
    gain_high = float(lo_np.values[-1, -1] - lo_np.values[0, -1])
    add("stable_low_npv_gain", gain_low >= gain_high - 1e-9, gain_low - gain_high,
        "gain at GEN=0 >= gain at GEN=30")

    mid_np = _cells(growth, "NPV", NPV_FIXES[1], steps)  # x=GEN, y=DIVERS
    add("growth_mid_npv_max", 65 <= mid_np.stats.max <= 76, mid_np.stats.max, "[65, 76]")
    div_coords = mid_np.y_axis.coords
    low_band = float(mid_np.values[div_coords <= 1.25, :].max())
    add("growth_mid_npv_low_divers_cap", low_band < 50.0, low_band, "< 50 for DIVERS <= 1.25")
    top_line = mid_np.values[-1, :]
    add("growth_mid_npv_unimodal", line_verdict(top_line) == "unimodal",
        float(top_line.max()), "unimodal with interior peak at DIVERS=5")

    hi_gr = _cells(growth, "NPV", NPV_FIXES[2], steps)
    add("growth_high_npv_floor", 66 <= hi_gr.stats.min <= 76, hi_gr.stats.min, "[66, 76]")
    add("growth_high_npv_peak", hi_gr.stats.max >= 93.0, hi_gr.stats.max, ">= 93")

    worst_gap = np.inf
    for fixed_var, fixes in (("NPV", NPV_FIXES), ("GEN", GEN_FIXES), ("DIVERS", DIVERS_FIXES)):
        for value in fixes:
            gap = _cells(growth, fixed_var, value, steps).values - \
                _cells(stable, fixed_var, value, steps).values
            worst_gap = min(worst_gap, float(gap.min()))
    add("growth_dominance", worst_gap >= -MONOTONE_TOL, worst_gap,
        f"growth - stable >= -{MONOTONE_TOL} on all 9 shared grids")

    rng = np.random.default_rng(20260810)
    for label, fis in (("stable", stable), ("growth", growth)):
        worst_dev = 0.0
        for var in (*fis.inputs, fis.output):
            lo_u, hi_u = var.universe
            xs = rng.uniform(lo_u, hi_u, size=1000)
            total = np.sum([mf.sample(xs) for _, mf in var.labels], axis=0)
            worst_dev = max(worst_dev, float(np.abs(total - 1.0).max()))
        add(f"partition_sum_{label}", worst_dev <= 1e-9, worst_dev, "<= 1e-9")

    return CalibrationReport(tuple(anchors))


def _timed(fn) -> float:
    start = time.perf_counter()
    fn()
    return (time.perf_counter() - start) * 1000.0

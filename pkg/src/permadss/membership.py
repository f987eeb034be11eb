"""Piecewise-linear membership functions and linguistic variables.

Every value here is immutable after construction and every operation is
pure, so variables can be shared freely across threads.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import FuzzyError, OutOfRangeError

__all__ = [
    "MembershipFunction",
    "triangular",
    "trapezoidal",
    "LinguisticVariable",
    "make_symmetric_partition",
    "CoverageReport",
    "check_coverage",
]


@dataclass(frozen=True)
class MembershipFunction:
    """A triangular ("tri") or trapezoidal ("trap") fuzzy set.

    Breakpoints must be finite and non-decreasing.  Degenerate segments
    (equal breakpoints) are legal: they evaluate as one-sided ramps, and
    a zero-width triangle is 1 at its point and 0 elsewhere.
    """

    kind: str
    params: tuple[float, ...]

    def __post_init__(self):
        expected = {"tri": 3, "trap": 4}.get(self.kind)
        if expected is None:
            raise FuzzyError(f"unknown membership kind {self.kind!r}")
        pts = tuple(float(p) for p in self.params)
        if len(pts) != expected:
            raise FuzzyError(f"{self.kind} needs {expected} breakpoints, got {len(pts)}")
        if any(not math.isfinite(p) for p in pts):
            raise FuzzyError(f"breakpoints must be finite, got {pts}")
        if any(a > b for a, b in zip(pts, pts[1:])):
            raise FuzzyError(f"breakpoints must be non-decreasing, got {pts}")
        object.__setattr__(self, "params", pts)

    @property
    def support(self) -> tuple[float, float]:
        return self.params[0], self.params[-1]

    @property
    def peak(self) -> float:
        """Position of full membership (plateau midpoint for trapezoids)."""
        if self.kind == "tri":
            return self.params[1]
        return (self.params[1] + self.params[2]) / 2.0

    def sample(self, xs: np.ndarray) -> np.ndarray:
        """Vectorised membership degrees for an array of points."""
        xs = np.asarray(xs, dtype=float)
        y = np.zeros_like(xs)
        # np.where evaluates both branches; ramp values outside the mask
        # may overflow on extreme inputs but are discarded.
        with np.errstate(over="ignore", invalid="ignore"):
            if self.kind == "tri":
                a, b, c = self.params
                if b > a:
                    y = np.where((xs > a) & (xs < b), (xs - a) / (b - a), y)
                if c > b:
                    y = np.where((xs > b) & (xs < c), (c - xs) / (c - b), y)
                return np.where(xs == b, 1.0, y)
            a, b, c, d = self.params
            if b > a:
                y = np.where((xs > a) & (xs < b), (xs - a) / (b - a), y)
            if d > c:
                y = np.where((xs > c) & (xs < d), (d - xs) / (d - c), y)
            return np.where((xs >= b) & (xs <= c), 1.0, y)

    def evaluate(self, x: float) -> float:
        """Membership degree of a single crisp value, exact at breakpoints."""
        if not math.isfinite(x):
            raise FuzzyError(f"cannot evaluate membership at non-finite x={x!r}")
        return float(self.sample(np.array([x]))[0])


def triangular(a: float, b: float, c: float) -> MembershipFunction:
    return MembershipFunction("tri", (a, b, c))


def trapezoidal(a: float, b: float, c: float, d: float) -> MembershipFunction:
    return MembershipFunction("trap", (a, b, c, d))


@dataclass(frozen=True)
class LinguisticVariable:
    """A named universe interval with ordered, labelled membership functions.

    Invariants enforced here: lo < hi, every support inside the universe,
    unique label names, and label order matching non-decreasing peaks.
    Point coverage of the universe is checked numerically by
    :func:`check_coverage`.
    """

    name: str
    universe: tuple[float, float]
    labels: tuple[tuple[str, MembershipFunction], ...]

    def __post_init__(self):
        lo, hi = (float(v) for v in self.universe)
        if not (math.isfinite(lo) and math.isfinite(hi)) or not lo < hi:
            raise FuzzyError(f"variable {self.name!r}: invalid universe [{lo!r}, {hi!r}]")
        labels = tuple((str(n), mf) for n, mf in self.labels)
        if not labels:
            raise FuzzyError(f"variable {self.name!r} has no labels")
        names = [n for n, _ in labels]
        if len(set(names)) != len(names):
            raise FuzzyError(f"variable {self.name!r} has duplicate label names")
        for n, mf in labels:
            s_lo, s_hi = mf.support
            if s_lo < lo or s_hi > hi:
                raise FuzzyError(
                    f"variable {self.name!r}: label {n!r} support [{s_lo!r}, {s_hi!r}] "
                    f"lies outside the universe [{lo!r}, {hi!r}]"
                )
        peaks = [mf.peak for _, mf in labels]
        if any(p > q for p, q in zip(peaks, peaks[1:])):
            raise FuzzyError(f"variable {self.name!r}: labels must be ordered by peak position")
        object.__setattr__(self, "universe", (lo, hi))
        object.__setattr__(self, "labels", labels)

    @property
    def label_names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.labels)

    def mf(self, label: str) -> MembershipFunction:
        for n, m in self.labels:
            if n == label:
                return m
        raise FuzzyError(f"variable {self.name!r} has no label {label!r}")

    def fuzzify(self, x: float) -> dict[str, float]:
        """Degrees of every label at crisp x; errors loudly out of range."""
        lo, hi = self.universe
        if not (lo <= x <= hi):
            raise OutOfRangeError(self.name, x, lo, hi)
        return {n: mf.evaluate(x) for n, mf in self.labels}


def make_symmetric_partition(
    name: str, lo: float, hi: float, label_names: Sequence[str]
) -> LinguisticVariable:
    """Triangular Ruspini partition with peaks equally spaced over [lo, hi].

    The first and last labels are half-triangles clamped at the universe
    ends, so membership mass never leaves the declared range and degrees
    sum to 1 at every point.
    """
    n = len(label_names)
    if n < 2:
        raise FuzzyError(f"a symmetric partition needs at least 2 labels, got {n}")
    lo, hi = float(lo), float(hi)
    if not lo < hi:
        raise FuzzyError(f"invalid universe [{lo!r}, {hi!r}]")
    peaks = [lo + i * (hi - lo) / (n - 1) for i in range(n)]
    peaks[-1] = hi
    labels = []
    for i, label in enumerate(label_names):
        a = peaks[i - 1] if i > 0 else lo
        c = peaks[i + 1] if i < n - 1 else hi
        labels.append((label, triangular(a, peaks[i], c)))
    return LinguisticVariable(name, (lo, hi), tuple(labels))


@dataclass(frozen=True)
class CoverageReport:
    """Numeric coverage summary of a variable over sampled points."""

    samples: int
    min_max_degree: float
    uncovered: tuple[float, ...] = field(repr=False)
    ruspini_deviation: float

    @property
    def ok(self) -> bool:
        return not self.uncovered


def check_coverage(v: LinguisticVariable, samples: int = 1001) -> CoverageReport:
    """Sample the universe and report gaps and the worst sum-to-1 deviation."""
    if samples < 2:
        raise FuzzyError(f"need at least 2 samples, got {samples}")
    lo, hi = v.universe
    xs = np.linspace(lo, hi, samples)
    degrees = np.vstack([mf.sample(xs) for _, mf in v.labels])
    max_deg = degrees.max(axis=0)
    total = degrees.sum(axis=0)
    uncovered = tuple(float(x) for x in xs[max_deg == 0.0])
    return CoverageReport(
        samples=samples,
        min_max_degree=float(max_deg.min()),
        uncovered=uncovered,
        ruspini_deviation=float(np.abs(total - 1.0).max()),
    )

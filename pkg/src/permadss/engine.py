"""Mamdani inference: fuzzify, combine antecedents, clip, aggregate, defuzzify.

Operators are fixed to the classic Mamdani set: min for AND and
implication, max for OR and aggregation, centroid defuzzification over a
uniform sample grid of the output universe.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .errors import FuzzyError, NoRuleFiredError
from .membership import LinguisticVariable

__all__ = ["FuzzyRule", "FisDefinition", "InferenceResult", "firing_strength", "defuzz_centroid", "infer"]

_OPERATORS = {
    "and_op": "min",
    "or_op": "max",
    "implication": "min",
    "aggregation": "max",
    "defuzz": "centroid",
}


@dataclass(frozen=True)
class FuzzyRule:
    """One if/then rule: uniform AND or OR over clauses, weighted consequent."""

    antecedent: tuple[tuple[str, str], ...]
    consequent: tuple[str, str]
    connective: str = "and"
    weight: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "antecedent", tuple((str(v), str(l)) for v, l in self.antecedent))
        object.__setattr__(self, "consequent", (str(self.consequent[0]), str(self.consequent[1])))
        object.__setattr__(self, "weight", float(self.weight))
        if not self.antecedent:
            raise FuzzyError("a rule needs at least one antecedent clause")
        if self.connective not in ("and", "or"):
            raise FuzzyError(f"connective must be 'and' or 'or', got {self.connective!r}")
        if len(self.antecedent) == 1:
            # the connective never appears in the textual form of a
            # single-clause rule; normalise so round-trips are exact
            object.__setattr__(self, "connective", "and")
        if not 0.0 < self.weight <= 1.0:
            raise FuzzyError(f"rule weight must be in (0, 1], got {self.weight!r}")


@dataclass(frozen=True)
class FisDefinition:
    """A complete, validated Mamdani system.

    Immutable and shareable: the output grid and the sampled consequent
    sets are precomputed once at construction, so :func:`infer` is pure
    and cheap.
    """

    name: str
    inputs: tuple[LinguisticVariable, ...]
    output: LinguisticVariable
    rules: tuple[FuzzyRule, ...]
    and_op: str = "min"
    or_op: str = "max"
    implication: str = "min"
    aggregation: str = "max"
    defuzz: str = "centroid"
    resolution: int = 1001

    def __post_init__(self):
        object.__setattr__(self, "inputs", tuple(self.inputs))
        object.__setattr__(self, "rules", tuple(self.rules))
        object.__setattr__(self, "resolution", int(self.resolution))
        for key, required in _OPERATORS.items():
            got = getattr(self, key)
            if got != required:
                raise FuzzyError(f"unsupported {key} {got!r}; only {required!r} is implemented")
        if self.resolution < 11:
            raise FuzzyError(f"resolution must be at least 11, got {self.resolution}")
        if not self.rules:
            raise FuzzyError("a system needs at least one rule")
        if not self.inputs:
            raise FuzzyError("a system needs at least one input variable")
        names = [v.name for v in self.inputs] + [self.output.name]
        if len(set(names)) != len(names):
            raise FuzzyError(f"duplicate variable names in {names}")
        by_name = {v.name: v for v in self.inputs}
        for i, rule in enumerate(self.rules):
            seen = set()
            for var, label in rule.antecedent:
                if var not in by_name:
                    raise FuzzyError(f"rule {i}: unknown input variable {var!r}")
                if var in seen:
                    raise FuzzyError(f"rule {i}: variable {var!r} appears in more than one clause")
                seen.add(var)
                if label not in by_name[var].label_names:
                    raise FuzzyError(f"rule {i}: variable {var!r} has no label {label!r}")
            cvar, clabel = rule.consequent
            if cvar != self.output.name:
                raise FuzzyError(f"rule {i}: consequent variable {cvar!r} is not the output")
            if clabel not in self.output.label_names:
                raise FuzzyError(f"rule {i}: output has no label {clabel!r}")

        lo, hi = self.output.universe
        grid = np.linspace(lo, hi, self.resolution)
        grid.flags.writeable = False
        sampled = {}
        for label, mf in self.output.labels:
            arr = mf.sample(grid)
            arr.flags.writeable = False
            sampled[label] = arr
        object.__setattr__(self, "_grid", grid)
        object.__setattr__(self, "_consequent_samples", sampled)

    @property
    def input_names(self) -> tuple[str, ...]:
        return tuple(v.name for v in self.inputs)

    def input(self, name: str) -> LinguisticVariable:
        for v in self.inputs:
            if v.name == name:
                return v
        raise FuzzyError(f"no input variable named {name!r}")

    @property
    def output_grid(self) -> np.ndarray:
        return self._grid


@dataclass(frozen=True)
class InferenceResult:
    """Crisp output plus the full explanation trace of one inference."""

    output: float
    firing: tuple[float, ...]
    grid: np.ndarray = field(repr=False, compare=False)
    aggregate: np.ndarray = field(repr=False, compare=False)


def firing_strength(rule: FuzzyRule, fuzzified: Mapping[str, Mapping[str, float]]) -> float:
    """Combine clause degrees with the rule's connective, then apply weight."""
    degrees = []
    for var, label in rule.antecedent:
        if var not in fuzzified:
            raise FuzzyError(f"no fuzzified degrees for variable {var!r}")
        degrees.append(fuzzified[var][label])
    combined = min(degrees) if rule.connective == "and" else max(degrees)
    return combined * rule.weight


def defuzz_centroid(xs: np.ndarray, mus: np.ndarray) -> float:
    """Centroid of a sampled set via trapezoidal weights on a uniform grid."""
    xs = np.asarray(xs, dtype=float)
    mus = np.asarray(mus, dtype=float)
    if xs.shape != mus.shape or xs.ndim != 1:
        raise FuzzyError("xs and mus must be 1-d arrays of equal length")
    if xs.size < 11:
        raise FuzzyError(f"need at least 11 samples, got {xs.size}")
    w = np.ones_like(mus)
    w[0] = w[-1] = 0.5
    denom = float(np.sum(w * mus))
    if denom == 0.0:
        raise NoRuleFiredError("no rule fired: the aggregated output set is empty")
    return float(np.sum(w * xs * mus)) / denom


def infer(fis: FisDefinition, values: Mapping[str, float]) -> InferenceResult:
    """Run the full Mamdani pipeline for one crisp input vector."""
    expected = set(fis.input_names)
    got = set(values)
    if got != expected:
        missing = sorted(expected - got)
        extra = sorted(got - expected)
        parts = []
        if missing:
            parts.append(f"missing values for {missing}")
        if extra:
            parts.append(f"unexpected values for {extra}")
        raise FuzzyError("; ".join(parts))

    fuzzified = {v.name: v.fuzzify(float(values[v.name])) for v in fis.inputs}
    strengths = tuple(firing_strength(rule, fuzzified) for rule in fis.rules)

    aggregate = np.zeros(fis.resolution)
    samples = fis._consequent_samples
    for rule, s in zip(fis.rules, strengths):
        if s > 0.0:
            np.maximum(aggregate, np.minimum(s, samples[rule.consequent[1]]), out=aggregate)

    output = defuzz_centroid(fis.output_grid, aggregate)
    aggregate.flags.writeable = False
    return InferenceResult(output=output, firing=strengths, grid=fis.output_grid, aggregate=aggregate)

"""Fuzzy decision support for market-permanence scoring of generics labs."""

from .engine import FisDefinition, FuzzyRule, InferenceResult, defuzz_centroid, firing_strength, infer
from .errors import (
    FisParseError,
    FuzzyError,
    NoRuleFiredError,
    OutOfRangeError,
    UnknownScenarioError,
)
from .fistext import parse_fis, serialize_fis
from .membership import (
    CoverageReport,
    LinguisticVariable,
    MembershipFunction,
    check_coverage,
    make_symmetric_partition,
    trapezoidal,
    triangular,
)
from .permanence import (
    SCENARIOS,
    CalibrationReport,
    CashFlowSchedule,
    PermanenceInput,
    build_permanence_fis,
    check_calibration,
    evaluate_permanence,
    npv,
    write_default_models,
)
from .surface import SurfaceGrid, export_grid, grid_from_json, grid_stats, line_verdict, sweep

__version__ = "0.1.0"

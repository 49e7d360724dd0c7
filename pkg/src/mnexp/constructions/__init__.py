"""Explicit witness constructions, each returning a re-verified witness or report."""
from .example42 import cross_orbit_epsilon, example_42, example_system, four_subset_scan, triple_witness
from .four_point import (
    four_orbit_system,
    four_point_witness,
    orbit_four_points,
    shift_degenerate_points,
    shift_four_points,
)
from .hyperexp import (
    HyperexpConstant,
    StructureViolation,
    converse_times,
    hyperexp_constant,
    hyperexp_converse_witness,
    verify_32_expansive,
)
from .peano import InfeasibleEta, peano_witness, spread_points
from .splice import (
    SpliceSpec,
    SpliceSpecError,
    build_splice,
    canonical_splice_spec,
    check_spec,
    marker_point,
    shadow_error,
    wide_splice_spec,
)

__all__ = [
    "HyperexpConstant", "InfeasibleEta", "SpliceSpec", "SpliceSpecError", "StructureViolation",
    "build_splice", "canonical_splice_spec", "check_spec", "converse_times", "cross_orbit_epsilon",
    "example_42", "example_system", "four_orbit_system", "four_point_witness", "four_subset_scan",
    "hyperexp_constant", "hyperexp_converse_witness", "marker_point", "orbit_four_points",
    "peano_witness", "shadow_error", "shift_degenerate_points", "shift_four_points", "spread_points",
    "triple_witness", "verify_32_expansive", "wide_splice_spec",
]

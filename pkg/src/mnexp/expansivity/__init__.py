"""Witnesses against (m, n)-expansiveness and the hierarchy of implications."""
from .classify import classify
from .combine import HypothesisFailure, combine_witnesses
from .hierarchy import (
    IMPLIED,
    OPEN,
    REFUTED,
    CellStatus,
    HierarchyTable,
    audit,
    hierarchy_close,
    monotonicity_violations,
    rule_applies,
)
from .search import BudgetExhausted, PoolDynamics, find_refuting_witness
from .witness import (
    AT_SCALE_ONLY,
    FRAGILITY_MARGIN,
    TAIL_CERTIFIED,
    WINDOW_EXACT,
    FragileWitness,
    WitnessError,
    WitnessSet,
    build_witness,
    compute_profile,
    verify_witness,
)

__all__ = [
    "AT_SCALE_ONLY", "BudgetExhausted", "CellStatus", "FRAGILITY_MARGIN", "FragileWitness",
    "HierarchyTable", "HypothesisFailure", "IMPLIED", "OPEN", "PoolDynamics", "REFUTED",
    "TAIL_CERTIFIED", "WINDOW_EXACT", "WitnessError", "WitnessSet", "audit", "build_witness",
    "classify", "combine_witnesses", "compute_profile", "find_refuting_witness", "hierarchy_close",
    "monotonicity_violations", "rule_applies", "verify_witness",
]

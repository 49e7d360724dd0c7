"""Merge a witness against (m, n) with one against (l, 1)."""
from __future__ import annotations

from ..metric_core import PreconditionError, delta_cardinality, is_delta_separated
from .witness import WitnessError, WitnessSet, build_witness


class HypothesisFailure(PreconditionError):
    """A union-bound hypothesis failed at a specific iterate ``k``."""

    def __init__(self, hypothesis: str, k: int, message: str):
        super().__init__(hypothesis, f"k={k}: {message}")
        self.k = k


def combine_witnesses(system, W1: WitnessSet, W2: WitnessSet) -> WitnessSet:
    """Union witness at radius ``W1.delta + W2.delta``.

    ``W1`` refutes (m, n) at eps and ``W2`` refutes (l, 1) at delta.  With
    ``r = |A1 & A2|`` the union refutes (m + l - r, n + 1 - r).  The profile of
    the union is recomputed; the union bound is only used as a cross-check at
    every iterate.
    """
    if W1.system is not W2.system or W1.system is not system:
        raise WitnessError("witnesses come from different systems")
    eps, delta = W1.delta, W2.delta
    m, n = W1.claim
    l, one = W2.claim
    if one != 1:
        raise WitnessError(f"second witness must refute (l, 1), got {W2.claim}")
    window = min(W1.window, W2.window)
    A, B = list(W1.points), list(W2.points)
    common = [p for p in A if p in set(B)]
    r = len(common)
    for k in range(-window, window + 1):
        fA, fB = system.iterate_set(A, k), system.iterate_set(B, k)
        if delta_cardinality(fB, delta, system.dist) != 1:
            raise HypothesisFailure("|B|_delta=1", k, "the second set splits at its own radius")
        # separation of A only matters when the sets share a point
        if r and not is_delta_separated(fA, delta, system.dist):
            raise HypothesisFailure("|A|=|A|_delta", k, "the first set is not delta-separated")
    union = A + [p for p in B if p not in set(A)]
    radius = eps + delta
    W = build_witness(
        system, union, radius, window, claim=(m + l - r, n + 1 - r),
        notes=[f"union of {W1.witness_id} and {W2.witness_id}, {r} shared point(s)"],
    )
    for k in range(-window, window + 1):
        predicted = W1.profile_at(k) + W2.profile_at(k) - r
        if W.profile_at(k) > predicted:
            raise WitnessError(f"union profile {W.profile_at(k)} exceeds the predicted bound {predicted} at k={k}")
    return W

"""Triples {x, y, z} with y on the stable and z on the unstable segment of x (cat map)."""
from __future__ import annotations

from itertools import combinations
from typing import Sequence

from ..metric_core import PreconditionError
from ..systems import CatMap
from ..systems.torus import LAMBDA, STABLE, UNSTABLE
from ..expansivity import WitnessSet, build_witness, verify_witness

ETA_FLOOR = 1e-12


class InfeasibleEta(PreconditionError):
    def __init__(self, message: str):
        super().__init__("lambda^K * eta < delta'", message)


def _offset(p, v, eta):
    return ((p[0] + eta * v[0]) % 1.0, (p[1] + eta * v[1]) % 1.0)


def peano_witness(system: CatMap, base: Sequence, delta: float, window: int,
                  delta_prime: float | None = None, eta: float | None = None) -> WitnessSet:
    """Witness of size 3n against (3n, 2n) on the window.

    Each base point x gets ``y = x + eta * stable`` and ``z = x + eta * unstable``;
    ``eta`` defaults to ``delta' / (2 lambda^K)`` so both segments stay inside
    ``delta'`` over the window.
    """
    base = list(base)
    if not base:
        raise PreconditionError("n>=1", "need at least one base point")
    dp = delta / 2 if delta_prime is None else delta_prime
    if not 0 < dp < delta:
        raise PreconditionError("0<delta'<delta", f"delta' = {dp}")
    for p, q in combinations(base, 2):
        if not system.dist(p, q) > 2 * dp:
            raise PreconditionError("dist(x_i,x_j)>2delta'", f"base points {p} and {q} are too close")
    if window > system.max_window:
        raise PreconditionError("window", f"window {window} exceeds {system.max_window}, where rounding dominates")
    growth = LAMBDA ** window
    if eta is None:
        eta = dp / (2 * growth)
        if eta < ETA_FLOOR:
            raise InfeasibleEta(f"eta = {eta:.3g} is below the precision floor {ETA_FLOOR}")
    elif not eta > 0:
        raise InfeasibleEta(f"eta = {eta!r} must be positive")
    elif not growth * eta < dp:
        raise InfeasibleEta(f"lambda^{window} * eta = {growth * eta:.3g} >= delta' = {dp}")
    points = []
    for x in base:
        points += [x, _offset(x, STABLE, eta), _offset(x, UNSTABLE, eta)]
    for i in range(0, len(points), 3):
        x, y, z = points[i:i + 3]
        for k in range(window + 1):
            if system.dist(system.iterate(x, k), system.iterate(y, k)) > dp:
                raise PreconditionError("stable segment", f"y leaves the delta' ball at k={k}")
            if system.dist(system.iterate(x, -k), system.iterate(z, -k)) > dp:
                raise PreconditionError("unstable segment", f"z leaves the delta' ball at k={-k}")
    n = len(base)
    W = build_witness(system, points, delta, window, claim=(3 * n, 2 * n),
                      notes=[f"eta = {eta!r}, delta' = {dp!r}"])
    verify_witness(system, W)
    return W


def spread_points(n: int, seed: int = 0, min_dist: float = 0.2, system: CatMap | None = None) -> list:
    """``n`` seeded torus points with pairwise distance above ``min_dist``."""
    import random
    cat = system or CatMap()
    rng = random.Random(seed)
    pts: list = []
    while len(pts) < n:
        p = (rng.random(), rng.random())
        if all(cat.dist(p, q) > min_dist for q in pts):
            pts.append(p)
    return pts

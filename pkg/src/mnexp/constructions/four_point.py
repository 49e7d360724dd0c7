"""Four points built from a forward-asymptotic pair and a backward-asymptotic pair."""
from __future__ import annotations

from ..metric_core import PreconditionError
from ..systems import DynamicalSystem, OrbitPoint, OrbitSystem, ShiftSystem, SymbolicPoint
from ..expansivity import WitnessSet, build_witness, verify_witness


def _check_asymptotic(system: DynamicalSystem, p, q, delta, window: int, direction: int, name: str) -> None:
    for step in range(window + 1):
        k = direction * step
        d = system.dist(system.iterate(p, k), system.iterate(q, k))
        if not d < delta:
            raise PreconditionError(name, f"distance {d} >= delta at k={k}")
    tail = system.sup_distance_beyond(p, q, window, direction)
    if tail is None or not tail < delta:
        side = "k > window" if direction > 0 else "k < -window"
        raise PreconditionError(name, f"no tail bound below delta for {side} (got {tail})")


def four_point_witness(system: DynamicalSystem, delta, x1, x2, y1, y2, window: int) -> WitnessSet:
    """Witness ``{x1, x2, y1, y2}`` against (|A|, |A| - 1).

    Requires ``dist(f^k x1, f^k x2) < delta`` for every k >= 0 and
    ``dist(f^k y1, f^k y2) < delta`` for every k <= 0, each checked on the
    window and extended by the system's tail bound.  Coinciding inputs shrink
    the set and the claim with it.
    """
    if x1 == x2 or y1 == y2:
        raise PreconditionError("distinct pairs", "each asymptotic pair needs two different points")
    _check_asymptotic(system, x1, x2, delta, window, 1, "forward pair within delta")
    _check_asymptotic(system, y1, y2, delta, window, -1, "backward pair within delta")
    A = list(dict.fromkeys([x1, x2, y1, y2]))
    W = build_witness(system, A, delta, window, claim=(len(A), len(A) - 1))
    verify_witness(system, W)
    return W


def shift_four_points(system: ShiftSystem, far: int = 20, flip: int = 3) -> tuple:
    """Distinct points on the full shift: x1, x2 differ only at ``-flip`` and
    y1, y2 only at ``flip``; tails of 1s beyond ``far`` keep the pairs apart."""
    n = system.alphabet_size
    x1 = SymbolicPoint((1,), (0,) * far, (0,), -far, n)
    x2 = SymbolicPoint((1,), tuple(1 if i == -flip else 0 for i in range(-far, 0)), (0,), -far, n)
    y1 = SymbolicPoint((0,), (0,) * far, (1,), 0, n)
    y2 = SymbolicPoint((0,), tuple(1 if i == flip else 0 for i in range(far)), (1,), 0, n)
    return x1, x2, y1, y2


def shift_degenerate_points(system: ShiftSystem, flip: int = 3) -> tuple:
    """x1 = y1 = the zero sequence; the set has only three points."""
    zero = SymbolicPoint.constant(0, system.alphabet_size)
    return zero, system.point({-flip: 1}), zero, system.point({flip: 1})


def four_orbit_system() -> OrbitSystem:
    """Two repellers and two attractors; o1 and o2 share their attractor,
    o1 and o3 share their repeller."""
    from ..systems import FixedPoint, Orbit
    return OrbitSystem(
        [FixedPoint("r1", "repeller", 0.0), FixedPoint("a1", "attractor", 1.0),
         FixedPoint("r2", "repeller", 2.0), FixedPoint("a2", "attractor", -1.0)],
        [Orbit("o1", "r1", "a1", 0.25), Orbit("o2", "r2", "a1", 0.125), Orbit("o3", "r1", "a2", 0.375)],
        name="four-orbit",
    )


def orbit_four_points(system: OrbitSystem, delta: float) -> tuple:
    """Points far enough along their orbits that each pair stays within delta."""
    s = max(system.limit_time(OrbitPoint("o1", 0), delta / 2, 1), system.limit_time(OrbitPoint("o2", 0), delta / 2, 1))
    b = max(system.limit_time(OrbitPoint("o1", 0), delta / 2, -1), system.limit_time(OrbitPoint("o3", 0), delta / 2, -1))
    return OrbitPoint("o1", s), OrbitPoint("o2", s), OrbitPoint("o1", -b), OrbitPoint("o3", -b)

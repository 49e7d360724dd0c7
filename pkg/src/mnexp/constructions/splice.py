"""Shadow points of x/y concatenations on the full shift.

Each shadow ``w^l`` follows ``x`` before the cut ``a_l`` and ``y`` from it on.
On the full shift the concatenation itself is a true orbit, so shadowing is
exact and its accuracy is an explicit power of two at every iterate.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..systems import ShiftSystem, SymbolicPoint, shift_apply, shift_dist, splice
from ..expansivity import WitnessSet, build_witness, verify_witness


class SpliceSpecError(ValueError):
    """A splice specification violates one of its invariants."""

    def __init__(self, invariant: str, message: str):
        super().__init__(f"{invariant}: {message}")
        self.invariant = invariant


@dataclass(frozen=True)
class SpliceSpec:
    """``x``, ``y``; cuts ``a_l`` and return times ``b_l = markers[l]``.

    ``jump`` bounds ``dist(f^{a_l} x, f^{a_l} y)``; ``rho`` is the gap the
    markers must exceed, and shadows must stay within ``rho / 2``.
    """

    x: SymbolicPoint
    y: SymbolicPoint
    markers: tuple
    cuts: tuple
    m: int
    epsilon: Fraction
    rho: Fraction | None = None
    jump: Fraction | None = None
    window: int = 600
    system: ShiftSystem = field(default_factory=ShiftSystem, compare=False)

    @property
    def radius(self) -> Fraction:
        return self.rho if self.rho is not None else Fraction(3, 4) * Fraction(self.epsilon)

    @property
    def jump_bound(self) -> Fraction:
        return self.jump if self.jump is not None else self.radius / 2

    def with_m(self, m: int) -> "SpliceSpec":
        return SpliceSpec(self.x, self.y, self.markers, self.cuts, m, self.epsilon, self.rho, self.jump,
                          self.window, self.system)

    def to_json(self) -> dict:
        return {
            "x": self.x.to_json(), "y": self.y.to_json(),
            "markers": list(self.markers), "cuts": list(self.cuts), "m": self.m,
            "epsilon": str(self.epsilon), "rho": str(self.radius), "jump": str(self.jump_bound),
            "window": self.window,
        }


def marker_point(markers, alphabet_size: int = 2) -> SymbolicPoint:
    return SymbolicPoint.from_support({t: 1 for t in markers}, 0, alphabet_size)


def canonical_splice_spec(window: int = 600) -> SpliceSpec:
    """Markers at 2^l for l = 1..8, each cut midway through the gap before its marker."""
    markers = tuple(2 ** l for l in range(1, 9))
    cuts = tuple((prev + t) // 2 for prev, t in zip((0,) + markers[:-1], markers))
    return SpliceSpec(SymbolicPoint.constant(0), marker_point(markers), markers, cuts, 8, Fraction(1, 8),
                      window=window)


def wide_splice_spec(m: int = 8, window: int = 600) -> SpliceSpec:
    """Markers at 2^(l+3), wide enough for every shadow to stay within rho/2."""
    markers = tuple(2 ** (l + 3) for l in range(1, 9))
    cuts = tuple((prev + t) // 2 for prev, t in zip((0,) + markers[:-1], markers))
    return SpliceSpec(SymbolicPoint.constant(0), marker_point(markers), markers, cuts, m, Fraction(1, 8),
                      window=window)


def shadow_error(spec: SpliceSpec, l: int) -> Fraction:
    """``sup_k dist(f^k w^l, z^l_k)`` for the concatenation w^l (1-based l)."""
    x, y, a = spec.x, spec.y, spec.cuts[l - 1]
    diff = [i for i in _difference_indices(x, y)]
    after = [i for i in diff if i >= a]
    before = [i for i in diff if i < a]
    err = Fraction(0)
    # k < a: w^l and x differ first at the smallest difference >= a
    if after:
        err = max(err, Fraction(1, 2 ** (after[0] - (a - 1))))
    # k >= a: w^l and y differ last at the largest difference < a
    if before:
        err = max(err, Fraction(1, 2 ** (a - before[-1])))
    return err


def _difference_indices(x: SymbolicPoint, y: SymbolicPoint) -> list[int]:
    lo = min(x.core_offset, y.core_offset)
    hi = max(x.end, y.end)
    for i in list(range(lo - 64, lo)) + list(range(hi, hi + 64)):
        if x[i] != y[i]:
            raise SpliceSpecError("finite difference", "x and y must differ at finitely many indices")
    return [i for i in range(lo, hi) if x[i] != y[i]]


def check_spec(spec: SpliceSpec) -> None:
    """Raise SpliceSpecError naming the first invariant that fails."""
    if spec.m < 1 or spec.m > len(spec.cuts) or len(spec.cuts) != len(spec.markers):
        raise SpliceSpecError("count", f"m = {spec.m} with {len(spec.cuts)} cuts and {len(spec.markers)} markers")
    eps, rho = Fraction(spec.epsilon), spec.radius
    if not 0 < rho < eps:
        raise SpliceSpecError("0<rho<epsilon", f"rho = {rho}, epsilon = {eps}")
    order = []
    for a, b in zip(spec.cuts[:spec.m], spec.markers[:spec.m]):
        order += [a, b]
    if any(u >= v for u, v in zip(order, order[1:])):
        raise SpliceSpecError("a_1<b_1<a_2<...", f"cuts {list(spec.cuts[:spec.m])} and markers "
                              f"{list(spec.markers[:spec.m])} interleave wrongly")
    for l in range(1, spec.m + 1):
        a, b = spec.cuts[l - 1], spec.markers[l - 1]
        d = shift_dist(shift_apply(spec.x, a), shift_apply(spec.y, a))
        if not d < spec.jump_bound:
            raise SpliceSpecError("dist at cut < jump", f"l={l}: distance {d} at a_l={a}")
        d = shift_dist(shift_apply(spec.x, b), shift_apply(spec.y, b))
        if not d > rho:
            raise SpliceSpecError("dist at marker > rho", f"l={l}: distance {d} at b_l={b}")
        err = shadow_error(spec, l)
        if not err < rho / 2:
            raise SpliceSpecError("shadow within rho/2", f"l={l}: shadow error {err} >= rho/2 = {rho / 2}")


def build_splice(spec: SpliceSpec) -> WitnessSet:
    """Witness ``{w^1, ..., w^m}`` against (m, 2) at radius epsilon."""
    check_spec(spec)
    shadows = [splice(spec.x, spec.y, a) for a in spec.cuts[:spec.m]]
    if len(set(shadows)) != len(shadows):
        raise SpliceSpecError("distinct shadows", "two shadow points coincide")
    W = build_witness(spec.system, shadows, Fraction(spec.epsilon), spec.window,
                      claim=(spec.m, min(2, spec.m)),
                      notes=["concatenation shadows: exact orbits, accuracy "
                             + ", ".join(str(shadow_error(spec, l)) for l in range(1, spec.m + 1))])
    verify_witness(spec.system, W)
    return W

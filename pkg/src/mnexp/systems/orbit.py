"""Countable compacta made of finitely many orbits.

The space consists of fixed points and wandering orbits, each orbit running
from a fixed point (its alpha-limit) to another (its omega-limit).  A point is
either the id of a fixed point or an ``OrbitPoint(orbit_id, t)``.  Distances
are Euclidean distances of the planar embedding

    fixed point e           -> (e, 0)
    (o, t)                  -> (e_a + (e_w - e_a) / (1 + 2**-t), lane_o * 2**-|t|)

which makes every orbit point isolated and gives the explicit tail bound
``dist((o, t), limit) < C_o * 2**-|t|`` with ``C_o = hypot(e_w - e_a, lane_o)``.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, NamedTuple, Sequence

from ..metric_core import delta_cardinality
from .base import DynamicalSystem, TailCertificate

KINDS = ("attractor", "repeller", "saddle")


class UnknownPoint(KeyError):
    pass


class OrbitSystemError(ValueError):
    pass


@dataclass(frozen=True)
class FixedPoint:
    id: str
    kind: str
    anchor: float


@dataclass(frozen=True)
class Orbit:
    id: str
    alpha: str
    omega: str
    lane: float


class OrbitPoint(NamedTuple):
    orbit: str
    t: int


def orbit_apply(system: "OrbitSystem", p, k: int):
    """``f^k(p)``: fixed points stay put, ``(o, t)`` moves to ``(o, t + k)``."""
    if isinstance(p, tuple):
        if p[0] not in system.orbit_map:
            raise UnknownPoint(p)
        return OrbitPoint(p[0], p[1] + k)
    if p not in system.fixed_map:
        raise UnknownPoint(p)
    return p


def embed(system: "OrbitSystem", p) -> tuple[float, float]:
    if isinstance(p, tuple):
        o = system.orbit_map[p[0]]
        ea = system.fixed_map[o.alpha].anchor
        ew = system.fixed_map[o.omega].anchor
        t = p[1]
        return (ea + (ew - ea) / (1.0 + 2.0 ** -t), o.lane * 2.0 ** -abs(t))
    return (system.fixed_map[p].anchor, 0.0)


def embed_exact(system: "OrbitSystem", p) -> tuple[Fraction, Fraction]:
    if isinstance(p, tuple):
        o = system.orbit_map[p[0]]
        ea = Fraction(system.fixed_map[o.alpha].anchor)
        ew = Fraction(system.fixed_map[o.omega].anchor)
        t = p[1]
        return (ea + (ew - ea) / (1 + Fraction(2) ** -t), Fraction(o.lane) * Fraction(2) ** -abs(t))
    return (Fraction(system.fixed_map[p].anchor), Fraction(0))


class OrbitSystem(DynamicalSystem):
    kind = "orbit"
    exact = True  # iteration is exact; distances are doubles from a closed form

    def __init__(self, fixed_points: Sequence[FixedPoint], orbits: Sequence[Orbit] = (),
                 name: str = "orbit", injectivity_truncation: int = 48):
        self.fixed_points = tuple(fixed_points)
        self.orbits = tuple(orbits)
        self._name = name
        self.fixed_map = {f.id: f for f in self.fixed_points}
        self.orbit_map = {o.id: o for o in self.orbits}
        self._validate(injectivity_truncation)
        self._embed_cache: dict = {}

    @property
    def name(self) -> str:
        return self._name

    def _validate(self, truncation: int) -> None:
        if not self.fixed_points:
            raise OrbitSystemError("at least one fixed point is required")
        if len(self.fixed_map) != len(self.fixed_points) or len(self.orbit_map) != len(self.orbits):
            raise OrbitSystemError("duplicate ids")
        if set(self.fixed_map) & set(self.orbit_map):
            raise OrbitSystemError("fixed point and orbit ids must differ")
        for f in self.fixed_points:
            if f.kind not in KINDS:
                raise OrbitSystemError(f"unknown kind {f.kind!r} for {f.id}")
        if len({f.anchor for f in self.fixed_points}) != len(self.fixed_points):
            raise OrbitSystemError("anchors must be distinct")
        lanes = [o.lane for o in self.orbits]
        if any(not lane > 0 for lane in lanes) or len(set(lanes)) != len(lanes):
            raise OrbitSystemError("lane heights must be positive and distinct per orbit")
        for o in self.orbits:
            if o.alpha not in self.fixed_map or o.omega not in self.fixed_map:
                raise OrbitSystemError(f"orbit {o.id} has an unknown limit")
            if o.alpha == o.omega:
                raise OrbitSystemError(f"orbit {o.id} must connect two distinct fixed points")
            if self.fixed_map[o.alpha].kind == "attractor":
                raise OrbitSystemError(f"orbit {o.id} leaves the attractor {o.alpha}")
            if self.fixed_map[o.omega].kind == "repeller":
                raise OrbitSystemError(f"orbit {o.id} enters the repeller {o.omega}")
        seen = set()
        for p in self.truncation(truncation):
            e = embed_exact(self, p)
            if e in seen:
                raise OrbitSystemError(f"embedding is not injective (collision at {p!r})")
            seen.add(e)

    # -- structure ---------------------------------------------------------------
    def is_hyperexpansive_structure(self) -> bool:
        """Every orbit runs from a repeller to an attractor."""
        return all(
            self.fixed_map[o.alpha].kind == "repeller" and self.fixed_map[o.omega].kind == "attractor"
            for o in self.orbits
        )

    def truncation(self, T: int) -> list:
        """Fixed points followed by ``(o, t)`` for ``|t| <= T``."""
        pts: list = [f.id for f in self.fixed_points]
        for o in self.orbits:
            pts.extend(OrbitPoint(o.id, t) for t in range(-T, T + 1))
        return pts

    def tail_constant(self, orbit_id: str) -> float:
        o = self.orbit_map[orbit_id]
        return math.hypot(self.fixed_map[o.omega].anchor - self.fixed_map[o.alpha].anchor, o.lane)

    def limit(self, p, direction: int):
        """The omega-limit (direction +1) or alpha-limit (-1) of p."""
        if isinstance(p, tuple):
            o = self.orbit_map[p[0]]
            return o.omega if direction > 0 else o.alpha
        return p

    def limit_time(self, p, eta: float, direction: int) -> int:
        """Smallest s >= 0 such that ``dist(f^{dk} p, limit) < eta`` for all k >= s.

        Uses the closed-form bound, so the answer is certified (it may be
        larger than the true first time, never smaller)."""
        if not isinstance(p, tuple):
            return 0
        C = self.tail_constant(p[0])
        t = p[1] if direction > 0 else -p[1]
        # need t + s >= 0 and C * 2**-(t + s) <= eta
        need = max(0, math.ceil(math.log2(C / eta))) if eta < C else 0
        while C * 2.0 ** -need > eta:
            need += 1
        return max(0, need - t)

    # -- DynamicalSystem ---------------------------------------------------------
    def iterate(self, p, k):
        return orbit_apply(self, p, k)

    def embed(self, p):
        e = self._embed_cache.get(p)
        if e is None:
            e = self._embed_cache[p] = embed(self, p)
        return e

    def dist(self, p, q):
        a, b = self.embed(p), self.embed(q)
        return math.hypot(a[0] - b[0], a[1] - b[1])

    def sample(self, size, seed):
        pool = self.truncation(max(4, size))
        if size > len(pool):
            raise ValueError("requested more points than the truncation holds")
        return random.Random(seed).sample(pool, size)

    def to_config(self):
        return {
            "kind": "orbit",
            "name": self._name,
            "fixed_points": [{"id": f.id, "kind": f.kind, "anchor": f.anchor} for f in self.fixed_points],
            "orbits": [{"id": o.id, "alpha": o.alpha, "omega": o.omega, "lane": o.lane} for o in self.orbits],
        }

    def point_to_json(self, p):
        return [p[0], p[1]] if isinstance(p, tuple) else p

    def point_from_json(self, data):
        if isinstance(data, list):
            return OrbitPoint(data[0], int(data[1]))
        if data not in self.fixed_map:
            raise UnknownPoint(data)
        return data

    # -- certified tails ---------------------------------------------------------
    def sup_distance_beyond(self, p, q, window, direction):
        if self.limit(p, direction) != self.limit(q, direction):
            return None
        # beyond `settle` both points are on the monotone side of their limit
        settle = window + 1
        for x in (p, q):
            if isinstance(x, tuple):
                t = x[1] if direction > 0 else -x[1]
                settle = max(settle, -t)
        exact = max(
            (self.dist(self.iterate(p, direction * k), self.iterate(q, direction * k))
             for k in range(window + 1, settle + 1)),
            default=0.0,
        )
        bound = 0.0
        for x in (p, q):
            if isinstance(x, tuple):
                t = x[1] if direction > 0 else -x[1]
                bound += self.tail_constant(x[0]) * 2.0 ** -(t + settle)
        return max(exact, bound)

    def profile_tail(self, points, delta, window):
        pts = list(points)
        if not pts:
            return TailCertificate(window, 0, 0, "empty set")
        if delta <= 0:
            n = len(set(pts))
            return TailCertificate(window, n, n, "delta = 0: f is injective")
        bounds = []
        notes = []
        for direction in (1, -1):
            # beyond `settle` every point is within delta/2 of its limit, so
            # points sharing a limit are pairwise within delta
            settle = window
            for p in pts:
                settle = max(settle, self.limit_time(p, delta / 2, direction))
            exact = [self.profile_value(pts, delta, direction * k) for k in range(window + 1, settle + 1)]
            clusters = len({self.limit(p, direction) for p in pts})
            bounds.append(max(exact + [clusters]))
            side = "k >" if direction > 0 else "k <"
            notes.append(
                f"{side} {'' if direction > 0 else '-'}{settle}: all points within delta/2 of "
                f"{clusters} limit fixed point(s)"
            )
        reason = "closed-form tail bound C*2^-|t|; " + "; ".join(notes) + "; values in between checked exactly"
        return TailCertificate(window, bounds[0], bounds[1], reason)


def orbit_system_from_config(cfg: dict) -> OrbitSystem:
    fixed = [FixedPoint(str(f["id"]), f.get("kind", "saddle"), float(f["anchor"])) for f in cfg["fixed_points"]]
    orbits = [
        Orbit(str(o["id"]), str(o["alpha"]), str(o["omega"]), float(o["lane"])) for o in cfg.get("orbits", [])
    ]
    return OrbitSystem(fixed, orbits, name=cfg.get("name", "orbit"))


def canonical_one_orbit() -> OrbitSystem:
    """Repeller at 0, attractor at 1, one connecting orbit on lane 1/4."""
    return OrbitSystem(
        [FixedPoint("r", "repeller", 0.0), FixedPoint("a", "attractor", 1.0)],
        [Orbit("o", "r", "a", 0.25)],
        name="one-orbit",
    )


def pairwise_min(system: OrbitSystem, points: Iterable) -> float:
    return min(system.dist(p, q) for p, q in combinations(list(points), 2))

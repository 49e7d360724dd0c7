"""Orbit systems whose orbits run from repellers to attractors.

``hyperexp_constant`` computes a scale at which every three distinct points
are eventually told apart, ``verify_32_expansive`` checks that claim on a
truncation, and ``hyperexp_converse_witness`` builds m-point sets that a
delta-observer never counts above three.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from ..systems import OrbitPoint, OrbitSystem
from ..expansivity import WitnessSet, build_witness, verify_witness

MARGIN = 0.01
DEFAULT_TRUNCATION = 40


class StructureViolation(ValueError):
    """Some orbit does not run from a repeller to an attractor."""


@dataclass(frozen=True)
class ConditionMinimum:
    family: str
    value: float
    attained: str

    def to_json(self) -> dict:
        return {"family": self.family, "value": self.value, "attained": self.attained}


@dataclass(frozen=True)
class HyperexpConstant:
    delta: float
    truncation: int
    margin: float
    conditions: tuple = field(default_factory=tuple)

    @property
    def binding(self) -> ConditionMinimum:
        return min(self.conditions, key=lambda c: c.value)

    def to_json(self) -> dict:
        return {
            "delta": self.delta,
            "truncation": self.truncation,
            "margin": self.margin,
            "binding": self.binding.family,
            "conditions": [c.to_json() for c in self.conditions],
        }


def _require_structure(system: OrbitSystem) -> None:
    if not system.is_hyperexpansive_structure():
        bad = [o.id for o in system.orbits
               if system.fixed_map[o.alpha].kind != "repeller" or system.fixed_map[o.omega].kind != "attractor"]
        raise StructureViolation(f"orbits {bad} do not run from a repeller to an attractor")


def _tail(system: OrbitSystem, orbit_id: str, T: int) -> float:
    """Bound on the distance from ``(o, t)`` to its limit once ``|t| > T``."""
    return system.tail_constant(orbit_id) * 2.0 ** -T


def _pt(o: str, t: int) -> OrbitPoint:
    return OrbitPoint(o, t)


def _families(system: OrbitSystem, T: int) -> list[ConditionMinimum]:
    d = system.dist
    fixed = [f.id for f in system.fixed_points]
    attractors = [f.id for f in system.fixed_points if f.kind == "attractor"]
    repellers = [f.id for f in system.fixed_points if f.kind == "repeller"]
    orbits = [o.id for o in system.orbits]
    out: list[ConditionMinimum] = []

    def best(family, candidates):
        cands = list(candidates)
        if cands:
            value, where = min(cands, key=lambda c: c[0])
            out.append(ConditionMinimum(family, value, where))

    best("fixed points pairwise", ((d(p, q), f"{p} vs {q}") for p, q in combinations(fixed, 2)))

    def isolation():
        pts = system.truncation(T)
        for o in orbits:
            q = _pt(o, 0)
            for p in pts:
                if p != q:
                    yield d(p, q), f"({o},0) vs {system.point_to_json(p)}"
            # points beyond the truncation sit within the tail bound of a fixed point
            for o2 in orbits:
                for f in (system.limit(_pt(o2, 0), 1), system.limit(_pt(o2, 0), -1)):
                    yield d(f, q) - _tail(system, o2, T), f"({o},0) vs tail of {o2} near {f}"
    best("representatives isolated", isolation())

    def attractor_vs_past():
        for p in attractors:
            for o in orbits:
                for k in range(-T, 1):
                    yield d(p, _pt(o, k)), f"{p} vs ({o},{k})"
                alpha = system.limit(_pt(o, 0), -1)
                yield d(p, alpha) - _tail(system, o, T), f"{p} vs tail of {o} near {alpha}"
    best("attractors vs backward orbits", attractor_vs_past())

    def repeller_vs_future():
        for p in repellers:
            for o in orbits:
                for k in range(0, T + 1):
                    yield d(p, _pt(o, k)), f"{p} vs ({o},{k})"
                omega = system.limit(_pt(o, 0), 1)
                yield d(p, omega) - _tail(system, o, T), f"{p} vs tail of {o} near {omega}"
    best("repellers vs forward orbits", repeller_vs_future())

    def future_vs_past():
        for x in orbits:
            wx = system.limit(_pt(x, 0), 1)
            for y in orbits:
                ay = system.limit(_pt(y, 0), -1)
                for k in range(1, T + 1):
                    for l in range(-T, 0):
                        yield d(_pt(x, k), _pt(y, l)), f"({x},{k}) vs ({y},{l})"
                for l in range(-T, 0):
                    yield d(wx, _pt(y, l)) - _tail(system, x, T), f"tail of {x} near {wx} vs ({y},{l})"
                for k in range(1, T + 1):
                    yield d(_pt(x, k), ay) - _tail(system, y, T), f"({x},{k}) vs tail of {y} near {ay}"
                yield d(wx, ay) - _tail(system, x, T) - _tail(system, y, T), f"tails of {x} and {y}"
    best("forward vs backward orbits", future_vs_past())
    return out


def hyperexp_constant(system: OrbitSystem, truncation: int = DEFAULT_TRUNCATION,
                      margin: float = MARGIN) -> HyperexpConstant:
    """``(1 - margin)`` times the least certified lower bound over the condition families.

    Families: distinct fixed points; isolation of each orbit representative
    ``(o, 0)``; attractors against backward orbits; repellers against forward
    orbits; forward against backward orbit points.  Each is minimised exactly
    on ``|t| <= truncation`` and bounded beyond it by the embedding's tail
    constants, so the recorded values are lower bounds for the infima.
    """
    _require_structure(system)
    conditions = _families(system, truncation)
    lowest = min(c.value for c in conditions)
    if not lowest > 0:
        raise StructureViolation(f"condition minimum {lowest} is not positive; raise the truncation")
    return HyperexpConstant((1 - margin) * lowest, truncation, margin, tuple(conditions))


def _q_time(p) -> int:
    """k with f^k(p) equal to the orbit representative (o, 0)."""
    return -p[1]


def _separated(system: OrbitSystem, triple, k: int, delta) -> bool:
    img = [system.iterate(p, k) for p in triple]
    return all(system.dist(a, b) > delta for a, b in combinations(img, 2))


def _case_time(system: OrbitSystem, triple) -> tuple[str, int]:
    fixed = [p for p in triple if not isinstance(p, tuple)]
    moving = sorted((p for p in triple if isinstance(p, tuple)), key=_q_time)
    if len(fixed) == 3:
        return "three fixed", 0
    if len(fixed) == 2:
        return "two fixed", _q_time(moving[0])
    if len(fixed) == 1:
        times = [_q_time(p) for p in moving]
        if system.fixed_map[fixed[0]].kind == "repeller":
            # both moving points must be at or after the representative
            return "repeller and two wandering", max(times)
        return "attractor and two wandering", min(times)
    return "three wandering", _q_time(moving[1])


def verify_32_expansive(system: OrbitSystem, delta: float, truncation: int = 30, window: int | None = None) -> dict:
    """Check every 3-subset of the truncation for a separating iterate.

    The iterate suggested by the case analysis is tried first; if it fails,
    the window ``|k| <= window`` is scanned.  Triples not separated anywhere in
    the window are failures.
    """
    _require_structure(system)
    K = truncation if window is None else window
    pts = system.truncation(truncation)
    failures = []
    cases: dict[str, int] = {}
    fallbacks = 0
    repeller_min_misses = 0
    for triple in combinations(pts, 3):
        case, k = _case_time(system, triple)
        cases[case] = cases.get(case, 0) + 1
        if case == "repeller and two wandering":
            k_min = min(_q_time(p) for p in triple if isinstance(p, tuple))
            if not _separated(system, triple, k_min, delta):
                repeller_min_misses += 1
        if _separated(system, triple, k, delta):
            continue
        fallbacks += 1
        if any(_separated(system, triple, j, delta) for j in range(-K, K + 1)):
            continue
        failures.append([system.point_to_json(p) for p in triple])
    return {
        "delta": delta,
        "truncation": truncation,
        "window": K,
        "triples": sum(cases.values()),
        "cases": dict(sorted(cases.items())),
        "case_rule_misses": fallbacks,
        "repeller_min_rule_misses": repeller_min_misses,
        "failure_count": len(failures),
        "failures": failures[:20],
        "tail_note": (
            f"points with |t| > {truncation} lie within C*2^-{truncation} of their limit fixed points; "
            "the same case analysis applies to them with the certified constants"
        ),
    }


def _first_orbit(system: OrbitSystem, orbit_id: str | None):
    for o in system.orbits:
        if orbit_id in (None, o.id):
            return o
    raise KeyError(f"no orbit {orbit_id!r}")


def converse_times(system: OrbitSystem, delta: float, orbit_id: str | None = None) -> tuple[int, int]:
    """``(k1, k2)``: the orbit stays within delta of its repeller up to k1 and
    of its attractor from k2 on."""
    o = _first_orbit(system, orbit_id)
    x = _pt(o.id, 0)
    back = system.limit_time(x, delta, -1)
    fwd = system.limit_time(x, delta, 1)
    k1 = -back
    while k1 + 1 <= fwd and system.dist(_pt(o.id, k1 + 1), o.alpha) < delta:
        k1 += 1
    k2 = fwd
    while k2 - 1 >= -back and system.dist(_pt(o.id, k2 - 1), o.omega) < delta:
        k2 -= 1
    return k1, k2


def hyperexp_converse_witness(system: OrbitSystem, delta: float, m: int, orbit_id: str | None = None,
                              window: int | None = None) -> WitnessSet:
    """``m`` points spaced ``l = k2 - k1`` apart along one orbit; claim (m, 3).

    When delta is so large that ``l < 1`` the spacing is widened to 1.
    """
    _require_structure(system)
    if m <= 3:
        raise ValueError("the converse construction needs m > 3")
    o = _first_orbit(system, orbit_id)
    k1, k2 = converse_times(system, delta, o.id)
    notes = [f"k1 = {k1}, k2 = {k2}"]
    l = k2 - k1
    if l < 1:
        l = 1
        notes.append("spacing widened to 1")
    points = [_pt(o.id, -k1 + i * l) for i in range(m)]
    K = window if window is not None else abs(k1) + (m - 1) * l + abs(k2) + 1
    W = build_witness(system, points, delta, K, claim=(m, 3), notes=notes)
    verify_witness(system, W)
    return W

"""Three fixed points a, b, c joined by orbits x: a -> b and y: b -> c.

Triples ``{u, b, v}`` with u late on x and v early on y are never counted
above two, at any scale.  At the scale computed here no four points are
ever counted above two on the truncation.
"""
from __future__ import annotations

from itertools import combinations

from ..systems import FixedPoint, Orbit, OrbitPoint, OrbitSystem
from ..expansivity import HierarchyTable, audit, build_witness, hierarchy_close, verify_witness
from .hyperexp import MARGIN

DEFAULT_TRUNCATION = 25


def example_system(anchors=(0.0, 1.0, 2.0), lanes=(0.25, 0.125)) -> OrbitSystem:
    return OrbitSystem(
        [FixedPoint("a", "repeller", anchors[0]), FixedPoint("b", "saddle", anchors[1]),
         FixedPoint("c", "attractor", anchors[2])],
        [Orbit("x", "a", "b", lanes[0]), Orbit("y", "b", "c", lanes[1])],
        name="three-fixed-two-orbits",
    )


def triple_witness(system: OrbitSystem, epsilon: float, window: int | None = None):
    """``{u, b, v}`` with ``u = f^{k0}(x)``, ``v = f^{-k0}(y)``; claim (3, 2)."""
    k0 = max(system.limit_time(OrbitPoint("x", 0), epsilon, 1), system.limit_time(OrbitPoint("y", 0), epsilon, -1))
    u, v = OrbitPoint("x", k0), OrbitPoint("y", -k0)
    K = window if window is not None else k0 + 1
    W = build_witness(system, [u, "b", v], epsilon, K, claim=(3, 2), notes=[f"k0 = {k0}"])
    verify_witness(system, W)
    return k0, W


def cross_orbit_epsilon(system: OrbitSystem, truncation: int = DEFAULT_TRUNCATION, margin: float = MARGIN) -> dict:
    """Scale for the four-point check, with each contributing minimum recorded.

    Besides keeping the past of x away from all of y and all of x away from the
    future of y, the scale stays below the fixed-point gaps and below the
    isolation radius of every orbit point (o, 0).
    """
    d = system.dist
    T = truncation
    tail = {o.id: system.tail_constant(o.id) * 2.0 ** -T for o in system.orbits}
    terms = {}

    def low(name, values):
        value, where = min(values, key=lambda c: c[0])
        terms[name] = {"value": value, "attained": where}

    X = [OrbitPoint("x", t) for t in range(-T, T + 1)]
    Y = [OrbitPoint("y", t) for t in range(-T, T + 1)]
    low("past of x vs y", [(d(p, q), f"{list(p)} vs {list(q)}") for p in X if p[1] <= 0 for q in Y]
        + [(d(p, "c") - tail["y"], f"{list(p)} vs tail of y") for p in X if p[1] <= 0]
        + [(d("a", q) - tail["x"], f"tail of x vs {list(q)}") for q in Y])
    low("x vs future of y", [(d(p, q), f"{list(p)} vs {list(q)}") for p in X for q in Y if q[1] >= 0]
        + [(d(p, "c") - tail["y"], f"{list(p)} vs tail of y") for p in X]
        + [(d("b", q) - tail["x"], f"tail of x vs {list(q)}") for q in Y if q[1] >= 0])
    low("fixed points pairwise", [(d(p, q), f"{p} vs {q}") for p, q in combinations("abc", 2)])
    pts = system.truncation(T)
    iso = []
    for o in ("x", "y"):
        q = OrbitPoint(o, 0)
        iso += [(d(p, q), f"({o},0) vs {system.point_to_json(p)}") for p in pts if p != q]
        iso += [(d(f, q) - max(tail.values()), f"({o},0) vs tails near {f}") for f in "abc"]
    low("orbit points isolated", iso)
    lowest = min(t["value"] for t in terms.values())
    return {"epsilon": (1 - margin) * lowest, "margin": margin, "truncation": T, "terms": terms}


def four_subset_scan(system: OrbitSystem, epsilon: float, truncation: int = DEFAULT_TRUNCATION,
                     window: int | None = None) -> dict:
    """Exhaustively look for 4-subsets of the truncation never counted above two.

    A 4-set stays at most two at every k iff none of its four triples is ever
    epsilon-separated, so triples are screened first with per-pair bitmasks
    over the window.
    """
    pts = system.truncation(truncation)
    n = len(pts)
    if window is None:
        settle = max(system.limit_time(OrbitPoint(o.id, 0), epsilon / 2, s) for o in system.orbits for s in (1, -1))
        window = truncation + settle + 1
    ks = range(-window, window + 1)
    images = [[system.iterate(p, k) for p in pts] for k in ks]
    sep = {}
    for i, j in combinations(range(n), 2):
        bits = 0
        for b, img in enumerate(images):
            if system.dist(img[i], img[j]) > epsilon:
                bits |= 1 << b
        sep[(i, j)] = bits
    # bad[(i, j)]: bitmask of l such that the triple {i, j, l} is never separated
    bad: dict = {}
    bad_triples = 0
    for i, j, l in combinations(range(n), 3):
        if not (sep[(i, j)] & sep[(i, l)] & sep[(j, l)]):
            bad_triples += 1
            for a, b, c in ((i, j, l), (i, l, j), (j, l, i)):
                bad[(a, b)] = bad.get((a, b), 0) | (1 << c)
    refuting = []
    for i, j, l in combinations(range(n), 3):
        if not (bad.get((i, j), 0) >> l) & 1:
            continue
        common = bad.get((i, j), 0) & bad.get((i, l), 0) & bad.get((j, l), 0)
        common >>= l + 1
        m = l + 1
        while common:
            if common & 1:
                refuting.append([system.point_to_json(pts[q]) for q in (i, j, l, m)])
            common >>= 1
            m += 1
    return {
        "epsilon": epsilon,
        "truncation": truncation,
        "window": window,
        "points": n,
        "never_separated_triples": bad_triples,
        "refuting_4_subsets": len(refuting),
        "examples": refuting[:10],
    }


def example_42(epsilon: float = 0.01, truncation: int = DEFAULT_TRUNCATION, system: OrbitSystem | None = None) -> dict:
    """Both halves in one report, plus what the closure derives from refuted(3, 2)."""
    system = system or example_system()
    k0, W = triple_witness(system, epsilon)
    scale = cross_orbit_epsilon(system, truncation)
    scan = four_subset_scan(system, scale["epsilon"], truncation)
    table = HierarchyTable()
    table.refute(3, 2, epsilon, W.witness_id, W.label)
    closed = hierarchy_close(table)
    return {
        "system": system.to_config(),
        "not_32": {"epsilon": epsilon, "k0": k0, "witness": W.to_json(), "profile_csv": W.profile_csv()},
        "scale_for_42": scale,
        "no_42_on_truncation": scan,
        "hierarchy": {
            "table": closed.to_json(),
            "rendered": closed.render(),
            "audit": audit(closed),
            "refuted_2_1": closed.is_refuted(2, 1),
        },
    }

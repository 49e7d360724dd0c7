"""Property suite and canonical construction runs behind ``mnexp selftest``.

Each check raises on failure; the report lists every check and names the
first one that failed.  ``inject`` plants a known fault so the suite can be
seen to catch it: ``"asymmetric"`` corrupts the bundled distance table and
``"margin"`` moves a float witness to within the fragility margin of delta.
"""
from __future__ import annotations

import json
import random
from fractions import Fraction
from importlib import resources
from typing import Callable

from .constructions import (
    build_splice,
    example_42,
    four_orbit_system,
    four_point_witness,
    hyperexp_constant,
    hyperexp_converse_witness,
    orbit_four_points,
    peano_witness,
    shift_four_points,
    spread_points,
    verify_32_expansive,
    wide_splice_spec,
)
from .expansivity import FragileWitness, HierarchyTable, build_witness, classify, hierarchy_close
from .hyperspace import Compactum, hausdorff_dist
from .metric_core import FiniteMetricSpace, MetricError, delta_cardinality, delta_cardinality_bruteforce, verify_union_bound
from .randomized import probe_deltas, random_space, union_bound_instance
from .systems import CatMap, Rotation, ShiftSystem, canonical_one_orbit

INJECTIONS = ("asymmetric", "margin")
SEED = 20240


class CheckFailed(AssertionError):
    pass


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise CheckFailed(message)


def bundled_space_table() -> dict:
    return json.loads(resources.files("mnexp").joinpath("data/example_space.json").read_text())


def check_metric_validation(inject: str | None) -> str:
    data = bundled_space_table()
    if inject == "asymmetric":
        data["dist"][0][1] += 0.25
    try:
        space = FiniteMetricSpace.from_json(data)
    except MetricError as exc:
        raise CheckFailed(f"bundled distance table rejected: {exc}") from exc
    bad = bundled_space_table()
    bad["dist"][1][0] += 0.25
    try:
        FiniteMetricSpace.from_json(bad)
    except MetricError:
        return f"bundled table valid ({len(space)} points); asymmetric copy rejected"
    raise CheckFailed("an asymmetric table was accepted")


def check_oracle_equivalence(inject: str | None, spaces: int = 500) -> str:
    rng = random.Random(SEED)
    cases = 0
    for _ in range(spaces):
        space = random_space(rng)
        for delta in probe_deltas(rng, space):
            fast, slow = delta_cardinality(space, delta), delta_cardinality_bruteforce(space, delta)
            _require(fast == slow, f"clique search {fast} != brute force {slow} at delta {delta} on {space.to_json()}")
            cases += 1
    return f"{cases} cases agree"


def check_union_bound(inject: str | None, instances: int = 1000) -> str:
    rng = random.Random(SEED + 1)
    equal = 0
    for _ in range(instances):
        A, B, delta, eps, metric = union_bound_instance(rng)
        res = verify_union_bound(A, B, delta, eps, metric)
        _require(res.holds, f"bound fails: lhs {res.lhs} > rhs {res.rhs} for A={A}, B={B}, delta={delta}, eps={eps}")
        equal += res.lhs == res.rhs
    _require(equal >= 50, f"only {equal} instances attain equality")
    return f"{instances} instances hold, {equal} with equality"


def check_hausdorff(inject: str | None, triples: int = 500, pairs: int = 100) -> str:
    rng = random.Random(SEED + 2)
    system = Rotation()

    def compactum():
        return Compactum(system, [rng.random() for _ in range(rng.randint(1, 6))])

    for _ in range(triples):
        A, B, C = compactum(), compactum(), compactum()
        _require(hausdorff_dist(A, A) == 0, "d_H(A, A) != 0")
        _require(hausdorff_dist(A, B) == hausdorff_dist(B, A), "d_H not symmetric")
        _require(hausdorff_dist(A, C) <= hausdorff_dist(A, B) + hausdorff_dist(B, C) + 1e-12, "triangle inequality fails")
        _require((hausdorff_dist(A, B) == 0) == (A == B), "d_H zero on distinct sets")
    for _ in range(pairs):
        a, b = rng.random(), rng.random()
        _require(hausdorff_dist(Compactum(system, [a]), Compactum(system, [b])) == system.dist(a, b),
                 "singleton distance differs from the point distance")
    return f"{triples} triples, {pairs} singleton pairs"


def check_witness_margin(inject: str | None) -> str:
    system, delta = Rotation(), 0.1
    # two points closer than delta are never told apart by the isometry
    gap = delta - (1e-8 if inject == "margin" else 0.05)
    try:
        W = build_witness(system, [0.0, gap], delta, 10, claim=(2, 1))
    except FragileWitness as exc:
        raise CheckFailed(f"witness rejected as numerically fragile: {exc}") from exc
    try:
        build_witness(system, [0.0, delta - 1e-8], delta, 10, claim=(2, 1))
    except FragileWitness:
        return f"robust witness accepted ({W.label}); fragile one rejected"
    raise CheckFailed("a witness within the margin of delta was accepted")


def check_four_point(inject: str | None) -> str:
    shift = ShiftSystem()
    W1 = four_point_witness(shift, Fraction(1, 4), *shift_four_points(shift), 30)
    orbit = four_orbit_system()
    W2 = four_point_witness(orbit, 0.1, *orbit_four_points(orbit, 0.1), 30)
    for W in (W1, W2):
        _require(W.claim == (4, 3) and W.tail is not None, f"unexpected witness {W.claim}, {W.label}")
    return "shift and orbit witnesses claim (4, 3), tail-certified"


def check_peano(inject: str | None) -> str:
    system = CatMap()
    base = spread_points(1, SEED, 0.2, system)
    W = peano_witness(system, base, 2e-3, 15)
    _require(W.claim == (3, 2), f"unexpected claim {W.claim}")
    return f"claim (3, 2), {W.label}"


def check_splice(inject: str | None) -> str:
    W = build_splice(wide_splice_spec())
    _require(W.claim == (8, 2) and W.max_profile <= 2, f"unexpected splice witness {W.claim}")
    return f"claim (8, 2), {W.label}"


def check_hyperexp(inject: str | None) -> str:
    system = canonical_one_orbit()
    const = hyperexp_constant(system)
    res = verify_32_expansive(system, const.delta, 30)
    _require(res["failure_count"] == 0, f"{res['failure_count']} triples never separated")
    coarse = verify_32_expansive(system, 10 * const.delta, 30)
    _require(coarse["failure_count"] > 0, "the constant is vacuous: 10x delta still separates everything")
    for m in (4, 5):
        W = hyperexp_converse_witness(system, const.delta, m)
        _require(W.max_profile <= 3 and W.tail is not None, f"converse witness m={m} failed")
    return f"delta {const.delta:.6g}; {res['triples']} triples separated; converse m=4,5 hold"


def check_example_42(inject: str | None) -> str:
    report = example_42()
    _require(report["no_42_on_truncation"]["refuting_4_subsets"] == 0, "a (4, 2)-refuting 4-subset exists")
    return f"(3, 2) refuted at k0 = {report['not_32']['k0']}; no (4, 2) witness on the truncation"


def check_hierarchy(inject: str | None) -> str:
    table = HierarchyTable()
    table.refute(3, 2, 0.01, "w", "tail-certified")
    once = hierarchy_close(table)
    _require(hierarchy_close(once) == once, "closure is not idempotent")
    return f"{len(once.refuted_cells())} cells after closure; idempotent"


def check_rotation_classify(inject: str | None) -> str:
    system = Rotation()
    table, report = classify(system, system.arc_pool(8), [0.1], 10, seed=SEED)
    direct = table.direct_cells()
    _require(len(direct) == len(table.grid()), f"only {len(direct)} of {len(table.grid())} cells refuted directly")
    return "every grid cell refuted directly"


CHECKS: list[tuple[str, Callable[[str | None], str]]] = [
    ("metric validation", check_metric_validation),
    ("oracle equivalence", check_oracle_equivalence),
    ("union bound battery", check_union_bound),
    ("hausdorff identities", check_hausdorff),
    ("witness margin check", check_witness_margin),
    ("four-point construction", check_four_point),
    ("peano construction", check_peano),
    ("splice construction", check_splice),
    ("hyper-expansive construction", check_hyperexp),
    ("three fixed points example", check_example_42),
    ("hierarchy closure", check_hierarchy),
    ("rotation control", check_rotation_classify),
]


def run_selftest(inject: str | None = None) -> tuple[dict, int]:
    if inject is not None and inject not in INJECTIONS:
        raise ValueError(f"unknown fault injection {inject!r}; choose from {INJECTIONS}")
    results = []
    first = None
    for name, check in CHECKS:
        try:
            detail, ok = check(inject), True
        except Exception as exc:  # every failure is reported, not just assertion failures
            detail, ok = f"{type(exc).__name__}: {exc}", False
            first = first or name
        results.append({"check": name, "ok": ok, "detail": detail})
    report = {"inject": inject, "checks": results, "first_failure": first}
    return report, 0 if first is None else 1

"""Acceptance criteria, one test each; every test prints a PASS or FAIL line.

Run on its own with ``pytest tests/test_acceptance.py -v -s`` to see the lines,
or ``python tests/test_acceptance.py`` for the lines alone.
"""
from __future__ import annotations

import json
import random
import time
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

import pytest

from mnexp.constructions import (
    build_splice,
    canonical_splice_spec,
    example_system,
    four_orbit_system,
    four_point_witness,
    hyperexp_constant,
    hyperexp_converse_witness,
    orbit_four_points,
    shift_degenerate_points,
    shift_four_points,
    verify_32_expansive,
)
from mnexp.expansivity import TAIL_CERTIFIED, HierarchyTable, audit, hierarchy_close
from mnexp.experiments import load_config, run_config
from mnexp.hyperspace import Compactum, hausdorff_dist
from mnexp.metric_core import delta_cardinality, delta_cardinality_bruteforce, verify_union_bound
from mnexp.randomized import probe_deltas, random_space, union_bound_instance
from mnexp.reporting import dumps
from mnexp.systems import Rotation, ShiftSystem, canonical_one_orbit

CONFIGS = Path(__file__).resolve().parents[1] / "configs"
GRID = 8
QUARTER = Fraction(1, 4)


def verdict(number, ok: bool, detail: str) -> bool:
    print(f"criterion {number}: {'PASS' if ok else 'FAIL'}: {detail}")
    return ok


@lru_cache(maxsize=None)
def config_run(name: str) -> tuple[str, int]:
    report, status = run_config(load_config(CONFIGS / name))
    return dumps(report), status


def cells(report_text: str) -> dict:
    return json.loads(report_text)["results"]["table"]["cells"]


# -- criteria -----------------------------------------------------------------------------


def criterion_1() -> bool:
    rng = random.Random(1)
    start = time.perf_counter()
    cases = agree = 0
    for _ in range(500):
        space = random_space(rng, 12)
        for delta in probe_deltas(rng, space, 3):
            cases += 1
            agree += delta_cardinality(space, delta) == delta_cardinality_bruteforce(space, delta)
    elapsed = time.perf_counter() - start
    return verdict(1, agree == cases and elapsed < 10,
                   f"{agree}/{cases} solver/oracle agreements in {elapsed:.2f} s")


def criterion_2() -> bool:
    rng = random.Random(2)
    holds = equal = 0
    for _ in range(1000):
        res = verify_union_bound(*union_bound_instance(rng))
        holds += res.holds
        equal += res.lhs == res.rhs
    return verdict(2, holds == 1000 and equal >= 50, f"inequality holds {holds}/1000, equality in {equal}")


def criterion_3() -> bool:
    shift = ShiftSystem()
    orbit = four_orbit_system()
    runs = {
        "shift": four_point_witness(shift, QUARTER, *shift_four_points(shift), 30),
        "orbit": four_point_witness(orbit, 0.1, *orbit_four_points(orbit, 0.1), 30),
        "shift, x1 = y1": four_point_witness(shift, QUARTER, *shift_degenerate_points(shift), 30),
    }
    ok = True
    parts = []
    for name, W in runs.items():
        size = len(W.points)
        good = (all(v < size for v in W.profile) and W.label == TAIL_CERTIFIED and W.claim == (size, size - 1))
        ok &= good
        parts.append(f"{name} claim {W.claim} max {W.max_profile} {W.label}")
    ok &= runs["shift"].claim == (4, 3) and runs["orbit"].claim == (4, 3)
    return verdict(3, ok, "; ".join(parts))


def criterion_4() -> bool:
    """Literal parameters: markers 2^l, epsilon 1/8, m = 8, window 600."""
    try:
        W = build_splice(canonical_splice_spec(600))
    except Exception as exc:
        return verdict(4, False, f"build_splice with markers 2^l: {exc}")
    ok = len(set(W.points)) == 8 and W.max_profile <= 2 and W.label == TAIL_CERTIFIED
    text, _ = config_run("classify-shift.json")
    table = cells(text)
    ok &= all(table[f"{m},2"]["status"] != "open" for m in range(3, GRID + 1))
    return verdict(4, ok, f"canonical splice max {W.max_profile} {W.label}")


def criterion_4_consequence() -> bool:
    """classify on the shift, seeded with the widely spaced splice shadows."""
    text, status = config_run("classify-shift.json")
    table = cells(text)
    refuted = [m for m in range(3, GRID + 1) if table[f"{m},2"]["status"] != "open"]
    ok = status == 0 and refuted == list(range(3, GRID + 1))
    return verdict("4 (classify, markers 2^(l+3))", ok, f"(m,2) refuted for m in {refuted}")


def criterion_5() -> bool:
    s = canonical_one_orbit()
    const = hyperexp_constant(s)
    res = verify_32_expansive(s, const.delta, 30)
    vac = verify_32_expansive(s, 10 * const.delta, 30)
    ok = const.delta > 0 and res["failure_count"] == 0 and vac["failure_count"] >= 1
    return verdict(5, ok, f"delta {const.delta:.6g}; {res['triples']} triples, {res['failure_count']} failures; "
                          f"{vac['failure_count']} failures at 10*delta")


def criterion_6() -> bool:
    s = canonical_one_orbit()
    delta = hyperexp_constant(s).delta
    ok = True
    for m in (4, 5):
        W = hyperexp_converse_witness(s, delta, m)
        ok &= W.max_profile <= 3 and W.label == TAIL_CERTIFIED
    text, status = config_run("classify-orbit.json")
    table = cells(text)
    ok &= status == 0
    ok &= all(table[f"{m},3"]["status"] != "open" for m in range(4, GRID + 1))
    ok &= table["3,2"]["status"] == "open"
    return verdict(6, ok, f"(m,3) refuted for m > 3: {all(table[f'{m},3']['status'] != 'open' for m in range(4, 9))}; "
                          f"(3,2) {table['3,2']['status']}")


def criterion_7() -> bool:
    text, status = config_run("example-42.json")
    res = json.loads(text)["results"]
    w = res["not_32"]["witness"]
    scan = res["no_42_on_truncation"]
    ok = (status == 0 and res["not_32"]["epsilon"] == 0.01 and w["claim"] == [3, 2] and w["profile_max"] <= 2
          and "b" in w["points"] and scan["truncation"] == 25 and scan["refuting_4_subsets"] == 0)
    return verdict(7, ok, f"triple {w['points']} max {w['profile_max']}; "
                          f"{scan['refuting_4_subsets']} refuting 4-subsets at epsilon {scan['epsilon']:.5f}")


def criterion_8() -> bool:
    system = example_system()
    table = HierarchyTable(GRID)
    table.refute(3, 2, 0.01, "seed", TAIL_CERTIFIED)
    closed = hierarchy_close(table)
    idempotent = hierarchy_close(closed) == closed
    clean = audit(closed) == []
    ok = closed.is_refuted(2, 1) and idempotent and clean
    return verdict(8, ok, f"system {system.name}: refuted {closed.refuted_cells()}; "
                          f"(2,1) refuted: {closed.is_refuted(2, 1)}; idempotent {idempotent}; audit clean {clean}")


def criterion_9() -> bool:
    text, status = config_run("rotation.json")
    res = json.loads(text)["results"]
    table = res["table"]["cells"]
    direct = all(table[f"{m},{n}"]["status"] == "refuted" for m in range(2, GRID + 1) for n in range(1, m))
    ones = all(row.split(",")[1] == "1" for csv in res["profiles"].values() for row in csv.splitlines()[1:])
    return verdict(9, status == 0 and direct and ones, f"all cells direct {direct}; profiles identically 1 {ones}")


def criterion_10() -> bool:
    rng = random.Random(10)
    s = Rotation()

    def compactum():
        return Compactum(s, [rng.random() for _ in range(rng.randint(1, 6))])

    bad = 0
    for _ in range(500):
        A, B, C = compactum(), compactum(), compactum()
        bad += not hausdorff_dist(A, C) <= hausdorff_dist(A, B) + hausdorff_dist(B, C) + 1e-12
        bad += hausdorff_dist(A, A) != 0 or hausdorff_dist(A, B) != hausdorff_dist(B, A)
        bad += (hausdorff_dist(A, B) == 0) != (A == B)
    exact = sum(hausdorff_dist(Compactum(s, [a]), Compactum(s, [b])) == s.dist(a, b)
                for a, b in ((rng.random(), rng.random()) for _ in range(100)))
    return verdict(10, bad == 0 and exact == 100, f"{bad} property violations on 500 triples; {exact}/100 exact")


DETERMINISM_CONFIGS = ("four-point-shift.json", "four-point-shift-degenerate.json", "four-point-orbit.json",
                       "splice-canonical.json", "splice.json", "hyperexp.json", "classify-orbit.json",
                       "example-42.json")


def criterion_11() -> bool:
    differing = []
    for name in DETERMINISM_CONFIGS:
        first, _ = config_run(name)
        again = dumps(run_config(load_config(CONFIGS / name))[0])
        if first != again:
            differing.append(name)
    return verdict(11, not differing, f"{len(DETERMINISM_CONFIGS) - len(differing)}/{len(DETERMINISM_CONFIGS)} "
                                      f"reports byte-identical on rerun")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_4_consequence, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10, criterion_11]


@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda f: f.__name__)
def test_acceptance(criterion, capsys):
    with capsys.disabled():
        ok = criterion()
    assert ok


if __name__ == "__main__":
    results = [c() for c in CRITERIA]
    print(f"{sum(results)}/{len(results)} criteria pass")

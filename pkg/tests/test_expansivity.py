import dataclasses
from fractions import Fraction

import pytest

from mnexp.expansivity import (
    AT_SCALE_ONLY,
    IMPLIED,
    OPEN,
    REFUTED,
    TAIL_CERTIFIED,
    WINDOW_EXACT,
    BudgetExhausted,
    FragileWitness,
    HierarchyTable,
    HypothesisFailure,
    WitnessError,
    audit,
    build_witness,
    classify,
    combine_witnesses,
    find_refuting_witness,
    hierarchy_close,
    monotonicity_violations,
    rule_applies,
    verify_witness,
)
from mnexp.expansivity.hierarchy import arrows
from mnexp.systems import CatMap, Rotation, ShiftSystem, SymbolicPoint, canonical_one_orbit

# -- witnesses ------------------------------------------------------------------------


def test_rotation_witness_is_tail_certified():
    W = build_witness(Rotation(), [0.0, 0.01, 0.02], 0.1, 5, claim=(3, 1))
    assert W.profile == (1,) * 11 and W.label == TAIL_CERTIFIED
    assert verify_witness(Rotation(), W)


def test_witness_rejects_overclaim():
    with pytest.raises(WitnessError):
        build_witness(Rotation(), [0.0, 0.5], 0.1, 3, claim=(2, 1))


def test_witness_rejects_duplicates():
    with pytest.raises(WitnessError):
        build_witness(Rotation(), [0.0, 0.0], 0.1, 3)


def test_fragile_float_witness_rejected():
    with pytest.raises(FragileWitness):
        build_witness(Rotation(), [0.0, 0.1 + 1e-8], 0.1, 3)


def test_exact_ties_are_not_fragile():
    # dyadic distances equal to delta are decided exactly on the shift
    s = ShiftSystem()
    p, q = SymbolicPoint.constant(0), SymbolicPoint.from_support({2: 1})
    assert s.dist(p, q) == Fraction(1, 4)
    W = build_witness(s, [p, q], Fraction(1, 4), 0, claim=(2, 1), with_tail=False)
    assert W.profile == (1,)


def test_tampered_profile_detected():
    W = build_witness(Rotation(), [0.0, 0.01], 0.1, 3, claim=(2, 1))
    bad = dataclasses.replace(W, profile=(1, 1, 1, 2, 1, 1, 1))
    with pytest.raises(WitnessError):
        verify_witness(Rotation(), bad)


def test_cat_witness_is_at_scale_only():
    W = build_witness(CatMap(), [(0.1, 0.1), (0.1 + 1e-9, 0.1)], 0.01, 5, claim=(2, 1))
    assert W.label == AT_SCALE_ONLY and W.tail is None


def test_orbit_witness_without_tail_is_window_exact():
    s = canonical_one_orbit()
    W = build_witness(s, ["r", "a"], 2.0, 3, claim=(2, 1), with_tail=False)
    assert W.label == WINDOW_EXACT


def test_attained_tail_above_claim_rejects_the_witness():
    # the pair agrees on |i| <= 40 but differs at 45: separated once k reaches 42
    s = ShiftSystem()
    p, q = SymbolicPoint.constant(0), SymbolicPoint.from_support({45: 1})
    with pytest.raises(WitnessError, match="beyond the window"):
        build_witness(s, [p, q], Fraction(1, 8), 20, claim=(2, 1))


def test_witness_id_and_csv_are_stable():
    W1 = build_witness(Rotation(), [0.0, 0.01], 0.1, 2, claim=(2, 1))
    W2 = build_witness(Rotation(), [0.0, 0.01], 0.1, 2, claim=(2, 1))
    assert W1.witness_id == W2.witness_id and W1.witness_id.startswith("w-")
    assert W1.profile_csv().splitlines() == ["k,profile", "-2,1", "-1,1", "0,1", "1,1", "2,1"]


# -- search ---------------------------------------------------------------------------


def test_rotation_search_finds_profile_one():
    s = Rotation()
    for m, n in [(2, 1), (5, 3), (8, 7)]:
        W = find_refuting_witness(s, m, n, 0.1, 10, s.arc_pool(m))
        assert W is not None and W.claim == (m, n) and set(W.profile) == {1}


def test_cat_pairs_all_separate():
    s = CatMap()
    assert find_refuting_witness(s, 2, 1, 0.05, 10, s.sample(30, 3)) is None


def test_search_is_lexicographically_first():
    s = Rotation()
    pool = s.arc_pool(6, 0.0, 0.05) + s.arc_pool(6, 0.5, 0.05)
    W = find_refuting_witness(s, 3, 1, 0.1, 5, pool)
    assert list(W.points) == pool[:3]


def test_thread_count_does_not_change_result(monkeypatch):
    s = ShiftSystem()
    pool = s.sample(14, 2)
    results = []
    for threads in ("1", "4"):
        monkeypatch.setenv("MNEXP_THREADS", threads)
        W = find_refuting_witness(s, 3, 2, Fraction(1, 4), 6, pool)
        results.append(None if W is None else W.witness_id)
    assert results[0] == results[1]


def test_local_search_gives_up_with_budget():
    s = CatMap()
    with pytest.raises(BudgetExhausted):
        find_refuting_witness(s, 4, 1, 0.05, 6, s.sample(40, 1), budget=50, restarts=3)


def test_local_search_finds_clustered_witness():
    s = Rotation()
    pool = s.sample(30, 5) + s.arc_pool(6, 0.9, 0.03)
    W = find_refuting_witness(s, 6, 1, 0.1, 5, pool, budget=100, seed=1)
    assert W.max_profile == 1


def test_search_rejects_bad_cell():
    with pytest.raises(ValueError):
        find_refuting_witness(Rotation(), 2, 2, 0.1, 3, [0.0, 0.1])


# -- combination --------------------------------------------------------------------


def test_combine_disjoint():
    s = Rotation()
    W1 = build_witness(s, [0.0, 0.02, 0.5], 0.1, 6, claim=(3, 2))
    W2 = build_witness(s, [0.75, 0.77], 0.1, 6, claim=(2, 1))
    W = combine_witnesses(s, W1, W2)
    assert W.claim == (5, 3) and W.delta == pytest.approx(0.2)
    assert all(W.profile_at(k) <= W1.profile_at(k) + W2.profile_at(k) for k in range(-6, 7))


def test_combine_sharing_one_point():
    s = Rotation()
    W1 = build_witness(s, [0.0, 0.3, 0.6], 0.35, 6, claim=(3, 2))
    W2 = build_witness(s, [0.6, 0.65], 0.1, 6, claim=(2, 1))
    W = combine_witnesses(s, W1, W2)
    assert W.claim == (4, 2)
    assert verify_witness(s, W)


def test_combine_names_the_failing_hypothesis():
    s = Rotation()
    W1 = build_witness(s, [0.0, 0.02, 0.5], 0.1, 4, claim=(3, 2))
    W2 = build_witness(s, [0.5, 0.52], 0.1, 4, claim=(2, 1))
    with pytest.raises(HypothesisFailure) as info:
        combine_witnesses(s, W1, W2)
    assert info.value.hypothesis == "|A|=|A|_delta" and info.value.k == -4


# -- hierarchy ----------------------------------------------------------------------


def closed_from(*cells, max_m=8):
    t = HierarchyTable(max_m)
    for m, n in cells:
        t.refute(m, n, 0.1, "w", TAIL_CERTIFIED)
    return hierarchy_close(t)


def test_empty_table_stays_empty():
    assert closed_from().refuted_cells() == []


def test_r1_from_32_pads_along_the_diagonal():
    closed = closed_from((3, 2))
    assert closed.refuted_cells() == [(3, 2), (4, 3), (5, 4), (6, 5), (7, 6), (8, 7)]
    assert not closed.is_refuted(2, 1)
    assert closed[(4, 3)].rule == "R1" and closed[(4, 3)].premises == ((3, 2),)


def test_r3_from_21():
    closed = closed_from((2, 1))
    for n in (2, 3, 4):
        assert closed.is_refuted(2 * n, n)
    # not expansive says nothing about 2-expansiveness
    assert not closed.is_refuted(3, 1)


def test_r3_derivation_recorded():
    closed = closed_from((3, 1))
    assert closed[(6, 2)].kind == IMPLIED
    assert closed.is_refuted(6, 2)


def test_r2_combines_two_cells():
    t = HierarchyTable(8)
    t.refute(3, 2, 0.1)
    t.refute(3, 1, 0.1)
    closed = hierarchy_close(t)
    assert closed.is_refuted(6, 3)
    assert rule_applies("R2", (6, 3), [(3, 2), (3, 1)])


def test_rule_checker_rejects_bad_steps():
    assert not rule_applies("R1", (2, 1), [(3, 2)])
    assert not rule_applies("R2", (6, 3), [(3, 2), (3, 2)])
    assert not rule_applies("R3", (5, 2), [(2, 1)])


def test_closure_idempotent_monotone_and_audited():
    for seeds in [((3, 2),), ((4, 1),), ((5, 3), (3, 1)), ((2, 1),), ((6, 2), (4, 3))]:
        once = closed_from(*seeds)
        assert hierarchy_close(once) == once
        assert audit(once) == []
        assert monotonicity_violations(once) == []
        bigger = closed_from(*seeds, (7, 2))
        assert set(once.refuted_cells()) <= set(bigger.refuted_cells())


def test_audit_catches_forged_derivation():
    closed = closed_from((3, 2))
    forged = closed.copy()
    forged.cells[(2, 1)] = dataclasses.replace(closed[(4, 3)])
    assert audit(forged)


def test_arrows_cover_grid():
    assert ((2, 1), (3, 1)) in arrows(8) and ((3, 2), (2, 1)) in arrows(8)


def test_render_marks():
    text = closed_from((3, 2)).render()
    lines = text.splitlines()
    assert lines[2].split()[:3] == ["2", "R", "."]
    assert lines[3].split()[:2] == ["3", "I"]


# -- classify -----------------------------------------------------------------------


def test_classify_rotation_all_direct():
    s = Rotation()
    table, report = classify(s, s.arc_pool(8), [0.1], 10)
    assert table.direct_cells() == table.grid()
    for wid, csv in report["profiles"].items():
        assert {row.split(",")[1] for row in csv.splitlines()[1:]} == {"1"}


def test_classify_orbit_system_keeps_32_open():
    from mnexp.constructions import hyperexp_constant, hyperexp_converse_witness
    s = canonical_one_orbit()
    delta = hyperexp_constant(s).delta
    wits = [hyperexp_converse_witness(s, delta, m) for m in range(4, 9)]
    table, report = classify(s, s.truncation(5), [delta, delta / 2], 30, witnesses=wits)
    assert all(table.is_refuted(m, 3) for m in range(4, 9))
    assert not table.is_refuted(3, 2)
    assert table[(3, 2)].kind == OPEN
    assert table[(4, 3)].kind == REFUTED

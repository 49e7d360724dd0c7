from fractions import Fraction

import pytest

from mnexp.constructions import (
    InfeasibleEta,
    SpliceSpecError,
    StructureViolation,
    build_splice,
    canonical_splice_spec,
    converse_times,
    example_42,
    four_orbit_system,
    four_point_witness,
    hyperexp_constant,
    hyperexp_converse_witness,
    orbit_four_points,
    peano_witness,
    shadow_error,
    shift_degenerate_points,
    shift_four_points,
    spread_points,
    verify_32_expansive,
    wide_splice_spec,
)
from mnexp.expansivity import TAIL_CERTIFIED
from mnexp.metric_core import PreconditionError
from mnexp.systems import CatMap, FixedPoint, Orbit, OrbitSystem, ShiftSystem, canonical_one_orbit

# -- four points ----------------------------------------------------------------------


def test_shift_four_points_claim_43():
    s = ShiftSystem()
    W = four_point_witness(s, Fraction(1, 4), *shift_four_points(s), 30)
    assert W.claim == (4, 3) and W.max_profile <= 3
    assert W.label == TAIL_CERTIFIED


def test_shift_degenerate_inputs_shrink_the_claim():
    s = ShiftSystem()
    W = four_point_witness(s, Fraction(1, 4), *shift_degenerate_points(s), 30)
    assert W.claim == (3, 2) and len(W.points) == 3 and W.max_profile <= 2


def test_orbit_four_points_claim_43():
    s = four_orbit_system()
    W = four_point_witness(s, 0.1, *orbit_four_points(s, 0.1), 30)
    assert W.claim == (4, 3) and W.max_profile <= 3 and W.label == TAIL_CERTIFIED


def test_four_point_precondition_names_k():
    s = ShiftSystem()
    x1, x2, y1, y2 = shift_four_points(s)
    # swapping the pairs puts the backward-asymptotic pair forward
    with pytest.raises(PreconditionError) as info:
        four_point_witness(s, Fraction(1, 4), y1, y2, x1, x2, 30)
    assert info.value.hypothesis == "forward pair within delta" and "k=" in str(info.value)


def test_four_point_rejects_equal_pair():
    s = ShiftSystem()
    x1, _, y1, y2 = shift_four_points(s)
    with pytest.raises(PreconditionError):
        four_point_witness(s, Fraction(1, 4), x1, x1, y1, y2, 30)


# -- cat map ---------------------------------------------------------------------------


@pytest.mark.parametrize("n", [1, 3])
def test_peano_witness_claim(n):
    cat = CatMap()
    W = peano_witness(cat, spread_points(n, seed=7), 2e-3, 15)
    assert W.claim == (3 * n, 2 * n) and len(W.points) == 3 * n
    assert W.max_profile <= 2 * n


def test_peano_rejects_zero_eta():
    with pytest.raises(InfeasibleEta):
        peano_witness(CatMap(), spread_points(1), 2e-3, 15, eta=0.0)


def test_peano_rejects_eta_too_large_for_window():
    with pytest.raises(InfeasibleEta):
        peano_witness(CatMap(), spread_points(1), 2e-3, 15, eta=1e-9)


def test_peano_rejects_close_base_points():
    with pytest.raises(PreconditionError):
        peano_witness(CatMap(), [(0.1, 0.1), (0.1001, 0.1)], 2e-3, 10)


# -- splice ----------------------------------------------------------------------------


def test_wide_splice_refutes_82():
    W = build_splice(wide_splice_spec())
    assert W.claim == (8, 2) and len(set(W.points)) == 8
    assert W.max_profile <= 2 and W.label == TAIL_CERTIFIED


def test_wide_splice_shadow_accuracy():
    spec = wide_splice_spec()
    assert all(shadow_error(spec, l) < spec.radius / 2 for l in range(1, 9))


def test_splice_single_shadow_is_trivial():
    W = build_splice(wide_splice_spec(m=1))
    assert W.claim == (1, 1) and W.max_profile == 1


def test_splice_prefixes_nest():
    spec = wide_splice_spec()
    pts = [build_splice(spec.with_m(m)).points for m in (3, 5, 8)]
    assert set(pts[0]) <= set(pts[1]) <= set(pts[2])


def test_canonical_splice_fails_jump_invariant():
    with pytest.raises(SpliceSpecError) as info:
        build_splice(canonical_splice_spec())
    assert info.value.invariant == "dist at cut < jump"


# -- hyper-expansive orbit systems ---------------------------------------------------


def test_hyperexp_constant_frozen():
    c = hyperexp_constant(canonical_one_orbit())
    assert c.delta == pytest.approx(0.20625, abs=1e-12)
    assert c.binding.value == pytest.approx(0.20625 / 0.99, abs=1e-12)
    assert {x.family for x in c.conditions} >= {"forward vs backward orbits"}


def test_hyperexp_constant_fixed_points_only():
    s = OrbitSystem([FixedPoint("r", "repeller", 0.0), FixedPoint("a", "attractor", 1.0)], [])
    assert hyperexp_constant(s).delta == pytest.approx(0.99)


def test_hyperexp_requires_repeller_to_attractor():
    s = OrbitSystem([FixedPoint("r", "repeller", 0.0), FixedPoint("b", "saddle", 1.0)], [Orbit("o", "r", "b", 0.25)])
    with pytest.raises(StructureViolation):
        hyperexp_constant(s)


def test_verify_32_expansive_at_constant():
    s = canonical_one_orbit()
    delta = hyperexp_constant(s).delta
    res = verify_32_expansive(s, delta, 30)
    assert res["triples"] == 39711 and res["failure_count"] == 0
    assert verify_32_expansive(s, 10 * delta, 30)["failure_count"] > 0


def test_converse_times_and_witnesses():
    s = canonical_one_orbit()
    delta = hyperexp_constant(s).delta
    assert converse_times(s, delta) == (-3, 3)
    for m in (4, 5):
        W = hyperexp_converse_witness(s, delta, m)
        assert W.claim == (m, 3) and W.max_profile == 3 and W.label == TAIL_CERTIFIED


def test_converse_needs_more_than_three_points():
    with pytest.raises(ValueError):
        hyperexp_converse_witness(canonical_one_orbit(), 0.2, 3)


# -- three fixed points, two orbits --------------------------------------------------


@pytest.fixture(scope="module")
def ex42():
    return example_42()


def test_example_42_refutes_32(ex42):
    half = ex42["not_32"]
    assert half["k0"] == 7
    w = half["witness"]
    assert w["claim"] == [3, 2] and w["label"] == TAIL_CERTIFIED and w["profile_max"] <= 2
    assert w["points"] == [["x", 7], "b", ["y", -7]]


def test_example_42_scale_and_scan(ex42):
    scale = ex42["scale_for_42"]
    assert scale["epsilon"] == pytest.approx(0.17622, abs=1e-5)
    scan = ex42["no_42_on_truncation"]
    assert scan["refuting_4_subsets"] == 0 and scan["points"] == 105


def test_example_42_closure_does_not_reach_21(ex42):
    h = ex42["hierarchy"]
    assert h["audit"] == [] and h["refuted_2_1"] is False


def test_example_42_is_deterministic(ex42):
    assert example_42() == ex42


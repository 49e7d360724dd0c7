import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mnexp.metric_core import FiniteMetricSpace
from mnexp.systems import (
    AlphabetMismatch,
    CatMap,
    ConfigError,
    FixedPoint,
    Orbit,
    OrbitPoint,
    OrbitSystem,
    OrbitSystemError,
    Rotation,
    ShiftSystem,
    SymbolicPoint,
    UnknownPoint,
    canonical_one_orbit,
    cat_apply,
    embed,
    orbit_apply,
    rotation_apply,
    shift_apply,
    shift_dist,
    splice,
    system_from_config,
)
from mnexp.systems.shift import first_difference

# -- shift -------------------------------------------------------------------------


def pt(symbols, background=0):
    return SymbolicPoint.from_support(symbols, background)


def naive_first_difference(p, q, span=400):
    for m in range(span):
        if p[m] != q[m] or p[-m] != q[-m]:
            return m
    return None


def test_shift_zero_is_identity():
    p = pt({5: 1, -2: 1})
    assert shift_apply(p, 0) == p


def test_shift_group_action():
    p = pt({5: 1, -2: 1})
    assert shift_apply(shift_apply(p, 3), -3) == p


def test_shift_translates_indices():
    assert shift_apply(pt({5: 1}), 5) == pt({0: 1})


def test_shift_dist_identical_is_zero():
    assert shift_dist(pt({1: 1}), pt({1: 1})) == 0


def test_shift_dist_differ_at_zero():
    assert shift_dist(pt({}), pt({0: 1})) == 1


def test_shift_dist_first_difference_three():
    d = shift_dist(pt({}), pt({3: 1, -5: 1}))
    assert d == Fraction(1, 8) and isinstance(d, Fraction)


def test_shift_dist_alphabet_mismatch():
    with pytest.raises(AlphabetMismatch):
        shift_dist(SymbolicPoint.constant(0, 2), SymbolicPoint.constant(0, 3))


def test_equality_is_representation_independent():
    a = SymbolicPoint((0, 1), (), (0, 1), 0)
    b = SymbolicPoint((1, 0), (1,), (0, 1), -1)
    assert a == b and hash(a) == hash(b)


def test_splice_takes_x_left_of_cut():
    x, y = pt({}), pt({}, background=1)
    w = splice(x, y, 4)
    assert [w[i] for i in range(0, 8)] == [0, 0, 0, 0, 1, 1, 1, 1]


def test_splice_point_json_roundtrip():
    system = ShiftSystem()
    p = SymbolicPoint((0, 1), (1, 1, 0), (1,), -3)
    assert system.point_from_json(system.point_to_json(p)) == p
    assert system.point_from_json({"support": {"2": 1}}) == pt({2: 1})


periodic = st.lists(st.integers(0, 1), min_size=1, max_size=3)
points = st.builds(lambda l, c, r, o: SymbolicPoint(l, c, r, o), periodic,
                   st.lists(st.integers(0, 1), max_size=8), periodic, st.integers(-10, 10))


@settings(max_examples=200, deadline=None)
@given(points, points)
def test_first_difference_matches_naive(p, q):
    assert first_difference(p, q) == naive_first_difference(p, q)


@settings(max_examples=200, deadline=None)
@given(points, points, st.integers(-5, 5))
def test_shift_metric_compatible_with_dynamics(p, q, k):
    d = shift_dist(p, q)
    assert shift_dist(shift_apply(p, 1), shift_apply(q, 1)) <= 2 * d
    assert shift_apply(shift_apply(p, k), -k) == p


def test_shift_sample_is_a_metric_space():
    system = ShiftSystem()
    pool = system.sample(10, seed=4)
    FiniteMetricSpace.from_metric(range(len(pool)), lambda i, j: system.dist(pool[i], pool[j]))


def test_shift_separated_matches_distance():
    system = ShiftSystem()
    pool = system.sample(12, seed=9)
    for delta in (Fraction(1, 8), Fraction(1, 4), Fraction(1, 2), Fraction(3, 16)):
        for p in pool:
            for q in pool:
                assert system.separated(p, q, delta) == (system.dist(p, q) > delta)


# -- orbit systems -------------------------------------------------------------------


def test_orbit_fixed_point_is_fixed():
    s = canonical_one_orbit()
    assert orbit_apply(s, "r", 17) == "r"


def test_orbit_translation():
    s = canonical_one_orbit()
    assert orbit_apply(s, OrbitPoint("o", 3), -3) == OrbitPoint("o", 0)


@given(st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50))
def test_orbit_action_law(t, a, b):
    s = canonical_one_orbit()
    p = OrbitPoint("o", t)
    assert orbit_apply(s, orbit_apply(s, p, a), b) == orbit_apply(s, p, a + b)


def test_orbit_unknown_point():
    with pytest.raises(UnknownPoint):
        orbit_apply(canonical_one_orbit(), OrbitPoint("nope", 0), 1)


def test_embed_representative():
    assert embed(canonical_one_orbit(), OrbitPoint("o", 0)) == (0.5, 0.25)


def test_embed_limits():
    x, y = embed(canonical_one_orbit(), OrbitPoint("o", 60))
    assert abs(x - 1.0) < 1e-15 and y < 1e-18


def test_embed_distance_to_attractor_at_ten():
    d = canonical_one_orbit().dist(OrbitPoint("o", 10), "a")
    assert d == pytest.approx(1.00569331e-3, rel=1e-8)
    expected = math.hypot(1 - 1 / (1 + 2 ** -10), 0.25 * 2 ** -10)
    assert d == pytest.approx(expected, rel=1e-15)


def test_orbit_limit_time_is_certified():
    s = canonical_one_orbit()
    p = OrbitPoint("o", 0)
    for eta in (0.1, 0.01, 1e-4):
        k = s.limit_time(p, eta, 1)
        assert all(s.dist(OrbitPoint("o", j), "a") < eta for j in range(k, k + 60))


def test_orbit_rejects_equal_lanes_sharing_limits():
    with pytest.raises(OrbitSystemError):
        OrbitSystem([FixedPoint("r", "repeller", 0.0), FixedPoint("a", "attractor", 1.0)],
                    [Orbit("x", "r", "a", 0.25), Orbit("y", "r", "a", 0.25)])


def test_orbit_rejects_orbit_leaving_attractor():
    with pytest.raises(OrbitSystemError):
        OrbitSystem([FixedPoint("r", "repeller", 0.0), FixedPoint("a", "attractor", 1.0)],
                    [Orbit("x", "a", "r", 0.25)])


def test_orbit_truncation_is_a_metric_space():
    s = canonical_one_orbit()
    pts = s.truncation(8)
    FiniteMetricSpace.from_metric(pts, s.dist)


# -- float systems -------------------------------------------------------------------


def test_cat_origin_fixed():
    assert cat_apply((0.0, 0.0), 7) == (0.0, 0.0)


def test_cat_half_half():
    assert cat_apply((0.5, 0.5), 1) == (0.5, 0.0)


@settings(max_examples=100)
@given(st.floats(0, 1, exclude_max=True), st.floats(0, 1, exclude_max=True))
def test_cat_inverse(x, y):
    back = cat_apply(cat_apply((x, y), 1), -1)
    assert CatMap().dist(back, (x, y)) < 1e-12


def test_cat_separates_nearby_rationals():
    system = CatMap()
    p, q = (Fraction(1, 3), Fraction(1, 7)), (Fraction(1, 3) + Fraction(1, 1000), Fraction(1, 7))
    p, q = tuple(map(float, p)), tuple(map(float, q))
    assert any(system.dist(system.iterate(p, k), system.iterate(q, k)) > 0.1 for k in range(-60, 61))


def test_rotation_zero_angle_is_identity():
    assert rotation_apply(0.3, 11, 0.0) == 0.3


def test_rotation_is_an_isometry():
    system = Rotation()
    rng = random.Random(1)
    for _ in range(50):
        p, q, k = rng.random(), rng.random(), rng.randint(-30, 30)
        assert system.dist(system.iterate(p, k), system.iterate(q, k)) == pytest.approx(system.dist(p, q), abs=1e-12)


def test_rotation_short_arc_has_profile_one():
    system = Rotation()
    pool = system.arc_pool(6, 0.2, 0.05)
    assert all(system.profile_value(pool, 0.1, k) == 1 for k in range(-20, 21))


# -- config ------------------------------------------------------------------------


def test_system_from_config_kinds():
    assert isinstance(system_from_config({"kind": "shift"}), ShiftSystem)
    assert isinstance(system_from_config({"kind": "cat"}), CatMap)
    assert system_from_config({"kind": "rotation", "alpha": 0.25}).alpha == 0.25
    orbit = system_from_config(canonical_one_orbit().to_config())
    assert orbit.to_config() == canonical_one_orbit().to_config()


def test_system_from_config_unknown_kind():
    with pytest.raises(ConfigError):
        system_from_config({"kind": "tent"})

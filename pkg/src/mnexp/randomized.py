"""Seeded random instances for property checks."""
from __future__ import annotations

import random
from itertools import combinations

from .metric_core import FiniteMetricSpace, delta_cardinality


def lattice_l1(rng: random.Random, n: int, span: int = 12) -> FiniteMetricSpace:
    """``n`` distinct integer lattice points under the L1 metric; many ties."""
    pts: dict = {}
    while len(pts) < n:
        pts.setdefault((rng.randrange(span), rng.randrange(span)), None)
    ids = [f"p{i}" for i in range(n)]
    coords = dict(zip(ids, pts))
    return FiniteMetricSpace.from_metric(
        ids, lambda a, b: abs(coords[a][0] - coords[b][0]) + abs(coords[a][1] - coords[b][1]))


def graph_metric(rng: random.Random, n: int, max_weight: int = 6) -> FiniteMetricSpace:
    """Shortest-path metric of a random connected weighted graph."""
    inf = float("inf")
    d = [[0 if i == j else inf for j in range(n)] for i in range(n)]
    for i in range(1, n):
        j = rng.randrange(i)
        w = rng.randint(1, max_weight)
        d[i][j] = d[j][i] = w
    for i, j in combinations(range(n), 2):
        if rng.random() < 0.3:
            w = rng.randint(1, max_weight)
            d[i][j] = d[j][i] = min(d[i][j], w)
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if d[i][k] + d[k][j] < d[i][j]:
                    d[i][j] = d[i][k] + d[k][j]
    return FiniteMetricSpace(tuple(range(n)), tuple(tuple(row) for row in d))


def random_space(rng: random.Random, max_points: int = 12) -> FiniteMetricSpace:
    n = rng.randint(1, max_points)
    return lattice_l1(rng, n) if rng.random() < 0.5 else graph_metric(rng, n)


def probe_deltas(rng: random.Random, space: FiniteMetricSpace, count: int = 3) -> list:
    """Scales drawn from the distance values themselves (to exercise ties) and between them."""
    values = sorted({v for row in space.dist for v in row})
    out = []
    for _ in range(count):
        v = rng.choice(values)
        out.append(v if rng.random() < 0.5 else v + 0.5)
    return out


def union_bound_instance(rng: random.Random, share: bool | None = None):
    """``(A, B, delta, epsilon, metric)`` with A delta-separated and |B|_delta = 1.

    Points live on the integer lattice with the L1 metric.  With ``share``
    true, one point of A is also put into B.
    """
    delta = rng.randint(2, 6)
    metric = lambda p, q: abs(p[0] - q[0]) + abs(p[1] - q[1])  # noqa: E731
    A: list = []
    for _ in range(rng.randint(1, 6)):
        p = (rng.randrange(30), rng.randrange(30))
        if all(metric(p, q) > delta for q in A):
            A.append(p)
    share = rng.random() < 0.5 if share is None else share
    centre = rng.choice(A) if share else (rng.randrange(30), rng.randrange(30))
    # the L1 ball of radius delta/2 has diameter at most delta
    r = delta // 2
    B = {centre} if share else set()
    for _ in range(rng.randint(1, 5)):
        dx = rng.randint(-r, r)
        dy = rng.randint(-(r - abs(dx)), r - abs(dx))
        B.add((centre[0] + dx, centre[1] + dy))
    B = sorted(B)
    assert delta_cardinality(B, delta, metric) == 1
    epsilon = rng.choice([0.5, 1, 2, 3, delta, delta + 1])
    return A, B, delta, epsilon, metric

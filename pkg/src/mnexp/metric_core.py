"""Finite metric spaces, delta-separation and exact delta-cardinality.

The delta-cardinality of a finite set is the size of its largest subset whose
distinct points are pairwise *strictly* farther apart than delta.  It is
computed exactly as a maximum clique of the separation graph, using a
branch-and-bound search with greedy-colouring upper bounds on bitsets.  An
exhaustive subset enumeration is kept alongside as an independent oracle.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Hashable, Iterable, Sequence

TRIANGLE_TOL = 1e-9
DEFAULT_CAPACITY = 256
BRUTEFORCE_CAPACITY = 20

Metric = Callable[[Any, Any], Any]


class MetricError(ValueError):
    """A distance table violates a metric axiom."""


class CapacityExceeded(ValueError):
    """The point set is larger than the solver is configured to handle."""


class PreconditionError(ValueError):
    """A documented hypothesis of an operation does not hold.

    ``hypothesis`` names the failed hypothesis so callers can report it.
    """

    def __init__(self, hypothesis: str, message: str):
        super().__init__(f"{hypothesis}: {message}")
        self.hypothesis = hypothesis


@dataclass(frozen=True)
class FiniteMetricSpace:
    """An explicit point set with a validated, symmetric distance table."""

    points: tuple
    dist: tuple

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        object.__setattr__(self, "dist", tuple(tuple(row) for row in self.dist))
        _validate_table(self.dist, len(self.points))
        if len(set(self.points)) != len(self.points):
            raise MetricError("point identifiers must be unique")
        object.__setattr__(self, "_index", {p: i for i, p in enumerate(self.points)})

    @classmethod
    def from_metric(cls, points: Iterable[Hashable], metric: Metric) -> "FiniteMetricSpace":
        pts = tuple(points)
        table = [[metric(p, q) for q in pts] for p in pts]
        return cls(pts, table)

    @classmethod
    def from_json(cls, data: dict | str) -> "FiniteMetricSpace":
        if isinstance(data, str):
            data = json.loads(data)
        if not isinstance(data, dict) or "points" not in data or "dist" not in data:
            raise MetricError('expected an object with "points" and "dist"')
        points = [tuple(p) if isinstance(p, list) else p for p in data["points"]]
        return cls(points, data["dist"])

    @classmethod
    def load(cls, path: str | Path) -> "FiniteMetricSpace":
        return cls.from_json(json.loads(Path(path).read_text()))

    def to_json(self) -> dict:
        return {"points": list(self.points), "dist": [list(map(float, r)) for r in self.dist]}

    def __len__(self) -> int:
        return len(self.points)

    def index(self, p) -> int:
        return self._index[p]

    def metric(self, p, q):
        return self.dist[self._index[p]][self._index[q]]

    def subspace(self, ids: Iterable[Hashable]) -> "FiniteMetricSpace":
        idx = [self._index[p] for p in ids]
        return FiniteMetricSpace(
            [self.points[i] for i in idx], [[self.dist[i][j] for j in idx] for i in idx]
        )


def _validate_table(table: Sequence[Sequence[Any]], n: int, tol: float = TRIANGLE_TOL) -> None:
    if len(table) != n or any(len(row) != n for row in table):
        raise MetricError(f"distance table must be {n}x{n}")
    for i in range(n):
        if table[i][i] != 0:
            raise MetricError(f"dist(p{i}, p{i}) = {table[i][i]} is not zero")
        for j in range(i + 1, n):
            if table[i][j] != table[j][i]:
                raise MetricError(f"asymmetric distances at ({i}, {j})")
            if table[i][j] < 0:
                raise MetricError(f"negative distance at ({i}, {j})")
    for i, j, k in itertools.permutations(range(n), 3):
        if table[i][k] > table[i][j] + table[j][k] + tol:
            raise MetricError(f"triangle inequality fails for ({i}, {j}, {k})")


def validate_metric(points: Sequence, metric: Metric, tol: float = TRIANGLE_TOL) -> None:
    """Raise MetricError unless ``metric`` restricted to ``points`` is a metric."""
    table = [[metric(p, q) for q in points] for p in points]
    _validate_table(table, len(points), tol)


def _points_and_metric(A, metric: Metric | None) -> tuple[list, Metric]:
    if isinstance(A, FiniteMetricSpace):
        return list(A.points), A.metric
    if metric is None:
        raise TypeError("a metric is required unless A is a FiniteMetricSpace")
    return list(A), metric


def distance_matrix(points: Sequence, metric: Metric) -> list[list]:
    return [[metric(p, q) for q in points] for p in points]


# -- separation graph and maximum clique ------------------------------------

@dataclass(frozen=True)
class SeparationGraph:
    """Vertices ``0..n-1``; ``adj[i]`` is the bitmask of j with dist > delta."""

    n: int
    adj: tuple
    delta: Any

    @classmethod
    def from_matrix(cls, dist: Sequence[Sequence[Any]], delta) -> "SeparationGraph":
        n = len(dist)
        adj = []
        for i in range(n):
            row = dist[i]
            mask = 0
            for j in range(n):
                if j != i and row[j] > delta:
                    mask |= 1 << j
            adj.append(mask)
        return cls(n, tuple(adj), delta)

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.adj[i] >> j & 1)


def _colour_order(adj: Sequence[int], cand: int) -> tuple[list[int], list[int]]:
    # Greedy sequential colouring in index order; bounds[i] is the colour
    # number of order[i], an upper bound on cliques within order[:i+1].
    order: list[int] = []
    bounds: list[int] = []
    uncoloured = cand
    colour = 0
    while uncoloured:
        colour += 1
        q = uncoloured
        while q:
            low = q & -q
            v = low.bit_length() - 1
            q &= ~low & ~adj[v]
            uncoloured &= ~low
            order.append(v)
            bounds.append(colour)
    return order, bounds


def max_clique(adj: Sequence[int], candidates: int | None = None, target: int | None = None) -> list[int]:
    """Return a maximum clique (sorted vertex list) of the graph ``adj``.

    ``candidates`` restricts the search to a vertex bitmask.  If ``target`` is
    given the search stops as soon as a clique of that size is found, so the
    result is then only guaranteed to have size ``>= min(target, omega)``.
    The search is sequential and visits vertices in a fixed order, so the
    returned clique is reproducible.
    """
    if candidates is None:
        candidates = (1 << len(adj)) - 1
    best: list[int] = []
    if not candidates:
        return best
    clique: list[int] = []
    stop = [False]

    def expand(cand: int) -> None:
        nonlocal best
        order, bounds = _colour_order(adj, cand)
        for idx in range(len(order) - 1, -1, -1):
            if len(clique) + bounds[idx] <= len(best):
                return
            v = order[idx]
            clique.append(v)
            sub = cand & adj[v]
            if sub:
                expand(sub)
            elif len(clique) > len(best):
                best = sorted(clique)
                if target is not None and len(best) >= target:
                    stop[0] = True
            clique.pop()
            if stop[0]:
                return
            cand &= ~(1 << v)

    expand(candidates)
    return best


def clique_number(adj: Sequence[int], candidates: int | None = None) -> int:
    return len(max_clique(adj, candidates))


# -- public operations --------------------------------------------------------

def is_delta_separated(A, delta, metric: Metric | None = None) -> bool:
    """True iff every pair of distinct entries of ``A`` is farther than delta."""
    pts, d = _points_and_metric(A, metric)
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if not d(pts[i], pts[j]) > delta:
                return False
    return True


def delta_cardinality(A, delta, metric: Metric | None = None, capacity: int = DEFAULT_CAPACITY) -> int:
    """Exact delta-cardinality ``max{|B| : B subset of A, B delta-separated}``."""
    pts, d = _points_and_metric(A, metric)
    if len(pts) > capacity:
        raise CapacityExceeded(f"{len(pts)} points exceed solver capacity {capacity}")
    if not pts:
        return 0
    graph = SeparationGraph.from_matrix(distance_matrix(pts, d), delta)
    return clique_number(graph.adj)


def delta_separated_subset(A, delta, metric: Metric | None = None, capacity: int = DEFAULT_CAPACITY) -> list:
    """A maximum delta-separated subset of ``A`` (a certificate for the count)."""
    pts, d = _points_and_metric(A, metric)
    if len(pts) > capacity:
        raise CapacityExceeded(f"{len(pts)} points exceed solver capacity {capacity}")
    graph = SeparationGraph.from_matrix(distance_matrix(pts, d), delta)
    return [pts[i] for i in max_clique(graph.adj)]


def delta_cardinality_bruteforce(A, delta, metric: Metric | None = None,
                                 separated: Callable[[Any, Any], bool] | None = None) -> int:
    """Exhaustive-enumeration oracle for :func:`delta_cardinality` (<= 20 points).

    ``separated(p, q)`` may replace the test ``metric(p, q) > delta`` when a
    cheaper exact predicate is available.
    """
    pts, d = _points_and_metric(A, metric)
    n = len(pts)
    if n > BRUTEFORCE_CAPACITY:
        raise CapacityExceeded(f"brute force is limited to {BRUTEFORCE_CAPACITY} points, got {n}")
    if separated is None:
        separated = lambda p, q: d(p, q) > delta  # noqa: E731
    sep = {(i, j): separated(pts[i], pts[j]) for i, j in itertools.combinations(range(n), 2)}
    for size in range(n, 1, -1):
        for subset in itertools.combinations(range(n), size):
            if all(sep[pair] for pair in itertools.combinations(subset, 2)):
                return size
    return min(n, 1)


@dataclass(frozen=True)
class UnionBound:
    lhs: int
    rhs: int
    holds: bool


def _dedupe(points: Iterable) -> list:
    seen: list = []
    for p in points:
        if p not in seen:
            seen.append(p)
    return seen


def verify_union_bound(A, B, delta, epsilon, metric: Metric) -> UnionBound:
    """Evaluate ``|A u B|_(delta+eps) <= |A|_eps + |B|_delta - |A n B|``.

    The hypotheses (A is delta-separated, B has delta-cardinality one and
    epsilon is positive) are checked and reported by name when they fail.
    """
    A = _dedupe(A)
    B = _dedupe(B)
    if not epsilon > 0:
        raise PreconditionError("epsilon>0", f"epsilon = {epsilon}")
    if not A or not B:
        raise PreconditionError("nonempty", "A and B must be nonempty")
    if delta_cardinality(A, delta, metric) != len(A):
        raise PreconditionError("|A|=|A|_delta", "A is not delta-separated")
    if delta_cardinality(B, delta, metric) != 1:
        raise PreconditionError("|B|_delta=1", "B contains a delta-separated pair")
    union = A + [b for b in B if b not in A]
    common = sum(1 for b in B if b in A)
    lhs = delta_cardinality(union, delta + epsilon, metric)
    rhs = delta_cardinality(A, epsilon, metric) + 1 - common
    return UnionBound(lhs, rhs, lhs <= rhs)

"""Hausdorff distance on finite compacta and the induced hyperspace dynamics."""
from __future__ import annotations

from typing import Iterable

from .systems import DynamicalSystem


class SystemMismatch(ValueError):
    pass


class Compactum:
    """A nonempty finite subset of a system's phase space.

    Duplicates are collapsed; equality is set equality within the same system.
    """

    __slots__ = ("system", "points", "_key")

    def __init__(self, system: DynamicalSystem, points: Iterable):
        unique: dict = {}
        for p in points:
            unique.setdefault(p, None)
        if not unique:
            raise ValueError("a compactum must be nonempty")
        self.system = system
        self.points = tuple(unique)
        self._key = frozenset(unique)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Compactum):
            return NotImplemented
        return self.system is other.system and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"Compactum({self.system.name}, {list(self.points)!r})"

    def to_json(self) -> list:
        return [self.system.point_to_json(p) for p in self.points]


def _check(A: Compactum, B: Compactum) -> None:
    if A.system is not B.system:
        raise SystemMismatch(f"{A.system.name} vs {B.system.name}")


def directed_hausdorff(A: Compactum, B: Compactum):
    d = A.system.dist
    return max(min(d(a, b) for b in B.points) for a in A.points)


def hausdorff_dist(A: Compactum, B: Compactum):
    """``max(sup_a inf_b d(a, b), sup_b inf_a d(a, b))``.

    For finite sets this equals the infimum of the eps for which each set lies
    in the open eps-neighbourhood of the other.
    """
    _check(A, B)
    return max(directed_hausdorff(A, B), directed_hausdorff(B, A))


def iterate_set(A: Compactum, k: int) -> Compactum:
    return Compactum(A.system, (A.system.iterate(p, k) for p in A.points))


def hyper_separation(A: Compactum, B: Compactum, delta, window: int) -> int | None:
    """Some k with ``|k| <= window`` and ``d_H(f^k A, f^k B) > delta``.

    Iterates are scanned in the order 0, 1, -1, 2, -2, ...; None means the
    pair is not separated inside the window at this scale.
    """
    _check(A, B)
    if A == B:
        raise ValueError("hyper_separation needs two different compacta")
    for step in range(window + 1):
        for k in ((0,) if step == 0 else (step, -step)):
            if hausdorff_dist(iterate_set(A, k), iterate_set(B, k)) > delta:
                return k
    return None

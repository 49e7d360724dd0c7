from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Sequence

from ..metric_core import clique_number


@dataclass(frozen=True)
class TailCertificate:
    """A bound on ``|f^k(A)|_delta`` for every ``|k| > window``.

    ``forward``/``backward`` bound the profile for k > window and
    k < -window respectively; ``reason`` records the analytic argument.
    ``attained`` marks bounds that are actual profile values at some k, so a
    bound above a claim refutes it.
    """

    window: int
    forward: int
    backward: int
    reason: str
    attained: bool = False

    @property
    def bound(self) -> int:
        return max(self.forward, self.backward)

    def to_json(self) -> dict:
        return {
            "window": self.window,
            "forward_bound": self.forward,
            "backward_bound": self.backward,
            "reason": self.reason,
            "attained": self.attained,
        }


class DynamicalSystem(ABC):
    """A homeomorphism of a compact metric space with computable iterates.

    ``exact`` systems iterate without rounding and compare distances exactly;
    the others work in double precision.
    """

    kind: str = "abstract"
    exact: bool = False
    float_distances: bool = True

    @property
    def name(self) -> str:
        return self.kind

    @abstractmethod
    def iterate(self, p, k: int):
        ...

    def forward(self, p):
        return self.iterate(p, 1)

    def backward(self, p):
        return self.iterate(p, -1)

    @abstractmethod
    def dist(self, p, q):
        ...

    @abstractmethod
    def sample(self, size: int, seed: int) -> list:
        """A seeded, deterministic pool of ``size`` distinct points."""

    @abstractmethod
    def to_config(self) -> dict:
        ...

    def point_to_json(self, p) -> Any:
        return p

    def point_from_json(self, data) -> Any:
        return data

    def same_point(self, p, q) -> bool:
        return p == q

    def iterate_set(self, points: Sequence, k: int) -> list:
        return [self.iterate(p, k) for p in points]

    def separated(self, p, q, delta) -> bool:
        """``dist(p, q) > delta``; systems may answer without computing the distance."""
        return self.dist(p, q) > delta

    def separation_adjacency(self, points: Sequence, delta) -> list[int]:
        """Bitmask rows of the graph joining delta-separated points."""
        n = len(points)
        adj = [0] * n
        for i in range(n):
            for j in range(i + 1, n):
                if self.separated(points[i], points[j], delta):
                    adj[i] |= 1 << j
                    adj[j] |= 1 << i
        return adj

    def profile_value(self, points: Sequence, delta, k: int) -> int:
        pts = list(dict.fromkeys(self.iterate_set(points, k)))
        return clique_number(self.separation_adjacency(pts, delta)) if pts else 0

    def profile_tail(self, points: Sequence, delta, window: int) -> TailCertificate | None:
        """Certified profile bound beyond the window, or None if unavailable."""
        return None

    def sup_distance_beyond(self, p, q, window: int, direction: int):
        """An upper bound for ``sup_{k > window} dist(f^{dk} p, f^{dk} q)``.

        ``direction`` is +1 (forward) or -1 (backward).  None means no
        certified bound is available for this system.
        """
        return None

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name}>"

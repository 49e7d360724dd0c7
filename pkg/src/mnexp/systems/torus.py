"""Float systems: the cat map on the 2-torus and rigid circle rotations."""
from __future__ import annotations

import math
import random

from .base import DynamicalSystem, TailCertificate

# expanding eigenvalue of [[2, 1], [1, 1]]
LAMBDA = (3 + math.sqrt(5)) / 2
_u = (1.0, LAMBDA - 2.0)
_s = (1.0, 1.0 / LAMBDA - 2.0)
UNSTABLE = (_u[0] / math.hypot(*_u), _u[1] / math.hypot(*_u))
STABLE = (_s[0] / math.hypot(*_s), _s[1] / math.hypot(*_s))


def cat_apply(p: tuple[float, float], k: int) -> tuple[float, float]:
    """k-fold image under (x, y) -> (2x + y, x + y) mod 1; inverse for k < 0."""
    x, y = p
    if k >= 0:
        for _ in range(k):
            x, y = (2 * x + y) % 1.0, (x + y) % 1.0
    else:
        for _ in range(-k):
            x, y = (x - y) % 1.0, (2 * y - x) % 1.0
    return (x, y)


def torus_dist(p: tuple[float, float], q: tuple[float, float]) -> float:
    dx = abs(p[0] - q[0]) % 1.0
    dy = abs(p[1] - q[1]) % 1.0
    return math.hypot(min(dx, 1.0 - dx), min(dy, 1.0 - dy))


def rotation_apply(p: float, k: int, alpha: float) -> float:
    return (p + k * alpha) % 1.0


def arc_dist(p: float, q: float) -> float:
    d = abs(p - q) % 1.0
    return min(d, 1.0 - d)


class CatMap(DynamicalSystem):
    kind = "cat"
    exact = False
    max_window = 25  # rounding error grows like LAMBDA**k * 1e-16; about 3e-6 at k = 25

    @property
    def name(self) -> str:
        return "cat"

    def iterate(self, p, k):
        return cat_apply(p, k)

    def dist(self, p, q):
        return torus_dist(p, q)

    def sample(self, size, seed):
        rng = random.Random(seed)
        return [(rng.random(), rng.random()) for _ in range(size)]

    def to_config(self):
        return {"kind": "cat"}

    def point_to_json(self, p):
        return [p[0], p[1]]

    def point_from_json(self, data):
        return (float(data[0]) % 1.0, float(data[1]) % 1.0)

    @staticmethod
    def rounding_bound(k: int) -> float:
        return LAMBDA ** abs(k) * 1e-16


class Rotation(DynamicalSystem):
    """Rigid rotation by ``alpha`` on the circle R/Z; an isometry."""

    kind = "rotation"
    exact = False

    def __init__(self, alpha: float = (math.sqrt(5) - 1) / 2):
        self.alpha = float(alpha)

    @property
    def name(self) -> str:
        return f"rotation({self.alpha:.12g})"

    def iterate(self, p, k):
        return rotation_apply(p, k, self.alpha)

    def dist(self, p, q):
        return arc_dist(p, q)

    def sample(self, size, seed):
        rng = random.Random(seed)
        return [rng.random() for _ in range(size)]

    def arc_pool(self, size: int, start: float = 0.0, length: float = 0.05) -> list[float]:
        """``size`` equally spaced points in an arc of the given length."""
        step = length / max(size - 1, 1)
        return [(start + i * step) % 1.0 for i in range(size)]

    def to_config(self):
        return {"kind": "rotation", "alpha": self.alpha}

    def point_from_json(self, data):
        return float(data) % 1.0

    def profile_tail(self, points, delta, window):
        value = self.profile_value(list(points), delta, 0)
        return TailCertificate(window, value, value, "isometry: pairwise distances do not depend on k", True)

    def sup_distance_beyond(self, p, q, window, direction):
        return self.dist(p, q)

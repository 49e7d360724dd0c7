"""The full shift on eventually periodic bi-infinite sequences.

A point is stored as a left periodic tail, a finite core and a right periodic
tail.  Points are kept in a canonical form (primitive periods, shortest core,
fixed phase) so that equality and hashing agree with symbol-by-symbol
equality.  Distances ``2**-min{|k| : p_k != q_k}`` are exact Fractions.
"""
from __future__ import annotations

import random
from functools import lru_cache
from fractions import Fraction
from math import lcm
from typing import Mapping, Sequence

from .base import DynamicalSystem, TailCertificate


class AlphabetMismatch(ValueError):
    pass


def _primitive(word: tuple) -> tuple:
    n = len(word)
    for p in range(1, n + 1):
        if n % p == 0 and word[:p] * (n // p) == word:
            return word[:p]
    return word


def _rotate(word: tuple, shift: int) -> tuple:
    n = len(word)
    return tuple(word[(shift + s) % n] for s in range(n))


class SymbolicPoint:
    """An eventually periodic point of the full shift on ``alphabet_size`` symbols.

    Symbol ``i`` is ``left_period[(i - core_offset) % L]`` for
    ``i < core_offset``, ``core[i - core_offset]`` on the core, and
    ``right_period[(i - end) % R]`` from ``end = core_offset + len(core)`` on.
    """

    __slots__ = ("alphabet_size", "left_period", "core", "right_period", "core_offset", "_hash")

    def __init__(self, left_period: Sequence[int], core: Sequence[int], right_period: Sequence[int],
                 core_offset: int = 0, alphabet_size: int = 2):
        left, core, right = tuple(left_period), tuple(core), tuple(right_period)
        if alphabet_size < 2:
            raise ValueError("alphabet_size must be at least 2")
        if not left or not right:
            raise ValueError("periods must be nonempty")
        for s in left + core + right:
            if not (isinstance(s, int) and 0 <= s < alphabet_size):
                raise ValueError(f"symbol {s!r} outside alphabet of size {alphabet_size}")
        self.alphabet_size = alphabet_size
        self._set(*_canonical(_primitive(left), core, _primitive(right), int(core_offset)))

    def _set(self, left, core, right, offset):
        self.left_period, self.core, self.right_period, self.core_offset = left, core, right, offset
        self._hash = hash((self.alphabet_size, left, core, right, offset))

    # -- constructors -----------------------------------------------------
    @classmethod
    def constant(cls, symbol: int = 0, alphabet_size: int = 2) -> "SymbolicPoint":
        return cls((symbol,), (), (symbol,), 0, alphabet_size)

    @classmethod
    def from_support(cls, symbols: Mapping[int, int], background: int = 0,
                     alphabet_size: int = 2) -> "SymbolicPoint":
        """Constant ``background`` except at the given indices."""
        if not symbols:
            return cls.constant(background, alphabet_size)
        lo, hi = min(symbols), max(symbols)
        core = [symbols.get(i, background) for i in range(lo, hi + 1)]
        return cls((background,), core, (background,), lo, alphabet_size)

    @classmethod
    def from_function(cls, left_period, right_period, start: int, stop: int, symbol,
                      alphabet_size: int = 2) -> "SymbolicPoint":
        """Left tail ends at ``start`` (phase 0 there), core is ``symbol(i)`` on
        ``[start, stop)``, right tail starts at ``stop`` with phase 0."""
        core = [symbol(i) for i in range(start, stop)]
        return cls(left_period, core, right_period, start, alphabet_size)

    # -- access -----------------------------------------------------------
    @property
    def end(self) -> int:
        return self.core_offset + len(self.core)

    def __getitem__(self, i: int) -> int:
        if i < self.core_offset:
            return self.left_period[(i - self.core_offset) % len(self.left_period)]
        if i < self.end:
            return self.core[i - self.core_offset]
        return self.right_period[(i - self.end) % len(self.right_period)]

    def window(self, lo: int, hi: int) -> tuple:
        """Symbols at indices ``lo .. hi - 1``."""
        if hi <= lo:
            return ()
        out: list = []
        off, end = self.core_offset, self.end
        if lo < off:
            stop = min(hi, off)
            out.extend(_periodic_slice(self.left_period, lo - off, stop - lo))
        a, b = max(lo, off), min(hi, end)
        if a < b:
            out.extend(self.core[a - off:b - off])
        if hi > end:
            start = max(lo, end)
            out.extend(_periodic_slice(self.right_period, start - end, hi - start))
        return tuple(out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymbolicPoint):
            return NotImplemented
        return (self.alphabet_size, self.left_period, self.core, self.right_period, self.core_offset) == (
            other.alphabet_size, other.left_period, other.core, other.right_period, other.core_offset)

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "SymbolicPoint") -> bool:
        return self.sort_key() < other.sort_key()

    def sort_key(self) -> tuple:
        return (self.core_offset, self.core, self.left_period, self.right_period)

    def __repr__(self) -> str:
        left = "".join(map(str, self.left_period))
        right = "".join(map(str, self.right_period))
        core = "".join(map(str, self.core))
        return f"SymbolicPoint(({left})^ {core}@{self.core_offset} ({right})^)"

    def to_json(self) -> dict:
        return {
            "left": list(self.left_period),
            "core": list(self.core),
            "right": list(self.right_period),
            "offset": self.core_offset,
        }

    @classmethod
    def from_json(cls, data: dict, alphabet_size: int = 2) -> "SymbolicPoint":
        return cls(data["left"], data["core"], data["right"], data["offset"], alphabet_size)


def _periodic_slice(period: tuple, phase: int, length: int) -> tuple:
    n = len(period)
    start = phase % n
    reps = (start + length) // n + 1
    return (period * reps)[start:start + length]


def _canonical(left: tuple, core: tuple, right: tuple, offset: int):
    L, R = len(left), len(right)
    end = offset + len(core)

    def sym(i):
        if i < offset:
            return left[(i - offset) % L]
        if i < end:
            return core[i - offset]
        return right[(i - end) % R]

    period = lcm(L, R)
    # a: first index where the sequence leaves the left periodic pattern.
    a = offset
    while a < end + period and sym(a) == left[(a - offset) % L]:
        a += 1
    if a >= end + period:
        # fully periodic: empty core, phase fixed at index 0
        phased = _rotate(left, -offset)
        return phased, (), phased, 0
    # b: first index from which the right periodic pattern holds forever.
    b = end
    while sym(b - 1) == right[(b - 1 - end) % R]:
        b -= 1
    lo = min(a, b)
    new_left = _rotate(left, lo - offset)
    new_right = _rotate(right, b - end)
    new_core = tuple(sym(i) for i in range(lo, b)) if a <= b else ()
    return new_left, new_core, new_right, lo


# -- operations ---------------------------------------------------------------

def shift_apply(p: SymbolicPoint, k: int) -> SymbolicPoint:
    """``sigma^k p``: the symbol at index i becomes ``p[i + k]``."""
    if k == 0:
        return p
    q = object.__new__(SymbolicPoint)
    q.alphabet_size = p.alphabet_size
    q._set(p.left_period, p.core, p.right_period, p.core_offset - k)
    return q


def _scan_bound(p: SymbolicPoint, q: SymbolicPoint) -> int:
    periods = lcm(len(p.left_period), len(q.left_period), len(p.right_period), len(q.right_period))
    return max(abs(p.core_offset), abs(q.core_offset), abs(p.end), abs(q.end)) + periods + 1


def first_difference(p: SymbolicPoint, q: SymbolicPoint) -> int | None:
    """``min{|k| : p_k != q_k}``, or None when the points are equal."""
    if p.alphabet_size != q.alphabet_size:
        raise AlphabetMismatch(f"alphabets {p.alphabet_size} and {q.alphabet_size}")
    if p == q:
        return None
    bound = _scan_bound(p, q) + 1
    lo, size = 0, 128
    while lo <= bound:
        hi = lo + size
        fp, fq = p.window(lo, hi), q.window(lo, hi)
        bp, bq = p.window(-hi + 1, -lo + 1), q.window(-hi + 1, -lo + 1)
        if fp != fq or bp != bq:
            # bp[j] is the symbol at index -(hi - 1 - j)
            fwd = next((i for i, (u, v) in enumerate(zip(fp, fq)) if u != v), size)
            bwd = next((size - 1 - j for j in range(size - 1, -1, -1) if bp[j] != bq[j]), size)
            return lo + min(fwd, bwd)
        lo, size = hi, size * 2
    raise AssertionError("unequal eventually periodic points must differ near the origin")


def shift_dist(p: SymbolicPoint, q: SymbolicPoint) -> Fraction:
    m = first_difference(p, q)
    return Fraction(0) if m is None else Fraction(1, 2 ** m)


def splice(x: SymbolicPoint, y: SymbolicPoint, cut: int) -> SymbolicPoint:
    """The point agreeing with ``x`` below ``cut`` and with ``y`` from ``cut`` on."""
    if x.alphabet_size != y.alphabet_size:
        raise AlphabetMismatch("cannot splice points over different alphabets")
    start = min(x.core_offset, cut)
    stop = max(cut, y.end)
    core = [x[i] if i < cut else y[i] for i in range(start, stop)]
    left = _rotate(x.left_period, start - x.core_offset)
    right = _rotate(y.right_period, stop - y.end)
    return SymbolicPoint(left, core, right, start, x.alphabet_size)


@lru_cache(maxsize=256)
def separation_radius(delta) -> int | None:
    """Largest r with ``2**-r > delta``: points are delta-separated iff they
    differ somewhere in ``[-r, r]``.  None when delta is 0 (any two distinct
    points are separated); -1 when delta >= 1 (nothing is separated)."""
    if delta < 0:
        raise ValueError("delta must be non-negative")
    if delta == 0:
        return None
    m = 0
    while Fraction(1, 2 ** m) > delta:
        m += 1
    return m - 1


class ShiftSystem(DynamicalSystem):
    kind = "shift"
    exact = True
    float_distances = False

    def __init__(self, alphabet_size: int = 2, sample_radius: int = 6):
        if alphabet_size < 2:
            raise ValueError("alphabet_size must be at least 2")
        self.alphabet_size = alphabet_size
        self.sample_radius = sample_radius

    @property
    def name(self) -> str:
        return f"shift{self.alphabet_size}"

    def iterate(self, p, k):
        return shift_apply(p, k)

    def dist(self, p, q):
        return shift_dist(p, q)

    def separated(self, p, q, delta):
        r = separation_radius(delta)
        if r is None:
            return p != q
        return r >= 0 and p.window(-r, r + 1) != q.window(-r, r + 1)

    def to_config(self):
        return {"kind": "shift", "alphabet_size": self.alphabet_size, "sample_radius": self.sample_radius}

    def point_to_json(self, p):
        return p.to_json()

    def point_from_json(self, data):
        """Canonical form ``{"left", "core", "right", "offset"}`` or sparse
        ``{"support": {index: symbol}, "background": symbol}``."""
        if "support" in data:
            support = {int(i): int(s) for i, s in data["support"].items()}
            return SymbolicPoint.from_support(support, int(data.get("background", 0)), self.alphabet_size)
        return SymbolicPoint.from_json(data, self.alphabet_size)

    def point(self, symbols: Mapping[int, int] | None = None, background: int = 0) -> SymbolicPoint:
        return SymbolicPoint.from_support(symbols or {}, background, self.alphabet_size)

    def sample(self, size, seed):
        """Points constant 0 outside ``[-sample_radius, sample_radius]``."""
        rng = random.Random(seed)
        width = 2 * self.sample_radius + 1
        if size > self.alphabet_size ** width:
            raise ValueError("requested more points than the sample window holds")
        seen: dict[SymbolicPoint, None] = {}
        while len(seen) < size:
            core = [rng.randrange(self.alphabet_size) for _ in range(width)]
            seen.setdefault(SymbolicPoint((0,), core, (0,), -self.sample_radius, self.alphabet_size))
        return list(seen)

    # -- certified tails ------------------------------------------------------
    def profile_tail(self, points, delta, window):
        pts = list(points)
        if not pts:
            return TailCertificate(window, 0, 0, "empty set")
        r = separation_radius(delta)
        if r is None:
            n = len(set(pts))
            return TailCertificate(window, n, n, "delta = 0: the shift is injective, so every iterate has all points", True)
        if r < 0:
            return TailCertificate(window, 1, 1, "delta >= 1 exceeds the diameter of the shift", True)
        right_start = max(p.end for p in pts)
        left_stop = min(p.core_offset for p in pts)
        rp = lcm(*(len(p.right_period) for p in pts))
        lp = lcm(*(len(p.left_period) for p in pts))
        # For k >= right_start + r every window [k-r, k+r] lies in the right
        # periodic parts, so the profile is periodic in k with period rp.
        k0 = right_start + r
        fwd_ks = range(window + 1, max(window, k0) + rp + 1)
        k1 = left_stop - 1 - r
        lo = min(-window - 1, k1) - lp + 1
        bwd_ks = range(lo, -window)
        fwd = max(self.profile_value(pts, delta, k) for k in fwd_ks)
        bwd = max(self.profile_value(pts, delta, k) for k in bwd_ks)
        reason = (
            f"eventually periodic profile: periodic with period {rp} for k >= {k0} "
            f"and with period {lp} for k <= {k1}; checked exactly on "
            f"[{fwd_ks.start}, {fwd_ks.stop - 1}] and [{bwd_ks.start}, {bwd_ks.stop - 1}]"
        )
        return TailCertificate(window, fwd, bwd, reason, True)

    def sup_distance_beyond(self, p, q, window, direction):
        if p == q:
            return Fraction(0)
        if direction < 0:
            return self.sup_distance_beyond(_mirror(p), _mirror(q), window, 1)
        hi = max(p.end, q.end)
        lo = min(p.core_offset, q.core_offset)
        rp = lcm(len(p.right_period), len(q.right_period))
        if any(p[i] != q[i] for i in range(hi, hi + rp)):
            # differences recur at arbitrarily large indices, where d = 1
            return Fraction(1)
        lp = lcm(len(p.left_period), len(q.left_period))
        last = next(i for i in range(hi - 1, lo - lp - 1, -1) if p[i] != q[i])
        # for k >= last the nearest difference is at index `last`
        ks = range(window + 1, max(window + 1, last) + 1)
        return max(shift_dist(shift_apply(p, k), shift_apply(q, k)) for k in ks)


def _mirror(p: SymbolicPoint) -> SymbolicPoint:
    """The reflected sequence ``i -> p[-i]``; conjugates sigma with sigma^-1."""
    start, stop = 1 - p.end, 1 - p.core_offset
    left = [p[-(start - len(p.right_period) + s)] for s in range(len(p.right_period))]
    right = [p[-(stop + s)] for s in range(len(p.left_period))]
    return SymbolicPoint.from_function(left, right, start, stop, lambda i: p[-i], p.alphabet_size)

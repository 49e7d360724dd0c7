"""Witness sets: finite sets whose iterates a delta-observer undercounts.

A witness for the claim (m, n) is a set A of m distinct points together with
its profile ``k -> |f^k(A)|_delta`` over a window ``|k| <= K`` whose maximum is
at most n.  Exact systems may attach a tail certificate that extends the bound
to every integer k.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Any, Sequence

from ..metric_core import BRUTEFORCE_CAPACITY, delta_cardinality, delta_cardinality_bruteforce
from ..systems import DynamicalSystem, TailCertificate

FRAGILITY_MARGIN = 1e-6

TAIL_CERTIFIED = "tail-certified"
WINDOW_EXACT = "window-exact"
AT_SCALE_ONLY = "at-scale-only"


class WitnessError(ValueError):
    """A witness failed construction or re-verification."""


class FragileWitness(WitnessError):
    """Some float distance lies within the fragility margin of delta."""


def number_to_json(x: Any) -> Any:
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else x.numerator
    return x


def number_from_json(x: Any) -> Any:
    if isinstance(x, str):
        return Fraction(x)
    return x


@dataclass(frozen=True)
class WitnessSet:
    system: DynamicalSystem = field(repr=False, compare=False)
    delta: Any
    window: int
    points: tuple
    profile: tuple
    claim: tuple
    tail: TailCertificate | None = None
    notes: tuple = ()

    @property
    def system_id(self) -> str:
        return self.system.name

    @property
    def size(self) -> int:
        return len(self.points)

    def profile_at(self, k: int) -> int:
        return self.profile[k + self.window]

    def profile_items(self):
        return [(k, self.profile_at(k)) for k in range(-self.window, self.window + 1)]

    @property
    def max_profile(self) -> int:
        return max(self.profile)

    @property
    def label(self) -> str:
        if self.tail is not None and self.tail.bound <= self.claim[1]:
            return TAIL_CERTIFIED
        return WINDOW_EXACT if self.system.exact else AT_SCALE_ONLY

    def to_json(self) -> dict:
        return {
            "system": self.system_id,
            "delta": number_to_json(self.delta),
            "window": self.window,
            "claim": list(self.claim),
            "label": self.label,
            "points": [self.system.point_to_json(p) for p in self.points],
            "profile_max": self.max_profile,
            "tail": self.tail.to_json() if self.tail else None,
            "notes": list(self.notes),
        }

    @property
    def witness_id(self) -> str:
        blob = json.dumps(self.to_json(), sort_keys=True).encode()
        return "w-" + hashlib.sha256(blob).hexdigest()[:12]

    def profile_csv(self) -> str:
        rows = ["k,profile"] + [f"{k},{v}" for k, v in self.profile_items()]
        return "\n".join(rows) + "\n"


def compute_profile(system: DynamicalSystem, points: Sequence, delta, window: int) -> tuple:
    return tuple(system.profile_value(points, delta, k) for k in range(-window, window + 1))


def fragile_distances(system: DynamicalSystem, points: Sequence, delta, window: int,
                      margin: float = FRAGILITY_MARGIN) -> list:
    """``(k, i, j, d)`` for float distances within ``margin`` of delta."""
    out: list = []
    if not system.float_distances:
        return out
    for k in range(-window, window + 1):
        img = [system.iterate(p, k) for p in points]
        for i, j in combinations(range(len(img)), 2):
            d = system.dist(img[i], img[j])
            if isinstance(d, float) and abs(d - delta) < margin:
                out.append((k, i, j, d))
    return out


def build_witness(system: DynamicalSystem, points: Sequence, delta, window: int,
                  claim: tuple | None = None, with_tail: bool = True, notes: Sequence[str] = (),
                  margin: float = FRAGILITY_MARGIN) -> WitnessSet:
    """Compute the profile of ``points`` and package it as a witness.

    ``claim`` defaults to ``(|A|, max profile)``.  Raises WitnessError when the
    points are not distinct or the profile exceeds the claimed n (inside the
    window, or beyond it by an attained tail bound), and
    FragileWitness when a float comparison sits within ``margin`` of delta.
    """
    pts = tuple(points)
    if len(set(pts)) != len(pts):
        raise WitnessError("witness points are not distinct")
    if not pts:
        raise WitnessError("a witness needs at least one point")
    if window < 0:
        raise WitnessError("window must be non-negative")
    fragile = fragile_distances(system, pts, delta, window, margin)
    if fragile:
        k, i, j, d = fragile[0]
        raise FragileWitness(f"distance {d!r} at k={k} between points {i} and {j} is within {margin} of delta")
    profile = compute_profile(system, pts, delta, window)
    if claim is None:
        claim = (len(pts), max(profile))
    claim = (int(claim[0]), int(claim[1]))
    if claim[0] != len(pts):
        raise WitnessError(f"claim {claim} does not match |A| = {len(pts)}")
    if max(profile) > claim[1]:
        k = profile.index(max(profile)) - window
        raise WitnessError(f"profile reaches {max(profile)} > {claim[1]} at k={k}")
    tail = None
    notes = list(notes)
    if with_tail:
        tail = system.profile_tail(pts, delta, window)
        if tail is not None and tail.bound > claim[1] and tail.attained:
            raise WitnessError(f"profile reaches {tail.bound} > {claim[1]} beyond the window")
        if tail is not None and tail.bound > claim[1]:
            notes.append(f"tail bound {tail.bound} exceeds the claim; claim holds on the window only")
            tail = None
    return WitnessSet(system, delta, window, pts, profile, claim, tail, tuple(notes))


def _independent_card(system: DynamicalSystem, pts: list, delta) -> int:
    if len(pts) <= BRUTEFORCE_CAPACITY:
        return delta_cardinality_bruteforce(pts, delta, system.dist,
                                            separated=lambda p, q: system.separated(p, q, delta))
    return delta_cardinality(pts, delta, system.dist)


def verify_witness(system: DynamicalSystem, W: WitnessSet, margin: float = FRAGILITY_MARGIN) -> bool:
    """Re-derive every stored fact about ``W``; raise WitnessError on mismatch.

    The profile is recomputed with the brute-force oracle (up to 20 points),
    independently of the clique solver used to build it.
    """
    pts = list(W.points)
    if len(set(pts)) != len(pts):
        raise WitnessError("points are not distinct")
    if W.claim[0] != len(pts):
        raise WitnessError(f"claim {W.claim} does not match |A| = {len(pts)}")
    if len(W.profile) != 2 * W.window + 1:
        raise WitnessError("stored profile does not cover the window")
    if system.float_distances:
        fragile = fragile_distances(system, pts, W.delta, W.window, margin)
        if fragile:
            k, i, j, d = fragile[0]
            raise FragileWitness(f"numerically fragile: distance {d!r} at k={k} within {margin} of delta")
    for k in range(-W.window, W.window + 1):
        img = [system.iterate(p, k) for p in pts]
        value = _independent_card(system, img, W.delta)
        if value != W.profile_at(k):
            raise WitnessError(f"profile mismatch at k={k}: stored {W.profile_at(k)}, recomputed {value}")
    if W.max_profile > W.claim[1]:
        raise WitnessError(f"profile maximum {W.max_profile} exceeds claimed n = {W.claim[1]}")
    if W.tail is not None:
        tail = system.profile_tail(pts, W.delta, W.window)
        if tail is None or tail.bound != W.tail.bound:
            raise WitnessError("tail certificate could not be reproduced")
        if tail.bound > W.claim[1]:
            raise WitnessError("tail bound exceeds the claim")
    return True

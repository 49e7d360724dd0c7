"""Search for witnesses refuting (m, n)-expansiveness inside a finite pool."""
from __future__ import annotations

import logging
import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations, islice
from math import comb
from typing import Sequence

from ..metric_core import max_clique
from ..systems import DynamicalSystem
from .witness import WitnessError, WitnessSet, build_witness, verify_witness

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 200_000
DEFAULT_RESTARTS = 200
THREADS_ENV = "MNEXP_THREADS"


class BudgetExhausted(RuntimeError):
    """The heuristic search stopped without finding a witness.

    Distinct from a ``None`` result, which means the pool was searched
    exhaustively and contains no witness.
    """

    def __init__(self, evaluated: int, best_max: int | None):
        super().__init__(f"gave up after {evaluated} evaluations (best profile maximum {best_max})")
        self.evaluated = evaluated
        self.best_max = best_max


def _threads() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


class PoolDynamics:
    """Separation graphs of every iterate of a pool over a window."""

    def __init__(self, system: DynamicalSystem, pool: Sequence, delta, window: int):
        self.system = system
        self.pool = list(pool)
        self.delta = delta
        self.window = window
        self.ks = [0] + [s * k for k in range(1, window + 1) for s in (1, -1)]
        self.images = {k: [system.iterate(p, k) for p in self.pool] for k in self.ks}
        self.adj = {k: system.separation_adjacency(self.images[k], delta) for k in self.ks}
        self._spread: dict = {}

    def exceeds(self, mask: int, n: int) -> bool:
        """True iff some iterate of the subset has delta-cardinality > n."""
        if bin(mask).count("1") <= n:
            return False
        for k in self.ks:
            if len(max_clique(self.adj[k], mask, target=n + 1)) > n:
                return True
        return False

    def profile(self, mask: int) -> list[int]:
        return [len(max_clique(self.adj[k], mask)) for k in self.ks]

    def spread(self, i: int, j: int) -> float:
        """Largest distance between the orbits of pool points i and j over the window."""
        key = (min(i, j), max(i, j))
        if key not in self._spread:
            d = self.system.dist
            self._spread[key] = float(max(d(self.images[k][i], self.images[k][j]) for k in self.ks))
        return self._spread[key]


def _mask(idx) -> int:
    m = 0
    for i in idx:
        m |= 1 << i
    return m


def _passing(dyn: PoolDynamics, chunk: list[tuple], n: int) -> list[bool]:
    return [not dyn.exceeds(_mask(idx), n) for idx in chunk]


def _accept(system, dyn, idx, m, n, delta, window) -> WitnessSet | None:
    pts = [dyn.pool[i] for i in idx]
    try:
        W = build_witness(system, pts, delta, window, claim=(m, n))
        verify_witness(system, W)
    except WitnessError as exc:
        log.info("rejecting candidate %s: %s", idx, exc)
        return None
    return W


def find_refuting_witness(system: DynamicalSystem, m: int, n: int, delta, window: int, pool: Sequence,
                          budget: int = DEFAULT_BUDGET, seed: int = 0, restarts: int = DEFAULT_RESTARTS,
                          dynamics: PoolDynamics | None = None) -> WitnessSet | None:
    """Look for ``A`` in ``pool`` with ``|A| = m`` and ``|f^k A|_delta <= n`` for ``|k| <= window``.

    When ``C(|pool|, m) <= budget`` every subset is examined in lexicographic
    order and the first verified one is returned (None if there is none).
    Otherwise a seeded greedy-plus-swap local search runs and
    :class:`BudgetExhausted` is raised if it fails.
    """
    if not m > n >= 1:
        raise ValueError("need m > n >= 1")
    pool = list(dict.fromkeys(pool))
    if len(pool) < m:
        return None
    dyn = dynamics if dynamics is not None else PoolDynamics(system, pool, delta, window)
    if comb(len(pool), m) <= budget:
        return _exhaustive(system, dyn, m, n, delta, window)
    return _local_search(system, dyn, m, n, delta, window, budget, seed, restarts)


def _exhaustive(system, dyn, m, n, delta, window):
    combos = combinations(range(len(dyn.pool)), m)
    threads = _threads()
    while True:
        block = list(islice(combos, 4096))
        if not block:
            return None
        if threads > 1:
            size = -(-len(block) // threads)
            chunks = [block[i:i + size] for i in range(0, len(block), size)]
            with ThreadPoolExecutor(threads) as ex:
                flags = [f for part in ex.map(lambda c: _passing(dyn, c, n), chunks) for f in part]
        else:
            flags = None
        # candidates are accepted in lexicographic order, whatever the schedule
        for pos, idx in enumerate(block):
            ok = flags[pos] if flags is not None else not dyn.exceeds(_mask(idx), n)
            if ok:
                W = _accept(system, dyn, idx, m, n, delta, window)
                if W is not None:
                    return W


@dataclass
class _Score:
    worst: int
    excess: int

    def key(self):
        return (self.worst, self.excess)


def _score(dyn: PoolDynamics, members: list[int], n: int) -> _Score:
    prof = dyn.profile(_mask(members))
    return _Score(max(prof), sum(max(0, v - n) for v in prof))


def _local_search(system, dyn, m, n, delta, window, budget, seed, restarts):
    rng = random.Random(seed)
    size = len(dyn.pool)
    evaluated = 0
    best_seen = None
    for _ in range(restarts):
        anchor = rng.randrange(size)
        members = [anchor]
        # greedy seeding: add the point whose orbit stays closest to the cluster
        while len(members) < m:
            rest = [j for j in range(size) if j not in members]
            members.append(min(rest, key=lambda j: (max(dyn.spread(i, j) for i in members), j)))
        score = _score(dyn, members, n)
        evaluated += 1
        while score.worst > n and evaluated < budget:
            best_move = None
            for pos in range(m):
                for j in range(size):
                    if j in members:
                        continue
                    trial = members[:pos] + [j] + members[pos + 1:]
                    s = _score(dyn, trial, n)
                    evaluated += 1
                    if s.key() < score.key() and (best_move is None or s.key() < best_move[0].key()):
                        best_move = (s, trial)
            if best_move is None:
                break
            score, members = best_move
        if best_seen is None or score.worst < best_seen:
            best_seen = score.worst
        if score.worst <= n:
            W = _accept(system, dyn, tuple(sorted(members)), m, n, delta, window)
            if W is not None:
                return W
        if evaluated >= budget:
            break
    raise BudgetExhausted(evaluated, best_seen)

"""Fill the (m, n) table for one system: direct search per cell, then closure."""
from __future__ import annotations

from typing import Sequence

from ..systems import DynamicalSystem
from .hierarchy import DEFAULT_MAX_M, HierarchyTable, audit, hierarchy_close, monotonicity_violations
from .search import DEFAULT_BUDGET, BudgetExhausted, PoolDynamics, find_refuting_witness
from .witness import WitnessSet, number_to_json, verify_witness

FOUND = "found"
NONE_IN_POOL = "none-in-pool"
GAVE_UP = "gave-up"
IMPLIED_ALREADY = "skipped-implied"

INFINITE_NOTE = (
    "padding rule R1 assumes an infinite phase space; every system in this package is infinite"
)


def classify(system: DynamicalSystem, pool: Sequence, scales: Sequence, window: int,
             max_m: int = DEFAULT_MAX_M, budget: int = DEFAULT_BUDGET, seed: int = 0,
             witnesses: Sequence[WitnessSet] = (), skip_implied: bool = False) -> tuple[HierarchyTable, dict]:
    """Refute as many grid cells as possible at the given scales.

    Supplied ``witnesses`` (e.g. from explicit constructions) are re-verified
    and entered first.  Remaining cells are searched in grid order at every
    scale; with ``skip_implied`` cells the closure already refutes are not
    searched.  Returns the closed table and a JSON-ready report.
    """
    table = HierarchyTable(max_m)
    store: dict[str, WitnessSet] = {}
    log: list[dict] = []

    def enter(W: WitnessSet, source: str) -> None:
        if source != "search":  # search results were verified on acceptance
            verify_witness(system, W)
        m, n = W.claim
        if (m, n) not in table:
            return
        store[W.witness_id] = W
        table.refute(m, n, W.delta, W.witness_id, W.label)
        log.append({"cell": [m, n], "scale": number_to_json(W.delta), "outcome": FOUND,
                    "source": source, "witness": W.witness_id})

    for W in witnesses:
        enter(W, "construction")

    pool = list(dict.fromkeys(pool))
    for delta in scales:
        dyn = PoolDynamics(system, pool, delta, window)
        # smallest m per n for which the pool was shown to hold no witness;
        # supersets of failing sets fail too
        hopeless: dict[int, int] = {}
        for m, n in table.grid():
            entry = {"cell": [m, n], "scale": number_to_json(delta)}
            if table[(m, n)].kind == "refuted":
                continue
            if skip_implied and hierarchy_close(table).is_refuted(m, n):
                log.append({**entry, "outcome": IMPLIED_ALREADY})
                continue
            if n in hopeless and m >= hopeless[n]:
                log.append({**entry, "outcome": NONE_IN_POOL, "reason": f"no {hopeless[n]}-subset qualifies"})
                continue
            try:
                W = find_refuting_witness(system, m, n, delta, window, pool, budget=budget, seed=seed, dynamics=dyn)
            except BudgetExhausted as exc:
                log.append({**entry, "outcome": GAVE_UP, "evaluated": exc.evaluated})
                continue
            if W is None:
                hopeless[n] = min(hopeless.get(n, m), m)
                log.append({**entry, "outcome": NONE_IN_POOL})
            else:
                enter(W, "search")

    closed = hierarchy_close(table)
    report = {
        "system": system.to_config(),
        "window": window,
        "scales": [number_to_json(d) for d in scales],
        "pool_size": len(pool),
        "seed": seed,
        "search": log,
        "table": closed.to_json(),
        "rendered": closed.render(),
        "audit": audit(closed),
        "monotonicity_violations": [list(map(list, a)) for a in monotonicity_violations(closed)],
        "witnesses": {wid: W.to_json() for wid, W in sorted(store.items())},
        "profiles": {wid: W.profile_csv() for wid, W in sorted(store.items())},
        "notes": [INFINITE_NOTE],
    }
    return closed, report


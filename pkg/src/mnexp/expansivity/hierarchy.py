"""The (m, n) lattice and closure of refutations under the known implications.

Rules, all in refutation-propagating form:

* R1: refuted(m', n') with n' <= n and m - n <= m' - n'  =>  refuted(m, n)
* R2: refuted(m, n) and refuted(l, 1)                     =>  refuted(m + l, n + 1)
* R3: refuted(a, 1)                                       =>  refuted(a * n, n), n >= 2

R1 pads sets with extra points, which needs an infinite phase space; every
system shipped here is infinite.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterator

REFUTED = "refuted"
IMPLIED = "implied-refuted"
OPEN = "open"

DEFAULT_MAX_M = 8


@dataclass(frozen=True)
class CellStatus:
    kind: str = OPEN
    scale: Any = None
    witness_id: str | None = None
    rule: str | None = None
    premises: tuple = ()
    step: int = 0
    label: str | None = None

    @property
    def is_refuted(self) -> bool:
        return self.kind in (REFUTED, IMPLIED)

    def to_json(self) -> dict:
        out: dict = {"status": self.kind}
        if self.kind == REFUTED:
            out.update(scale=_num(self.scale), witness=self.witness_id, label=self.label)
        elif self.kind == IMPLIED:
            out.update(rule=self.rule, premises=[list(p) for p in self.premises], step=self.step)
        return out


def _num(x):
    from .witness import number_to_json
    return number_to_json(x)


@dataclass
class HierarchyTable:
    """Status of every cell ``(m, n)`` with ``2 <= m <= max_m`` and ``1 <= n < m``."""

    max_m: int = DEFAULT_MAX_M
    cells: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.max_m < 2:
            raise ValueError("grid needs max_m >= 2")
        for cell in self.grid():
            self.cells.setdefault(cell, CellStatus())
        extra = set(self.cells) - set(self.grid())
        if extra:
            raise ValueError(f"cells outside the grid: {sorted(extra)}")

    def grid(self) -> list[tuple[int, int]]:
        return [(m, n) for m in range(2, self.max_m + 1) for n in range(1, m)]

    def __contains__(self, cell) -> bool:
        return cell in self.cells

    def __getitem__(self, cell) -> CellStatus:
        return self.cells[cell]

    def status(self, m: int, n: int) -> CellStatus:
        return self.cells[(m, n)]

    def is_refuted(self, m: int, n: int) -> bool:
        return (m, n) in self.cells and self.cells[(m, n)].is_refuted

    def refute(self, m: int, n: int, scale=None, witness_id: str | None = None, label: str | None = None) -> None:
        if (m, n) not in self.cells:
            raise KeyError(f"({m}, {n}) is outside the grid")
        if not self.cells[(m, n)].kind == REFUTED:
            self.cells[(m, n)] = CellStatus(REFUTED, scale, witness_id, label=label)

    def refuted_cells(self) -> list[tuple[int, int]]:
        return [c for c in self.grid() if self.cells[c].is_refuted]

    def direct_cells(self) -> list[tuple[int, int]]:
        return [c for c in self.grid() if self.cells[c].kind == REFUTED]

    def items(self) -> Iterator:
        return ((c, self.cells[c]) for c in self.grid())

    def copy(self) -> "HierarchyTable":
        return HierarchyTable(self.max_m, dict(self.cells))

    def __eq__(self, other) -> bool:
        return isinstance(other, HierarchyTable) and self.max_m == other.max_m and self.cells == other.cells

    def to_json(self) -> dict:
        return {"max_m": self.max_m, "cells": {f"{m},{n}": s.to_json() for (m, n), s in self.items()}}

    def render(self) -> str:
        """Rows n, columns m; R = direct, I = implied, . = open."""
        mark = {REFUTED: "R", IMPLIED: "I", OPEN: "."}
        head = "n\\m " + " ".join(f"{m:>2}" for m in range(2, self.max_m + 1))
        rows = [head]
        for n in range(1, self.max_m):
            cells = [f"{mark[self.cells[(m, n)].kind]:>2}" if m > n else "  " for m in range(2, self.max_m + 1)]
            rows.append(f"{n:>3} " + " ".join(cells))
        return "\n".join(rows)


def _r1(table: HierarchyTable, m: int, n: int):
    for p in table.refuted_cells():
        mp, np_ = p
        if p != (m, n) and np_ <= n and m - n <= mp - np_:
            return [p]
    return None


def _r2(table: HierarchyTable, m: int, n: int):
    if n < 2:
        return None
    for a in range(2, m - 1):
        l = m - a
        if table.is_refuted(a, n - 1) and table.is_refuted(l, 1):
            return [(a, n - 1), (l, 1)]
    return None


def _r3(table: HierarchyTable, m: int, n: int):
    if n >= 2 and m % n == 0 and m // n >= 2 and table.is_refuted(m // n, 1):
        return [(m // n, 1)]
    return None


RULES = (("R1", _r1), ("R2", _r2), ("R3", _r3))


def rule_applies(rule: str, cell: tuple[int, int], premises) -> bool:
    """Check a single derivation step, independently of the closure loop."""
    m, n = cell
    prem = [tuple(p) for p in premises]
    if rule == "R1" and len(prem) == 1:
        mp, np_ = prem[0]
        return prem[0] != cell and np_ <= n and m - n <= mp - np_
    if rule == "R2" and len(prem) == 2:
        (a, b), (l, one) = prem
        return one == 1 and a + l == m and b + 1 == n
    if rule == "R3" and len(prem) == 1:
        a, one = prem[0]
        return one == 1 and n >= 2 and a * n == m
    return False


def hierarchy_close(table: HierarchyTable) -> HierarchyTable:
    """Smallest table containing ``table`` that is closed under R1-R3.

    Cells are visited in grid order and rules tried in order, so the recorded
    derivations are deterministic.  Already refuted cells keep their status.
    """
    out = table.copy()
    step = max((s.step for _, s in out.items()), default=0)
    changed = True
    while changed:
        changed = False
        for cell in out.grid():
            if out.cells[cell].is_refuted:
                continue
            for name, rule in RULES:
                premises = rule(out, *cell)
                if premises:
                    step += 1
                    out.cells[cell] = CellStatus(IMPLIED, rule=name, premises=tuple(premises), step=step)
                    changed = True
                    break
    return out


def audit(table: HierarchyTable) -> list[str]:
    """Replay every implied cell; return a description of each broken derivation."""
    problems = []
    for cell, s in table.items():
        if s.kind != IMPLIED:
            continue
        if not rule_applies(s.rule, cell, s.premises):
            problems.append(f"{cell}: {s.rule} does not derive it from {list(s.premises)}")
            continue
        for p in s.premises:
            ps = table.cells.get(tuple(p))
            if ps is None or not ps.is_refuted:
                problems.append(f"{cell}: premise {p} is not refuted")
            elif ps.kind == IMPLIED and ps.step >= s.step:
                problems.append(f"{cell}: premise {p} was derived later (circular)")
    return problems


def arrows(max_m: int) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """Implications between neighbouring cells: (m, n) => (m + 1, n) and (m, n) => (m - 1, n - 1)."""
    out = []
    for m in range(2, max_m + 1):
        for n in range(1, m):
            if m + 1 <= max_m:
                out.append(((m, n), (m + 1, n)))
            if n >= 2:
                out.append(((m, n), (m - 1, n - 1)))
    return out


def monotonicity_violations(table: HierarchyTable) -> list:
    """Arrows p => q along which q is refuted but p is not."""
    return [(p, q) for p, q in arrows(table.max_m) if table.is_refuted(*q) and not table.is_refuted(*p)]


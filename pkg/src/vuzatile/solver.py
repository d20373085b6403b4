"""Depth-first 0/1 feasibility search with integer bounds propagation.

Every row keeps the running minimum and maximum of its left-hand side over
the current partial assignment.  A row whose slack drops below its largest
coefficient is rescanned; any variable that would break the row in one
direction is fixed to the other value.  Conflicts undo the most recent
decision that still has an untried value (no learning).  The search is a
generator, so adding rows and asking again continues where it stopped.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import InvalidArgumentError, InvalidCutError
from .model import EQ, GE, LE, ConstraintSystem, LinearRow

SAT, UNSAT, UNKNOWN = "sat", "unsat", "unknown"

_REL = {LE: 0, GE: 1, EQ: 2}


@dataclass
class SearchStats:
    decisions: int = 0
    propagations: int = 0
    conflicts: int = 0
    elapsed: float = 0.0

    def to_dict(self) -> dict:
        return {
            "decisions": self.decisions,
            "propagations": self.propagations,
            "conflicts": self.conflicts,
            "elapsed": self.elapsed,
        }


@dataclass
class SolveResult:
    status: str
    assignment: tuple[int, ...] | None
    stats: SearchStats = field(default_factory=SearchStats)

    def __iter__(self):
        # allows ``assignment, stats = solve(sys)``
        yield self.assignment
        yield self.stats


class Engine:
    """Mutable search state over one system; rows may be appended between solves."""

    def __init__(
        self,
        sys: ConstraintSystem,
        value_order: str = "one-first",
        branch_kind: str = "b",
    ) -> None:
        if value_order not in ("one-first", "zero-first"):
            raise InvalidArgumentError(f"unknown value order {value_order!r}")
        self.sys = sys
        self.first_value = 1 if value_order == "one-first" else 0
        self.nvar = len(sys.variables)
        self.branch_ids = [v.id for v in sys.variables if v.kind == branch_kind]
        self.occ_rows: list[list[int]] = [[] for _ in range(self.nvar)]
        self.occ_coefs: list[list[int]] = [[] for _ in range(self.nvar)]
        self.row_rel: list[int] = []
        self.row_rhs: list[int] = []
        self.row_vars: list[list[int]] = []
        self.row_coefs: list[list[int]] = []
        self.row_maxabs: list[int] = []
        self.base_lo: list[int] = []
        self.base_hi: list[int] = []
        self._counts = [0, 0, 0]  # decisions, propagations, conflicts
        self._deadline: float | None = None
        self._gen = None
        self.add_rows(sys.rows)

    def add_rows(self, rows: Iterable[LinearRow]) -> None:
        for row in rows:
            if any(not 0 <= v < self.nvar for _, v in row.terms):
                raise InvalidCutError(f"row {row.name} references an unknown variable")
            k = len(self.row_rel)
            self.row_rel.append(_REL[row.relation])
            self.row_rhs.append(row.rhs)
            self.row_vars.append([v for _, v in row.terms])
            self.row_coefs.append([c for c, _ in row.terms])
            self.row_maxabs.append(max(abs(c) for c, _ in row.terms) if row.terms else 0)
            self.base_lo.append(sum(c for c, _ in row.terms if c < 0))
            self.base_hi.append(sum(c for c, _ in row.terms if c > 0))
            for c, v in row.terms:
                self.occ_rows[v].append(k)
                self.occ_coefs[v].append(c)

    def propagate_root(self) -> list[int] | None:
        """Values forced before any decision (-1 = free), or None on a root conflict."""
        gen = self._search(root_only=True)
        status, values = next(gen)
        return None if status == UNSAT else list(values)

    def solve(self, max_time: float | None = None, root_only: bool = False) -> SolveResult:
        """Return the first solution (in search order) of the system with all rows added so far.

        The search is resumed rather than restarted: rows only ever tighten the
        system, so every subtree already exhausted stays exhausted.
        """
        if root_only:
            forced = self.propagate_root()
            return SolveResult(UNSAT if forced is None else UNKNOWN, None if forced is None else tuple(forced))
        start = time.perf_counter()
        self._deadline = None if max_time is None else start + max_time
        if self._gen is None:
            self._gen = self._search()
        before = list(self._counts)
        status, values = next(self._gen)
        c = self._counts
        stats = SearchStats(c[0] - before[0], c[1] - before[1], c[2] - before[2], time.perf_counter() - start)
        return SolveResult(status, values if status == SAT else None, stats)

    def _search(self, root_only: bool = False):
        counts = self._counts
        nvar = self.nvar
        val = [-1] * nvar
        lo: list[int] = []
        hi: list[int] = []
        queued: list[bool] = []
        rel, rhs, maxabs = self.row_rel, self.row_rhs, self.row_maxabs
        row_vars, row_coefs = self.row_vars, self.row_coefs
        occ_rows, occ_coefs = self.occ_rows, self.occ_coefs
        trail: list[int] = []
        queue: list[int] = []

        def assign(v: int, x: int) -> None:
            val[v] = x
            trail.append(v)
            rows = occ_rows[v]
            coefs = occ_coefs[v]
            for k in range(len(rows)):
                r = rows[k]
                c = coefs[k]
                if c > 0:
                    if x:
                        lo[r] += c
                    else:
                        hi[r] -= c
                elif x:
                    hi[r] += c
                else:
                    lo[r] -= c
                if not queued[r]:
                    m = maxabs[r]
                    t = rel[r]
                    if (t != 1 and rhs[r] - lo[r] < m) or (t != 0 and hi[r] - rhs[r] < m):
                        queued[r] = True
                        queue.append(r)

        def undo_to(mark: int) -> None:
            while len(trail) > mark:
                v = trail.pop()
                x = val[v]
                val[v] = -1
                rows = occ_rows[v]
                coefs = occ_coefs[v]
                for k in range(len(rows)):
                    r = rows[k]
                    c = coefs[k]
                    if c > 0:
                        if x:
                            lo[r] -= c
                        else:
                            hi[r] += c
                    elif x:
                        hi[r] -= c
                    else:
                        lo[r] += c

        def propagate() -> bool:
            head = 0
            ok = True
            while head < len(queue):
                r = queue[head]
                head += 1
                queued[r] = False
                if not ok:
                    continue
                t = rel[r]
                b = rhs[r]
                if t != 1:
                    slack = b - lo[r]
                    if slack < 0:
                        ok = False
                        continue
                    if slack < maxabs[r]:
                        vs = row_vars[r]
                        cs = row_coefs[r]
                        for k in range(len(vs)):
                            v = vs[k]
                            if val[v] < 0:
                                c = cs[k]
                                if c > slack:
                                    counts[1] += 1
                                    assign(v, 0)
                                elif -c > slack:
                                    counts[1] += 1
                                    assign(v, 1)
                if t != 0:
                    slack = hi[r] - b
                    if slack < 0:
                        ok = False
                        continue
                    if slack < maxabs[r]:
                        vs = row_vars[r]
                        cs = row_coefs[r]
                        for k in range(len(vs)):
                            v = vs[k]
                            if val[v] < 0:
                                c = cs[k]
                                if c > slack:
                                    counts[1] += 1
                                    assign(v, 1)
                                elif -c > slack:
                                    counts[1] += 1
                                    assign(v, 0)
                    if t == 2 and b - lo[r] < 0:
                        ok = False
            queue.clear()
            return ok

        fresh: list[int] = []  # rows from the latest sync, rechecked while backtracking

        def sync() -> bool:
            """Bring rows added since the last call up to the current partial assignment."""
            fresh[:] = range(len(lo), len(rel))
            for r in fresh:
                l, h = self.base_lo[r], self.base_hi[r]
                for v, c in zip(row_vars[r], row_coefs[r]):
                    x = val[v]
                    if x == 1:
                        l += c if c > 0 else 0
                        h += c if c < 0 else 0
                    elif x == 0:
                        h -= c if c > 0 else 0
                        l -= c if c < 0 else 0
                lo.append(l)
                hi.append(h)
                tight = (rel[r] != 1 and rhs[r] - l < max(maxabs[r], 1)) or (
                    rel[r] != 0 and h - rhs[r] < max(maxabs[r], 1)
                )
                queued.append(tight)
                if tight:
                    queue.append(r)
            return propagate()

        branch_ids = self.branch_ids
        first = self.first_value

        def pick() -> int:
            for v in branch_ids:
                if val[v] < 0:
                    return v
            for v in range(nvar):
                if val[v] < 0:
                    return v
            return -1

        levels: list[tuple[int, int, bool, int]] = []  # (var, value, flipped, trail mark)

        def backtrack() -> bool:
            counts[2] += 1
            while levels:
                v, x, flipped, mark = levels.pop()
                undo_to(mark)
                # a new row broken only by variables fixed before the row existed
                # would otherwise never be queued again
                for r in fresh:
                    if not queued[r] and ((rel[r] != 1 and lo[r] > rhs[r]) or (rel[r] != 0 and hi[r] < rhs[r])):
                        queued[r] = True
                        queue.append(r)
                if not flipped:
                    levels.append((v, 1 - x, True, mark))
                    assign(v, 1 - x)
                    if propagate():
                        # bounds only loosen further up, so these rows are safe from now on
                        fresh.clear()
                        return True
                    counts[2] += 1
            return False

        ok = sync()
        if root_only:
            yield (UNKNOWN if ok else UNSAT), tuple(val)
            return
        if not ok:
            counts[2] += 1
        while ok:
            if len(lo) < len(rel) and not sync() and not backtrack():
                break
            v = pick()
            if v < 0:
                yield SAT, tuple(val)
                continue
            deadline = self._deadline
            if deadline is not None and (counts[0] & 63) == 0 and time.perf_counter() > deadline:
                yield UNKNOWN, None
                continue
            counts[0] += 1
            levels.append((v, first, False, len(trail)))
            assign(v, first)
            if not propagate():
                ok = backtrack()
        while True:
            yield UNSAT, None


def solve(sys: ConstraintSystem, max_time: float | None = None, **options) -> SolveResult:
    """Find one satisfying 0/1 assignment of ``sys``, or prove there is none."""
    return Engine(sys, **options).solve(max_time)


def solve_with_cuts(
    sys: ConstraintSystem,
    cuts: Sequence[LinearRow],
    max_time: float | None = None,
    **options,
) -> SolveResult:
    engine = Engine(sys, **options)
    engine.add_rows(cuts)
    return engine.solve(max_time)

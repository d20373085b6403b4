"""Cutting sequential enumeration: solve, record, block the orbit, solve again."""
from __future__ import annotations

import time
from dataclasses import dataclass, field

from .errors import InvalidArgumentError
from .model import ConstraintSystem, build_master_problem, cuts_for_solution, orbit_cut
from .rhythm import (
    AFFINE,
    MODES,
    TRANSLATION,
    Rhythm,
    canonical_representative,
    is_aperiodic,
    orbit_index_sets,
)
from .solver import SAT, UNKNOWN, UNSAT, Engine, SearchStats

COMPLETE = "complete"
LIMIT_REACHED = "limit_reached"
DEFAULT_MAX_TIME = 3600.0


@dataclass(frozen=True)
class TilingClass:
    representative: Rhythm
    orbit_size: int  # anchored members of the orbit, i.e. cut rows it produces
    translation_classes: int

    def to_dict(self) -> dict:
        return {
            "representative": list(self.representative.elements),
            "orbit_size": self.orbit_size,
            "translation_classes": self.translation_classes,
        }


@dataclass
class TilingEnumeration:
    inner: Rhythm
    mode: str
    solutions: list[Rhythm] = field(default_factory=list)
    classes: list[TilingClass] = field(default_factory=list)
    iteration_times: list[float] = field(default_factory=list)
    row_counts: list[int] = field(default_factory=list)
    stats: list[SearchStats] = field(default_factory=list)
    status: str = COMPLETE

    @property
    def translation_count(self) -> int:
        """Complements counted modulo translation (the sum over classes)."""
        return sum(c.translation_classes for c in self.classes)


def _class_of(b: Rhythm, mode: str) -> TilingClass:
    orbit = orbit_index_sets(b, mode)
    if mode == TRANSLATION:
        tcount = 1
    else:
        tcount = len({canonical_representative(Rhythm(b.period, s), TRANSLATION) for s in orbit})
    return TilingClass(canonical_representative(b, mode), len(orbit), tcount)


def run_csa(
    a: Rhythm,
    mode: str = AFFINE,
    max_solutions: int | None = None,
    max_time: float | None = DEFAULT_MAX_TIME,
    cut_policy: str = "orbit",
    aperiodicity: bool = True,
    include_cardinality: bool = True,
    replace_first_family: bool = False,
    system: ConstraintSystem | None = None,
) -> TilingEnumeration:
    """Enumerate the complements of ``a`` one orbit at a time.

    ``cut_policy="orbit"`` blocks the whole orbit of each solution under
    ``mode``; ``"single"`` blocks just the solution found, so every anchored
    member of an orbit eventually shows up.
    """
    if mode not in MODES:
        raise InvalidArgumentError(f"unknown equivalence mode {mode!r}")
    if cut_policy not in ("orbit", "single"):
        raise InvalidArgumentError(f"unknown cut policy {cut_policy!r}")
    if system is None:
        system = build_master_problem(
            a,
            include_cardinality=include_cardinality,
            replace_first_family=replace_first_family,
            aperiodicity=aperiodicity,
        )
    engine = Engine(system)
    out = TilingEnumeration(inner=a, mode=mode)
    rows = len(system.rows)
    seen: dict[Rhythm, TilingClass] = {}
    start = time.perf_counter()

    while True:
        remaining = None
        if max_time is not None:
            remaining = max_time - (time.perf_counter() - start)
            if remaining <= 0:
                out.status = LIMIT_REACHED
                break
        res = engine.solve(remaining)
        out.iteration_times.append(res.stats.elapsed)
        out.stats.append(res.stats)
        if res.status == UNSAT:
            out.status = COMPLETE
            break
        if res.status == UNKNOWN:
            out.status = LIMIT_REACHED
            break
        b = system.decode(res.assignment)
        assert system.check(res.assignment)
        out.solutions.append(b)
        cls = _class_of(b, mode)
        if cls.representative not in seen:
            seen[cls.representative] = cls
        if cut_policy == "orbit":
            cuts = cuts_for_solution(b, mode)
        else:
            cuts = [orbit_cut(b.elements, len(b))]
        engine.add_rows(cuts)
        rows += len(cuts)
        out.row_counts.append(rows)
        if max_solutions is not None and len(out.solutions) >= max_solutions:
            out.status = LIMIT_REACHED
            break

    out.classes = sorted(seen.values(), key=lambda c: c.representative)
    return out


@dataclass
class ExistsResult:
    answer: str  # "yes", "no" or "unknown"
    witness: Rhythm | None
    stats: SearchStats


def exists_aperiodic_complement(
    a: Rhythm,
    max_time: float | None = DEFAULT_MAX_TIME,
    include_cardinality: bool = True,
    replace_first_family: bool = False,
) -> ExistsResult:
    system = build_master_problem(
        a, include_cardinality=include_cardinality, replace_first_family=replace_first_family
    )
    res = Engine(system).solve(max_time)
    if res.status == SAT:
        b = system.decode(res.assignment)
        assert is_aperiodic(b)
        return ExistsResult("yes", b, res.stats)
    return ExistsResult("no" if res.status == UNSAT else "unknown", None, res.stats)

"""The binary linear model whose solutions are the aperiodic complements of A.

Variables are laid out as b_0..b_{n-1}, r_0..r_{2n-2}, then one family of
auxiliary u variables per prime p | n_B (ascending p, then index), so the
ids are stable and the solver and LP writer see the same order.

Row tags:
    c1, c2       coefficients of p_A * p_B below / above degree n
    c3           r_i + r_{i+n} = 1 (product is 1 + x + ... + x^{n-1} mod x^n - 1)
    c4           prefix-sum replacement of one u family
    c5, c6, c7   u_i = 1 iff the coset i + m*Z is full; not all cosets full
    anchor       b_0 = 1
    cardinality  sum of b = n_B
    cut          orbit-blocking rows added during enumeration
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

from .errors import (
    InvalidArgumentError,
    InvalidCutError,
    NonDivisibleCardinalityError,
    UnanchoredRhythmError,
)
from .rhythm import TRANSLATION, Rhythm, maximal_divisors, orbit_index_sets

LE, GE, EQ = "<=", ">=", "="

TAG_ORDER = ("c1", "c2", "c3", "c4", "c5", "c6", "c7", "anchor", "cardinality", "cut")


@dataclass(frozen=True)
class Variable:
    id: int
    kind: str  # "b", "r" or "u"
    subscript: tuple[int, ...]

    @property
    def name(self) -> str:
        if self.kind == "u":
            j, i = self.subscript
            return f"u{j}_{i}"
        return f"{self.kind}{self.subscript[0]}"


@dataclass(frozen=True)
class LinearRow:
    terms: tuple[tuple[int, int], ...]  # (coefficient, variable id)
    relation: str
    rhs: int
    tag: str
    index: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.relation not in (LE, GE, EQ):
            raise InvalidArgumentError(f"unknown relation {self.relation!r}")
        ids = [v for _, v in self.terms]
        if len(set(ids)) != len(ids):
            raise InvalidArgumentError(f"repeated variable in row {self.name}")
        if any(c == 0 for c, _ in self.terms):
            raise InvalidArgumentError(f"zero coefficient in row {self.name}")

    @property
    def name(self) -> str:
        return "_".join([self.tag, *map(str, self.index)])

    def lhs(self, values: Sequence[int]) -> int:
        return sum(c * values[v] for c, v in self.terms)

    def satisfied_by(self, values: Sequence[int]) -> bool:
        s = self.lhs(values)
        if self.relation == LE:
            return s <= self.rhs
        if self.relation == GE:
            return s >= self.rhs
        return s == self.rhs


@dataclass(frozen=True)
class ConstraintSystem:
    n: int
    n_A: int
    n_B: int
    variables: tuple[Variable, ...]
    rows: tuple[LinearRow, ...]
    inner: Rhythm | None = None
    objective: tuple[tuple[int, int], ...] = field(default=())

    @property
    def b_ids(self) -> range:
        return range(self.n)

    def r_id(self, i: int) -> int:
        return self.n + i

    def with_rows(self, extra: Iterable[LinearRow]) -> "ConstraintSystem":
        extra = tuple(extra)
        nvar = len(self.variables)
        for row in extra:
            if any(not 0 <= v < nvar for _, v in row.terms):
                raise InvalidCutError(f"row {row.name} references an unknown variable")
        return replace(self, rows=self.rows + extra)

    def rows_by_tag(self) -> dict[str, int]:
        counts = Counter(row.tag for row in self.rows)
        return {t: counts[t] for t in TAG_ORDER if counts[t]}

    def check(self, values: Sequence[int]) -> bool:
        """Exact integer evaluation of every row."""
        return len(values) == len(self.variables) and all(
            v in (0, 1) for v in values
        ) and all(row.satisfied_by(values) for row in self.rows)

    def decode(self, values: Sequence[int]) -> Rhythm:
        return Rhythm(self.n, tuple(i for i in range(self.n) if values[i]))

    def summary(self) -> dict:
        kinds = Counter(v.kind for v in self.variables)
        return {
            "n": self.n,
            "n_A": self.n_A,
            "n_B": self.n_B,
            "rows_by_tag": self.rows_by_tag(),
            "variables": {k: kinds[k] for k in ("b", "r", "u")},
        }


def replaced_prime(n: int, n_B: int) -> int | None:
    """Prime whose u family the prefix-sum row replaces: the smallest prime dividing n_B."""
    for p in maximal_divisors(n).primes if n >= 2 else ():
        if n_B % p == 0:
            return p
    return None


def build_master_problem(
    a: Rhythm,
    include_cardinality: bool = True,
    replace_first_family: bool = False,
    aperiodicity: bool = True,
    objective: str = "zero",
) -> ConstraintSystem:
    """Assemble the tiling rows, the aperiodicity rows and the anchor for inner rhythm ``a``.

    ``replace_first_family`` swaps the u family of the smallest prime dividing
    n_B for the single prefix-sum row.  That row together with b_0 = 1 can
    cut off whole translation classes of complements, so it is off by default.
    ``aperiodicity=False`` drops c4-c7 and enumerates every anchored complement.
    """
    n = a.period
    if 0 not in a:
        raise UnanchoredRhythmError(f"{a} does not contain 0")
    n_A = len(a)
    if n % n_A:
        raise NonDivisibleCardinalityError(f"|A|={n_A} does not divide n={n}")
    n_B = n // n_A

    variables = [Variable(i, "b", (i,)) for i in range(n)]
    variables += [Variable(n + i, "r", (i,)) for i in range(2 * n - 1)]
    b = list(range(n))
    r = [n + i for i in range(2 * n - 1)]
    desc = a.elements[::-1]  # so that j = k - x comes out ascending
    rows: list[LinearRow] = []

    # coefficient k of p_A * p_B is sum over j of a_{k-j} b_j
    for i in range(n):
        terms = tuple((1, b[i - x]) for x in desc if x <= i) + ((-1, r[i]),)
        rows.append(LinearRow(terms, EQ, 0, "c1", (i,)))
    for i in range(n - 1):
        k = i + n
        terms = tuple((1, b[k - x]) for x in desc if i + 1 <= k - x < n) + ((-1, r[k]),)
        rows.append(LinearRow(terms, EQ, 0, "c2", (i,)))
    for j in range(n):
        terms = ((1, r[j]), (1, r[j + n])) if j + n < 2 * n - 1 else ((1, r[j]),)
        rows.append(LinearRow(terms, EQ, 1, "c3", (j,)))

    if aperiodicity and n >= 2:
        md = maximal_divisors(n)
        skip = replaced_prime(n, n_B) if replace_first_family else None
        if skip is not None:
            m = n // skip
            rows.append(
                LinearRow(tuple((1, b[i]) for i in range(m)), LE, n_B * m // n - 1, "c4")
            )
        c5, c6, c7 = [], [], []
        for j, (p, m) in enumerate(zip(md.primes, md.divisors), start=1):
            if n_B % p or p == skip:
                continue
            u_ids = []
            for i in range(m):
                uid = len(variables)
                variables.append(Variable(uid, "u", (j, i)))
                u_ids.append(uid)
                coset = tuple((1, b[i + k * m]) for k in range(p))
                c5.append(LinearRow(coset + ((-p, uid),), LE, p - 1, "c5", (j, i)))
                c6.append(LinearRow(coset + ((-p, uid),), GE, 0, "c6", (j, i)))
            c7.append(LinearRow(tuple((1, u) for u in u_ids), LE, n_B // p - 1, "c7", (j,)))
        rows += c5 + c6 + c7

    rows.append(LinearRow(((1, b[0]),), EQ, 1, "anchor"))
    if include_cardinality:
        rows.append(LinearRow(tuple((1, v) for v in b), EQ, n_B, "cardinality"))

    if objective == "zero":
        obj: tuple[tuple[int, int], ...] = ()
    elif objective == "squares":
        obj = tuple((i * i, b[i]) for i in range(1, n))
    else:
        raise InvalidArgumentError(f"unknown objective {objective!r}")

    return ConstraintSystem(n, n_A, n_B, tuple(variables), tuple(rows), a, obj)


def orbit_cut(index_set: Sequence[int], n_B: int, index: tuple[int, ...] = ()) -> LinearRow:
    """sum of b_i over index_set <= n_B - 1: forbids exactly that complement."""
    idx = sorted(index_set)
    if len(set(idx)) != n_B or len(idx) != n_B:
        raise InvalidCutError(f"cut needs {n_B} distinct indices, got {len(idx)}")
    if not idx or idx[0] != 0:
        raise InvalidCutError("cut index set must contain 0")
    return LinearRow(tuple((1, i) for i in idx), LE, n_B - 1, "cut", index)


def cuts_for_solution(b_set: Rhythm, mode: str = TRANSLATION) -> list[LinearRow]:
    if 0 not in b_set:
        raise UnanchoredRhythmError(f"{b_set} does not contain 0")
    return [orbit_cut(s, len(b_set)) for s in orbit_index_sets(b_set, mode)]


def _fmt_terms(terms: Sequence[tuple[int, int]], names: Sequence[str]) -> str:
    parts = []
    for k, (c, v) in enumerate(terms):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        body = names[v] if mag == 1 else f"{mag} {names[v]}"
        if k == 0:
            parts.append(body if sign == "+" else f"- {body}")
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts)


def export_lp(sys: ConstraintSystem) -> str:
    """Render the system in CPLEX LP text format, deterministically."""
    names = [v.name for v in sys.variables]
    order = {t: k for k, t in enumerate(TAG_ORDER)}
    rows = sorted(
        enumerate(sys.rows), key=lambda kr: (order.get(kr[1].tag, len(order)), kr[1].index, kr[0])
    )
    out = ["\\ binary tiling model", "Minimize"]
    out.append(" obj: " + _fmt_terms(sys.objective, names) if sys.objective else " obj: 0")
    out.append("Subject To")
    cut_no = 0
    for _, row in rows:
        name = row.name
        if row.tag == "cut" and not row.index:
            name = f"cut_{cut_no}"
            cut_no += 1
        out.append(f" {name}: {_fmt_terms(row.terms, names)} {row.relation} {row.rhs}")
    out.append("Binary")
    for k in range(0, len(names), 10):
        out.append(" " + " ".join(names[k:k + 10]))
    out.append("End")
    return "\n".join(out) + "\n"


def summary_json(sys: ConstraintSystem) -> str:
    return json.dumps(sys.summary(), sort_keys=True)

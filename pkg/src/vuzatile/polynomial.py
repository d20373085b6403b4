"""Exact integer polynomials, cyclotomic polynomials and the Coven-Meyerowitz checks.

Coefficients are Python ints, so nothing overflows no matter how large the
cyclotomic coefficients get.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from typing import Iterable, Sequence

from .errors import InvalidArgumentError, InvalidDivisorError
from .rhythm import Rhythm, factorize


@dataclass(frozen=True)
class IntPolynomial:
    coeffs: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(int(x) for x in c))

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "IntPolynomial":
        return cls((0,) * k + (c,))

    @classmethod
    def from_exponents(cls, exps: Iterable[int]) -> "IntPolynomial":
        exps = list(exps)
        c = [0] * (max(exps) + 1 if exps else 0)
        for e in exps:
            c[e] += 1
        return cls(tuple(c))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPolynomial(tuple(out))

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPolynomial()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPolynomial(tuple(out))

    def divmod(self, divisor: "IntPolynomial") -> tuple["IntPolynomial", "IntPolynomial"] | None:
        """Long division over Z.

        Returns None when some step needs a non-integer quotient coefficient,
        which means the divisor does not divide exactly over the integers.
        """
        if divisor.is_zero():
            raise InvalidDivisorError("division by the zero polynomial")
        rem = list(self.coeffs)
        d = divisor.coeffs
        lead = d[-1]
        dd = len(d) - 1
        if len(rem) - 1 < dd:
            return IntPolynomial(), self
        quot = [0] * (len(rem) - dd)
        for k in range(len(rem) - 1, dd - 1, -1):
            c = rem[k]
            if c == 0:
                continue
            q, r = divmod(c, lead)
            if r:
                return None
            quot[k - dd] = q
            for i in range(dd + 1):
                rem[k - dd + i] -= q * d[i]
        return IntPolynomial(tuple(quot)), IntPolynomial(tuple(rem))

    def __floordiv__(self, divisor: "IntPolynomial") -> "IntPolynomial":
        res = self.divmod(divisor)
        if res is None or not res[1].is_zero():
            raise InvalidArgumentError("polynomial division is not exact")
        return res[0]

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{mono}"
            terms.append(("-" if c < 0 else "+", body))
        sign, first = terms[0]
        out = ("-" if sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


ONE = IntPolynomial((1,))


def divides(p: IntPolynomial, q: IntPolynomial) -> bool:
    if p.is_zero():
        raise InvalidDivisorError("the zero polynomial divides nothing")
    res = q.divmod(p)
    return res is not None and res[1].is_zero()


def char_poly(r: Rhythm | Iterable[int]) -> IntPolynomial:
    return IntPolynomial.from_exponents(r.elements if isinstance(r, Rhythm) else r)


def divisors_of(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def totient(n: int) -> int:
    out = n
    for p in factorize(n):
        out = out // p * (p - 1)
    return out


@lru_cache(maxsize=None)
def cyclotomic(d: int) -> IntPolynomial:
    """Phi_d as (x^d - 1) divided exactly by Phi_e for every proper divisor e."""
    if d < 1:
        raise InvalidArgumentError(f"cyclotomic index must be positive, got {d}")
    poly = IntPolynomial.monomial(d) - ONE
    for e in divisors_of(d)[:-1]:
        poly = poly // cyclotomic(e)
    return poly


def delta(n: int) -> IntPolynomial:
    """1 + x + ... + x^(n-1)."""
    return IntPolynomial((1,) * n)


def product_mod_cycle(p: IntPolynomial, q: IntPolynomial, n: int) -> list[int]:
    """Coefficients of p*q reduced modulo x^n - 1."""
    if n < 1:
        raise InvalidArgumentError(f"n must be positive, got {n}")
    if p.degree >= n or q.degree >= n:
        raise InvalidArgumentError(f"degrees must be below n={n}")
    out = [0] * n
    for i, x in enumerate(p.coeffs):
        if x:
            for j, y in enumerate(q.coeffs):
                if y:
                    out[(i + j) % n] += x * y
    return out


def is_prime_power(d: int) -> bool:
    return d > 1 and len(factorize(d)) == 1


@dataclass(frozen=True)
class CMReport:
    R_A: tuple[int, ...]
    S_A: tuple[int, ...]
    t1: bool
    t2: bool
    t2_witness: tuple[int, ...] | None = None

    def to_dict(self) -> dict:
        return {
            "R_A": list(self.R_A),
            "S_A": list(self.S_A),
            "t1": self.t1,
            "t2": self.t2,
            "t2_witness": None if self.t2_witness is None else list(self.t2_witness),
        }


def cyclotomic_divisors(poly: IntPolynomial, candidates: Iterable[int]) -> list[int]:
    return sorted(d for d in set(candidates) if d >= 2 and divides(cyclotomic(d), poly))


def cm_report(r: Rhythm, full_scan: bool = False) -> CMReport:
    """R_A, S_A and the (T1)/(T2) verdicts for r.

    By default only divisors of the period are tried as cyclotomic indices;
    ``full_scan`` tries every d up to deg(p_A) + n.
    """
    p = char_poly(r)
    n = r.period
    if full_scan:
        candidates: Iterable[int] = range(2, p.degree + n + 1)
    else:
        candidates = divisors_of(n)
    R = cyclotomic_divisors(p, candidates)
    S = [d for d in R if is_prime_power(d)]
    t1 = len(r) == _prod(next(iter(factorize(d))) for d in S)

    by_prime: dict[int, list[int]] = {}
    for d in S:
        by_prime.setdefault(next(iter(factorize(d))), []).append(d)
    R_set = set(R)
    failing = []
    groups = sorted(by_prime)
    for size in range(2, len(groups) + 1):
        for chosen in combinations(groups, size):
            for powers in product(*(by_prime[q] for q in chosen)):
                if _prod(powers) not in R_set:
                    failing.append(tuple(sorted(powers)))
    witness = min(failing) if failing else None
    return CMReport(tuple(R), tuple(S), t1, witness is None, witness)


def _prod(values: Iterable[int]) -> int:
    out = 1
    for v in values:
        out *= v
    return out


@dataclass(frozen=True)
class GroupOrderClass:
    order: int
    kind: str
    pattern: str
    exponents: tuple[int, ...] = field(default=())

    def to_dict(self) -> dict:
        return {"order": self.order, "kind": self.kind, "pattern": self.pattern}


_LETTERS = "pqrstuvwxyz"

# Sorted (descending) exponent patterns of the good cyclic group orders.
_GOOD_SHAPES = {(2, 2), (1, 1, 1), (2, 1, 1), (1, 1, 1, 1)}


def _is_good_shape(exps: Sequence[int]) -> bool:
    if len(exps) <= 1:
        return True
    if len(exps) == 2 and exps[1] == 1:
        return True
    return tuple(exps) in _GOOD_SHAPES


def classify_order(n: int) -> GroupOrderClass:
    if n < 1:
        raise InvalidArgumentError(f"order must be positive, got {n}")
    exps = tuple(sorted(factorize(n).values(), reverse=True))
    pattern = " ".join(
        _LETTERS[i] if e == 1 else f"{_LETTERS[i]}^{e}" for i, e in enumerate(exps)
    ) or "1"
    kind = "good" if _is_good_shape(exps) else "bad"
    return GroupOrderClass(n, kind, pattern, exps)

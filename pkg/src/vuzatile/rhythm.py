"""Rhythms as subsets of the cyclic group Z_n.

A rhythm is stored reduced mod n and sorted, so set equality is tuple
equality.  Everything here is a pure function of immutable values.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Iterator

from .errors import (
    InvalidArgumentError,
    InvalidPeriodError,
    NonInvertibleMultiplierError,
    UnanchoredRhythmError,
)

TRANSLATION = "translation"
AFFINE = "affine"
MODES = (TRANSLATION, AFFINE)


@dataclass(frozen=True, order=True)
class Rhythm:
    period: int
    elements: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.period < 1:
            raise InvalidPeriodError(f"period must be positive, got {self.period}")
        elems = tuple(self.elements)
        if not elems:
            raise InvalidArgumentError("a rhythm needs at least one element")
        if any(not 0 <= x < self.period for x in elems):
            raise InvalidArgumentError(f"elements must lie in [0, {self.period - 1}]: {elems}")
        if any(x >= y for x, y in zip(elems, elems[1:])):
            raise InvalidArgumentError(f"elements must be strictly increasing: {elems}")
        object.__setattr__(self, "elements", elems)

    @classmethod
    def from_iterable(cls, period: int, values: Iterable[int]) -> "Rhythm":
        """Build a rhythm from arbitrary integers, reducing mod period and dropping repeats."""
        if period < 1:
            raise InvalidPeriodError(f"period must be positive, got {period}")
        return cls(period, tuple(sorted({v % period for v in values})))

    @classmethod
    def from_indicator(cls, bits: Iterable[int]) -> "Rhythm":
        bits = list(bits)
        return cls(len(bits), tuple(i for i, v in enumerate(bits) if v))

    @classmethod
    def parse(cls, text: str) -> "Rhythm":
        """Parse the text format ``"n: e1,e2,...,ek"``."""
        head, sep, body = text.partition(":")
        if not sep:
            raise InvalidArgumentError(f"expected 'n: e1,e2,...', got {text!r}")
        try:
            period = int(head.strip())
            values = [int(tok) for tok in body.replace(" ", "").split(",") if tok]
        except ValueError as exc:
            raise InvalidArgumentError(f"malformed rhythm {text!r}: {exc}") from None
        if any(not 0 <= v < period for v in values):
            raise InvalidArgumentError(f"elements must lie in [0, {period - 1}]: {text!r}")
        return cls.from_iterable(period, values)

    def format(self) -> str:
        return f"{self.period}: " + ",".join(map(str, self.elements))

    def __str__(self) -> str:
        return self.format()

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __contains__(self, x: object) -> bool:
        return isinstance(x, int) and (x % self.period) in self._set

    @property
    def _set(self) -> frozenset[int]:
        return frozenset(self.elements)

    def indicator(self) -> list[int]:
        bits = [0] * self.period
        for x in self.elements:
            bits[x] = 1
        return bits

    def translate(self, t: int) -> "Rhythm":
        return affine_image(self, 1, t)


@dataclass(frozen=True)
class MaximalDivisors:
    n: int
    primes: tuple[int, ...]
    exponents: tuple[int, ...]
    divisors: tuple[int, ...]


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division, primes ascending."""
    factors: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def maximal_divisors(n: int) -> MaximalDivisors:
    if n < 2:
        raise InvalidPeriodError(f"maximal divisors need n >= 2, got {n}")
    fac = factorize(n)
    primes = tuple(fac)
    return MaximalDivisors(
        n=n,
        primes=primes,
        exponents=tuple(fac[p] for p in primes),
        divisors=tuple(n // p for p in primes),
    )


def is_periodic_mod(r: Rhythm, k: int) -> bool:
    n = r.period
    if not 0 < k < n:
        raise InvalidArgumentError(f"shift must satisfy 0 < k < {n}, got {k}")
    s = r._set
    return all((x + k) % n in s for x in r.elements)


def is_aperiodic(r: Rhythm) -> bool:
    if r.period < 2:
        # Z_1 has no nonzero shift.
        return True
    return not any(is_periodic_mod(r, m) for m in maximal_divisors(r.period).divisors)


def units(n: int) -> list[int]:
    return [a for a in range(1, n) if gcd(a, n) == 1] if n > 1 else [0]


def affine_image(r: Rhythm, a: int, t: int) -> Rhythm:
    n = r.period
    if gcd(a, n) != 1:
        raise NonInvertibleMultiplierError(f"gcd({a}, {n}) != 1")
    return Rhythm(n, tuple(sorted((a * x + t) % n for x in r.elements)))


def orbit_index_sets(r: Rhythm, mode: str = TRANSLATION) -> list[tuple[int, ...]]:
    """All images a*(r + k) mod n that contain 0, deduplicated and sorted.

    Translation mode uses a = 1 only, so the result has exactly |r| entries
    less any coincidences caused by periodicity.
    """
    if mode not in MODES:
        raise InvalidArgumentError(f"unknown equivalence mode {mode!r}")
    n = r.period
    if 0 not in r._set:
        raise UnanchoredRhythmError(f"{r} does not contain 0")
    multipliers = [1] if mode == TRANSLATION else units(n)
    seen: set[tuple[int, ...]] = set()
    for x in r.elements:
        # k = -x puts x on 0; scaling by a unit keeps 0 fixed.
        shifted = [(y - x) % n for y in r.elements]
        for a in multipliers:
            seen.add(tuple(sorted((a * y) % n for y in shifted)))
    return sorted(seen)


def canonical_representative(r: Rhythm, mode: str = TRANSLATION) -> Rhythm:
    anchored = r if 0 in r._set else r.translate(-r.elements[0])
    return Rhythm(r.period, orbit_index_sets(anchored, mode)[0])

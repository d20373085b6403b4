"""Ground truth by exhaustive exact cover.

Nothing here touches the constraint model or the solver: complements are
found by covering Z_n with translates of A, always branching on the smallest
residue not yet covered.
"""
from __future__ import annotations

from .errors import InvalidPairError, NonDivisibleCardinalityError, OracleSizeError
from .polynomial import char_poly, product_mod_cycle
from .rhythm import Rhythm

DEFAULT_SIZE_GUARD = 200


def _covers_directly(a: Rhythm, b: Rhythm) -> bool:
    n = a.period
    hits = [0] * n
    for x in a.elements:
        for y in b.elements:
            hits[(x + y) % n] += 1
    return all(h == 1 for h in hits)


def verify_tiling(a: Rhythm, b: Rhythm) -> bool:
    """True iff A + B hits every residue of Z_n exactly once."""
    if a.period != b.period:
        raise InvalidPairError(f"periods differ: {a.period} vs {b.period}")
    direct = _covers_directly(a, b)
    poly = product_mod_cycle(char_poly(a), char_poly(b), a.period) == [1] * a.period
    assert direct == poly, "direct count and polynomial check disagree"
    return direct


def enumerate_complements_bruteforce(
    a: Rhythm, anchored: bool = True, size_guard: int = DEFAULT_SIZE_GUARD
) -> list[Rhythm]:
    """Every B with A + B = Z_n, sorted; with ``anchored`` only those containing 0."""
    n = a.period
    if n > size_guard:
        raise OracleSizeError(
            f"n={n} exceeds the oracle size guard {size_guard}; use the CSA instead"
        )
    if n % len(a):
        raise NonDivisibleCardinalityError(f"|A|={len(a)} does not divide n={n}")
    full = (1 << n) - 1
    shift_masks = []
    for s in range(n):
        m = 0
        for x in a.elements:
            m |= 1 << ((x + s) % n)
        shift_masks.append(m)
    # translates that can cover residue t, i.e. s = t - x for x in A
    cover_options = [sorted({(t - x) % n for x in a.elements}) for t in range(n)]

    found: list[tuple[int, ...]] = []
    chosen: list[int] = []

    def search(covered: int) -> None:
        if covered == full:
            found.append(tuple(sorted(chosen)))
            return
        t = (~covered & (covered + 1)).bit_length() - 1
        for s in cover_options[t]:
            m = shift_masks[s]
            if m & covered:
                continue
            if anchored and s == 0:
                continue  # 0 is placed up front
            chosen.append(s)
            search(covered | m)
            chosen.pop()

    if anchored:
        chosen.append(0)
        search(shift_masks[0])
    else:
        search(0)

    result = sorted(Rhythm(n, b) for b in found)
    for b in result:
        assert verify_tiling(a, b), f"oracle produced a non-tiling {b}"
    return result

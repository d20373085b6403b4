from itertools import combinations

import pytest

from vuzatile.errors import InvalidPairError, NonDivisibleCardinalityError, OracleSizeError
from vuzatile.oracle import enumerate_complements_bruteforce, verify_tiling
from vuzatile.polynomial import char_poly, product_mod_cycle
from vuzatile.rhythm import AFFINE, Rhythm, canonical_representative, is_aperiodic


def R(n, *xs):
    return Rhythm(n, tuple(xs))


def test_verify_tiling_examples():
    assert verify_tiling(R(4, 0, 2), R(4, 0, 1))
    assert not verify_tiling(R(4, 0, 2), R(4, 0, 2))
    with pytest.raises(InvalidPairError):
        verify_tiling(R(4, 0, 2), R(6, 0, 1))


def test_enumerate_examples():
    assert enumerate_complements_bruteforce(R(4, 0, 1)) == [R(4, 0, 2)]
    assert enumerate_complements_bruteforce(R(4, 0, 2)) == [R(4, 0, 1), R(4, 0, 3)]
    assert enumerate_complements_bruteforce(R(4, 0, 2), anchored=False) == [
        R(4, 0, 1), R(4, 0, 3), R(4, 1, 2), R(4, 2, 3)
    ]


def test_enumerate_guards():
    with pytest.raises(NonDivisibleCardinalityError):
        enumerate_complements_bruteforce(R(8, 0, 1, 2))
    with pytest.raises(OracleSizeError):
        enumerate_complements_bruteforce(R(210, 0, 1))
    evens = R(210, *range(0, 210, 2))
    assert len(enumerate_complements_bruteforce(evens, size_guard=300)) == 105


def _subset_scan(a, anchored=True):
    """Every size-n/|A| subset whose translates of A cover Z_n."""
    n = a.period
    k = n // len(a)
    full = (1 << n) - 1
    shifted = [sum(1 << ((x + s) % n) for x in a.elements) for s in range(n)]
    pool = range(1, n) if anchored else range(n)
    head = (0,) if anchored else ()
    out = []
    for rest in combinations(pool, k - len(head)):
        b = head + rest
        covered = 0
        for s in b:
            covered |= shifted[s]
        # n_B * |A| = n elements covering all n residues means no overlap
        if covered == full:
            out.append(Rhythm(n, b))
    return sorted(out)


def test_subset_scan_agrees_with_polynomial_check():
    a = R(12, 0, 1, 6, 7)
    for b in _subset_scan(a):
        assert product_mod_cycle(char_poly(a), char_poly(b), 12) == [1] * 12


def _small_cases():
    for n in range(2, 17):
        for k in range(1, 5):
            if n % k:
                continue
            for rest in combinations(range(1, n), k - 1):
                yield R(n, 0, *rest)
    for n in (18, 20, 24):
        for k in (4, 6):
            if n % k:
                continue
            for rest in list(combinations(range(1, n), k - 1))[::7]:
                yield R(n, 0, *rest)


def test_oracle_equals_subset_scan():
    for a in _small_cases():
        assert enumerate_complements_bruteforce(a) == _subset_scan(a), a


def test_unanchored_is_all_translates():
    a = R(12, 0, 1, 6, 7)
    anchored = enumerate_complements_bruteforce(a)
    free = enumerate_complements_bruteforce(a, anchored=False)
    assert free == _subset_scan(a, anchored=False)
    assert {b for b in free if 0 in b} == set(anchored)


def test_z72_class_counts():
    a = R(72, 0, 8, 16, 18, 26, 34)
    comps = enumerate_complements_bruteforce(a)
    aper = [b for b in comps if is_aperiodic(b)]
    assert len({canonical_representative(b, AFFINE) for b in aper}) == 2
    assert all(verify_tiling(a, b) for b in comps)

"""Acceptance checks, one or more tests per criterion.

Each test carries ``@pytest.mark.criterion(k)``; conftest prints a PASS/FAIL
line per criterion at the end of the run.  Expected counts are frozen here
and every enumeration is cross-checked against the exact-cover oracle.
"""
import json
from functools import cache
from itertools import combinations

import pytest

from vuzatile.cli import enumeration_to_dict, main
from vuzatile.csa import COMPLETE, run_csa
from vuzatile.oracle import enumerate_complements_bruteforce, verify_tiling
from vuzatile.polynomial import IntPolynomial, cm_report, cyclotomic, delta, divisors_of, totient
from vuzatile.rhythm import AFFINE, TRANSLATION, Rhythm, canonical_representative, factorize, is_aperiodic

pytestmark = pytest.mark.usefixtures("criterion")

SMALL_ORDERS = (4, 6, 8, 9, 12, 16, 18, 24)
Z72_A = Rhythm.parse("72: 0,8,16,18,26,34")
Z72_R_B = (2, 8, 9, 18, 72)
Z120_A = Rhythm.parse("120: 0,8,16,30,38,46")
Z120_R_B = (2, 5, 8, 10, 15, 30, 40, 120)
N1050 = Rhythm.parse("1050: 0,15,30,35,45,60,70,75,90,105")
N27225 = Rhythm.parse(
    "27225: 0,9,15,18,24,27,30,36,39,45,54,3025,3034,3040,3043,3049,3052,3055,3061,3064,"
    "3070,3079,6050,6059,6065,6068,6074,6077,6080,6086,6089,6095,6104"
)
N180 = Rhythm.parse("180: 0,12,24,45,57,69")


def _rhythm_args(r):
    return ["--n", str(r.period), "--rhythm", ",".join(map(str, r.elements))]


def _small_tiles():
    for n in SMALL_ORDERS:
        for k in range(1, 5):
            if n % k == 0:
                for rest in combinations(range(1, n), k - 1):
                    yield Rhythm(n, (0, *rest))


def _strip_timing(doc):
    doc = dict(doc)
    doc.pop("iteration_times")
    return doc


def _criterion1_run():
    """Every small tile: (A, oracle list, MP list without and with aperiodicity rows)."""
    rows = []
    for a in _small_tiles():
        plain = run_csa(a, TRANSLATION, cut_policy="single", aperiodicity=False, max_time=None)
        aper = run_csa(a, TRANSLATION, cut_policy="single", max_time=None)
        assert plain.status == aper.status == COMPLETE
        rows.append((a, enumerate_complements_bruteforce(a), plain, aper))
    return rows


@cache
def criterion1():
    return _criterion1_run()


def _criterion1_json(rows):
    return json.dumps(
        [[_strip_timing(enumeration_to_dict(p)), _strip_timing(enumeration_to_dict(q))] for _, _, p, q in rows],
        sort_keys=True,
    )


def _oracle_counts(a):
    """(affine classes, translation classes) of aperiodic complements, from the oracle."""
    aper = [b for b in enumerate_complements_bruteforce(a) if is_aperiodic(b)]
    return (
        sorted({canonical_representative(b, AFFINE) for b in aper}),
        sorted({canonical_representative(b, TRANSLATION) for b in aper}),
    )


def _pick_outer(a, r_wanted):
    """An aperiodic complement of ``a`` (from the oracle) whose R set is ``r_wanted``."""
    for b in enumerate_complements_bruteforce(a):
        if is_aperiodic(b) and cm_report(b).R_A == r_wanted:
            return b
    raise AssertionError(f"no complement of {a} with R = {r_wanted}")


@cache
def vuza_runs(n):
    a = {72: Z72_A, 120: Z120_A}[n]
    b = _pick_outer(a, {72: Z72_R_B, 120: Z120_R_B}[n])
    return a, b, run_csa(b, AFFINE), run_csa(a, AFFINE)


def _check_vuza(n, forward, reverse):
    a, b, e_b, e_a = vuza_runs(n)
    assert e_b.status == e_a.status == COMPLETE
    assert (e_b.translation_count, len(e_b.classes)) == forward
    assert (e_a.translation_count, len(e_a.classes)) == reverse
    for inner, e in ((b, e_b), (a, e_a)):
        affine, translation = _oracle_counts(inner)
        assert [c.representative for c in e.classes] == affine
        assert e.translation_count == len(translation)
        for sol in e.solutions:
            assert verify_tiling(inner, sol) and is_aperiodic(sol)


@pytest.mark.criterion(1)
def test_c1_oracle_equivalence():
    rows = criterion1()
    assert len(rows) > 2000
    for a, oracle, plain, aper in rows:
        assert sorted(plain.solutions) == oracle, a
        assert sorted(aper.solutions) == [b for b in oracle if is_aperiodic(b)], a


@pytest.mark.criterion(2)
@pytest.mark.parametrize("n", [12, 16, 36, 30, 60])
def test_c2_good_orders_have_no_vuza_pairs(n):
    # sample aperiodic tiles: affine classes of complements of intervals
    tiles = set()
    for d in divisors_of(n)[1:-1]:
        if d > 6:
            continue
        base = Rhythm(n, tuple(range(d)))
        tiles.add(base)
        found = run_csa(base, TRANSLATION, aperiodicity=False, max_solutions=25, cut_policy="single", max_time=None)
        tiles.update(canonical_representative(b, AFFINE) for b in found.solutions)
    tiles = sorted(t for t in tiles if is_aperiodic(t))
    assert len(tiles) >= 2
    for a in tiles:
        e = run_csa(a, AFFINE, max_time=120)
        assert e.status == COMPLETE and e.classes == [], a


@pytest.mark.criterion(3)
def test_c3_z72_counts():
    _check_vuza(72, forward=(3, 1), reverse=(6, 2))


@pytest.mark.criterion(4)
def test_c4_z120_counts():
    _check_vuza(120, forward=(8, 2), reverse=(18, 4))


def _cm_ok(r, cache_):
    if r not in cache_:
        rep = cm_report(r)
        primes = factorize(len(r))
        cache_[r] = rep.t1 and (rep.t2 or len(primes) > 2)
    return cache_[r]


@pytest.mark.criterion(5)
def test_c5_coven_meyerowitz_on_all_pairs():
    seen = {}
    pairs = 0
    for a, oracle, _, _ in criterion1():
        for b in oracle:
            assert _cm_ok(a, seen) and _cm_ok(b, seen), (a, b)
            pairs += 1
    for n in (72, 120):
        a, b, e_b, e_a = vuza_runs(n)
        for inner, e in ((b, e_b), (a, e_a)):
            for c in e.classes:
                assert _cm_ok(inner, seen) and _cm_ok(c.representative, seen)
                pairs += 1
    assert pairs > 5000


@pytest.mark.criterion(6)
def test_c6_cyclotomic_identities():
    one = IntPolynomial((1,))
    for n in range(1, 201):
        prod = one
        for d in divisors_of(n):
            prod = prod * cyclotomic(d)
        assert prod == IntPolynomial.monomial(n) - one
        rest = one
        for d in divisors_of(n)[1:]:
            rest = rest * cyclotomic(d)
        assert rest == delta(n)
        assert cyclotomic(n).degree == totient(n)


@pytest.mark.criterion(7)
@pytest.mark.slow
def test_c7_n1050_has_no_aperiodic_complement(capsys):
    assert main(["exists", *_rhythm_args(N1050), "--max-time", "3600"]) == 3
    assert capsys.readouterr().out.strip() == "no"


@pytest.mark.criterion(7)
def test_c7_n27225_export(tmp_path, capsys):
    path = tmp_path / "n27225.lp"
    assert main(["export", *_rhythm_args(N27225), "--out", str(path), "--summary"]) == 0
    summary = json.loads(capsys.readouterr().out)
    lines = path.read_text().splitlines()
    assert lines[-1] == "End" and " anchor: b0 = 1" in lines
    n = N27225.period
    assert summary["variables"]["b"] == n and summary["variables"]["r"] == 2 * n - 1
    names = [w for ln in lines[lines.index("Binary") + 1:-1] for w in ln.split()]
    assert len(names) == sum(summary["variables"].values())


@pytest.mark.criterion(8)
def test_c8_determinism():
    assert _criterion1_json(_criterion1_run()) == _criterion1_json(criterion1())
    docs = []
    for _ in range(2):
        b = _pick_outer(Z72_A, Z72_R_B)
        docs.append(json.dumps([_strip_timing(enumeration_to_dict(run_csa(r, AFFINE))) for r in (b, Z72_A)],
                               sort_keys=True))
    assert docs[0] == docs[1]


@pytest.mark.criterion(9)
@pytest.mark.slow
def test_c9_tail_effect_csv(tmp_path, capsys):
    csv = tmp_path / "times.csv"
    code = main(["enumerate", *_rhythm_args(N180), "--mode", "affine", "--max-time", "3600",
                 "--max-solutions", "12", "--times-csv", str(csv), "--out", str(tmp_path / "e.json")])
    assert code in (0, 2)
    lines = csv.read_text().splitlines()
    assert lines[0] == "iteration,seconds"
    times = [float(ln.split(",")[1]) for ln in lines[1:]]
    assert len(times) >= 10 and all(t > 0 for t in times)

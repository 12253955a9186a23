import random

import pytest

from cheb2w import chebyshev
from cheb2w.residue_forms import (
    Kind,
    ResidueForm,
    classify,
    degree_level,
    degree_period_brute,
    degree_period_closed,
    odd_degree_sequence,
    orbit,
    orbital_period_brute,
    orbital_period_closed,
)
from cheb2w.ring2w import RingElem, v2_int


def R(x, w):
    return RingElem(x % 2**w, w)


@pytest.mark.parametrize(
    "x, w, expected",
    [
        (5, 7, ResidueForm(Kind.ODD_NEAR, A=1, k=2, sign=1)),
        (97, 11, ResidueForm(Kind.ODD_NEAR, A=2, k=5, sign=1)),
        (7, 11, ResidueForm(Kind.ODD_NEAR, A=1, k=3, sign=-1)),
        (0, 8, ResidueForm(Kind.FIXED_ZERO)),
        (1, 8, ResidueForm(Kind.FIXED_ONE)),
        (255, 8, ResidueForm(Kind.FIXED_MINUS_ONE)),
        (12, 8, ResidueForm(Kind.EVEN_FORM, A=2, k=2)),
    ],
)
def test_classify_examples(x, w, expected):
    assert classify(R(x, w)) == expected


def test_classify_needs_width_3():
    with pytest.raises(ValueError):
        classify(RingElem(1, 2))


@pytest.mark.parametrize("w", range(3, 13))
def test_classification_partitions_the_ring(w):
    seen = {kind: 0 for kind in Kind}
    for x in range(2**w):
        f = classify(R(x, w))
        seen[f.kind] += 1
        assert f.reconstruct(w) == x
        if f.kind is Kind.ODD_NEAR:
            assert 2 <= f.k <= w - 1 and f.sign in (1, -1)
            assert v2_int((x - f.sign) % 2**w) == f.k
        elif f.kind is Kind.EVEN_FORM:
            assert 1 <= f.k <= w - 1 and v2_int(x) == f.k
    assert sum(seen.values()) == 2**w
    assert seen[Kind.FIXED_ZERO] == seen[Kind.FIXED_ONE] == seen[Kind.FIXED_MINUS_ONE] == 1
    assert seen[Kind.EVEN_FORM] == 2 ** (w - 1) - 1


def test_degree_level():
    assert degree_level(3) == 2
    assert degree_level(5) == 2
    assert degree_level(13) == 2
    assert degree_level(31) == 5
    assert degree_level(1) == float("inf")
    with pytest.raises(ValueError):
        degree_level(4)


def test_orbital_examples():
    assert orbit(R(5, 7), 3) == [5, 101, 69, 37]
    assert orbital_period_closed(R(5, 7), 3) == 4
    assert orbital_period_brute(R(5, 7), 3) == 4
    assert orbital_period_closed(R(1, 10), 3) == 1
    assert orbital_period_brute(R(0, 8), 9) == 1
    # frozen from brute-force orbit enumeration
    assert orbital_period_brute(R(12, 10), 5) == 64
    assert orbital_period_closed(R(12, 10), 5) == 64


def test_orbital_rejects_even_degree():
    with pytest.raises(ValueError):
        orbital_period_closed(R(5, 7), 4)
    with pytest.raises(ValueError):
        orbital_period_brute(R(5, 7), 4)


def test_orbital_degree_plus_minus_one_mod_2w():
    for w in (6, 9):
        for x in range(2**w):
            assert orbital_period_closed(R(x, w), 1) == 1
            assert orbital_period_closed(R(x, w), 2**w - 1) == 1
            assert orbital_period_closed(R(x, w), 2**w + 1) == 1


@pytest.mark.parametrize("w", [6, 7, 8])
def test_orbital_closed_equals_brute_exhaustive(w):
    for x in range(2**w):
        xe = R(x, w)
        for p in range(1, 2**w, 2):
            assert orbital_period_closed(xe, p) == orbital_period_brute(xe, p), (x, p)


@pytest.mark.parametrize("w", [10, 12, 14, 16])
def test_orbital_closed_equals_brute_sampled(w):
    rng = random.Random(w)
    for _ in range(1000):
        x = R(rng.getrandbits(w), w)
        p = 2 * rng.getrandbits(w - 1) + 1
        assert orbital_period_closed(x, p) == orbital_period_brute(x, p)


def test_degree_examples():
    assert [chebyshev.ladder(p, 5, 6) for p in range(3, 18, 2)] == [37, 37, 5, 5, 37, 37, 5, 5]
    assert degree_period_closed(R(5, 6)) == 8
    assert degree_period_brute(R(5, 6)) == 8
    assert degree_period_closed(R(1, 10)) == 2
    assert degree_period_brute(R(0, 8)) == 2
    # frozen from brute-force scans
    assert degree_period_brute(R(12, 10)) == 256
    assert degree_period_closed(R(12, 10)) == 256
    assert degree_period_brute(R(2**9 + 1, 10)) == 2
    assert degree_period_closed(R(2**9 + 1, 10)) == 2


def test_odd_degree_sequence_matches_ladder():
    for w in (5, 9, 16):
        for x in (3, 6, 2**w - 5, 77 % 2**w):
            s = odd_degree_sequence(x, w, 40)
            assert s == [chebyshev.ladder(2 * i + 1, x, w) for i in range(40)]


@pytest.mark.parametrize("w", [5, 6, 7, 8, 9, 10])
def test_degree_closed_equals_brute_exhaustive(w):
    for x in range(2**w):
        assert degree_period_closed(R(x, w)) == degree_period_brute(R(x, w)), x


def test_degree_closed_equals_brute_w12_sampled():
    rng = random.Random(12)
    for x in rng.sample(range(2**12), 300):
        assert degree_period_closed(R(x, 12)) == degree_period_brute(R(x, 12))


@pytest.mark.parametrize("w", [6, 8, 10])
def test_degree_period_is_sharp(w):
    # half the period fails for at least one odd p, for in-range forms
    for x in range(2**w):
        xe = R(x, w)
        d = degree_period_closed(xe)
        f = classify(xe)
        in_range = (f.kind is Kind.ODD_NEAR and f.k <= w - 4) or (f.kind is Kind.EVEN_FORM and f.k <= w - 3)
        if not in_range:
            assert d == 2
            continue
        odd_ps = range(1, 2**w, 2)
        assert all(chebyshev.ladder(p + d, x, w) == chebyshev.ladder(p, x, w) for p in odd_ps)
        assert any(chebyshev.ladder(p + d // 2, x, w) != chebyshev.ladder(p, x, w) for p in odd_ps)


def test_all_degree_periods_divide_2_pow_w_minus_1():
    # justifies reducing odd iterate degrees mod 2**(w-1)
    for w in range(5, 12):
        assert max(degree_period_closed(R(x, w)) for x in range(2**w)) == 2 ** (w - 1)


def test_orbit_is_a_coset():
    # T_p(x) == x + 2^m mod 2^(m+1)  =>  orbit of x mod 2^w is x + 2^m * Z
    rng = random.Random(5)
    checked = 0
    while checked < 1000:
        w = rng.randint(5, 12)
        x = rng.getrandbits(w)
        p = 2 * rng.randrange(1, 2 ** (w - 1)) + 1
        diff = (chebyshev.ladder(p, x, w + 1) - x) % 2 ** (w + 1)
        m = v2_int(diff)
        if m > w:
            continue
        orb = set(orbit(R(x, w), p))
        assert orb == {(x + t * 2**m) % 2**w for t in range(2 ** (w - m))}
        checked += 1

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cheb2w import chebyshev
from cheb2w.degree_solver import Case, solve, solve_fixed_shift, solve_shift, verify
from cheb2w.ring2w import RingElem, WidthError


def R(x, w):
    return RingElem(x % 2**w, w)


def test_worked_example_shift_zero_has_no_solution():
    # 7 = 2^3 - 1; 865 - 7 has valuation 1, so no level r >= 2 exists
    assert solve_fixed_shift(R(7, 11), R(865, 11)) is None


def test_worked_example_shift_one():
    # x_1 = T_2(7) = 97 = 3*2^5 + 1, r = 2, start q = 5 at m = 10.
    # T_5(97) = 353 misses mod 2^10 -> q = 13; T_13(97) = 1889 misses mod 2^11 -> q = 29.
    trace = []
    res = solve_shift(97, 865, 11, trace)
    assert res.case is Case.ODD_NEAR
    assert trace == [(10, 13), (11, 29)]
    assert res.p_l == 29
    assert chebyshev.ladder(29, 97, 11) == 865


def test_worked_example_full_solve():
    sol = solve(R(7, 11), R(865, 11))
    assert [(s.l, s.p_l) for s in sol.solutions] == [(1, 29)]
    assert 58 in sol.degrees
    assert verify(R(7, 11), R(865, 11), 58)
    assert verify(R(7, 11), R(865, 11), 6)
    assert not verify(R(7, 11), R(865, 11), 26)
    assert chebyshev.ladder(27, 7, 11) == 1479
    assert not verify(R(7, 11), R(865, 11), 27)


def test_trivial_cases():
    assert solve_fixed_shift(R(5, 7), R(5, 7)) == 1
    sol = solve(R(9, 8), R(9, 8))
    assert (0, 1) in [(s.l, s.p_l) for s in sol.solutions]
    assert solve(R(7, 11), R(1, 11)).zero_degree_solves
    assert verify(R(42, 9), R(42, 9), 1)


def test_constant_case_flags_all_odd():
    w = 10
    x = R(2**9 + 1, w)  # k = w-1, constant over odd degrees
    res = solve_shift(x.value, x.value, w)
    assert res.case is Case.CONSTANT and res.all_odd and res.p_l == 1
    sol = solve(x, x)
    assert sol.all_odd_degrees and 0 in sol.all_odd_shifts
    assert solve_shift(x.value, 3, w).p_l is None


def test_width_checks():
    with pytest.raises(WidthError):
        solve(R(1, 8), R(1, 9))
    with pytest.raises(ValueError):
        solve(R(1, 4), R(1, 4))


@pytest.mark.parametrize("w", [6, 7, 8])
def test_complete_and_sound_exhaustive(w):
    for x in range(2**w):
        image = {chebyshev.ladder(p, x, w) for p in range(2**w)}
        for y in range(2**w):
            sol = solve(R(x, w), R(y, w))
            assert bool(sol) == (y in image), (x, y)
            for p in sol.degrees:
                assert chebyshev.ladder(p, x, w) == y
            for s in sol.solutions:
                assert s.p_l % 2 == 1 and 1 <= s.p_l < 2**w


def test_fixed_shift_roundtrip():
    rng = random.Random(8)
    for _ in range(2000):
        w = rng.randint(5, 96)
        x = rng.getrandbits(w)
        a = 2 * rng.getrandbits(w) + 1
        y = chebyshev.ladder(a, x, w)
        p = solve_fixed_shift(R(x, w), R(y, w))
        assert p is not None and p % 2 == 1
        assert chebyshev.ladder(p, x, w) == y


@settings(max_examples=300, deadline=None)
@given(st.integers(5, 200).flatmap(lambda w: st.tuples(st.just(w), st.integers(0, 2**w - 1), st.integers(0, 2**w))))
def test_solve_roundtrip(case):
    w, x, a = case
    y = chebyshev.ladder(a, x, w)
    sol = solve(R(x, w), R(y, w))
    assert sol.degrees
    assert all(verify(R(x, w), R(y, w), p) for p in sol.degrees)


def test_lifting_loop_invariant():
    rng = random.Random(9)
    checked = 0
    while checked < 1000:
        w = rng.randint(8, 64)
        x = rng.getrandbits(w)
        y = chebyshev.ladder(2 * rng.getrandbits(w) + 1, x, w)
        trace = []
        res = solve_shift(x, y, w, trace)
        assert res.p_l is not None
        for m, q in trace:
            assert (chebyshev.ladder(q, x, m) - y) % 2**m == 0
        checked += bool(trace)


def test_first_only_stops_early():
    x, y = R(7, 11), R(865, 11)
    assert len(solve(x, y, first_only=True).solutions) == 1
    sol = solve(R(3, 11), R(1, 11), first_only=True)
    assert sol.zero_degree_solves and not sol.solutions

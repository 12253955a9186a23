"""2-adic normal forms of residues and the period laws built on them.

A residue x mod 2**w is one of
  * a fixed point 0, 1 or 2**w - 1,
  * odd-near:  x = (2A-1)*2**k + sign, sign = +-1, 2 <= k <= w-1,
  * even form: x = (2A-1)*2**k,                    1 <= k <= w-1.

Orbital periods (iterating T_p at fixed odd p) and degree periods (varying
odd p at fixed x) are closed-form in k and in the level r of the degree,
which is classified with the same normal form.  Each law has a brute-force
twin that computes the same quantity by enumeration.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from . import chebyshev
from .ring2w import RingElem, mask, v2_int


class Kind(enum.Enum):
    FIXED_ZERO = "fixed_zero"
    FIXED_ONE = "fixed_one"
    FIXED_MINUS_ONE = "fixed_minus_one"
    ODD_NEAR = "odd_near"
    EVEN_FORM = "even_form"

    @property
    def is_fixed(self) -> bool:
        return self in (Kind.FIXED_ZERO, Kind.FIXED_ONE, Kind.FIXED_MINUS_ONE)


@dataclass(frozen=True)
class ResidueForm:
    kind: Kind
    A: int | None = None
    k: int | None = None
    sign: int | None = None

    def reconstruct(self, w: int) -> int:
        """The residue this form describes, modulo 2**w."""
        if self.kind is Kind.FIXED_ZERO:
            return 0
        if self.kind is Kind.FIXED_ONE:
            return 1
        if self.kind is Kind.FIXED_MINUS_ONE:
            return mask(w)
        base = (2 * self.A - 1) << self.k
        if self.kind is Kind.ODD_NEAR:
            base += self.sign
        return base & mask(w)

    def to_json(self) -> dict:
        out = {"kind": self.kind.value}
        if self.A is not None:
            out["A"] = str(self.A)
            out["k"] = self.k
        if self.sign is not None:
            out["sign"] = self.sign
        return out


def _split(n: int, k: int) -> int:
    """A such that n = (2A-1)*2**k, for n with valuation exactly k."""
    return ((n >> k) + 1) // 2


def classify_int(x: int, w: int) -> ResidueForm:
    m = mask(w)
    x &= m
    if x == 0:
        return ResidueForm(Kind.FIXED_ZERO)
    if x == 1:
        return ResidueForm(Kind.FIXED_ONE)
    if x == m:
        return ResidueForm(Kind.FIXED_MINUS_ONE)
    if x & 1 == 0:
        k = v2_int(x)
        return ResidueForm(Kind.EVEN_FORM, A=_split(x, k), k=k)
    # x-1 and x+1 differ by 2, so exactly one of them has valuation >= 2
    below, above = (x - 1) & m, (x + 1) & m
    kb, ka = v2_int(below), v2_int(above)
    if kb >= ka:
        return ResidueForm(Kind.ODD_NEAR, A=_split(below, kb), k=kb, sign=1)
    return ResidueForm(Kind.ODD_NEAR, A=_split(above, ka), k=ka, sign=-1)


def classify(x: RingElem) -> ResidueForm:
    if x.width < 3:
        raise ValueError("classification needs width >= 3")
    return classify_int(x.value, x.width)


def degree_level(p: int) -> int | float:
    """Level r of an odd degree p = (2B-1)*2**r +- 1; INFINITE for p = +-1."""
    p = chebyshev.canonical_degree(p)
    if p & 1 == 0:
        raise ValueError(f"degree {p} is even")
    return max(v2_int(p - 1), v2_int(p + 1))


def _pow2_floor1(e: int | float) -> int:
    return 1 << int(e) if e > 0 else 1


def orbital_period_closed(x: RingElem, p: int) -> int:
    """Length of the orbit of x under T_p, from the residue forms of x and p."""
    w = x.width
    r = degree_level(p)
    form = classify(x)
    if form.kind.is_fixed or r >= w:
        return 1
    if form.kind is Kind.ODD_NEAR:
        return _pow2_floor1(w - form.k - r - 1)
    return _pow2_floor1(w - form.k - r)


def orbital_period_brute(x: RingElem, p: int) -> int:
    w = x.width
    if w > 24:
        raise ValueError("brute-force orbit search limited to width <= 24")
    if chebyshev.canonical_degree(p) & 1 == 0:
        raise ValueError(f"degree {p} is even")
    start = x.value
    cur = chebyshev.ladder(p, start, w)
    for i in range(1, (1 << w) + 1):
        if cur == start:
            return i
        cur = chebyshev.ladder(p, cur, w)
    raise RuntimeError(f"orbit of {start} under T_{p} did not close within 2**{w} steps")


def degree_period_closed(x: RingElem) -> int:
    """Least even d with T_{p+d}(x) == T_p(x) for every odd p."""
    w = x.width
    if w < 5:
        raise ValueError("degree period law needs width >= 5")
    form = classify(x)
    if form.kind is Kind.ODD_NEAR and form.k <= w - 4:
        return 1 << (w - form.k - 1)
    if form.kind is Kind.EVEN_FORM and form.k <= w - 3:
        return 1 << (w - form.k)
    return 2


def odd_degree_sequence(x: int, w: int, count: int) -> list[int]:
    """[T_1(x), T_3(x), T_5(x), ...] mod 2**w, `count` terms.

    Stepped with T_{n+2} = 2 T_2 T_n - T_{n-2}, independent of the ladder.
    """
    m = mask(w)
    x &= m
    t2 = (2 * x * x - 1) & m
    seq = []
    prev, cur = x, x  # T_{-1} = T_1
    for _ in range(count):
        seq.append(cur)
        prev, cur = cur, (2 * t2 * cur - prev) & m
    return seq


def degree_period_brute(x: RingElem) -> int:
    w = x.width
    if w > 16:
        raise ValueError("brute-force degree period limited to width <= 16")
    n = 1 << max(w - 1, 0)
    s = odd_degree_sequence(x.value, w, 2 * n)
    # n itself must be a period; the least period then divides it and is a power of two.
    if s[n:] != s[:n]:
        raise RuntimeError(f"odd-degree sequence of {x.value} not {n}-periodic")
    period = 1
    while s[period:period + n] != s[:n]:
        period *= 2
    return 2 * period


def orbit(x: RingElem, p: int) -> list[int]:
    """The orbit x, T_p(x), T_p(T_p(x)), ... up to (not including) the return to x."""
    w = x.width
    out = [x.value]
    cur = chebyshev.ladder(p, x.value, w)
    while cur != x.value:
        out.append(cur)
        cur = chebyshev.ladder(p, cur, w)
        if len(out) > (1 << w):
            raise RuntimeError("orbit did not close")
    return out


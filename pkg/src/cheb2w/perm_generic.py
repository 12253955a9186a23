"""Permutation polynomials mod 2**w and the bit-lifting attack on their iterates.

Given a permutation F of Z/2**w and two residues x, y, `generic_attack`
finds j >= 0 with F^j(x) == y by fixing the residue of y one bit at a
time: once y == F^j(x) mod 2**m, the next bit is repaired by adding the
smallest power of two 2**l that moves the orbit point without disturbing
the low m bits.

The attack only ever asks an `IterOracle` for F^j(x) at a chosen (j, x).
Three oracles are provided: closed-form Chebyshev (F = T_c, so
F^j = T_{c**j}), doubling tables F^(2**l) for small widths, and direct
repeated application for tests.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field

import numpy as np

from . import chebyshev
from .ring2w import RingElem, WidthError, check_width, mask, v2_int

TABLE_MAX_WIDTH = 22
DIRECT_MAX_ITER = 1 << 20


def is_permutation_poly(coeffs, w: int) -> bool:
    """Rivest's coefficient test for a permutation polynomial mod 2**w (w >= 2).

    a1 odd, a2 + a4 + a6 + ... even, a3 + a5 + a7 + ... even.
    """
    if w < 2:
        raise WidthError("permutation criterion needs width >= 2")
    a = list(coeffs) + [0, 0]
    return a[1] % 2 == 1 and sum(a[2::2]) % 2 == 0 and sum(a[3::2]) % 2 == 0


def poly_eval(coeffs, x: int, w: int) -> int:
    m = mask(w)
    acc = 0
    for a in reversed(coeffs):
        acc = (acc * x + a) & m
    return acc


def is_bijective(coeffs, w: int) -> bool:
    """Exhaustive check that x -> P(x) permutes [0, 2**w)."""
    if w > 16:
        raise ValueError("exhaustive bijectivity check limited to width <= 16")
    return len({poly_eval(coeffs, x, w) for x in range(1 << w)}) == 1 << w


@dataclass(frozen=True)
class PermPoly:
    coeffs: tuple
    width: int

    def __post_init__(self):
        check_width(self.width)
        object.__setattr__(self, "coeffs", tuple(int(a) for a in self.coeffs))
        if not is_permutation_poly(self.coeffs, self.width):
            raise ValueError(f"coefficients {self.coeffs} fail the permutation criterion")

    def __call__(self, x: int) -> int:
        return poly_eval(self.coeffs, x, self.width)

    def table(self) -> np.ndarray:
        m = np.uint64(mask(self.width))
        xs = np.arange(1 << self.width, dtype=np.uint64)
        acc = np.zeros_like(xs)
        for a in reversed(self.coeffs):
            acc = (acc * xs + np.uint64(a & mask(self.width))) & m
        return acc


def random_permutation_poly(rng: random.Random, degree: int, w: int) -> PermPoly:
    """Uniform-ish random coefficients, then the parity conditions are forced."""
    if degree < 1:
        raise ValueError("degree must be >= 1")
    a = [rng.randrange(1 << w) for _ in range(degree + 1)]
    a[1] |= 1
    if degree >= 2 and sum(a[2::2]) % 2:
        a[2] ^= 1
    if degree >= 3 and sum(a[3::2]) % 2:
        a[3] ^= 1
    return PermPoly(tuple(a), w)


class Strategy(enum.Enum):
    CLOSED_FORM_CHEBYSHEV = "chebyshev"
    TABLE = "table"
    DIRECT = "direct"


class IterOracle:
    """Evaluates F^j(x) mod 2**m for a fixed permutation F of Z/2**w."""

    def __init__(self, strategy: Strategy, width: int, poly: PermPoly | None = None, base_degree: int | None = None):
        self.strategy = strategy
        self.width = check_width(width)
        self.poly = poly
        self.base_degree = base_degree
        self._tables: list | None = None
        if strategy is Strategy.TABLE:
            if width > TABLE_MAX_WIDTH:
                raise WidthError(f"table oracle limited to width <= {TABLE_MAX_WIDTH}")
            self._tables = _doubling_tables(poly.table().astype(np.uint32), width)

    @classmethod
    def chebyshev(cls, c: int, w: int) -> IterOracle:
        c = chebyshev.canonical_degree(c)
        if c % 2 == 0:
            raise ValueError("Chebyshev base degree must be odd")
        return cls(Strategy.CLOSED_FORM_CHEBYSHEV, w, base_degree=c)

    @classmethod
    def table(cls, poly: PermPoly) -> IterOracle:
        return cls(Strategy.TABLE, poly.width, poly=poly)

    @classmethod
    def direct(cls, poly: PermPoly) -> IterOracle:
        return cls(Strategy.DIRECT, poly.width, poly=poly)

    def step(self, x: int) -> int:
        """One application of F."""
        if self.strategy is Strategy.CLOSED_FORM_CHEBYSHEV:
            return chebyshev.ladder(self.base_degree, x, self.width)
        return self.poly(x)

    def eval(self, j: int, x: int, m: int | None = None) -> int:
        w = self.width
        m = w if m is None else m
        if not 0 <= m <= w:
            raise WidthError(f"modulus exponent {m} outside [0, {w}]")
        if j < 0:
            raise ValueError("iterate count must be non-negative")
        x &= mask(w)
        if self.strategy is Strategy.CLOSED_FORM_CHEBYSHEV:
            v = x if j == 0 else chebyshev.ladder(chebyshev.iterate_degree(self.base_degree, j, w), x, w)
        elif self.strategy is Strategy.TABLE:
            # orbits of a permutation polynomial mod 2**w have length dividing 2**w
            j &= mask(w)
            v = x
            l = 0
            while j:
                if j & 1:
                    v = int(self._tables[l][v])
                j >>= 1
                l += 1
        else:
            if j > DIRECT_MAX_ITER:
                raise ValueError(f"direct oracle limited to {DIRECT_MAX_ITER} iterations")
            v = x
            for _ in range(j):
                v = self.poly(v)
        return v & mask(m)


def _doubling_tables(first: np.ndarray, w: int) -> list:
    """[F, F^2, F^4, ..., F^(2**(w-1))] as lookup arrays."""
    tables = [first]
    for _ in range(w - 1):
        t = tables[-1]
        tables.append(t[t])
    for t in tables:
        t.setflags(write=False)
    return tables


def oracle_eval(o: IterOracle, j: int, x: RingElem, m: int | None = None) -> RingElem:
    if x.width != o.width:
        raise WidthError(f"width mismatch: {x.width} vs oracle {o.width}")
    m = o.width if m is None else m
    if not 1 <= m <= o.width:
        raise WidthError(f"modulus exponent {m} outside [1, {o.width}]")
    return RingElem(o.eval(j, x.value, m), m)


@dataclass
class AttackTrace:
    j: int | None
    oracle_calls: int = 0
    # (j, m_j) each time step 2 is reached without success
    lifts: list = field(default_factory=list)


def lift_iterate_log(o: IterOracle, x: int, y: int) -> AttackTrace:
    w = o.width
    full = mask(w)
    x &= full
    y &= full
    trace = AttackTrace(None)
    j, l = 0, 0
    cur = x  # F^j(x), cached along the frontier
    while True:
        diff = (y - cur) & full
        if diff == 0:
            trace.j = j
            return trace
        m_j = v2_int(diff)
        trace.lifts.append((j, m_j))
        probe = mask(m_j + 1)
        while True:
            nxt = o.eval(j + (1 << l), x)
            trace.oracle_calls += 1
            if (nxt - y) & probe == 0:
                j += 1 << l
                cur = nxt
                break
            if l == w - 1:
                return trace
            l += 1


def generic_attack(o: IterOracle, x: RingElem, y: RingElem) -> int | None:
    """Some j >= 0 with F^j(x) == y mod 2**w, or None if y is off x's orbit."""
    if x.width != o.width or y.width != o.width:
        raise WidthError("x, y and oracle must share a width")
    return lift_iterate_log(o, x.value, y.value).j


def brute_iterate_log(o: IterOracle, x: RingElem, y: RingElem, bound: int) -> int | None:
    """Least j < bound with F^j(x) == y, by stepping F."""
    if bound > DIRECT_MAX_ITER:
        raise ValueError(f"bound {bound} exceeds {DIRECT_MAX_ITER}")
    if x.width != o.width or y.width != o.width:
        raise WidthError("x, y and oracle must share a width")
    cur = x.value
    for j in range(bound):
        if cur == y.value:
            return j
        cur = o.step(cur)
    return None


def orbit_of(o: IterOracle, x: int) -> list[int]:
    """Full cycle through x under F, starting at x."""
    out = [x & mask(o.width)]
    cur = o.step(out[0])
    while cur != out[0]:
        out.append(cur)
        cur = o.step(cur)
        if len(out) > (1 << o.width):
            raise RuntimeError("orbit did not close")
    return out

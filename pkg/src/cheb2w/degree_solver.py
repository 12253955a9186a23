"""Degree decision over Z/2**w: given x and y, find p with T_p(x) == y.

Any degree factors as p = p_l * 2**l with p_l odd, and
T_p(x) = T_{p_l}(x_l) where x_l = T_{2**l}(x).  So the problem splits into
w independent odd-degree problems, one per shift l, each solved by lifting
a candidate odd degree q one modulus bit at a time.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from . import chebyshev
from .residue_forms import Kind, classify_int
from .ring2w import RingElem, WidthError, mask, v2_int


class Case(enum.Enum):
    ODD_NEAR = 1
    EVEN_FORM = 2
    CONSTANT = 3


@dataclass(frozen=True)
class ShiftResult:
    case: Case
    p_l: int | None
    all_odd: bool = False


@dataclass(frozen=True)
class Solution:
    l: int
    p_l: int
    width: int

    @property
    def degree(self) -> int:
        return (self.p_l << self.l) & mask(self.width)


@dataclass
class DegreeSolution:
    width: int
    solutions: list[Solution] = field(default_factory=list)
    zero_degree_solves: bool = False
    # shifts l at which every odd p_l works (constant case with y == x_l)
    all_odd_shifts: list[int] = field(default_factory=list)

    @property
    def all_odd_degrees(self) -> bool:
        return bool(self.all_odd_shifts)

    @property
    def degrees(self) -> list[int]:
        out = [0] if self.zero_degree_solves else []
        out.extend(s.degree for s in self.solutions)
        return out

    def __bool__(self):
        return self.zero_degree_solves or bool(self.solutions)

    def first_degree(self) -> int | None:
        d = self.degrees
        return d[0] if d else None

    def to_json(self) -> dict:
        return {
            "zero_degree_solves": self.zero_degree_solves,
            "all_odd_degrees": self.all_odd_degrees,
            "solutions": [
                {"l": s.l, "p_l": str(s.p_l), "p": str(s.degree), "all_odd": s.l in self.all_odd_shifts}
                for s in self.solutions
            ],
        }


def _lift(x_l: int, y: int, w: int, q: int, m: int, k: int, step_offset: int, trace=None) -> int:
    # Invariant on entry to each pass: y == T_q(x_l) mod 2**(m-1).
    while m <= w:
        mm = mask(m)
        if (chebyshev.ladder(q, x_l & mm, m) - y) & mm:
            q += 1 << (m - k - step_offset)
        if trace is not None:
            trace.append((m, q))
        m += 1
    return q


def solve_shift(x_l: int, y: int, w: int, trace=None) -> ShiftResult:
    """Odd degree p_l with T_{p_l}(x_l) == y mod 2**w, tagged with the case used."""
    full = mask(w)
    x_l &= full
    y &= full
    form = classify_int(x_l, w)
    if form.kind is Kind.ODD_NEAR and form.k <= w - 4:
        case, offset, start = Case.ODD_NEAR, 1, 3
    elif form.kind is Kind.EVEN_FORM and form.k <= w - 3:
        case, offset, start = Case.EVEN_FORM, 0, 2
    else:
        if y == x_l:
            return ShiftResult(Case.CONSTANT, 1, all_odd=True)
        return ShiftResult(Case.CONSTANT, None)

    if y == x_l:
        return ShiftResult(case, 1)
    k = form.k
    # y == x_l + 2**(k+r+offset) mod 2**(k+r+offset+1) fixes r
    r = v2_int((y - x_l) & full) - k - offset
    if r < 2:
        return ShiftResult(case, None)
    q = _lift(x_l, y, w, (1 << r) + 1, k + r + start, k, start - 1, trace)
    q &= full
    if chebyshev.ladder(q, x_l, w) != y:
        return ShiftResult(case, None)
    return ShiftResult(case, q)


def solve_fixed_shift(x_l: RingElem, y: RingElem) -> int | None:
    if x_l.width != y.width:
        raise WidthError(f"width mismatch: {x_l.width} vs {y.width}")
    if x_l.width < 5:
        raise ValueError("solver needs width >= 5")
    return solve_shift(x_l.value, y.value, x_l.width).p_l


def solve(x: RingElem, y: RingElem, first_only: bool = False) -> DegreeSolution:
    """All shifts l in [0, w) that admit an odd p_l, plus the p = 0 check."""
    if x.width != y.width:
        raise WidthError(f"width mismatch: {x.width} vs {y.width}")
    w = x.width
    if w < 5:
        raise ValueError("solver needs width >= 5")
    full = mask(w)
    out = DegreeSolution(width=w, zero_degree_solves=(y.value == 1))
    if out.zero_degree_solves and first_only:
        return out
    x_l = x.value
    for l in range(w):
        res = solve_shift(x_l, y.value, w)
        if res.p_l is not None:
            sol = Solution(l, res.p_l, w)
            if chebyshev.ladder(sol.degree, x.value, w) != y.value:
                raise AssertionError(f"unsound solution p={sol.degree} at shift {l}")
            out.solutions.append(sol)
            if res.all_odd:
                out.all_odd_shifts.append(l)
            if first_only:
                break
        # x_{l+1} = T_2(x_l)
        x_l = (2 * x_l * x_l - 1) & full
    return out


def verify(x: RingElem, y: RingElem, p: int) -> bool:
    if x.width != y.width:
        raise WidthError(f"width mismatch: {x.width} vs {y.width}")
    return chebyshev.ladder(p, x.value, x.width) == y.value

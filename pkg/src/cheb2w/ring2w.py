"""Residue arithmetic modulo 2**w.

Every residue carries its own width, so values at different moduli can
coexist in one computation.  Python ints do the heavy lifting; reduction
modulo a power of two is a bit mask.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

MAX_WIDTH = 4096

# v2(0) is unbounded; comparable with ints, so `v2(d) >= k` reads naturally.
INFINITE = math.inf


class WidthError(ValueError):
    """Raised for an invalid width or for mixing residues of different widths."""


def check_width(w: int) -> int:
    if not isinstance(w, int) or isinstance(w, bool):
        raise WidthError(f"width must be an int, got {type(w).__name__}")
    if not 1 <= w <= MAX_WIDTH:
        raise WidthError(f"width {w} outside [1, {MAX_WIDTH}]")
    return w


def mask(w: int) -> int:
    return (1 << w) - 1


def v2_int(n: int) -> int | float:
    """2-adic valuation of a plain integer; INFINITE for zero."""
    if n == 0:
        return INFINITE
    return (n & -n).bit_length() - 1


@dataclass(frozen=True, slots=True)
class RingElem:
    value: int
    width: int

    def __post_init__(self):
        check_width(self.width)
        if not 0 <= self.value < (1 << self.width):
            raise ValueError(f"value {self.value} out of range for width {self.width}")

    @property
    def modulus(self) -> int:
        return 1 << self.width

    def _coerce(self, other) -> int:
        if isinstance(other, RingElem):
            if other.width != self.width:
                raise WidthError(f"width mismatch: {self.width} vs {other.width}")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def _wrap(self, n: int) -> RingElem:
        return RingElem(n & mask(self.width), self.width)

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.value - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(o - self.value)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.value * o)

    __rmul__ = __mul__

    def __neg__(self):
        return self._wrap(-self.value)

    def __int__(self):
        return self.value

    __index__ = __int__

    def __str__(self):
        return str(self.value)

    def truncate(self, m: int) -> RingElem:
        """Image of this residue modulo 2**m (m <= width)."""
        if not 1 <= m <= self.width:
            raise WidthError(f"cannot truncate width {self.width} to {m}")
        return RingElem(self.value & mask(m), m)

    def congruent(self, other: RingElem | int, m: int | None = None) -> bool:
        """True if self == other modulo 2**m (default: the full width)."""
        o = self._coerce(other)
        m = self.width if m is None else m
        return (self.value - o) & mask(m) == 0


def reduce(n: int, w: int) -> RingElem:
    check_width(w)
    return RingElem(n & mask(w), w)


def _same(a: RingElem, b: RingElem) -> None:
    if a.width != b.width:
        raise WidthError(f"width mismatch: {a.width} vs {b.width}")


def add(a: RingElem, b: RingElem) -> RingElem:
    _same(a, b)
    return a + b


def sub(a: RingElem, b: RingElem) -> RingElem:
    _same(a, b)
    return a - b


def mul(a: RingElem, b: RingElem) -> RingElem:
    _same(a, b)
    return a * b


def v2(a: RingElem) -> int | float:
    return v2_int(a.value)


def parse_int(text: str) -> int:
    """Parse a decimal or 0x-prefixed hexadecimal integer (sign allowed)."""
    s = text.strip().replace("_", "")
    neg = s.startswith("-")
    if neg or s.startswith("+"):
        s = s[1:]
    if s[:2].lower() == "0x":
        n = int(s[2:], 16)
    elif s.isdigit():
        n = int(s, 10)
    else:
        raise ValueError(f"malformed number: {text!r}")
    return -n if neg else n


def parse_residue(text: str, w: int) -> RingElem:
    return reduce(parse_int(text), w)


def format_residue(a: RingElem | int, hexadecimal: bool = False) -> str:
    n = int(a)
    return hex(n) if hexadecimal else str(n)

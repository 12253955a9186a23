"""Chebyshev key exchange over Z/2**w and a passive eavesdropper that breaks it.

Alice publishes T_a(x), Bob publishes T_b(x), both derive T_ab(x).  The
eavesdropper solves T_p(x) == T_a(x) for any p and outputs T_p(T_b(x)),
which equals the shared key because Chebyshev polynomials commute.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass

from . import chebyshev
from .degree_solver import solve
from .ring2w import RingElem, WidthError, check_width, parse_int, reduce

BASE_KINDS = ("odd_near", "even", "degenerate")


@dataclass(frozen=True)
class Transcript:
    w: int
    x_pub: RingElem
    y_a: RingElem
    y_b: RingElem

    def __post_init__(self):
        if not (self.x_pub.width == self.y_a.width == self.y_b.width == self.w):
            raise WidthError("transcript widths disagree")

    def to_json(self) -> str:
        return json.dumps(
            {"w": str(self.w), "x": str(self.x_pub), "ya": str(self.y_a), "yb": str(self.y_b)},
            separators=(",", ":"),
        )

    @classmethod
    def from_json(cls, text: str) -> Transcript:
        d = json.loads(text)
        w = check_width(int(d["w"]))
        return cls(w, *(reduce(parse_int(str(d[key])), w) for key in ("x", "ya", "yb")))


def _rng(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def keygen(seed, w: int) -> int:
    """Odd secret degree, uniform in [3, 2**w)."""
    if w < 5:
        raise WidthError("key exchange needs width >= 5")
    return 2 * _rng(seed).randrange(1, 1 << (w - 1)) + 1


def sample_base(seed, w: int, kind: str = "odd_near", max_level: int = 3) -> RingElem:
    """A public base point.

    odd_near:   (2A-1)*2**k +- 1 with 2 <= k <= max_level (the odd-argument case)
    even:       (2A-1)*2**k with 1 <= k <= max_level
    degenerate: one of 0, 1, 2**w - 1
    """
    rng = _rng(seed)
    check_width(w)
    if kind == "degenerate":
        return reduce(rng.choice((0, 1, -1)), w)
    if kind == "odd_near":
        k = rng.randint(2, max(2, min(max_level, w - 4)))
        odd = 2 * rng.randrange(1, 1 << (w - k - 1)) - 1
        return reduce(odd * (1 << k) + rng.choice((1, -1)), w)
    if kind == "even":
        k = rng.randint(1, max(1, min(max_level, w - 3)))
        odd = 2 * rng.randrange(1, 1 << (w - k - 1)) - 1
        return reduce(odd << k, w)
    raise ValueError(f"unknown base kind {kind!r}; expected one of {BASE_KINDS}")


def protocol_run(x_pub: RingElem, a: int, b: int) -> tuple[Transcript, RingElem]:
    if a % 2 == 0 or b % 2 == 0:
        raise ValueError("secret degrees must be odd")
    y_a = chebyshev.eval(a, x_pub)
    y_b = chebyshev.eval(b, x_pub)
    key_a = chebyshev.eval(a, y_b)
    key_b = chebyshev.eval(b, y_a)
    if key_a != key_b:
        raise AssertionError("T_a(T_b(x)) != T_b(T_a(x)); commutativity broken")
    return Transcript(x_pub.width, x_pub, y_a, y_b), key_a


def eavesdrop(t: Transcript) -> RingElem:
    sol = solve(t.x_pub, t.y_a, first_only=True)
    p = sol.first_degree()
    if p is None:
        raise ValueError("no degree maps x to y_a; transcript is not from an honest run")
    return chebyshev.eval(p, t.y_b)

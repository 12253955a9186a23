"""Chebyshev polynomials T_n evaluated modulo 2**w.

`eval` is the production path: an MSB-first ladder over the pair
(T_m, T_{m+1}), using

    T_{2m}   = 2 T_m^2 - 1
    T_{2m+1} = 2 T_m T_{m+1} - x
    T_{2m+2} = 2 T_{m+1}^2 - 1

so a degree of b bits costs 2b multiplications of w-bit residues.
`eval_naive` runs the three-term recurrence and exists as a test oracle.
"""

from __future__ import annotations

from .ring2w import RingElem, check_width, mask

NAIVE_LIMIT = 10**6
EVEN_ITERATE_CAP = 1 << 20


def canonical_degree(n: int) -> int:
    # T_{-n} = T_n
    return -n if n < 0 else n


def ladder(n: int, x: int, w: int) -> int:
    """T_n(x) mod 2**w on plain ints; x is assumed already reduced."""
    n = canonical_degree(n)
    if n == 0:
        return 1 & mask(w)
    m = mask(w)
    # (a, b) = (T_1, T_2) after consuming the leading 1 bit
    a, b = x, (2 * x * x - 1) & m
    for i in range(n.bit_length() - 2, -1, -1):
        c = (2 * a * b - x) & m
        if (n >> i) & 1:
            a, b = c, (2 * b * b - 1) & m
        else:
            a, b = (2 * a * a - 1) & m, c
    return a


def naive(n: int, x: int, w: int) -> int:
    n = canonical_degree(n)
    if n > NAIVE_LIMIT:
        raise ValueError(f"degree {n} too large for the naive recurrence; use eval")
    m = mask(w)
    prev, cur = 1 & m, x & m
    if n == 0:
        return prev
    for _ in range(n - 1):
        prev, cur = cur, (2 * x * cur - prev) & m
    return cur


def eval_naive(n: int, x: RingElem) -> RingElem:
    return RingElem(naive(n, x.value, x.width), x.width)


def eval(n: int, x: RingElem) -> RingElem:
    return RingElem(ladder(n, x.value, x.width), x.width)


def iterate_degree(p: int, i: int, w: int) -> int:
    """A degree equivalent to p**i for evaluation modulo 2**w.

    Odd p**i is reduced modulo 2**(w-1): every odd-degree period at width w divides it.
    Even degrees are returned exactly.
    """
    check_width(w)
    if i < 0:
        raise ValueError("iteration count must be non-negative")
    p = canonical_degree(p)
    if p & 1:
        return pow(p, i, 1 << max(w - 1, 1))
    if i > EVEN_ITERATE_CAP:
        raise ValueError(f"iteration count {i} exceeds cap {EVEN_ITERATE_CAP} for even degree")
    return p**i


def iterate(p: int, i: int, x: RingElem) -> RingElem:
    """T_p applied i times to x, i.e. T_{p**i}(x)."""
    if i == 0:
        return x
    return eval(iterate_degree(p, i, x.width), x)

"""Chebyshev polynomials over Z/2^w Z, their period laws, and attacks on key exchange built from them."""

from .ring2w import INFINITE, MAX_WIDTH, RingElem, WidthError, add, mul, reduce, sub, v2

__version__ = "0.1.0"

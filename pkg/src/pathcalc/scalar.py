"""Exact rational scalars.

``Scalar`` is ``gmpy2.mpq``: arbitrary precision, always stored reduced with a
positive denominator, and an order of magnitude faster than
``fractions.Fraction`` for the tight loops of the operator kernels.
"""
from fractions import Fraction
import numbers

import gmpy2

from .errors import FormatError

Scalar = gmpy2.mpq
ZERO = Scalar(0)
ONE = Scalar(1)


def to_scalar(x) -> Scalar:
    """Coerce ints, Fractions, mpq and ``"p/q"`` strings. Floats are refused."""
    if isinstance(x, type(ZERO)):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, (int, Fraction)) or type(x).__name__ == "mpz":
        return Scalar(x)
    if isinstance(x, str):
        return parse_scalar(x)
    if isinstance(x, numbers.Rational):
        return Scalar(x.numerator, x.denominator)
    raise TypeError(f"cannot use {type(x).__name__} as an exact scalar")


def parse_scalar(text: str) -> Scalar:
    s = text.strip()
    try:
        if "/" in s:
            p, q = s.split("/")
            num, den = int(p), int(q)
            if den == 0:
                raise FormatError(f"zero denominator in {text!r}")
            return Scalar(num, den)
        return Scalar(int(s))
    except ValueError:
        raise FormatError(f"not a rational number: {text!r}") from None


def format_scalar(x) -> str:
    """Canonical ``"p/q"`` or ``"p"`` string."""
    return str(Scalar(x))

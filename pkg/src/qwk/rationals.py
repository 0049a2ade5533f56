"""Exact rational scalars.

All arithmetic in this package is exact.  Coefficients are rational numbers
kept in canonical reduced form (gcd 1, positive denominator), which both
gmpy2.mpq and fractions.Fraction guarantee.  gmpy2 is used when installed
(the `speed` extra) because it is considerably faster on the larger
elimination problems; set QWK_PURE_FRACTIONS=1 to force the stdlib
fallback.
"""

from __future__ import annotations

import os
from fractions import Fraction

if os.environ.get("QWK_PURE_FRACTIONS"):
    Q = Fraction
else:
    try:
        from gmpy2 import mpq as Q
    except ImportError:
        Q = Fraction

ZERO = Q(0)
ONE = Q(1)


def rat(value) -> "Q":
    """Coerce ints, strings like '3/2' or '-1', and rationals to Q."""
    if isinstance(value, str):
        value = value.strip()
        if "/" in value:
            num, den = value.split("/")
            return Q(int(num), int(den))
        return Q(int(value))
    return Q(value)


def rat_str(value) -> str:
    """Canonical text form: '7', '-3/2'.  Inverse of rat() on its image."""
    q = Q(value)
    num, den = q.numerator, q.denominator
    if den == 1:
        return str(num)
    return f"{num}/{den}"


def is_integer(value) -> bool:
    return Q(value).denominator == 1


def sqrt_exact(value):
    """Exact square root of a nonnegative rational, or None if irrational."""
    q = Q(value)
    if q < 0:
        return None
    num, den = int(q.numerator), int(q.denominator)
    rn = _isqrt(num)
    rd = _isqrt(den)
    if rn is None or rd is None:
        return None
    return Q(rn, rd)


def _isqrt(k: int):
    import math

    r = math.isqrt(k)
    return r if r * r == k else None

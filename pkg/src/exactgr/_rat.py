"""Exact rational coefficient type.

gmpy2.mpq is used when available (several times faster on the big fit
workloads); fractions.Fraction otherwise.  Both expose .numerator /
.denominator, hash identically for equal values, and interoperate with
ints, so the rest of the package treats RAT as an opaque exact rational.
"""

from __future__ import annotations

from fractions import Fraction

try:
    from gmpy2 import mpq as RAT  # type: ignore[import-untyped]

    _HAVE_GMPY = True
except ImportError:  # pragma: no cover - exercised only without gmpy2
    RAT = Fraction
    _HAVE_GMPY = False

RAT_ZERO = RAT(0)
RAT_ONE = RAT(1)


def as_fraction(x) -> Fraction:
    """Convert any exact rational (int, Fraction, mpq) to Fraction."""
    if isinstance(x, Fraction):
        return x
    return Fraction(int(x.numerator), int(x.denominator)) if not isinstance(x, int) else Fraction(x)


def as_rat(x) -> "RAT":
    """Convert int / Fraction / mpq to the internal coefficient type."""
    if isinstance(x, int):
        return RAT(x)
    return RAT(x.numerator, x.denominator)

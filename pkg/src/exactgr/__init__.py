"""exactgr: exact symbolic tensor calculus over a declared chart.

Everything is computed in a field of canonical multivariate rational
functions with exact rational coefficients, so equality of tensors and
scalars is decidable, not numeric.
"""

__version__ = "0.1.0"

from .expr import Context, Expr, parse  # noqa: F401

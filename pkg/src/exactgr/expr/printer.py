"""Deterministic canonical printing.

parse(expr_string(e)) == e for every canonical Expr; terms appear in
descending graded-lex order, jets in underscore form when unambiguous.
"""

from __future__ import annotations

from .poly import EMPTY_MONO, Poly
from .rational import Expr


def _term_body(mono, coeff) -> str:
    pieces = []
    num, den = int(coeff.numerator), int(coeff.denominator)
    if not mono:
        pieces.append(str(num) if den == 1 else f"{num}/{den}")
    else:
        if num != 1 or den != 1:
            pieces.append(str(num) if den == 1 else f"{num}/{den}")
        for a, e in mono:
            pieces.append(a.label() if e == 1 else f"{a.label()}^{e}")
    return "*".join(pieces)


def poly_string(p: Poly) -> str:
    if p.is_zero:
        return "0"
    out = []
    for mono, c in p.sorted_terms():
        neg = c < 0
        body = _term_body(mono, -c if neg else c)
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


def expr_string(e: Expr) -> str:
    if e.den.is_one:
        return poly_string(e.num)
    return f"({poly_string(e.num)})/({poly_string(e.den)})"

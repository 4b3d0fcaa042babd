"""Exact-rational numeric oracle.

Random substitution points arbitrate every suspected table typo: atoms
are drawn as rationals with numerator in [-9, 9] \\ {0} and denominator
in [1, 9], rejection-resampled whenever a denominator vanishes or a
genericity inequality is violated.  With a fixed seed the whole process
is reproducible; no floating point is involved.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .expr import Atom, EvalDenominatorZero, Expr
from .expr.poly import ZERO as _POLY_ZERO

# The stylized fixture seed "RT2024" as an integer (byte value of the tag).
DEFAULT_SEED = int.from_bytes(b"RT2024", "big")

_NUMERATORS = [n for n in range(-9, 10) if n != 0]


class OracleError(RuntimeError):
    pass


def random_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.choice(_NUMERATORS), rng.randint(1, 9))


def sample_assignment(atoms, rng: random.Random) -> dict[Atom, Fraction]:
    return {a: random_rational(rng) for a in sorted(atoms)}


def admissible_assignment(
    exprs,
    rng: random.Random,
    genericity=(),
    extra_atoms=(),
    max_tries: int = 200,
):
    """An assignment where every expr evaluates and every genericity holds (!= 0)."""
    atoms = set(extra_atoms)
    for e in exprs:
        atoms |= e.atoms()
    for g in genericity:
        atoms |= g.atoms()
    for _ in range(max_tries):
        asn = sample_assignment(atoms, rng)
        try:
            for g in genericity:
                if g.eval(asn) == 0:
                    raise EvalDenominatorZero("genericity violated")
            for e in exprs:
                e.eval(asn)
        except EvalDenominatorZero:
            continue
        return asn
    raise OracleError(f"no admissible sample point found in {max_tries} tries")


def agree_numerically(
    e1: Expr,
    e2: Expr,
    rng: random.Random,
    points: int = 20,
    genericity=(),
):
    """Compare two expressions at `points` admissible samples.

    Returns (all_agree, evidence) where evidence is a list of
    (assignment, value1, value2) tuples for up to three disagreeing points
    (or the first three points when everything agrees).
    """
    evidence = []
    all_agree = True
    for _ in range(points):
        asn = admissible_assignment((e1, e2), rng, genericity=genericity)
        v1 = e1.eval(asn)
        v2 = e2.eval(asn)
        if v1 != v2:
            all_agree = False
            if len(evidence) < 3:
                evidence.append((asn, v1, v2))
        elif all_agree and len(evidence) < 3:
            evidence.append((asn, v1, v2))
    return all_agree, evidence


def solve_linear_on_point(
    constraint_lhs: Expr,
    constraint_rhs: Expr,
    atom: Atom,
    assignment: dict[Atom, Fraction],
) -> Fraction:
    """Solve lhs = rhs for `atom` at a sample point (exact, linear in atom).

    The other atoms must already be assigned; raises OracleError when the
    equation is not linear in `atom` or the coefficient vanishes there.
    """
    diff = constraint_lhs - constraint_rhs
    num_deg, den_deg = diff.degree_in(atom)
    if den_deg or num_deg > 1:
        raise OracleError(f"constraint is not linear in {atom.label()}")
    if num_deg == 0:
        raise OracleError(f"constraint does not involve {atom.label()}")
    coeffs = diff.num.coefficients_in(atom)
    a1 = Expr.make(coeffs.get(1, _POLY_ZERO))
    a0 = Expr.make(coeffs[0]) if 0 in coeffs else None
    den = Expr.make(diff.den)
    slope = a1.eval(assignment) / den.eval(assignment)
    if slope == 0:
        raise OracleError("constraint degenerates at the sample point")
    offset = (a0.eval(assignment) / den.eval(assignment)) if a0 is not None else Fraction(0)
    return -offset / slope

"""Canonical rational functions over exact rationals: the Expr value type.

Invariants (enforced by the single constructor path `make`):
  * denominator is nonzero,
  * gcd(numerator, denominator) = 1 as polynomials,
  * the denominator is a primitive integer polynomial whose leading
    coefficient (graded lex) is positive,
  * zero is (0, 1).
Two Exprs are equal iff their (num, den) pairs are identical, so equality
of canonical forms is decidable, exact and hashable.  Exprs are immutable
and safe to share across threads.
"""

from __future__ import annotations

from fractions import Fraction

from .._rat import RAT, RAT_ONE, as_fraction, as_rat
from .atoms import Atom
from .poly import ONE, ZERO, Poly, cancel, mono_gcd


class ExprError(ValueError):
    pass


class DivisionByZeroExpr(ExprError, ZeroDivisionError):
    """Division by the identically-zero expression."""


class UnassignedAtomError(ExprError, KeyError):
    """eval_numeric hit an atom missing from the assignment."""


class EvalDenominatorZero(ExprError, ZeroDivisionError):
    """The denominator vanished at the sample point; caller must resample."""


class Expr:
    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Poly, den: Poly, _token=None):
        if _token is not _TOKEN:
            raise TypeError("use Expr.make / parse / arithmetic, not the raw constructor")
        self.num = num
        self.den = den
        self._hash = None

    # -- construction --------------------------------------------------------

    @staticmethod
    def make(num: Poly, den: Poly = ONE) -> "Expr":
        if den.is_zero:
            raise DivisionByZeroExpr("zero denominator")
        if num.is_zero:
            return ZERO_EXPR
        if not den.is_one:
            num, den = cancel(num, den)
        u = den.rational_unit()
        if u != RAT_ONE:
            inv = RAT_ONE / u
            num = num.scale(inv)
            den = den.scale(inv)
        return Expr(num, den, _TOKEN)

    @staticmethod
    def const(c) -> "Expr":
        return Expr.make(Poly.const(as_rat(c) if not isinstance(c, int) else RAT(c)))

    @staticmethod
    def atom(a: Atom) -> "Expr":
        return Expr.make(Poly.atom(a))

    # -- basic protocol --------------------------------------------------------

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Expr):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __str__(self):
        from .printer import expr_string

        return expr_string(self)

    def __repr__(self):
        return f"Expr({self})"

    def __bool__(self):
        return not self.num.is_zero

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_one(self) -> bool:
        return self.num.is_one and self.den.is_one

    def is_rational_constant(self) -> bool:
        return self.num.is_const() and self.den.is_const()

    def as_fraction(self) -> Fraction:
        if not self.is_rational_constant():
            raise ExprError(f"{self} is not a rational constant")
        return as_fraction(self.num.const_value()) / as_fraction(self.den.const_value())

    # -- arithmetic -------------------------------------------------------------

    @staticmethod
    def _coerce(x) -> "Expr | None":
        if isinstance(x, Expr):
            return x
        if isinstance(x, (int, Fraction)) or type(x) is type(RAT_ONE):
            return Expr.const(x)
        return None

    def __add__(self, other):
        o = Expr._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero:
            return self
        if self.is_zero:
            return o
        if self.den == o.den:
            return Expr.make(self.num + o.num, self.den)
        return Expr.make(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        if self.is_zero:
            return self
        return Expr(-self.num, self.den, _TOKEN)

    def __sub__(self, other):
        o = Expr._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = Expr._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = Expr._coerce(other)
        if o is None:
            return NotImplemented
        if self.is_zero or o.is_zero:
            return ZERO_EXPR
        # cross-cancel; the pieces are then pairwise coprime and only the
        # denominator unit needs fixing, so no further gcd is required
        n1, d2 = cancel(self.num, o.den) if not o.den.is_one else (self.num, o.den)
        n2, d1 = cancel(o.num, self.den) if not self.den.is_one else (o.num, self.den)
        num = n1 * n2
        den = d1 * d2
        u = den.rational_unit()
        if u != RAT_ONE:
            inv = RAT_ONE / u
            num = num.scale(inv)
            den = den.scale(inv)
        return Expr(num, den, _TOKEN)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = Expr._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.reciprocal()

    def __rtruediv__(self, other):
        o = Expr._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.reciprocal()

    def reciprocal(self) -> "Expr":
        if self.is_zero:
            raise DivisionByZeroExpr("division by the zero expression")
        num, den = self.den, self.num
        u = den.rational_unit()
        if u != RAT_ONE:
            inv = RAT_ONE / u
            num = num.scale(inv)
            den = den.scale(inv)
        return Expr(num, den, _TOKEN)

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise ExprError("only integer exponents are defined")
        if k == 0:
            return ONE_EXPR
        base = self if k > 0 else self.reciprocal()
        k = abs(k)
        # num^k / den^k of a canonical pair is canonical (coprimality and the
        # primitive positive-lc property are preserved by powers)
        return Expr(base.num ** k, base.den ** k, _TOKEN)

    # -- calculus ------------------------------------------------------------------

    def diff(self, coord_name: str) -> "Expr":
        if self.den.is_one:
            return Expr.make(self.num.diff(coord_name))
        dn = self.num.diff(coord_name)
        dd = self.den.diff(coord_name)
        if dd.is_zero:
            return Expr.make(dn, self.den)
        return Expr.make(dn * self.den - self.num * dd, self.den * self.den)

    def eval(self, assignment) -> Fraction:
        den_v = self.den.eval(assignment)
        if not den_v:
            raise EvalDenominatorZero("denominator vanished at the sample point")
        return as_fraction(self.num.eval(assignment)) / as_fraction(den_v)

    # -- structure --------------------------------------------------------------------

    def atoms(self) -> set[Atom]:
        return self.num.atoms() | self.den.atoms()

    def substitute_atom(self, atom: Atom, replacement: "Expr") -> "Expr":
        return _poly_subs(self.num, atom, replacement) / _poly_subs(self.den, atom, replacement)

    def degree_in(self, atom: Atom) -> tuple[int, int]:
        return self.num.degree_in(atom), self.den.degree_in(atom)


_TOKEN = object()

ZERO_EXPR = Expr(ZERO, ONE, _TOKEN)
ONE_EXPR = Expr(ONE, ONE, _TOKEN)


def _poly_subs(p: Poly, atom: Atom, replacement: Expr) -> Expr:
    if p.degree_in(atom) == 0:
        return Expr.make(p)
    out = ZERO_EXPR
    for k, q in p.coefficients_in(atom).items():
        term = Expr.make(q)
        if k:
            term = term * replacement ** k
        out = out + term
    return out


# ---------------------------------------------------------------------------
# spec-level operation surface


def arith(op: str, lhs: Expr, rhs=None) -> Expr:
    """Dispatch form of the arithmetic operations (add/sub/mul/div/int-pow/neg)."""
    if op == "neg":
        return -lhs
    if rhs is None:
        raise ExprError(f"operation {op!r} needs a right operand")
    if op == "add":
        return lhs + rhs
    if op == "sub":
        return lhs - rhs
    if op == "mul":
        return lhs * rhs
    if op == "div":
        return lhs / rhs
    if op == "int-pow":
        if not isinstance(rhs, int):
            raise ExprError("int-pow exponent must be an integer")
        return lhs ** rhs
    raise ExprError(f"unknown operation {op!r}")


def differentiate(e: Expr, coord_name: str) -> Expr:
    return e.diff(coord_name)


def eval_numeric(e: Expr, assignment) -> Fraction:
    return e.eval(assignment)


def is_zero(e: Expr) -> bool:
    return e.is_zero

"""Function-valued linear fits of tensors and soliton/inheritance classification.

`fit` treats each component equation target_I = sum_i c_i (B_i)_I as a
linear system over the field of canonical rational functions, eliminates
with the first usable pivot in lexicographic component order, sets free
coefficients to zero, and then re-checks every component by exact
subtraction.  Coefficients are functions of all atoms, never assumed
constant; constancy is a decidable post-hoc check used to name soliton
subtypes.

Sign conventions for the wrappers (documented, fixture-anchored):
  * fit_soliton / fit_gradient_soliton solve
        (1/2) L_xi g + S = mu g + lambda (eta x eta)
    (gradient form: hessian(zeta) + S = ...), reporting (mu, lambda);
  * fit_yamabe solves (1/2) L_xi g = c_g g + lambda (eta x eta) where
    c_g plays the role of (kappa - mu) in the adopted Yamabe convention.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import product

from .expr import Expr, ZERO_EXPR
from .expr.poly import cancel
from .geometry import (
    GeometryError,
    Metric,
    ScalarField,
    Tensor,
    VectorField,
    hessian,
    ricci,
    scalar_curvature,
    tensor2,
    zero_tensor,
)
from .curvature import kulkarni_nomizu
from .lie import lie_02, lie_04


class FitError(ValueError):
    pass


@dataclass(frozen=True)
class OneForm:
    """Covariant components eta_i."""

    ctx: object
    components: tuple[Expr, ...]

    def __post_init__(self):
        if len(self.components) != self.ctx.n:
            raise GeometryError("one-form must have one component per coordinate")

    def outer_square(self) -> Tensor:
        n = self.ctx.n
        c = self.components
        return tensor2(
            self.ctx,
            [[c[i] * c[j] for j in range(n)] for i in range(n)],
            "eta(x)eta",
        )


class FitStatus(enum.Enum):
    EXACT = "Exact"
    INCONSISTENT = "Inconsistent"
    UNDERDETERMINED = "Underdetermined"


class Classification(enum.Enum):
    COLLINEATION = "Collineation"
    INHERITANCE = "Inheritance"
    GENERALIZED_INHERITANCE = "GeneralizedInheritance"
    NONE = "None"


@dataclass(frozen=True)
class FitResult:
    coefficients: tuple[tuple[str, Expr], ...]
    residual: Tensor
    status: FitStatus
    classification: Classification
    free_names: tuple[str, ...] = ()

    def coefficient(self, name: str) -> Expr:
        for nm, e in self.coefficients:
            if nm == name:
                return e
        raise KeyError(name)


def _component_indices(rank: int, n: int):
    return product(range(n), repeat=rank)


def _component(t: Tensor, idx):
    c = t.components
    for i in idx:
        c = c[i]
    return c


def fit(target: Tensor, basis, names=None) -> FitResult:
    """Solve target = sum_i c_i B_i exactly over the rational-function field."""
    basis = list(basis)
    if not basis:
        raise FitError("basis must be non-empty")
    for b in basis:
        if b.ctx != target.ctx:
            raise FitError("context mismatch between target and basis")
        if b.rank != target.rank:
            raise FitError("rank mismatch between target and basis")
    k = len(basis)
    if names is None:
        names = [b.name or f"c{i + 1}" for i, b in enumerate(basis)]
    names = list(names)
    if len(names) != k:
        raise FitError("one name per basis tensor required")

    n = target.n
    rank = target.rank

    # forward elimination, pivot = first component (lex order) usable
    pivots: list[tuple[int, list[Expr]]] = []  # (pivot column, reduced row)
    pivot_cols: set[int] = set()
    for idx in _component_indices(rank, n):
        if len(pivots) == k:
            break
        row = [_component(b, idx) for b in basis] + [_component(target, idx)]
        if all(e.is_zero for e in row[:k]):
            continue
        for col, prow in pivots:
            fac = row[col]
            if not fac.is_zero:
                scale = fac / prow[col]
                row = [e - scale * pe for e, pe in zip(row, prow)]
        col = next((j for j in range(k) if not row[j].is_zero), None)
        if col is None:
            continue
        pivots.append((col, row))
        pivot_cols.add(col)

    coeffs: list[Expr] = [ZERO_EXPR] * k
    for col, row in reversed(pivots):
        acc = row[k]
        for j in range(k):
            if j != col and not row[j].is_zero and not coeffs[j].is_zero:
                acc = acc - row[j] * coeffs[j]
        coeffs[col] = acc / row[col]
    free = tuple(names[j] for j in range(k) if j not in pivot_cols)

    residual, exact = _exact_residual(target, basis, coeffs)

    if exact:
        status = FitStatus.UNDERDETERMINED if free else FitStatus.EXACT
    else:
        status = FitStatus.INCONSISTENT

    if exact:
        if all(c.is_zero for c in coeffs):
            classification = Classification.COLLINEATION
        elif not coeffs[0].is_zero and all(c.is_zero for c in coeffs[1:]):
            classification = Classification.INHERITANCE
        else:
            classification = Classification.GENERALIZED_INHERITANCE
    else:
        classification = Classification.NONE

    return FitResult(
        coefficients=tuple(zip(names, coeffs)),
        residual=residual,
        status=status,
        classification=classification,
        free_names=free,
    )


def _lcm_polys(dens):
    acc = dens[0]
    for d in dens[1:]:
        if d == acc:
            continue
        extra, _ = cancel(d, acc)  # d/gcd, acc/gcd
        acc = acc * extra
    return acc


def _exact_residual(target: Tensor, basis, coeffs):
    """target - sum c_i B_i, checked component-by-component, exactly.

    The coefficients are put over one shared denominator first so that the
    per-component arithmetic only ever cancels against the small component
    denominators; the canonical residual is materialized per component (it
    is just zero wherever the check passes).
    """
    active = [(c, b) for c, b in zip(coeffs, basis) if not c.is_zero]
    if not active:
        return target, target.is_zero()
    shared = _lcm_polys([c.den for c, _ in active])
    shared_expr = Expr.make(shared)
    hats = []
    for c, b in active:
        q, rem = cancel(shared, c.den)
        if not rem.is_const():  # lcm construction guarantees divisibility up to a unit
            raise FitError("internal error: shared denominator is not an lcm")
        hats.append((Expr.make(c.num * q, rem), b))

    exact = True

    def residual_component(idx):
        nonlocal exact
        acc = _component(target, idx) * shared_expr
        for hat, b in hats:
            bi = _component(b, idx)
            if not bi.is_zero:
                acc = acc - hat * bi
        if acc.is_zero:
            return ZERO_EXPR
        exact = False
        return acc / shared_expr

    n = target.n
    if target.rank == 2:
        grid = [[residual_component((i, j)) for j in range(n)] for i in range(n)]
        return tensor2(target.ctx, grid, "residual"), exact
    grid = [
        [
            [[residual_component((p, q, r, s)) for s in range(n)] for r in range(n)]
            for q in range(n)
        ]
        for p in range(n)
    ]
    from .geometry import tensor4

    return tensor4(target.ctx, grid, "residual"), exact


# ---------------------------------------------------------------------------
# substitutions (proposition side conditions)


def _substitute_expr(e: Expr, lhs: Expr, rhs: Expr, atom) -> Expr:
    diff = lhs - rhs
    num_deg, den_deg = diff.degree_in(atom)
    if num_deg == 0 and den_deg == 0:
        raise FitError(f"constraint does not involve {atom.label()}")
    if den_deg or num_deg > 1:
        raise FitError(f"constraint is not linear in {atom.label()}")
    buckets = diff.num.coefficients_in(atom)
    a1 = Expr.make(buckets[1])
    a0 = Expr.make(buckets[0]) if 0 in buckets else ZERO_EXPR
    replacement = -a0 / a1
    return e.substitute_atom(atom, replacement)


def substitute_condition(obj, lhs: Expr, rhs: Expr, eliminate):
    """Eliminate `eliminate` (an Atom) from obj using the equation lhs = rhs.

    The constraint must be linear in the designated atom.  Works on Expr,
    ScalarField, Tensor, VectorField and Metric-like grids.
    """
    if isinstance(obj, Expr):
        return _substitute_expr(obj, lhs, rhs, eliminate)
    if isinstance(obj, ScalarField):
        return ScalarField(_substitute_expr(obj.value, lhs, rhs, eliminate))
    if isinstance(obj, Tensor):
        return obj.map(lambda e: _substitute_expr(e, lhs, rhs, eliminate))
    if isinstance(obj, VectorField):
        return VectorField(
            obj.ctx, tuple(_substitute_expr(e, lhs, rhs, eliminate) for e in obj.components)
        )
    raise FitError(f"cannot substitute into {type(obj).__name__}")


def _apply_constraints(tensors, constraints):
    if not constraints:
        return list(tensors)
    out = []
    for t in tensors:
        for lhs, rhs, atom in constraints:
            t = substitute_condition(t, lhs, rhs, atom)
        out.append(t)
    return out


# ---------------------------------------------------------------------------
# named fits


def fit_inheritance(
    g: Metric, t: Tensor, xi: VectorField, extended: bool = False
) -> FitResult:
    """L_xi T against {T, g^g, g^S} (plus S^S when extended)."""
    target = lie_04(xi, t)
    S = ricci(g)
    basis = [t, kulkarni_nomizu(g.g, g.g), kulkarni_nomizu(g.g, S)]
    names = [f"lambda_{t.name}" if t.name else "lambda", "lambda1", "lambda2"]
    if extended:
        basis.append(kulkarni_nomizu(S, S))
        names.append("lambda3")
    return fit(target, basis, names)


def _soliton_fit(g: Metric, lhs_tensor: Tensor, eta: OneForm | None, constraints) -> FitResult:
    S = ricci(g)
    target = lhs_tensor.scale(Expr.const(1) / 2) + S
    basis = [g.g]
    names = ["mu"]
    if eta is not None:
        basis.append(eta.outer_square())
        names.append("lambda")
    tensors = _apply_constraints([target] + basis, constraints)
    return fit(tensors[0], tensors[1:], names)


def fit_soliton(
    g: Metric, xi: VectorField, eta: OneForm | None = None, constraints=()
) -> FitResult:
    """(1/2) L_xi g + S = mu g + lambda eta(x)eta."""
    return _soliton_fit(g, lie_02(xi, g.g), eta, constraints)


def fit_gradient_soliton(
    g: Metric, zeta, eta: OneForm | None = None, constraints=()
) -> FitResult:
    """hessian(zeta) + S = mu g + lambda eta(x)eta.

    Asserts the defining identity (1/2) L_{grad zeta} g = hessian(zeta)
    before fitting.
    """
    from .geometry import gradient

    z = zeta.value if isinstance(zeta, ScalarField) else zeta
    grad = gradient(g, z)
    hess = hessian(g, z)
    half_lie = lie_02(VectorField(g.ctx, grad.components), g.g).scale(Expr.const(1) / 2)
    if half_lie != hess:
        raise FitError("gradient-soliton identity (1/2) L_{grad} g = hessian failed")
    return _soliton_fit(g, hess.scale(Expr.const(2)), eta, constraints)


def fit_yamabe(
    g: Metric, xi: VectorField, eta: OneForm | None = None, constraints=()
) -> FitResult:
    """(1/2) L_xi g = c_g g + lambda eta(x)eta (c_g standing for kappa - mu)."""
    target = lie_02(xi, g.g).scale(Expr.const(1) / 2)
    basis = [g.g]
    names = ["kappa_minus_mu"]
    if eta is not None:
        basis.append(eta.outer_square())
        names.append("lambda")
    tensors = _apply_constraints([target] + basis, constraints)
    return fit(tensors[0], tensors[1:], names)


# ---------------------------------------------------------------------------
# soliton subtype naming


def is_constant(e: Expr, ctx) -> bool:
    """True when every coordinate partial vanishes canonically."""
    return all(e.diff(c).is_zero for c in ctx.coordinates)


def soliton_kind(result: FitResult, ctx, eta_present: bool, gradient_flow: bool = False) -> str:
    """Human-readable subtype, e.g. 'almost eta-Ricci soliton'."""
    if result.status is not FitStatus.EXACT:
        return "none"
    mu = result.coefficient("mu")
    parts = []
    almost = not is_constant(mu, ctx)
    if eta_present:
        lam = result.coefficient("lambda")
        almost = almost or not is_constant(lam, ctx)
    if almost:
        parts.append("almost")
    if gradient_flow:
        parts.append("gradient")
    if eta_present:
        parts.append("eta-Ricci soliton")
    else:
        parts.append("Ricci soliton")
    return " ".join(parts)

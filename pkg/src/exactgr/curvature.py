"""Kulkarni-Nomizu product and the derived curvature tensors G, C, W, K, P.

Normalizations (fixed; the component fixtures depend on them):
  * (phi ^ psi)_pqrs = phi_ps psi_qr - phi_pr psi_qs + phi_qr psi_ps - phi_qs psi_pr
  * G_pqrs = g_ps g_qr - g_pr g_qs          (so G = (1/2) g^g)
  * K = R - n3 (S^g)
  * W = R - kappa n1 n2 G
  * C = R - n3 (S^g) + kappa n2 n3 G
  * P_pqrs = R_pqrs - n2 (g_ps S_qr - g_qs S_pr)
with n_lambda = 1/(1 + n - lambda).  The projective tensor keeps the
curvature slots (p,q,r) and carries the lowered index in the last slot;
this is the only reading under which the component tables (and the
extended inheritance relation) close up.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .expr import Expr, ZERO_EXPR
from .geometry import (
    Metric,
    Tensor,
    cov_derivative_04,
    ricci,
    riemann,
    scalar_curvature,
    tensor4,
    GeometryError,
)


@dataclass(frozen=True)
class DimensionConstants:
    n: int
    n1: Fraction
    n2: Fraction
    n3: Fraction


def dimension_constants(n: int) -> DimensionConstants:
    if n < 3:
        raise GeometryError("derived curvature tensors need dimension >= 3")
    return DimensionConstants(
        n=n,
        n1=Fraction(1, n),
        n2=Fraction(1, n - 1),
        n3=Fraction(1, n - 2),
    )


def kulkarni_nomizu(phi: Tensor, psi: Tensor) -> Tensor:
    if phi.ctx != psi.ctx:
        raise GeometryError("context mismatch")
    if phi.rank != 2 or psi.rank != 2:
        raise GeometryError("Kulkarni-Nomizu product needs two (0,2) tensors")
    n = phi.n
    a = phi.components
    b = psi.components
    grid = [[[[None] * n for _ in range(n)] for _ in range(n)] for _ in range(n)]
    for p in range(n):
        for q in range(n):
            for r in range(n):
                for s in range(n):
                    grid[p][q][r][s] = (
                        a[p][s] * b[q][r]
                        - a[p][r] * b[q][s]
                        + a[q][r] * b[p][s]
                        - a[q][s] * b[p][r]
                    )
    name = f"{phi.name or 'phi'}^{psi.name or 'psi'}"
    return tensor4(phi.ctx, grid, name)


def gaussian(g: Metric) -> Tensor:
    """G_pqrs = g_ps g_qr - g_pr g_qs, built directly (not via the product)."""
    cached = g._cache.get("gaussian")
    if cached is not None:
        return cached
    n = g.n
    c = g.g.components
    grid = [
        [
            [[c[p][s] * c[q][r] - c[p][r] * c[q][s] for s in range(n)] for r in range(n)]
            for q in range(n)
        ]
        for p in range(n)
    ]
    result = tensor4(g.ctx, grid, "G")
    g._cache["gaussian"] = result
    return result


def conharmonic(g: Metric) -> Tensor:
    cached = g._cache.get("conharmonic")
    if cached is not None:
        return cached
    nc = dimension_constants(g.n)
    R = riemann(g)
    SG = kulkarni_nomizu(ricci(g), g.g)
    result = Tensor(g.ctx, (R - SG.scale(Expr.const(nc.n3))).components, "K")
    g._cache["conharmonic"] = result
    return result


def concircular(g: Metric) -> Tensor:
    cached = g._cache.get("concircular")
    if cached is not None:
        return cached
    nc = dimension_constants(g.n)
    R = riemann(g)
    kappa = scalar_curvature(g).value
    G = gaussian(g)
    result = Tensor(
        g.ctx,
        (R - G.scale(kappa * Expr.const(nc.n1 * nc.n2))).components,
        "W",
    )
    g._cache["concircular"] = result
    return result


def weyl_conformal(g: Metric) -> Tensor:
    cached = g._cache.get("weyl_conformal")
    if cached is not None:
        return cached
    nc = dimension_constants(g.n)
    R = riemann(g)
    SG = kulkarni_nomizu(ricci(g), g.g)
    kappa = scalar_curvature(g).value
    G = gaussian(g)
    result = Tensor(
        g.ctx,
        (
            R - SG.scale(Expr.const(nc.n3)) + G.scale(kappa * Expr.const(nc.n2 * nc.n3))
        ).components,
        "C",
    )
    g._cache["weyl_conformal"] = result
    return result


def weyl_projective(g: Metric) -> Tensor:
    cached = g._cache.get("weyl_projective")
    if cached is not None:
        return cached
    nc = dimension_constants(g.n)
    R = riemann(g)
    S = ricci(g)
    n = g.n
    gc = g.g.components
    sc = S.components
    n2 = Expr.const(nc.n2)
    grid = [
        [
            [
                [
                    R.components[p][q][r][s]
                    - n2 * (gc[p][s] * sc[q][r] - gc[q][s] * sc[p][r])
                    for s in range(n)
                ]
                for r in range(n)
            ]
            for q in range(n)
        ]
        for p in range(n)
    ]
    result = tensor4(g.ctx, grid, "P")
    g._cache["weyl_projective"] = result
    return result


# ---------------------------------------------------------------------------
# generalized-curvature-tensor classification


@dataclass(frozen=True)
class SymmetryReport:
    antisym_first_pair: bool
    antisym_second_pair: bool
    pair_exchange: bool
    first_bianchi: bool
    second_bianchi: bool
    counterexamples: dict

    def is_generalized_curvature_tensor(self) -> bool:
        return (
            self.antisym_first_pair
            and self.antisym_second_pair
            and self.pair_exchange
            and self.first_bianchi
        )

    def is_proper(self) -> bool:
        return self.is_generalized_curvature_tensor() and self.second_bianchi


def classify_gct(t: Tensor, g: Metric) -> SymmetryReport:
    """Exact canonical-zero checks of the generalized-curvature axioms.

    Each failed property records the first witness index tuple (1-based,
    lexicographic scan order, deterministic).
    """
    if t.rank != 4:
        raise GeometryError("classification needs a (0,4) tensor")
    n = t.n
    c = t.components
    witnesses: dict[str, tuple] = {}

    ok_a1 = True
    for p in range(n):
        for q in range(n):
            for r in range(n):
                for s in range(n):
                    if not (c[p][q][r][s] + c[q][p][r][s]).is_zero:
                        witnesses["antisym_first_pair"] = (p + 1, q + 1, r + 1, s + 1)
                        ok_a1 = False
                        break
                if not ok_a1:
                    break
            if not ok_a1:
                break
        if not ok_a1:
            break

    ok_a2 = True
    for p in range(n):
        for q in range(n):
            for r in range(n):
                for s in range(n):
                    if not (c[p][q][r][s] + c[p][q][s][r]).is_zero:
                        witnesses["antisym_second_pair"] = (p + 1, q + 1, r + 1, s + 1)
                        ok_a2 = False
                        break
                if not ok_a2:
                    break
            if not ok_a2:
                break
        if not ok_a2:
            break

    ok_pe = True
    for p in range(n):
        for q in range(n):
            for r in range(n):
                for s in range(n):
                    if c[p][q][r][s] != c[r][s][p][q]:
                        witnesses["pair_exchange"] = (p + 1, q + 1, r + 1, s + 1)
                        ok_pe = False
                        break
                if not ok_pe:
                    break
            if not ok_pe:
                break
        if not ok_pe:
            break

    ok_b1 = True
    for p in range(n):
        for q in range(n):
            for r in range(n):
                for s in range(n):
                    if not (c[p][q][r][s] + c[q][r][p][s] + c[r][p][q][s]).is_zero:
                        witnesses["first_bianchi"] = (p + 1, q + 1, r + 1, s + 1)
                        ok_b1 = False
                        break
                if not ok_b1:
                    break
            if not ok_b1:
                break
        if not ok_b1:
            break

    nabla = cov_derivative_04(g, t)
    ok_b2 = True
    for t_ in range(n):
        for p in range(n):
            for q in range(n):
                for r in range(n):
                    for s in range(n):
                        total = (
                            nabla[t_][p][q][r][s]
                            + nabla[p][q][t_][r][s]
                            + nabla[q][t_][p][r][s]
                        )
                        if not total.is_zero:
                            witnesses["second_bianchi"] = (
                                t_ + 1,
                                p + 1,
                                q + 1,
                                r + 1,
                                s + 1,
                            )
                            ok_b2 = False
                            break
                    if not ok_b2:
                        break
                if not ok_b2:
                    break
            if not ok_b2:
                break
        if not ok_b2:
            break

    return SymmetryReport(ok_a1, ok_a2, ok_pe, ok_b1, ok_b2, witnesses)

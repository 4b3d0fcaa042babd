"""Coordinate Lie derivatives of (0,2) and (0,4) tensors.

Partial derivatives only: for a torsion-free connection the covariant
assembly agrees, which the test suite asserts on the bundled metric.
"""

from __future__ import annotations

from .expr import ZERO_EXPR
from .geometry import GeometryError, Tensor, VectorField, tensor2, tensor4


def lie_02(xi: VectorField, t: Tensor) -> Tensor:
    """(L_xi B)_ij = xi^m d_m B_ij + B_mj d_i xi^m + B_im d_j xi^m."""
    if xi.ctx != t.ctx:
        raise GeometryError("context mismatch")
    if t.rank != 2:
        raise GeometryError("lie_02 needs a (0,2) tensor")
    n = t.n
    coords = t.ctx.coordinates
    c = t.components
    v = xi.components
    dv = [[v[m].diff(coords[i]) for m in range(n)] for i in range(n)]
    grid = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            acc = ZERO_EXPR
            for m in range(n):
                if not v[m].is_zero:
                    acc = acc + v[m] * c[i][j].diff(coords[m])
                if not dv[i][m].is_zero:
                    acc = acc + c[m][j] * dv[i][m]
                if not dv[j][m].is_zero:
                    acc = acc + c[i][m] * dv[j][m]
            grid[i][j] = acc
    return tensor2(t.ctx, grid, f"L[{t.name}]" if t.name else "")


def lie_04(xi: VectorField, t: Tensor) -> Tensor:
    """Advection plus one transport term per slot."""
    if xi.ctx != t.ctx:
        raise GeometryError("context mismatch")
    if t.rank != 4:
        raise GeometryError("lie_04 needs a (0,4) tensor")
    n = t.n
    coords = t.ctx.coordinates
    c = t.components
    v = xi.components
    dv = [[v[m].diff(coords[i]) for m in range(n)] for i in range(n)]
    grid = [[[[None] * n for _ in range(n)] for _ in range(n)] for _ in range(n)]
    for p in range(n):
        for q in range(n):
            for r in range(n):
                for s in range(n):
                    acc = ZERO_EXPR
                    for m in range(n):
                        if not v[m].is_zero:
                            acc = acc + v[m] * c[p][q][r][s].diff(coords[m])
                        if not dv[p][m].is_zero:
                            acc = acc + c[m][q][r][s] * dv[p][m]
                        if not dv[q][m].is_zero:
                            acc = acc + c[p][m][r][s] * dv[q][m]
                        if not dv[r][m].is_zero:
                            acc = acc + c[p][q][m][s] * dv[r][m]
                        if not dv[s][m].is_zero:
                            acc = acc + c[p][q][r][m] * dv[s][m]
                    grid[p][q][r][s] = acc
    return tensor4(t.ctx, grid, f"L[{t.name}]" if t.name else "")

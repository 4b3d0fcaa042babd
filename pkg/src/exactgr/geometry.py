"""Metric-derived geometry: inverse metric, connection, curvature, Hessian.

Index conventions (fixed; every fixture depends on them):
  * indices 1..n map to the chart order (for the Robinson-Trautman chart:
    x1=t, x2=r, x3=x, x4=y); internally arrays are 0-based,
  * the all-covariant curvature is
      R_pqrs = g_pa (d_s Gamma^a_qr - d_r Gamma^a_qs
               + Gamma^b_qr Gamma^a_bs - Gamma^b_qs Gamma^a_br),
  * S_qr = g^ps R_pqrs,  kappa = g^qr S_qr,  Einstein = S - (kappa/2) g.

All outputs are immutable value types built from canonical Exprs, so
tensor equality is exact componentwise equality.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .expr import Context, Expr, ZERO_EXPR


class GeometryError(ValueError):
    pass


def _as_expr(x) -> Expr:
    if isinstance(x, Expr):
        return x
    e = Expr._coerce(x)
    if e is None:
        raise GeometryError(f"cannot interpret {x!r} as an expression")
    return e


@dataclass(frozen=True)
class ScalarField:
    value: Expr


def _scalar(x) -> Expr:
    return x.value if isinstance(x, ScalarField) else _as_expr(x)


@dataclass(frozen=True)
class Tensor:
    """Dense all-covariant tensor of rank 2 or 4 over a context."""

    ctx: Context
    components: tuple
    name: str = ""

    def __post_init__(self):
        rank = self.rank
        if rank not in (2, 4):
            raise GeometryError("only (0,2) and (0,4) tensors are supported")

    @property
    def rank(self) -> int:
        c = self.components
        depth = 0
        while isinstance(c, tuple):
            depth += 1
            c = c[0]
        return depth

    @property
    def n(self) -> int:
        return self.ctx.n

    def __getitem__(self, idx):
        """1-based component access: T[p, q] or T[p, q, r, s]."""
        c = self.components
        for i in idx:
            c = c[i - 1]
        return c

    def __eq__(self, other):
        return (
            isinstance(other, Tensor)
            and self.ctx == other.ctx
            and self.components == other.components
        )

    def __hash__(self):
        return hash((self.ctx, self.components))

    def is_zero(self) -> bool:
        return all(e.is_zero for e in self.flat())

    def flat(self):
        def walk(c):
            if isinstance(c, tuple):
                for x in c:
                    yield from walk(x)
            else:
                yield c

        yield from walk(self.components)

    def nonzero_components(self):
        """Yield (indices, Expr) with 1-based ascending indices."""
        n = self.n
        if self.rank == 2:
            for i in range(n):
                for j in range(n):
                    e = self.components[i][j]
                    if not e.is_zero:
                        yield (i + 1, j + 1), e
        else:
            for p in range(n):
                for q in range(n):
                    for r in range(n):
                        for s in range(n):
                            e = self.components[p][q][r][s]
                            if not e.is_zero:
                                yield (p + 1, q + 1, r + 1, s + 1), e

    def map(self, fn, name: str | None = None) -> "Tensor":
        def walk(c):
            if isinstance(c, tuple):
                return tuple(walk(x) for x in c)
            return fn(c)

        return Tensor(self.ctx, walk(self.components), name if name is not None else self.name)

    def __add__(self, other: "Tensor") -> "Tensor":
        _check_same(self, other)

        def add(c1, c2):
            if isinstance(c1, tuple):
                return tuple(add(a, b) for a, b in zip(c1, c2))
            return c1 + c2

        return Tensor(self.ctx, add(self.components, other.components))

    def __sub__(self, other: "Tensor") -> "Tensor":
        _check_same(self, other)

        def sub(c1, c2):
            if isinstance(c1, tuple):
                return tuple(sub(a, b) for a, b in zip(c1, c2))
            return c1 - c2

        return Tensor(self.ctx, sub(self.components, other.components))

    def scale(self, c) -> "Tensor":
        e = _as_expr(c)
        return self.map(lambda x: x * e)


def _check_same(t1: Tensor, t2: Tensor):
    if t1.ctx != t2.ctx:
        raise GeometryError("context mismatch")
    if t1.rank != t2.rank:
        raise GeometryError("rank mismatch")


def tensor2(ctx: Context, grid, name: str = "") -> Tensor:
    n = ctx.n
    comp = tuple(tuple(_as_expr(grid[i][j]) for j in range(n)) for i in range(n))
    return Tensor(ctx, comp, name)


def tensor4(ctx: Context, grid, name: str = "") -> Tensor:
    n = ctx.n
    comp = tuple(
        tuple(
            tuple(tuple(_as_expr(grid[p][q][r][s]) for s in range(n)) for r in range(n))
            for q in range(n)
        )
        for p in range(n)
    )
    return Tensor(ctx, comp, name)


def zero_tensor(ctx: Context, rank: int, name: str = "") -> Tensor:
    n = ctx.n
    if rank == 2:
        return Tensor(ctx, tuple(tuple(ZERO_EXPR for _ in range(n)) for _ in range(n)), name)
    z = ZERO_EXPR
    return Tensor(
        ctx,
        tuple(
            tuple(tuple(tuple(z for _ in range(n)) for _ in range(n)) for _ in range(n))
            for _ in range(n)
        ),
        name,
    )


@dataclass(frozen=True)
class VectorField:
    """Contravariant components xi^i."""

    ctx: Context
    components: tuple[Expr, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "components", tuple(_as_expr(c) for c in self.components)
        )
        if len(self.components) != self.ctx.n:
            raise GeometryError("vector field must have one component per coordinate")


@dataclass(frozen=True)
class Metric:
    ctx: Context
    g: Tensor = field(compare=False)
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        n = self.ctx.n
        comp = self.g.components
        for i in range(n):
            for j in range(i + 1, n):
                if comp[i][j] != comp[j][i]:
                    raise GeometryError(f"metric is not symmetric at ({i + 1},{j + 1})")
        if determinant(self.g).is_zero:
            raise GeometryError("metric is degenerate (identically zero determinant)")

    def __eq__(self, other):
        return isinstance(other, Metric) and self.ctx == other.ctx and self.g == other.g

    def __hash__(self):
        return hash((self.ctx, self.g))

    @property
    def n(self) -> int:
        return self.ctx.n

    def __getitem__(self, idx):
        return self.g[idx]


def metric(ctx: Context, grid, name: str = "g") -> Metric:
    return Metric(ctx, tensor2(ctx, grid, name))


# ---------------------------------------------------------------------------
# linear algebra at fixed small n


def determinant(t: Tensor) -> Expr:
    n = t.n
    rows = [[t.components[i][j] for j in range(n)] for i in range(n)]
    return _det(rows)


def _det(rows) -> Expr:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = ZERO_EXPR
    for j, pivot in enumerate(rows[0]):
        if pivot.is_zero:
            continue
        minor = [[row[k] for k in range(n) if k != j] for row in rows[1:]]
        term = pivot * _det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def inverse_metric(g: Metric):
    """g^{ij} as a plain n x n tuple grid (cached on the metric)."""
    cached = g._cache.get("inverse")
    if cached is not None:
        return cached
    n = g.n
    det = determinant(g.g)
    rows = [[g.g.components[i][j] for j in range(n)] for i in range(n)]
    inv = []
    for i in range(n):
        inv_row = []
        for j in range(n):
            minor = [
                [rows[p][q] for q in range(n) if q != i] for p in range(n) if p != j
            ]
            cof = _det(minor) if minor else Expr.const(1)
            if (i + j) % 2 == 1:
                cof = -cof
            inv_row.append(cof / det)
        inv.append(tuple(inv_row))
    result = tuple(inv)
    g._cache["inverse"] = result
    return result


# ---------------------------------------------------------------------------
# connection and curvature


def christoffel(g: Metric):
    """Gamma^k_{ij}, second kind, as nested tuples [k][i][j] (cached)."""
    cached = g._cache.get("christoffel")
    if cached is not None:
        return cached
    n = g.n
    ginv = inverse_metric(g)
    comp = g.g.components
    coords = g.ctx.coordinates
    dg = [
        [[comp[i][j].diff(coords[k]) for j in range(n)] for i in range(n)]
        for k in range(n)
    ]
    half = Expr.const(1) / 2
    gamma = []
    for k in range(n):
        rows = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                acc = ZERO_EXPR
                for m in range(n):
                    if ginv[k][m].is_zero:
                        continue
                    acc = acc + ginv[k][m] * (dg[i][m][j] + dg[j][m][i] - dg[m][i][j])
                val = half * acc
                rows[i][j] = val
                rows[j][i] = val
        gamma.append(tuple(tuple(r) for r in rows))
    result = tuple(gamma)
    g._cache["christoffel"] = result
    return result


def riemann(g: Metric) -> Tensor:
    cached = g._cache.get("riemann")
    if cached is not None:
        return cached
    n = g.n
    gamma = christoffel(g)
    comp = g.g.components
    coords = g.ctx.coordinates
    dgamma = [
        [[[gamma[a][q][r].diff(coords[s]) for s in range(n)] for r in range(n)] for q in range(n)]
        for a in range(n)
    ]
    # R^a_{qrs} for r < s, antisymmetric in (r, s).  The sign is fixed so the
    # lowered tensor reproduces the reference component tables (e.g. RT
    # R_1212 = -2d/r^3); the opposite (r,s)-orientation is off by a global
    # sign against every table value.
    up = [[[[ZERO_EXPR] * n for _ in range(n)] for _ in range(n)] for _ in range(n)]
    for a in range(n):
        for q in range(n):
            for r in range(n):
                for s in range(r + 1, n):
                    acc = dgamma[a][q][s][r] - dgamma[a][q][r][s]
                    for b in range(n):
                        acc = acc + gamma[b][q][s] * gamma[a][b][r] - gamma[b][q][r] * gamma[a][b][s]
                    up[a][q][r][s] = acc
                    up[a][q][s][r] = -acc
    grid = [[[[ZERO_EXPR] * n for _ in range(n)] for _ in range(n)] for _ in range(n)]
    for p in range(n):
        for q in range(n):
            for r in range(n):
                for s in range(r + 1, n):
                    acc = ZERO_EXPR
                    for a in range(n):
                        if comp[p][a].is_zero:
                            continue
                        acc = acc + comp[p][a] * up[a][q][r][s]
                    grid[p][q][r][s] = acc
                    grid[p][q][s][r] = -acc
    result = tensor4(g.ctx, grid, "R")
    g._cache["riemann"] = result
    return result


def ricci(g: Metric) -> Tensor:
    cached = g._cache.get("ricci")
    if cached is not None:
        return cached
    n = g.n
    R = riemann(g)
    ginv = inverse_metric(g)
    grid = [[ZERO_EXPR] * n for _ in range(n)]
    for q in range(n):
        for r in range(n):
            acc = ZERO_EXPR
            for p in range(n):
                for s in range(n):
                    if ginv[p][s].is_zero:
                        continue
                    term = R.components[p][q][r][s]
                    if term.is_zero:
                        continue
                    acc = acc + ginv[p][s] * term
            grid[q][r] = acc
    result = tensor2(g.ctx, grid, "S")
    g._cache["ricci"] = result
    return result


def scalar_curvature(g: Metric) -> ScalarField:
    cached = g._cache.get("scalar")
    if cached is not None:
        return cached
    n = g.n
    S = ricci(g)
    ginv = inverse_metric(g)
    acc = ZERO_EXPR
    for q in range(n):
        for r in range(n):
            if ginv[q][r].is_zero:
                continue
            acc = acc + ginv[q][r] * S.components[q][r]
    result = ScalarField(acc)
    g._cache["scalar"] = result
    return result


def einstein(g: Metric) -> Tensor:
    cached = g._cache.get("einstein")
    if cached is not None:
        return cached
    S = ricci(g)
    kappa = scalar_curvature(g).value
    half = Expr.const(1) / 2
    diff = S - g.g.scale(kappa * half)
    result = Tensor(g.ctx, diff.components, "Einstein")
    g._cache["einstein"] = result
    return result


# ---------------------------------------------------------------------------
# scalar fields


def gradient(g: Metric, zeta) -> VectorField:
    z = _scalar(zeta)
    n = g.n
    ginv = inverse_metric(g)
    coords = g.ctx.coordinates
    dz = [z.diff(coords[j]) for j in range(n)]
    comps = []
    for i in range(n):
        acc = ZERO_EXPR
        for j in range(n):
            if ginv[i][j].is_zero or dz[j].is_zero:
                continue
            acc = acc + ginv[i][j] * dz[j]
        comps.append(acc)
    return VectorField(g.ctx, tuple(comps))


def hessian(g: Metric, zeta) -> Tensor:
    z = _scalar(zeta)
    n = g.n
    gamma = christoffel(g)
    coords = g.ctx.coordinates
    dz = [z.diff(coords[k]) for k in range(n)]
    grid = [[ZERO_EXPR] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            acc = dz[i].diff(coords[j])
            for k in range(n):
                if gamma[k][i][j].is_zero or dz[k].is_zero:
                    continue
                acc = acc - gamma[k][i][j] * dz[k]
            grid[i][j] = acc
            grid[j][i] = acc
    return tensor2(g.ctx, grid, "hessian")


# ---------------------------------------------------------------------------
# covariant derivative (generic, used by the Bianchi checks)


def cov_derivative_02(g: Metric, t: Tensor):
    """(nabla_k T)_{ij} as nested tuples [k][i][j]."""
    n = g.n
    gamma = christoffel(g)
    coords = g.ctx.coordinates
    comp = t.components
    out = []
    for k in range(n):
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = comp[i][j].diff(coords[k])
                for m in range(n):
                    acc = acc - gamma[m][k][i] * comp[m][j] - gamma[m][k][j] * comp[i][m]
                row.append(acc)
            rows.append(tuple(row))
        out.append(tuple(rows))
    return tuple(out)


def cov_derivative_04(g: Metric, t: Tensor):
    """(nabla_k T)_{pqrs} as nested tuples [k][p][q][r][s]."""
    n = g.n
    gamma = christoffel(g)
    coords = g.ctx.coordinates
    comp = t.components
    out = []
    for k in range(n):
        block = [[[[None] * n for _ in range(n)] for _ in range(n)] for _ in range(n)]
        for p in range(n):
            for q in range(n):
                for r in range(n):
                    for s in range(n):
                        acc = comp[p][q][r][s].diff(coords[k])
                        for m in range(n):
                            acc = (
                                acc
                                - gamma[m][k][p] * comp[m][q][r][s]
                                - gamma[m][k][q] * comp[p][m][r][s]
                                - gamma[m][k][r] * comp[p][q][m][s]
                                - gamma[m][k][s] * comp[p][q][r][m]
                            )
                        block[p][q][r][s] = acc
        out.append(tuple(tuple(tuple(tuple(x for x in r3) for r3 in r2) for r2 in r1) for r1 in block))
    return tuple(out)

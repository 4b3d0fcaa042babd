"""Sparse multivariate polynomials over exact rationals.

Monomials are tuples of (Atom, exponent) pairs, exponents > 0, sorted by
the global atom order.  The monomial order is graded lexicographic: total
degree first, then the earliest atom with differing exponent decides
(higher exponent = larger monomial).

GCD is tiered: trivial and monomial cases are handled directly; the
general multi-term case is delegated to sympy's sparse polynomial rings
over QQ (deterministic), then mapped back.  Everything downstream only
sees this module's Poly type.
"""

from __future__ import annotations

from .._rat import RAT, RAT_ONE, RAT_ZERO, as_rat
from .atoms import Atom


class ExpressionSizeError(RuntimeError):
    """Polynomial exceeded the configured term-count cap."""


_MAX_TERMS = 200_000


def set_max_terms(n: int) -> None:
    global _MAX_TERMS
    if n < 1:
        raise ValueError("term cap must be positive")
    _MAX_TERMS = n


def get_max_terms() -> int:
    return _MAX_TERMS


# ---------------------------------------------------------------------------
# monomials

EMPTY_MONO: tuple = ()


def mono_mul(m1, m2):
    if not m1:
        return m2
    if not m2:
        return m1
    out = []
    i = j = 0
    n1, n2 = len(m1), len(m2)
    while i < n1 and j < n2:
        a1, e1 = m1[i]
        a2, e2 = m2[j]
        if a1 is a2 or a1.key == a2.key:
            out.append((a1, e1 + e2))
            i += 1
            j += 1
        elif a1.key < a2.key:
            out.append(m1[i])
            i += 1
        else:
            out.append(m2[j])
            j += 1
    out.extend(m1[i:])
    out.extend(m2[j:])
    return tuple(out)


def mono_gcd(m1, m2):
    if not m1 or not m2:
        return EMPTY_MONO
    out = []
    i = j = 0
    while i < len(m1) and j < len(m2):
        a1, e1 = m1[i]
        a2, e2 = m2[j]
        if a1.key == a2.key:
            out.append((a1, e1 if e1 < e2 else e2))
            i += 1
            j += 1
        elif a1.key < a2.key:
            i += 1
        else:
            j += 1
    return tuple(out)


def mono_div(m, d):
    """m / d, assuming d divides m."""
    if not d:
        return m
    out = []
    j = 0
    nd = len(d)
    for a, e in m:
        if j < nd and d[j][0].key == a.key:
            r = e - d[j][1]
            j += 1
            if r:
                out.append((a, r))
        else:
            out.append((a, e))
    if j != nd:
        raise ArithmeticError("monomial division is not exact")
    return tuple(out)


def mono_degree(m) -> int:
    return sum(e for _, e in m)


def mono_cmp(m1, m2) -> int:
    """Graded lex: -1, 0 or 1."""
    d1, d2 = mono_degree(m1), mono_degree(m2)
    if d1 != d2:
        return -1 if d1 < d2 else 1
    i = j = 0
    while i < len(m1) and j < len(m2):
        a1, e1 = m1[i]
        a2, e2 = m2[j]
        if a1.key == a2.key:
            if e1 != e2:
                return 1 if e1 > e2 else -1
            i += 1
            j += 1
        elif a1.key < a2.key:
            return 1  # m1 has the earlier atom with positive exponent
        else:
            return -1
    if i < len(m1):
        return 1
    if j < len(m2):
        return -1
    return 0


def _mono_sort_key(atoms_index):
    def key(mono):
        vec = [0] * len(atoms_index)
        for a, e in mono:
            vec[atoms_index[a.key]] = e
        return (mono_degree(mono), vec)

    return key


# ---------------------------------------------------------------------------
# polynomials


class Poly:
    """Immutable sparse polynomial: dict {monomial: coefficient}."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: dict, prune: bool = False):
        if prune:
            terms = {m: c for m, c in terms.items() if c}
        if len(terms) > _MAX_TERMS:
            raise ExpressionSizeError(
                f"polynomial with {len(terms)} terms exceeds the cap of {_MAX_TERMS}"
            )
        self.terms = terms
        self._hash = None

    # -- constructors ------------------------------------------------------

    @staticmethod
    def const(c) -> "Poly":
        c = as_rat(c) if not isinstance(c, type(RAT_ONE)) else c
        return Poly({EMPTY_MONO: c}) if c else Poly({})

    @staticmethod
    def atom(a: Atom) -> "Poly":
        return Poly({((a, 1),): RAT_ONE})

    # -- predicates ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_one(self) -> bool:
        return len(self.terms) == 1 and self.terms.get(EMPTY_MONO) == RAT_ONE

    def is_const(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and EMPTY_MONO in self.terms)

    def const_value(self):
        return self.terms.get(EMPTY_MONO, RAT_ZERO)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    # -- hashing / equality --------------------------------------------------

    def __eq__(self, other):
        return self is other or (isinstance(other, Poly) and self.terms == other.terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __repr__(self):
        from .printer import poly_string

        return f"Poly({poly_string(self)})"

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        if not other.terms:
            return self
        if not self.terms:
            return other
        res = dict(self.terms)
        for m, c in other.terms.items():
            s = res.get(m)
            if s is None:
                res[m] = c
            else:
                s = s + c
                if s:
                    res[m] = s
                else:
                    del res[m]
        return Poly(res)

    def __neg__(self) -> "Poly":
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        if not other.terms:
            return self
        res = dict(self.terms)
        for m, c in other.terms.items():
            s = res.get(m)
            if s is None:
                res[m] = -c
            else:
                s = s - c
                if s:
                    res[m] = s
                else:
                    del res[m]
        return Poly(res)

    def __mul__(self, other: "Poly") -> "Poly":
        t1, t2 = self.terms, other.terms
        if not t1 or not t2:
            return ZERO
        if len(t2) == 1:
            (m2, c2), = t2.items()
            if not m2:
                if c2 == RAT_ONE:
                    return self
                return Poly({m: c * c2 for m, c in t1.items()})
            return Poly({mono_mul(m, m2): c * c2 for m, c in t1.items()})
        if len(t1) == 1:
            return other * self
        res: dict = {}
        for m1, c1 in t1.items():
            for m2, c2 in t2.items():
                m = mono_mul(m1, m2)
                s = res.get(m)
                if s is None:
                    res[m] = c1 * c2
                else:
                    s = s + c1 * c2
                    if s:
                        res[m] = s
                    else:
                        del res[m]
        return Poly(res)

    def scale(self, c) -> "Poly":
        if not c:
            return ZERO
        if c == RAT_ONE:
            return self
        return Poly({m: q * c for m, q in self.terms.items()})

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power on a polynomial")
        if k == 0:
            return ONE
        result = None
        base = self
        while True:
            if k & 1:
                result = base if result is None else result * base
            k >>= 1
            if not k:
                return result
            base = base * base

    # -- calculus ------------------------------------------------------------

    def diff(self, coord_name: str) -> "Poly":
        res: dict = {}
        for mono, c in self.terms.items():
            for idx, (a, e) in enumerate(mono):
                d = a.derivative(coord_name)
                if d is None:
                    continue
                rest = mono[:idx] + ((a, e - 1),) if e > 1 else mono[:idx]
                rest = rest + mono[idx + 1 :]
                if d is True:
                    m = rest
                else:
                    m = mono_mul(rest, ((d, 1),))
                coeff = c * e
                s = res.get(m)
                if s is None:
                    res[m] = coeff
                else:
                    s = s + coeff
                    if s:
                        res[m] = s
                    else:
                        del res[m]
        return Poly(res)

    def eval(self, assignment) -> "RAT":
        from .rational import UnassignedAtomError

        total = RAT_ZERO
        for mono, c in self.terms.items():
            v = c
            for a, e in mono:
                x = assignment.get(a)
                if x is None:
                    raise UnassignedAtomError(f"atom {a.label()} has no assigned value")
                v = v * as_rat(x) ** e
            total = total + v
        return total

    # -- structure -----------------------------------------------------------

    def atoms(self) -> set[Atom]:
        out = set()
        for mono in self.terms:
            for a, _ in mono:
                out.add(a)
        return out

    def degree_in(self, atom: Atom) -> int:
        deg = 0
        for mono in self.terms:
            for a, e in mono:
                if a is atom or a.key == atom.key:
                    if e > deg:
                        deg = e
        return deg

    def coefficients_in(self, atom: Atom) -> dict[int, "Poly"]:
        """Split p = sum_k q_k * atom^k; returns {k: q_k}."""
        buckets: dict[int, dict] = {}
        for mono, c in self.terms.items():
            k = 0
            rest = mono
            for idx, (a, e) in enumerate(mono):
                if a.key == atom.key:
                    k = e
                    rest = mono[:idx] + mono[idx + 1 :]
                    break
            buckets.setdefault(k, {})[rest] = c
        return {k: Poly(d) for k, d in sorted(buckets.items())}

    def monomial_content(self):
        """The largest monomial dividing every term."""
        it = iter(self.terms)
        try:
            g = next(it)
        except StopIteration:
            return EMPTY_MONO
        for m in it:
            if not g:
                return EMPTY_MONO
            g = mono_gcd(g, m)
        return g

    def div_monomial(self, mono) -> "Poly":
        if not mono:
            return self
        return Poly({mono_div(m, mono): c for m, c in self.terms.items()})

    def leading(self):
        """(monomial, coeff) maximal under graded lex."""
        it = iter(self.terms.items())
        best_m, best_c = next(it)
        for m, c in it:
            if mono_cmp(m, best_m) > 0:
                best_m, best_c = m, c
        return best_m, best_c

    def sorted_terms(self, reverse: bool = True):
        """Terms in graded-lex order (descending by default)."""
        atoms = sorted(self.atoms())
        keyf = _mono_sort_key({a.key: i for i, a in enumerate(atoms)})
        return sorted(self.terms.items(), key=lambda mc: keyf(mc[0]), reverse=reverse)

    def rational_unit(self):
        """The scalar u with self/u primitive integer and positive leading coeff."""
        from math import gcd, lcm

        num_g = 0
        den_l = 1
        for c in self.terms.values():
            num_g = gcd(num_g, int(c.numerator))
            den_l = lcm(den_l, int(c.denominator))
        if num_g == 0:
            return RAT_ONE
        u = RAT(num_g, den_l)
        _, lc = self.leading()
        return -u if lc < 0 else u


ZERO = Poly({})
ONE = Poly({EMPTY_MONO: RAT_ONE})


# ---------------------------------------------------------------------------
# GCD backend

_RING_CACHE: dict = {}


def _sympy_ring(natoms: int):
    ring = _RING_CACHE.get(natoms)
    if ring is None:
        from sympy.polys.domains import QQ
        from sympy.polys.rings import ring as mkring

        ring = mkring([f"x{i}" for i in range(natoms)], QQ)[0]
        _RING_CACHE[natoms] = ring
    return ring


def _to_sympy(p: Poly, atom_index: dict, ring):
    from sympy.polys.domains import QQ

    d = {}
    na = len(atom_index)
    for mono, c in p.terms.items():
        vec = [0] * na
        for a, e in mono:
            vec[atom_index[a.key]] = e
        d[tuple(vec)] = QQ(int(c.numerator), int(c.denominator))
    return ring.from_dict(d)


def _from_sympy(sp, atoms: list[Atom]) -> Poly:
    d = {}
    for vec, c in sp.terms():
        mono = tuple((atoms[i], e) for i, e in enumerate(vec) if e)
        d[mono] = RAT(int(c.numerator), int(c.denominator))
    return Poly(d)


def cancel(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    """Divide out gcd(p, q); exact, deterministic.

    Tier 0: constants / equal inputs.  Tier 1: common monomial factor.
    Tier 2: sympy gcd over QQ for the genuinely multi-term case.
    """
    if p.is_zero:
        return ZERO, q
    if q.is_zero:
        raise ZeroDivisionError("cancel against zero denominator")
    if p.is_const() or q.is_const():
        return p, q
    mc = mono_gcd(p.monomial_content(), q.monomial_content())
    if mc:
        p = p.div_monomial(mc)
        q = q.div_monomial(mc)
    if p.is_monomial() or q.is_monomial() or p.is_const() or q.is_const():
        return p, q
    if p.terms == q.terms:
        return ONE, ONE
    atoms = sorted(p.atoms() | q.atoms())
    atom_index = {a.key: i for i, a in enumerate(atoms)}
    ring = _sympy_ring(len(atoms))
    sp, sq = _to_sympy(p, atom_index, ring), _to_sympy(q, atom_index, ring)
    g = sp.gcd(sq)
    if g.is_ground:
        return p, q
    return _from_sympy(sp.quo(g), atoms), _from_sympy(sq.quo(g), atoms)

"""Atoms (coordinates, parameters, jet variables) and the declaration Context.

Atoms are interned, immutable and totally ordered.  The global order is:
coordinates (by chart position), then parameters (by name), then jets
(by function name, then total derivative order, then the per-argument
order vector).  Mixed partials commute, which is structural here: a jet
stores one derivative count per function argument, so f_xy and f_yx are
the same atom.
"""

from __future__ import annotations

from dataclasses import dataclass, field

COORD = 0
PARAM = 1
JET = 2

_RESERVED = {"diff"}

# Interning keeps atom identity canonical across contexts; dict.setdefault is
# atomic under the GIL, so concurrent construction is safe.
_INTERN: dict[tuple, "Atom"] = {}


class Atom:
    """A symbolic indeterminate: coordinate, free parameter, or jet."""

    __slots__ = ("kind", "name", "index", "fname", "args", "orders", "key", "_label", "_h")

    def __init__(self, kind, name, index, fname, args, orders, key):
        self.kind = kind
        self.name = name          # display name (coordinate/parameter), "" for jets
        self.index = index        # chart position for coordinates
        self.fname = fname        # opaque function name for jets
        self.args = args          # argument names of the function, for jets
        self.orders = orders      # per-argument derivative counts, for jets
        self.key = key
        self._label = None
        self._h = hash(key)

    def __repr__(self):
        return f"Atom({self.label()})"

    def __hash__(self):
        return self._h

    def __eq__(self, other):
        return self is other or (isinstance(other, Atom) and self.key == other.key)

    def __lt__(self, other):
        return self.key < other.key

    def label(self) -> str:
        """Canonical printed form (underscore jets when unambiguous)."""
        if self._label is None:
            if self.kind != JET:
                self._label = self.name
            elif self.total_order() == 0:
                self._label = self.fname
            elif all(len(a) == 1 for a in self.args):
                suffix = "".join(a * k for a, k in zip(self.args, self.orders))
                self._label = f"{self.fname}_{suffix}"
            else:
                parts = [self.fname]
                for a, k in zip(self.args, self.orders):
                    parts.extend([a] * k)
                self._label = "diff(" + ",".join(parts) + ")"
        return self._label

    def total_order(self) -> int:
        return sum(self.orders) if self.kind == JET else 0

    def derivative(self, coord_name: str):
        """d(atom)/d coord: 1, 0, or the bumped jet atom.

        Returns None for zero, the string "1" sentinel never; callers get
        either None (zero), True (one) or an Atom.
        """
        if self.kind == COORD:
            return True if self.name == coord_name else None
        if self.kind == PARAM:
            return None
        if coord_name not in self.args:
            return None
        i = self.args.index(coord_name)
        orders = self.orders[:i] + (self.orders[i] + 1,) + self.orders[i + 1 :]
        return jet_atom(self.fname, self.args, orders)


def _intern(key, *ctor_args) -> Atom:
    a = _INTERN.get(key)
    if a is None:
        a = _INTERN.setdefault(key, Atom(*ctor_args, key))
    return a


def coord_atom(name: str, index: int) -> Atom:
    key = (COORD, index, name)
    return _intern(key, COORD, name, index, None, None, None)


def param_atom(name: str) -> Atom:
    key = (PARAM, name)
    return _intern(key, PARAM, name, None, None, None, None)


def jet_atom(fname: str, args: tuple[str, ...], orders: tuple[int, ...]) -> Atom:
    if len(args) != len(orders) or any(k < 0 for k in orders):
        raise ValueError(f"bad jet multi-index {orders!r} for {fname}{args!r}")
    # negated orders make derivatives in earlier arguments sort first
    # (f_x before f_y, f_xx before f_xy before f_yy)
    key = (JET, fname, sum(orders), tuple(-k for k in orders))
    return _intern(key, JET, "", None, fname, args, orders)


class ContextError(ValueError):
    pass


@dataclass(frozen=True)
class Context:
    """Declares the chart: coordinates (ordered), parameters, opaque functions."""

    coordinates: tuple[str, ...]
    parameters: tuple[str, ...] = ()
    functions: dict[str, tuple[str, ...]] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "coordinates", tuple(self.coordinates))
        object.__setattr__(self, "parameters", tuple(self.parameters))
        object.__setattr__(self, "functions", dict(self.functions))
        names = list(self.coordinates) + list(self.parameters) + list(self.functions)
        seen = set()
        for nm in names:
            if not nm.isidentifier() or not nm.isascii():
                raise ContextError(f"invalid name {nm!r}")
            if nm in _RESERVED:
                raise ContextError(f"{nm!r} is reserved")
            if nm in seen:
                raise ContextError(f"duplicate name {nm!r}")
            seen.add(nm)
        for fname, args in self.functions.items():
            if not args:
                raise ContextError(f"function {fname!r} needs at least one argument")
            for a in args:
                if a not in self.coordinates:
                    raise ContextError(f"function {fname!r} argument {a!r} is not a coordinate")

    def __hash__(self):
        return hash((self.coordinates, self.parameters, tuple(sorted(self.functions.items()))))

    def __eq__(self, other):
        return (
            isinstance(other, Context)
            and self.coordinates == other.coordinates
            and self.parameters == other.parameters
            and self.functions == other.functions
        )

    @property
    def n(self) -> int:
        return len(self.coordinates)

    def coord(self, name: str) -> Atom:
        try:
            return coord_atom(name, self.coordinates.index(name))
        except ValueError:
            raise ContextError(f"undeclared coordinate {name!r}") from None

    def param(self, name: str) -> Atom:
        if name not in self.parameters:
            raise ContextError(f"undeclared parameter {name!r}")
        return param_atom(name)

    def jet(self, fname: str, orders_by_arg: dict[str, int] | tuple[int, ...] = ()) -> Atom:
        if fname not in self.functions:
            raise ContextError(f"undeclared function {fname!r}")
        args = tuple(self.functions[fname])
        if isinstance(orders_by_arg, dict):
            bad = set(orders_by_arg) - set(args)
            if bad:
                raise ContextError(f"{fname!r} has no argument {sorted(bad)!r}")
            orders = tuple(orders_by_arg.get(a, 0) for a in args)
        else:
            orders = tuple(orders_by_arg) or (0,) * len(args)
        return jet_atom(fname, args, orders)

    def resolve(self, name: str) -> Atom | None:
        """Resolve a bare identifier: declared name, or underscore-jet form."""
        if name in self.coordinates:
            return self.coord(name)
        if name in self.parameters:
            return self.param(name)
        if name in self.functions:
            return self.jet(name)
        if "_" in name:
            head, _, tail = name.partition("_")
            if head in self.functions and tail:
                args = self.functions[head]
                # underscore jets are only unambiguous for single-letter args
                if all(len(a) == 1 for a in args) and all(c in args for c in tail):
                    counts = {a: tail.count(a) for a in args}
                    return self.jet(head, counts)
        return None

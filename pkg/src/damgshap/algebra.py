"""Value functions, the Möbius function and the Möbius transform on a DAMG."""

from __future__ import annotations

from collections.abc import Mapping
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import BaseMismatchError, MixedScalarError, NotAncestrallyClosedError
from .graph import Damg, build_damg, is_topological_order, iter_bits
from .pathalgebra import PathAlgebraElement, convolve
from .scalars import EXACT, FLOAT, Vector, normalize, value_kind, zero

__all__ = [
    "PathAlgebraElement",
    "ValueFunction",
    "convolve",
    "inverse_moebius",
    "moebius_function",
    "moebius_transform",
    "restrict_to_ancestrally_closed",
    "unanimity",
]


def _clean(x):
    if isinstance(x, Vector):
        return Vector(normalize(c) for c in x)
    return normalize(x)


class ValueFunction:
    """A module-valued function on the vertices of a DAMG.

    Values are scalars or :class:`Vector` instances of one common length.
    Floats are refused unless ``allow_float`` is passed.
    """

    def __init__(self, base: Damg, values: Mapping, *, allow_float: bool = False):
        missing = [v for v in base.order if v not in values]
        if missing:
            raise ValueError(f"value function is not total; missing {missing}")
        unknown = [k for k in values if k not in base]
        if unknown:
            raise ValueError(f"values given for unknown vertices {unknown}")
        vals = [values[v] for v in base.order]
        kinds = set()
        dims = set()
        for x in vals:
            if isinstance(x, (list, tuple)) and not isinstance(x, Vector):
                x = Vector(x)
            kinds.add(value_kind(x))
            dims.add(len(x) if isinstance(x, Vector) else None)
        if len(kinds) > 1:
            raise MixedScalarError("value function mixes exact and float values")
        if len(dims) > 1:
            raise ValueError(f"values do not share one shape: {sorted(dims, key=str)}")
        self.kind = kinds.pop() if kinds else EXACT
        if self.kind == FLOAT and not allow_float:
            raise MixedScalarError("float values need allow_float=True; exact rationals are the default")
        self.dimension = dims.pop() if dims else None
        self.base = base
        self._vals = tuple(
            _clean(Vector(x) if isinstance(x, (list, tuple)) else x) for x in vals
        )

    @classmethod
    def _from_list(cls, base: Damg, vals: Sequence, like: "ValueFunction") -> "ValueFunction":
        out = cls.__new__(cls)
        out.base = base
        out.kind = like.kind
        out.dimension = like.dimension
        out._vals = tuple(_clean(x) for x in vals)
        return out

    @classmethod
    def zeros(cls, base: Damg, dimension: int | None = None) -> "ValueFunction":
        return cls(base, dict.fromkeys(base.order, zero(dimension)))

    # -- access ----------------------------------------------------------

    def __getitem__(self, label: str):
        return self._vals[self.base.idx(label)]

    def at(self, i: int):
        return self._vals[i]

    def as_list(self) -> list:
        return list(self._vals)

    def items(self):
        return zip(self.base.order, self._vals)

    def to_dict(self) -> dict:
        return dict(self.items())

    def total(self):
        return sum(self._vals, zero(self.dimension))

    def restrict(self, graph: Damg) -> "ValueFunction":
        """The same values read on a graph whose vertices are a subset of ours."""
        return ValueFunction._from_list(graph, [self[v] for v in graph.order], self)

    def to_exact(self) -> "ValueFunction":
        def conv(x):
            if isinstance(x, Vector):
                return Vector(Fraction(c) for c in x)
            return Fraction(x)

        return ValueFunction(self.base, {v: conv(x) for v, x in self.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, ValueFunction):
            return NotImplemented
        return self.base == other.base and self._vals == other._vals

    def __repr__(self) -> str:
        return f"ValueFunction({self.to_dict()!r})"

    # -- module arithmetic -----------------------------------------------

    def _check(self, other: "ValueFunction"):
        if self.base != other.base:
            raise BaseMismatchError("value functions live on different graphs")
        if self.kind != other.kind:
            raise MixedScalarError("cannot combine exact and float value functions")
        if self.dimension != other.dimension:
            raise ValueError("value functions have different shapes")

    def __add__(self, other: "ValueFunction") -> "ValueFunction":
        self._check(other)
        return ValueFunction._from_list(self.base, [a + b for a, b in zip(self._vals, other._vals)], self)

    def __sub__(self, other: "ValueFunction") -> "ValueFunction":
        self._check(other)
        return ValueFunction._from_list(self.base, [a - b for a, b in zip(self._vals, other._vals)], self)

    def __neg__(self) -> "ValueFunction":
        return ValueFunction._from_list(self.base, [-a for a in self._vals], self)

    def __mul__(self, c) -> "ValueFunction":
        """Scale by a scalar, or tensor a scalar game with a fixed vector."""
        if isinstance(c, Vector):
            if self.dimension is not None:
                raise ValueError("only scalar games can be multiplied by a vector")
            out = ValueFunction._from_list(self.base, [a * c for a in self._vals], self)
            out.dimension = len(c)
            return out
        if isinstance(c, float) and self.kind != FLOAT:
            raise MixedScalarError("scaling an exact value function by a float")
        return ValueFunction._from_list(self.base, [a * c for a in self._vals], self)

    __rmul__ = __mul__


def _largest_parent(g: Damg, j: int, sizes: Sequence[int]) -> int | None:
    best = None
    for p in g.parent_mult[j]:
        if best is None or sizes[p] > sizes[best]:
            best = p
    return best


def _resolve_order(g: Damg, order: Sequence[str] | None) -> list[int]:
    if order is None:
        return list(range(len(g.order)))
    if not is_topological_order(g, order):
        raise ValueError("supplied order is not a topological order of the graph")
    return [g.index[v] for v in order]


def moebius_transform(v: ValueFunction, order: Sequence[str] | None = None) -> ValueFunction:
    """Synergy w(x) = v(x) - sum of w over the proper ancestors of x.

    The proper-ancestor sum is read off one parent p with the largest ancestor
    set: it equals v(p) plus the synergies of the remaining ancestors outside
    Anc(p). On chains and trees this makes each step O(1) beyond the bitset work.
    ``order`` may be any topological order; the result does not depend on it.
    """
    g = v.base
    anc = g.anc_bits
    sizes = [b.bit_count() for b in anc]
    vals = v._vals
    w: list = [None] * len(vals)
    for j in _resolve_order(g, order):
        p = _largest_parent(g, j, sizes)
        if p is None:
            w[j] = vals[j]
            continue
        acc = vals[p]
        for i in iter_bits(anc[j] & ~anc[p] & ~(1 << j)):
            acc = acc + w[i]
        w[j] = vals[j] - acc
    return ValueFunction._from_list(g, w, v)


def inverse_moebius(w: ValueFunction, order: Sequence[str] | None = None) -> ValueFunction:
    """v(x) = sum of w over Anc(x)."""
    g = w.base
    anc = g.anc_bits
    sizes = [b.bit_count() for b in anc]
    ws = w._vals
    v: list = [None] * len(ws)
    for j in _resolve_order(g, order):
        p = _largest_parent(g, j, sizes)
        if p is None:
            v[j] = ws[j]
            continue
        acc = v[p]
        for i in iter_bits(anc[j] & ~anc[p] & ~(1 << j)):
            acc = acc + ws[i]
        v[j] = ws[j] + acc
    return ValueFunction._from_list(g, v, w)


def moebius_function(g: Damg) -> PathAlgebraElement:
    """mu(x, x) = 1 and mu(x, y) = -sum of mu(x, z) over z in Desc(x) with z a proper ancestor of y."""
    rows: list[dict[int, object]] = []
    for j in range(len(g.order)):
        acc: dict[int, object] = {}
        for z in iter_bits(g.anc_bits[j] & ~(1 << j)):
            for i, val in rows[z].items():
                acc[i] = acc.get(i, 0) + val
        row = {i: -val for i, val in acc.items() if val != 0}
        row[j] = 1
        rows.append(row)
    return PathAlgebraElement(g, rows)


def _right_action(v: ValueFunction, f: PathAlgebraElement) -> ValueFunction:
    """(v * f)(y) = sum_x v(x) f(x, y)."""
    if v.base != f.base:
        raise BaseMismatchError("value function and path algebra element live on different graphs")
    out = []
    for j in range(len(v.base.order)):
        acc = zero(v.dimension)
        for i, fv in f.row_items(j):
            acc = acc + v._vals[i] * fv
        out.append(acc)
    return ValueFunction._from_list(v.base, out, v)


def unanimity(g: Damg, y: str) -> ValueFunction:
    desc = g.desc_bits[g.idx(y)]
    return ValueFunction(g, {x: int(desc >> i & 1) for i, x in enumerate(g.order)})


def delta_function(g: Damg, y: str) -> ValueFunction:
    g.idx(y)
    return ValueFunction(g, {x: int(x == y) for x in g.order})


def restrict_to_ancestrally_closed(g: Damg, v: ValueFunction, subset: Iterable[str]) -> tuple[Damg, ValueFunction]:
    keep = g.bits_of(subset)
    for i in iter_bits(keep):
        if g.anc_bits[i] & ~keep:
            outside = sorted(g.labels(g.anc_bits[i] & ~keep))
            raise NotAncestrallyClosedError(
                f"{g.order[i]!r} has ancestors {outside} outside the subset"
            )
    labels = [g.order[i] for i in iter_bits(keep)]
    edges = [e for e in g.edges if keep >> g.index[e.head] & 1]
    sub = build_damg(labels, edges, composite_ids=True)
    return sub, v.restrict(sub)

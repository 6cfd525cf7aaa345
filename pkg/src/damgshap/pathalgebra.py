"""Path algebra elements: scalar functions on ancestor pairs of a DAMG.

Entries are stored as a lower-triangular matrix under the graph's topological
order: row ``j`` holds the values ``f(x, order[j])`` for ancestors ``x``.
Graphs up to :data:`DENSE_LIMIT` vertices use dense rows (lists), larger ones
use sparse rows (dicts of nonzeros).
"""

from __future__ import annotations

from typing import Callable, Iterator

from .errors import BaseMismatchError
from .graph import Damg, iter_bits
from .scalars import normalize

DENSE_LIMIT = 2048


class PathAlgebraElement:
    def __init__(self, base: Damg, rows: list[dict[int, object]]):
        """``rows[j]`` maps ancestor index -> value for target ``order[j]``.

        Zeros are dropped; a nonzero outside the ancestor support raises.
        """
        self.base = base
        n = len(base.order)
        if len(rows) != n:
            raise ValueError("one row per vertex required")
        self.dense = n <= DENSE_LIMIT
        store = []
        for j, row in enumerate(rows):
            anc = base.anc_bits[j]
            clean = {}
            for i, val in row.items():
                if val == 0:
                    continue
                if not anc >> i & 1:
                    raise ValueError(
                        f"support violation: {base.order[i]!r} is not an ancestor of {base.order[j]!r}"
                    )
                clean[i] = normalize(val)
            if self.dense:
                dense_row = [0] * (j + 1)
                for i, val in clean.items():
                    dense_row[i] = val
                store.append(dense_row)
            else:
                store.append(clean)
        self._rows = store

    # -- constructors ----------------------------------------------------

    @classmethod
    def from_function(cls, base: Damg, fn: Callable[[str, str], object]) -> "PathAlgebraElement":
        rows = []
        for j, y in enumerate(base.order):
            rows.append({i: fn(base.order[i], y) for i in iter_bits(base.anc_bits[j])})
        return cls(base, rows)

    @classmethod
    def delta(cls, base: Damg) -> "PathAlgebraElement":
        return cls(base, [{j: 1} for j in range(len(base.order))])

    @classmethod
    def zeta(cls, base: Damg) -> "PathAlgebraElement":
        return cls(base, [dict.fromkeys(iter_bits(base.anc_bits[j]), 1) for j in range(len(base.order))])

    # -- access ----------------------------------------------------------

    def row_items(self, j: int) -> Iterator[tuple[int, object]]:
        row = self._rows[j]
        if self.dense:
            return ((i, v) for i, v in enumerate(row) if v != 0)
        return iter(row.items())

    def entry(self, i: int, j: int):
        if i > j:
            return 0
        row = self._rows[j]
        return row[i] if self.dense else row.get(i, 0)

    def __getitem__(self, pair: tuple[str, str]):
        x, y = pair
        return self.entry(self.base.idx(x), self.base.idx(y))

    def to_dict(self) -> dict[tuple[str, str], object]:
        order = self.base.order
        return {
            (order[i], order[j]): v
            for j in range(len(order))
            for i, v in self.row_items(j)
        }

    def __eq__(self, other) -> bool:
        if not isinstance(other, PathAlgebraElement):
            return NotImplemented
        return self.base == other.base and self.to_dict() == other.to_dict()

    def __repr__(self) -> str:
        nnz = sum(1 for j in range(len(self.base.order)) for _ in self.row_items(j))
        return f"PathAlgebraElement({len(self.base.order)} vertices, {nnz} nonzeros)"

    # -- algebra ---------------------------------------------------------

    def convolve(self, other: "PathAlgebraElement") -> "PathAlgebraElement":
        """(f * g)(x, y) = sum_z f(x, z) g(z, y)."""
        if self.base != other.base:
            raise BaseMismatchError("path algebra elements live on different graphs")
        rows = []
        for j in range(len(self.base.order)):
            acc: dict[int, object] = {}
            for k, gv in other.row_items(j):
                for i, fv in self.row_items(k):
                    acc[i] = acc.get(i, 0) + fv * gv
            rows.append(acc)
        return PathAlgebraElement(self.base, rows)

    __matmul__ = convolve

    def __add__(self, other: "PathAlgebraElement") -> "PathAlgebraElement":
        if self.base != other.base:
            raise BaseMismatchError("path algebra elements live on different graphs")
        rows = []
        for j in range(len(self.base.order)):
            acc = dict(self.row_items(j))
            for i, v in other.row_items(j):
                acc[i] = acc.get(i, 0) + v
            rows.append(acc)
        return PathAlgebraElement(self.base, rows)


def convolve(f: PathAlgebraElement, g: PathAlgebraElement) -> PathAlgebraElement:
    return f.convolve(g)

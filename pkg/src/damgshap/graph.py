"""Directed acyclic multigraphs (DAMGs).

A :class:`Damg` is immutable. Vertices are string labels; edges carry a unique
string id and may be parallel. Every graph stores a certified topological order
computed by Kahn's algorithm with lexicographic tie-breaking, so layouts and
outputs are reproducible.

Ancestor and descendant sets are kept as Python ``int`` bitsets indexed by
topological position; bit ``i`` stands for ``g.order[i]``.
"""

from __future__ import annotations

import heapq
from collections import namedtuple
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import (
    CapExceededError,
    CycleError,
    DanglingEndpointError,
    DuplicateIdError,
    ReservedCharacterError,
    UnknownVertexError,
)

COMPOSITE_SEP = "*"


@dataclass(frozen=True)
class Edge:
    id: str
    tail: str
    head: str


Relations = namedtuple("Relations", "parents children ancestors descendants")


def iter_bits(n: int) -> Iterator[int]:
    """Indices of set bits, lowest first."""
    while n:
        low = n & -n
        yield low.bit_length() - 1
        n ^= low


class Damg:
    """A finite directed acyclic multigraph with a fixed topological order.

    Use :func:`build_damg` to construct one; the constructor trusts its input.
    """

    def __init__(self, order: Sequence[str], edges: Sequence[Edge]):
        self.order: tuple[str, ...] = tuple(order)
        self.index: dict[str, int] = {v: i for i, v in enumerate(self.order)}
        self.edges: tuple[Edge, ...] = tuple(edges)
        self.edge_by_id: dict[str, Edge] = {e.id: e for e in self.edges}
        n = len(self.order)
        in_edges: list[list[Edge]] = [[] for _ in range(n)]
        out_edges: list[list[Edge]] = [[] for _ in range(n)]
        pmult: list[dict[int, int]] = [{} for _ in range(n)]
        cmult: list[dict[int, int]] = [{} for _ in range(n)]
        for e in self.edges:
            t, h = self.index[e.tail], self.index[e.head]
            in_edges[h].append(e)
            out_edges[t].append(e)
            pmult[h][t] = pmult[h].get(t, 0) + 1
            cmult[t][h] = cmult[t].get(h, 0) + 1
        self.in_edges = tuple(tuple(x) for x in in_edges)
        self.out_edges = tuple(tuple(x) for x in out_edges)
        # parent index -> |E(parent, y)|, per vertex index
        self.parent_mult = tuple(pmult)
        self.child_mult = tuple(cmult)

    # -- basic accessors -------------------------------------------------

    @property
    def vertices(self) -> frozenset[str]:
        return frozenset(self.order)

    def __len__(self) -> int:
        return len(self.order)

    def __contains__(self, label) -> bool:
        return label in self.index

    def idx(self, label: str) -> int:
        try:
            return self.index[label]
        except KeyError:
            raise UnknownVertexError(label) from None

    @cached_property
    def roots(self) -> tuple[str, ...]:
        """Roots in label order."""
        return tuple(sorted(v for i, v in enumerate(self.order) if not self.parent_mult[i]))

    @cached_property
    def leaves(self) -> tuple[str, ...]:
        return tuple(sorted(v for i, v in enumerate(self.order) if not self.child_mult[i]))

    @cached_property
    def root_bits(self) -> int:
        bits = 0
        for r in self.roots:
            bits |= 1 << self.index[r]
        return bits

    def is_root(self, label: str) -> bool:
        return not self.parent_mult[self.idx(label)]

    def parents(self, label: str) -> frozenset[str]:
        return frozenset(self.order[p] for p in self.parent_mult[self.idx(label)])

    def children(self, label: str) -> frozenset[str]:
        return frozenset(self.order[c] for c in self.child_mult[self.idx(label)])

    def multiplicity(self, x: str, y: str) -> int:
        """|E(x, y)|."""
        return self.parent_mult[self.idx(y)].get(self.idx(x), 0)

    def in_degree(self, y: str) -> int:
        """|E(y)|, counting parallel edges."""
        return len(self.in_edges[self.idx(y)])

    # -- reachability ----------------------------------------------------

    @cached_property
    def anc_bits(self) -> tuple[int, ...]:
        bits = []
        for i in range(len(self.order)):
            b = 1 << i
            for p in self.parent_mult[i]:
                b |= bits[p]
            bits.append(b)
        return tuple(bits)

    @cached_property
    def desc_bits(self) -> tuple[int, ...]:
        n = len(self.order)
        bits = [0] * n
        for i in range(n - 1, -1, -1):
            b = 1 << i
            for c in self.child_mult[i]:
                b |= bits[c]
            bits[i] = b
        return tuple(bits)

    def labels(self, bits: int) -> frozenset[str]:
        return frozenset(self.order[i] for i in iter_bits(bits))

    def ancestors(self, label: str) -> frozenset[str]:
        return self.labels(self.anc_bits[self.idx(label)])

    def descendants(self, label: str) -> frozenset[str]:
        return self.labels(self.desc_bits[self.idx(label)])

    def is_ancestor(self, x: str, y: str) -> bool:
        """True iff x is in Anc(y) (reflexive)."""
        return bool(self.anc_bits[self.idx(y)] >> self.idx(x) & 1)

    def bits_of(self, labels: Iterable[str]) -> int:
        b = 0
        for v in labels:
            b |= 1 << self.idx(v)
        return b

    # -- comparison ------------------------------------------------------

    def edge_map(self) -> dict[str, tuple[str, str]]:
        return {e.id: (e.tail, e.head) for e in self.edges}

    def __eq__(self, other) -> bool:
        if not isinstance(other, Damg):
            return NotImplemented
        return self.order == other.order and self.edge_map() == other.edge_map()

    def __hash__(self):
        return hash((self.order, frozenset(self.edge_map().items())))

    def __repr__(self) -> str:
        return f"Damg({len(self.order)} vertices, {len(self.edges)} edges)"


def _as_edge(item) -> Edge:
    if isinstance(item, Edge):
        return item
    eid, tail, head = item
    return Edge(str(eid), str(tail), str(head))


def _find_cycle(remaining: set[str], parents_of: dict[str, list[str]]) -> list[str]:
    start = min(remaining)
    seen: dict[str, int] = {}
    walk = []
    v = start
    while v not in seen:
        seen[v] = len(walk)
        walk.append(v)
        v = min(p for p in parents_of[v] if p in remaining)
    cycle = walk[seen[v]:]
    cycle.reverse()
    return cycle + [cycle[0]]


def build_damg(vertices: Iterable[str], edges: Iterable, *, composite_ids: bool = False) -> Damg:
    """Validate vertices and edges and return a :class:`Damg`.

    ``edges`` holds :class:`Edge` objects or ``(id, tail, head)`` triples.
    Edge ids may contain ``"*"`` only when ``composite_ids`` is set; that
    character is reserved for edges created by projection.
    """
    vlist = [str(v) for v in vertices]
    vset = set(vlist)
    if len(vset) != len(vlist):
        dupes = sorted({v for v in vlist if vlist.count(v) > 1})
        raise DuplicateIdError(f"duplicate vertex labels: {dupes}")
    elist = [_as_edge(e) for e in edges]
    seen_ids: set[str] = set()
    for e in elist:
        if e.id in seen_ids:
            raise DuplicateIdError(f"duplicate edge id {e.id!r}")
        seen_ids.add(e.id)
        if not composite_ids and COMPOSITE_SEP in e.id:
            raise ReservedCharacterError(f"edge id {e.id!r} contains reserved character '*'")
        for end in (e.tail, e.head):
            if end not in vset:
                raise DanglingEndpointError(f"edge {e.id!r} refers to undeclared vertex {end!r}")
        if e.tail == e.head:
            raise CycleError([e.tail, e.head])

    parents_of: dict[str, list[str]] = {v: [] for v in vlist}
    children_of: dict[str, list[str]] = {v: [] for v in vlist}
    indeg = {v: 0 for v in vlist}
    for e in elist:
        parents_of[e.head].append(e.tail)
        children_of[e.tail].append(e.head)
        indeg[e.head] += 1

    heap = [v for v in vlist if indeg[v] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        v = heapq.heappop(heap)
        order.append(v)
        for c in children_of[v]:
            indeg[c] -= 1
            if indeg[c] == 0:
                heapq.heappush(heap, c)
    if len(order) != len(vlist):
        raise CycleError(_find_cycle(vset - set(order), parents_of))
    return Damg(order, elist)


def is_topological_order(g: Damg, order: Sequence[str]) -> bool:
    if sorted(order) != sorted(g.order):
        return False
    pos = {v: i for i, v in enumerate(order)}
    return all(pos[e.tail] < pos[e.head] for e in g.edges)


def relations(g: Damg, x: str) -> Relations:
    g.idx(x)
    return Relations(g.parents(x), g.children(x), g.ancestors(x), g.descendants(x))


def root_path_totals(g: Damg) -> dict[str, int]:
    """pi(y): number of directed paths from any root to y, in O(|V| + |E|)."""
    tot = [0] * len(g.order)
    for j in range(len(g.order)):
        pm = g.parent_mult[j]
        tot[j] = sum(tot[p] * m for p, m in pm.items()) if pm else 1
    return dict(zip(g.order, tot))


def path_counts(g: Damg):
    """All-pairs directed path counts pi(x, y) and the root totals pi(y)."""
    from .weights import _total_weights

    pi = _total_weights(g, lambda p, j: g.parent_mult[j][p])
    return pi, root_path_totals(g)


def enumerate_paths(g: Damg, x: str, y: str, cap: int = 10_000) -> list[tuple[str, ...]]:
    """All directed paths from x to y as edge-id tuples; the trivial path is ``()``."""
    xi, yi = g.idx(x), g.idx(y)
    target_anc = g.anc_bits[yi]
    if not target_anc >> xi & 1:
        return []
    out: list[tuple[str, ...]] = []

    def walk(i: int, trail: list[str]):
        if i == yi:
            if len(out) >= cap:
                raise CapExceededError(f"more than {cap} paths from {x!r} to {y!r}")
            out.append(tuple(trail))
            return
        for e in g.out_edges[i]:
            h = g.index[e.head]
            if target_anc >> h & 1:
                trail.append(e.id)
                walk(h, trail)
                trail.pop()

    walk(xi, [])
    return out


def is_horizontal_subset(g: Damg, subset: Iterable[str]) -> bool:
    """Does every root-to-leaf path meet ``subset`` exactly once?

    One forward pass tracks, per vertex, whether some root path reaching it
    has met the subset zero times, once, or at least twice.
    """
    xbits = g.bits_of(subset)
    n = len(g.order)
    h0 = [False] * n
    h1 = [False] * n
    h2 = [False] * n
    for j in range(n):
        pm = g.parent_mult[j]
        inside = bool(xbits >> j & 1)
        if not pm:
            h0[j], h1[j] = (False, True) if inside else (True, False)
            continue
        a0 = any(h0[p] for p in pm)
        a1 = any(h1[p] for p in pm)
        a2 = any(h2[p] for p in pm)
        if inside:
            h0[j], h1[j], h2[j] = False, a0, a1 or a2
        else:
            h0[j], h1[j], h2[j] = a0, a1, a2
    return all(not h0[j] and not h2[j] for j in range(n) if not g.child_mult[j])

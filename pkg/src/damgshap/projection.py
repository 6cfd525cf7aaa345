"""Projection of a PDAMG onto the complement of a vertex set.

Removing z composes every pair of edges x -e1-> z -e2-> y into a new edge
with id ``"e1*e2"`` and weight q(e1) q(e2), and hands the synergy of z to its
parents in proportion to q(x|z). Composite ids flatten by construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .algebra import ValueFunction, inverse_moebius, moebius_transform
from .errors import NotWeakError, ProjectionBlowupError
from .graph import COMPOSITE_SEP, Damg, Edge, build_damg, iter_bits
from .scalars import is_zero
from .weights import EdgeWeights, ProjectionKernel

DEFAULT_EDGE_CAP = 10**6


@dataclass(frozen=True, eq=False)
class ProjectionResult:
    graph: Damg
    kernel: ProjectionKernel | None
    synergy: ValueFunction | None
    value: ValueFunction | None
    removed: frozenset
    edge_weights: EdgeWeights | None = None


class _Workspace:
    """Mutable adjacency used while vertices are being removed."""

    def __init__(self, g: Damg, maps: list[dict]):
        self.g = g
        self.edges = {e.id: (e.tail, e.head) for e in g.edges}
        self.maps = [dict(m) for m in maps]
        self.ins = {v: {} for v in g.order}
        self.outs = {v: {} for v in g.order}
        for e in g.edges:
            self.ins[e.head][e.id] = None
            self.outs[e.tail][e.id] = None

    def remove(self, z: str, cap: int) -> list[tuple[str, object]]:
        """Drop z, composing edges through it; returns (tail, weight) of its in-edges under map 0."""
        ins, outs = list(self.ins.pop(z)), list(self.outs.pop(z))
        projected = len(self.edges) - len(ins) - len(outs) + len(ins) * len(outs)
        if projected > cap:
            raise ProjectionBlowupError(
                f"removing {z!r} would leave {projected} edges (cap {cap})"
            )
        handoff = [(self.edges[e1][0], self.maps[0][e1] if self.maps else None) for e1 in ins]
        for e1 in ins:
            del self.outs[self.edges[e1][0]][e1]
        for e2 in outs:
            del self.ins[self.edges[e2][1]][e2]
        for e1 in ins:
            x = self.edges[e1][0]
            for e2 in outs:
                y = self.edges[e2][1]
                eid = e1 + COMPOSITE_SEP + e2
                self.edges[eid] = (x, y)
                self.ins[y][eid] = None
                self.outs[x][eid] = None
                for m in self.maps:
                    m[eid] = m[e1] * m[e2]
        for eid in ins + outs:
            del self.edges[eid]
            for m in self.maps:
                del m[eid]
        return handoff

    def graph(self) -> Damg:
        g = self.g
        keep = [v for v in g.order if v in self.ins]
        edges = [Edge(eid, t, h) for eid, (t, h) in self.edges.items()]
        edges.sort(key=lambda e: (g.index[e.tail], g.index[e.head], e.id))
        return build_damg(keep, edges, composite_ids=True)


def _removal_order(g: Damg, subset: Iterable[str]) -> list[str]:
    bits = g.bits_of(subset)
    return [g.order[i] for i in sorted(iter_bits(bits), reverse=True)]


def _project(g: Damg, q, w, sigma, order: list[str], cap: int) -> ProjectionResult:
    if w is not None and q is None:
        raise ValueError("projecting a synergy function requires a kernel")
    maps = [m for m in (q, sigma) if m is not None]
    ws = w.to_dict() if w is not None else None
    work = _Workspace(g, maps)
    for z in order:
        handoff = work.remove(z, cap)
        if ws is not None:
            wz = ws.pop(z)
            if not is_zero(wz):
                for x, qe in handoff:
                    ws[x] = ws[x] + qe * wz
    h = work.graph()
    kernel = sigma_out = synergy = value = None
    if q is not None:
        kernel = ProjectionKernel(h, work.maps[0], provenance=q.provenance)
    if sigma is not None:
        sigma_out = EdgeWeights(h, work.maps[-1])
    if ws is not None:
        synergy = ValueFunction._from_list(h, [ws[v] for v in h.order], w)
        value = inverse_moebius(synergy)
    return ProjectionResult(h, kernel, synergy, value, frozenset(order), sigma_out)


def project_vertex(g: Damg, q: ProjectionKernel | None, w: ValueFunction | None, z: str,
                   *, sigma: EdgeWeights | None = None, cap: int = DEFAULT_EDGE_CAP) -> ProjectionResult:
    g.idx(z)
    return _project(g, q, w, sigma, [z], cap)


def project_subset(g: Damg, q: ProjectionKernel | None, w: ValueFunction | None, subset: Iterable[str],
                   *, sigma: EdgeWeights | None = None, cap: int = DEFAULT_EDGE_CAP,
                   order: list[str] | None = None) -> ProjectionResult:
    """Remove every vertex of ``subset``; leaves first unless ``order`` is given."""
    subset = list(subset)
    for z in subset:
        g.idx(z)
    if order is None:
        order = _removal_order(g, subset)
    elif sorted(order) != sorted(set(subset)):
        raise ValueError("order must list each vertex of the subset once")
    return _project(g, q, w, sigma, list(order), cap)


def project_onto(g: Damg, q: ProjectionKernel | None, w: ValueFunction | None, target: Iterable[str],
                 **kw) -> ProjectionResult:
    keep = g.bits_of(target)
    return project_subset(g, q, w, [v for i, v in enumerate(g.order) if not keep >> i & 1], **kw)


def project_edge_weights(g: Damg, sigma: EdgeWeights, subset: Iterable[str],
                         cap: int = DEFAULT_EDGE_CAP) -> tuple[Damg, EdgeWeights]:
    """Edge strengths ride along by the same composition rule as a kernel."""
    res = project_subset(g, None, None, subset, sigma=sigma, cap=cap)
    return res.graph, res.edge_weights


# -- admissibility -------------------------------------------------------


def _through_parents(g: Damg, tbits: int) -> list[int]:
    """Bitset of Pa^{G minus T}(y): vertices outside T reaching y through T only."""
    out = []
    for j in range(len(g.order)):
        b = 0
        for p in g.parent_mult[j]:
            b |= out[p] if tbits >> p & 1 else 1 << p
        out.append(b)
    return out


def is_admissible(g: Damg, subset: Iterable[str]) -> bool:
    sbits = g.bits_of(subset)
    ubits = sbits & g.root_bits
    tbits = sbits & ~g.root_bits
    through = _through_parents(g, tbits)
    for j in range(len(g.order)):
        if tbits >> j & 1:
            continue
        pa = through[j]
        if pa & ubits and pa & ~ubits:
            return False
    return True


def is_restricted_admissible(g: Damg, subset: Iterable[str]) -> bool:
    subset = list(subset)
    if not is_admissible(g, subset):
        return False
    sbits = g.bits_of(subset)
    full = [False] * len(g.order)
    for j in range(len(g.order)):
        if sbits >> j & 1:
            pm = g.parent_mult[j]
            full[j] = not pm or any(full[p] for p in pm)
            if full[j] and not g.child_mult[j]:
                return False
    return True


# -- weak and null elements ---------------------------------------------


def weak_elements(g: Damg, v: ValueFunction) -> frozenset[str]:
    w = moebius_transform(v)
    return frozenset(x for x, val in w.items() if is_zero(val))


def null_elements(g: Damg, v: ValueFunction) -> frozenset[str]:
    weak = g.bits_of(weak_elements(g, v))
    return frozenset(x for i, x in enumerate(g.order) if not g.desc_bits[i] & ~weak)


def drop_weak(g: Damg, q: ProjectionKernel, v: ValueFunction, weak: Iterable[str],
              cap: int = DEFAULT_EDGE_CAP) -> tuple[Damg, ProjectionKernel, ValueFunction]:
    """Project away weak non-roots and restrict v (not its synergy) to what is left."""
    weak = list(weak)
    w = moebius_transform(v)
    for z in weak:
        if g.is_root(z):
            raise NotWeakError(z, "is a root")
        if not is_zero(w[z]):
            raise NotWeakError(z)
    res = project_subset(g, q, None, weak, cap=cap)
    return res.graph, res.kernel, v.restrict(res.graph)

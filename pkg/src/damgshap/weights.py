"""Edge strengths, root strengths and projection kernels on a DAMG.

All weight systems here are exact (``int`` / ``Fraction``). The per-edge map
is the source of truth; pairwise sums over parallel edges are derived lazily.
"""

from __future__ import annotations

from collections.abc import Mapping
from fractions import Fraction
from functools import cached_property
from typing import Callable

from .errors import MixedScalarError, NotABijectionError, ZeroStrengthError
from .graph import Damg, root_path_totals
from .pathalgebra import PathAlgebraElement
from .scalars import EXACT, normalize, scalar_kind


def _exact(val, what):
    try:
        kind = scalar_kind(val)
    except TypeError:
        raise MixedScalarError(f"{what}: {val!r} is not a scalar") from None
    if kind != EXACT:
        raise MixedScalarError(f"{what}: weights must be exact rationals, got float {val!r}")
    return normalize(Fraction(val))


class EdgeWeights(Mapping):
    """Per-edge weights (edge strengths) keyed by edge id."""

    def __init__(self, base: Damg, weights: Mapping):
        ids = set(base.edge_by_id)
        keys = set(weights)
        if keys != ids:
            missing, extra = sorted(ids - keys), sorted(keys - ids)
            raise ValueError(f"edge weights must cover exactly the edges (missing {missing}, extra {extra})")
        self.base = base
        self._w = {e.id: _exact(weights[e.id], f"edge {e.id!r}") for e in base.edges}

    @classmethod
    def ones(cls, base: Damg):
        return cls(base, dict.fromkeys(base.edge_by_id, 1))

    def __getitem__(self, eid):
        return self._w[eid]

    def __iter__(self):
        return iter(self._w)

    def __len__(self):
        return len(self._w)

    def __eq__(self, other):
        if not isinstance(other, EdgeWeights):
            return NotImplemented
        return self.base == other.base and self._w == other._w

    def __repr__(self):
        return f"{type(self).__name__}({self._w!r})"

    @cached_property
    def _pairwise_rows(self) -> tuple[dict[int, object], ...]:
        rows = []
        for j, edges in enumerate(self.base.in_edges):
            acc: dict[int, object] = {}
            for e in edges:
                p = self.base.index[e.tail]
                acc[p] = acc.get(p, 0) + self._w[e.id]
            rows.append(acc)
        return tuple(rows)

    def pair_by_index(self, p: int, j: int):
        return self._pairwise_rows[j].get(p, 0)

    def pairwise(self, x: str, y: str):
        """Sum of weights over E(x, y); zero when there is no edge."""
        return self._pairwise_rows[self.base.idx(y)].get(self.base.idx(x), 0)


class ProjectionKernel(EdgeWeights):
    """Projection weights q(e); ``q.pairwise(x, y)`` is q(x|y)."""

    def __init__(self, base: Damg, weights: Mapping, provenance: str = "explicit"):
        super().__init__(base, weights)
        self.provenance = provenance

    @cached_property
    def normalized(self) -> bool:
        for j, edges in enumerate(self.base.in_edges):
            if edges and sum(self._w[e.id] for e in edges) != 1:
                return False
        return True

    def unnormalized_vertices(self) -> list[str]:
        return [
            self.base.order[j]
            for j, edges in enumerate(self.base.in_edges)
            if edges and sum(self._w[e.id] for e in edges) != 1
        ]


class RootWeights(Mapping):
    """Root strengths tau; may also carry the extension to all vertices."""

    def __init__(self, base: Damg, values: Mapping):
        missing = [r for r in base.roots if r not in values]
        if missing:
            raise ValueError(f"root weights missing for roots {missing}")
        unknown = [k for k in values if k not in base]
        if unknown:
            raise ValueError(f"root weights given for unknown vertices {unknown}")
        self.base = base
        self._t = {v: _exact(values[v], f"strength of {v!r}") for v in base.order if v in values}

    @classmethod
    def ones(cls, base: Damg):
        return cls(base, dict.fromkeys(base.roots, 1))

    @property
    def is_extended(self) -> bool:
        return len(self._t) == len(self.base.order)

    def on_roots(self) -> dict:
        return {r: self._t[r] for r in self.base.roots}

    def __getitem__(self, v):
        return self._t[v]

    def __iter__(self):
        return iter(self._t)

    def __len__(self):
        return len(self._t)

    def __eq__(self, other):
        if not isinstance(other, RootWeights):
            return NotImplemented
        return self.base == other.base and self._t == other._t

    def __repr__(self):
        return f"RootWeights({self._t!r})"


def extend_root_weights(g: Damg, sigma: EdgeWeights, tau: RootWeights | Mapping) -> RootWeights:
    """Strengths on all of V: tau(y) = sum over parents z of tau(z) * sigma(z, y)."""
    vals = [0] * len(g.order)
    for j, y in enumerate(g.order):
        pm = g.parent_mult[j]
        if not pm:
            vals[j] = tau[y]
        else:
            vals[j] = sum(vals[p] * sigma.pair_by_index(p, j) for p in pm)
    return RootWeights(g, dict(zip(g.order, vals)))


def _total_weights(g: Damg, weight_of: Callable[[int, int], object]) -> PathAlgebraElement:
    """Generic total path weights: 1 on the diagonal, parent recursion elsewhere."""
    rows: list[dict[int, object]] = []
    for j in range(len(g.order)):
        acc: dict[int, object] = {j: 1}
        for p in g.parent_mult[j]:
            wpj = weight_of(p, j)
            if wpj == 0:
                continue
            for i, val in rows[p].items():
                acc[i] = acc.get(i, 0) + val * wpj
        rows.append(acc)
    return PathAlgebraElement(g, rows)


def total_path_weights(g: Damg, sigma: EdgeWeights) -> PathAlgebraElement:
    return _total_weights(g, sigma.pair_by_index)


def kernel_total_weights(g: Damg, q: ProjectionKernel) -> PathAlgebraElement:
    """s(x|y): accumulated kernel weight over all directed paths x -> y."""
    return _total_weights(g, q.pair_by_index)


def path_uniform_kernel(g: Damg) -> ProjectionKernel:
    """q(x -e-> y) = pi(x) / pi(y)."""
    tot = root_path_totals(g)
    q = {e.id: normalize(Fraction(tot[e.tail], tot[e.head])) for e in g.edges}
    return ProjectionKernel(g, q, provenance="path-uniform")


def edge_uniform_kernel(g: Damg) -> ProjectionKernel:
    """q(x -e-> y) = 1 / |E(y)|."""
    q = {e.id: normalize(Fraction(1, g.in_degree(e.head))) for e in g.edges}
    return ProjectionKernel(g, q, provenance="edge-uniform")


def induced_kernel(
    g: Damg, sigma: EdgeWeights | None = None, tau: RootWeights | Mapping | None = None
) -> ProjectionKernel:
    """q(x -e-> y) = tau(x) / tau(y) * sigma(e), with tau extended from the roots."""
    sigma = EdgeWeights.ones(g) if sigma is None else sigma
    tau = RootWeights.ones(g) if tau is None else tau
    strength = extend_root_weights(g, sigma, tau)
    q = {}
    for e in g.edges:
        th = strength[e.head]
        if th == 0:
            raise ZeroStrengthError(e.head)
        q[e.id] = normalize(Fraction(strength[e.tail]) / th * sigma[e.id])
    return ProjectionKernel(g, q, provenance="induced")


def _check_bijection(mapping: Mapping, domain, what: str):
    domain = set(domain)
    if set(mapping) != domain:
        raise NotABijectionError(f"{what} map is not total on its domain")
    if set(mapping.values()) != domain:
        raise NotABijectionError(f"{what} map is not a bijection")


def verify_automorphism(
    g: Damg,
    alpha_v: Mapping[str, str],
    alpha_e: Mapping[str, str],
    sigma: EdgeWeights | None = None,
    tau: RootWeights | Mapping | None = None,
    q: ProjectionKernel | None = None,
) -> bool:
    """Check that (alpha_v, alpha_e) commutes with endpoints and preserves the supplied weights."""
    _check_bijection(alpha_v, g.order, "vertex")
    _check_bijection(alpha_e, g.edge_by_id, "edge")
    for e in g.edges:
        img = g.edge_by_id[alpha_e[e.id]]
        if img.tail != alpha_v[e.tail] or img.head != alpha_v[e.head]:
            return False
        if sigma is not None and sigma[img.id] != sigma[e.id]:
            return False
        if q is not None and q[img.id] != q[e.id]:
            return False
    if tau is not None:
        for r in g.roots:
            if tau[alpha_v[r]] != tau[r]:
                return False
    return True

"""Shapley values on projectable DAMGs, plus two brute-force oracles."""

from __future__ import annotations

import itertools
import math
from collections.abc import Mapping
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import ValueFunction, moebius_transform
from .errors import (
    BaseMismatchError,
    ChainExplosionError,
    KernelNotNormalizedError,
    MixedScalarError,
    OracleDisagreementError,
    TooManyPlayersError,
    ZeroStrengthError,
)
from .graph import Damg, iter_bits, root_path_totals
from .scalars import FLOAT, Vector, is_zero, normalize, zero
from .weights import (
    EdgeWeights,
    ProjectionKernel,
    RootWeights,
    extend_root_weights,
    kernel_total_weights,
)

ENGINES = (
    "total-weights",
    "recursive-projection",
    "path-uniform",
    "weighted",
    "classic-oracle",
    "chain-comparator",
)

MAX_ORACLE_PLAYERS = 10
DEFAULT_CHAIN_CAP = 100_000


@dataclass
class Attribution:
    base: Damg
    per_root: dict
    engine: str
    kernel_provenance: str = ""
    meta: dict = field(default_factory=dict, compare=False)

    def __getitem__(self, root):
        return self.per_root[root]

    def total(self):
        return sum(self.per_root.values(), 0)


def _check_inputs(g: Damg, v: ValueFunction, q: ProjectionKernel | None = None):
    if v.base != g:
        raise BaseMismatchError("value function lives on a different graph")
    if q is not None:
        if q.base != g:
            raise BaseMismatchError("kernel lives on a different graph")
        if not q.normalized:
            raise KernelNotNormalizedError(
                f"kernel weights into {q.unnormalized_vertices()} do not sum to 1"
            )
    if v.kind == FLOAT:
        raise MixedScalarError("engines use exact kernels; convert float values with to_exact() first")


def _clean(x):
    if isinstance(x, tuple):
        return type(x)(normalize(c) for c in x)
    return normalize(x)


def _result(g, acc, engine, provenance):
    per_root = {r: _clean(acc[g.index[r]]) for r in g.roots}
    return Attribution(g, per_root, engine, provenance)


def shapley_total_weights(g: Damg, q: ProjectionKernel, v: ValueFunction) -> Attribution:
    """Sh_r = sum over y of s(r|y) w(y)."""
    _check_inputs(g, v, q)
    w = moebius_transform(v)
    s = kernel_total_weights(g, q)
    roots = g.root_bits
    acc = {g.index[r]: zero(v.dimension) for r in g.roots}
    for j in range(len(g.order)):
        wj = w.at(j)
        if is_zero(wj):
            continue
        for i, coef in s.row_items(j):
            if roots >> i & 1:
                acc[i] = acc[i] + coef * wj
    return _result(g, acc, "total-weights", q.provenance)


def shapley_recursive(g: Damg, q: ProjectionKernel, v: ValueFunction) -> Attribution:
    """Project away non-roots last-to-first; each hands its synergy to its parents.

    A vertex removed in reverse topological order has no children left, so no
    composite edges ever arise and one pass over the in-edges suffices.
    """
    _check_inputs(g, v, q)
    w = moebius_transform(v)
    pi = _potential_of(g, q)
    if pi is not None:
        return _result(g, _potential_handoff(g, pi, w), "recursive-projection", q.provenance)
    acc = w.as_list()
    for j in range(len(g.order) - 1, -1, -1):
        edges = g.in_edges[j]
        if not edges or is_zero(acc[j]):
            continue
        wj = acc[j]
        for e in edges:
            p = g.index[e.tail]
            acc[p] = acc[p] + q[e.id] * wj
    return _result(g, acc, "recursive-projection", q.provenance)


def _potential_of(g: Damg, q: ProjectionKernel) -> list[int] | None:
    """Root path totals pi if q(x -> y) = pi(x) / pi(y) on every edge, else None."""
    totals = root_path_totals(g)
    pi = [totals[y] for y in g.order]
    for e in g.edges:
        if q[e.id] != Fraction(pi[g.index[e.tail]], pi[g.index[e.head]]):
            return None
    return pi


def _potential_handoff(g: Damg, pi: list[int], w: ValueFunction) -> dict:
    """The recursive handoff for a path-uniform kernel, in integers.

    With B(y) = acc(y) / pi(y) the handoff reads B(x) += B(y) per edge, so a
    single common denominator D keeps every intermediate an integer and
    avoids a gcd per edge on ever-growing denominators.
    """
    vals = w.as_list()
    dim = w.dimension
    comps = [vals] if dim is None else [[x[c] for x in vals] for c in range(dim)]
    roots = [g.index[r] for r in g.roots]
    out = []
    for comp in comps:
        comp = [Fraction(x) for x in comp]
        den = 1
        for j, x in enumerate(comp):
            if x:
                d = pi[j] * x.denominator
                den = den * d // math.gcd(den, d)
        b = [0] * len(comp)
        for j in range(len(comp) - 1, -1, -1):
            x = comp[j]
            bj = b[j] + (x.numerator * (den // (pi[j] * x.denominator)) if x else 0)
            b[j] = bj
            if bj:
                for p, m in g.parent_mult[j].items():
                    b[p] += m * bj
        # roots have pi = 1
        out.append({i: Fraction(b[i], den) for i in roots})
    if dim is None:
        return out[0]
    return {i: Vector(col[i] for col in out) for i in roots}


def _root_columns(g: Damg, r: str, pair_weight):
    """Forward pass over Desc(r) of the total path weight from r."""
    ri = g.index[r]
    col = {ri: 1}
    for j in iter_bits(g.desc_bits[ri] & ~(1 << ri)):
        tot = 0
        for p in g.parent_mult[j]:
            c = col.get(p)
            if c:
                tot += c * pair_weight(p, j)
        col[j] = tot
    return col


def shapley_path_uniform(g: Damg, v: ValueFunction) -> Attribution:
    """Sh_r = sum over y of pi(r, y) / pi(y) * w(y), without building a kernel."""
    _check_inputs(g, v)
    w = moebius_transform(v)
    totals = root_path_totals(g)
    pi_y = [totals[y] for y in g.order]
    acc = {}
    for r in g.roots:
        col = _root_columns(g, r, lambda p, j: g.parent_mult[j][p])
        out = zero(v.dimension)
        for j, count in col.items():
            wj = w.at(j)
            if count and not is_zero(wj):
                out = out + Fraction(count, pi_y[j]) * wj
        acc[g.index[r]] = out
    return _result(g, acc, "path-uniform", "path-uniform")


def shapley_weighted(g: Damg, sigma: EdgeWeights | None, tau: RootWeights | Mapping | None,
                     v: ValueFunction) -> Attribution:
    """Sh_r = sum over y of tau(r) / tau(y) * sigma(r, y) * w(y)."""
    _check_inputs(g, v)
    sigma = EdgeWeights.ones(g) if sigma is None else sigma
    tau = RootWeights.ones(g) if tau is None else tau
    strength = extend_root_weights(g, sigma, tau)
    tau_y = [strength[y] for y in g.order]
    for j, y in enumerate(g.order):
        if g.parent_mult[j] and tau_y[j] == 0:
            raise ZeroStrengthError(y)
    w = moebius_transform(v)
    acc = {}
    for r in g.roots:
        ri = g.index[r]
        col = _root_columns(g, r, sigma.pair_by_index)
        out = zero(v.dimension)
        for j, sig in col.items():
            wj = w.at(j)
            if is_zero(wj):
                continue
            coef = 1 if j == ri else Fraction(tau_y[ri]) * sig / tau_y[j]
            if coef:
                out = out + coef * wj
        acc[ri] = out
    return _result(g, acc, "weighted", "induced")


# -- oracles -------------------------------------------------------------


def _subset_label(members) -> str:
    return "|".join(sorted(members))


def classic_shapley_oracle(n: int, v: ValueFunction) -> Attribution:
    """Shapley values of a game on the non-empty subsets of n players.

    Vertex labels name subsets as ``"a|b|c"``; the graph structure is not used.
    Two independent formulas are evaluated and must agree exactly: the subset
    synergy form and the average of marginal contributions over orderings.
    """
    if n > MAX_ORACLE_PLAYERS:
        raise TooManyPlayersError(f"{n} players exceeds the oracle limit of {MAX_ORACLE_PLAYERS}")
    g = v.base
    players = sorted(x for x in g.order if "|" not in x)
    if len(players) != n or len(g.order) != 2**n - 1:
        raise ValueError(f"value function is not defined on the non-empty subsets of {n} players")
    _check_inputs(g, v)
    dim = v.dimension

    def value(mask):
        if not mask:
            return zero(dim)
        return v[_subset_label(players[i] for i in range(n) if mask >> i & 1)]

    full = (1 << n) - 1
    # synergy by inclusion-exclusion over subsets
    synergy_form = [zero(dim) for _ in range(n)]
    for y in range(1, full + 1):
        size = y.bit_count()
        wy = zero(dim)
        t = y
        while True:
            if t:
                term = value(t)
                wy = wy - term if (size - t.bit_count()) % 2 else wy + term
            if t == 0:
                break
            t = (t - 1) & y
        if is_zero(wy):
            continue
        share = Fraction(1, size) * wy
        for i in range(n):
            if y >> i & 1:
                synergy_form[i] = synergy_form[i] + share

    perm_form = [zero(dim) for _ in range(n)]
    for perm in itertools.permutations(range(n)):
        mask = 0
        prev = zero(dim)
        for i in perm:
            mask |= 1 << i
            cur = value(mask)
            perm_form[i] = perm_form[i] + (cur - prev)
            prev = cur
    scale = Fraction(1, math.factorial(n))
    perm_form = [scale * x for x in perm_form]

    a = [_clean(x) for x in synergy_form]
    b = [_clean(x) for x in perm_form]
    if a != b:
        raise OracleDisagreementError(f"synergy form {a} differs from permutation form {b}")
    return Attribution(g, dict(zip(players, a)), "classic-oracle", "subsets")


def chain_shapley_comparator(g: Damg, v: ValueFunction, cap: int = DEFAULT_CHAIN_CAP) -> Attribution:
    """Average marginal contribution of each root over all maximal chains.

    A virtual bottom with value 0 sits below every root, so a maximal chain is
    a root-to-leaf path of the underlying DAG. Each vertex stands for the set
    of roots below it. For root i, S is the first chain element containing i
    and T its predecessor; i receives (v(S) - v(T)) / |roots(S) minus roots(T)|.
    """
    _check_inputs(g, v)
    n = len(g.order)
    count = [0] * n
    for j in range(n - 1, -1, -1):
        ch = g.child_mult[j]
        count[j] = sum(count[c] for c in ch) if ch else 1
        if count[j] > cap:
            break
    total = sum(count[g.index[r]] for r in g.roots)
    if total > cap:
        raise ChainExplosionError(f"more than {cap} maximal chains")

    rootset = [g.anc_bits[j] & g.root_bits for j in range(n)]
    root_idx = [g.index[r] for r in g.roots]
    acc = {i: zero(v.dimension) for i in root_idx}
    vals = v.as_list()

    def visit(chain):
        for i in root_idx:
            prev_set, prev_val = 0, zero(v.dimension)
            for j in chain:
                if rootset[j] >> i & 1:
                    gained = (rootset[j] & ~prev_set).bit_count()
                    acc[i] = acc[i] + Fraction(1, gained) * (vals[j] - prev_val)
                    break
                prev_set, prev_val = rootset[j], vals[j]

    for start in root_idx:
        chain = [start]
        stack = [iter(sorted(g.child_mult[start]))]
        if not g.child_mult[start]:
            visit(chain)
        while stack:
            nxt = next(stack[-1], None)
            if nxt is None:
                stack.pop()
                chain.pop()
                continue
            chain.append(nxt)
            if g.child_mult[nxt]:
                stack.append(iter(sorted(g.child_mult[nxt])))
            else:
                visit(chain)
                chain.pop()
    scale = Fraction(1, total) if total else 0
    return _result(g, {i: scale * x for i, x in acc.items()}, "chain-comparator", "maximal chains")

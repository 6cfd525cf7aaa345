"""Standard mereologies: power sets, Hasse diagrams, lattices, coalitions, Ising games."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .algebra import ValueFunction
from .errors import NoUniqueBottomError, NotACoverRelationError, TooLargeError
from .graph import Damg, build_damg

MAX_POWER_SET = 20
MAX_SPINS = 15
SUBSET_SEP = "|"


@dataclass
class PosetSpec:
    elements: list[str]
    cover_pairs: list[tuple[str, str]]
    bottom: str | None = None


@dataclass
class CoalitionPartition:
    players: list[str]
    blocks: list[frozenset[str]]

    def __post_init__(self):
        self.blocks = [frozenset(b) for b in self.blocks]
        seen: set[str] = set()
        for b in self.blocks:
            if not b:
                raise ValueError("coalition blocks must be non-empty")
            if seen & b:
                raise ValueError(f"blocks overlap on {sorted(seen & b)}")
            seen |= b
        if seen != set(self.players):
            raise ValueError("blocks do not cover exactly the players")


@dataclass
class IsingSpec:
    spins: list[str]
    interactions: Mapping = field(default_factory=dict)
    beta: object = 1

    def __post_init__(self):
        spins = set(self.spins)
        clean = {}
        for key, val in self.interactions.items():
            t = frozenset([key] if isinstance(key, str) else key)
            if not t:
                raise ValueError("interaction subsets must be non-empty")
            if not t <= spins:
                raise ValueError(f"interaction {sorted(t)} mentions unknown spins")
            clean[t] = clean.get(t, 0) + val
        self.interactions = clean


def subset_label(members: Iterable[str]) -> str:
    return SUBSET_SEP.join(sorted(members))


def _check_labels(labels: Iterable[str]):
    for x in labels:
        if SUBSET_SEP in x:
            raise ValueError(f"label {x!r} contains the reserved separator '|'")


def _boolean_damg(units: list[tuple[str, frozenset[str]]]) -> Damg:
    """Non-empty unions of the given disjoint units, ordered by one-unit inclusions."""
    k = len(units)
    if k > MAX_POWER_SET:
        raise TooLargeError(f"{k} generators would give 2^{k} - 1 vertices (limit {MAX_POWER_SET})")
    names = {}
    for mask in range(1, 1 << k):
        members = set()
        for i in range(k):
            if mask >> i & 1:
                members |= units[i][1]
        names[mask] = subset_label(members)
    edges = []
    for mask in range(1, 1 << k):
        for i in range(k):
            if not mask >> i & 1:
                sup = mask | 1 << i
                edges.append((f"{names[mask]}->{names[sup]}", names[mask], names[sup]))
    return build_damg(names.values(), edges)


def power_set_damg(players: Iterable[str]) -> Damg:
    """Non-empty subsets of ``players`` under one-element inclusions."""
    players = sorted(players)
    _check_labels(players)
    if not players:
        raise ValueError("at least one player is required")
    if len(set(players)) != len(players):
        raise ValueError("player labels must be unique")
    return _boolean_damg([(p, frozenset([p])) for p in players])


def hasse_damg(spec: PosetSpec) -> Damg:
    edges = [(f"{lo}<{hi}", lo, hi) for lo, hi in spec.cover_pairs]
    g = build_damg(spec.elements, edges)
    for lo, hi in spec.cover_pairs:
        j, i = g.index[hi], g.index[lo]
        for p in g.parent_mult[j]:
            if p != i and g.anc_bits[p] >> i & 1:
                raise NotACoverRelationError((lo, hi))
    return g


def lattice_damg(spec: PosetSpec, bottom: str | None = None) -> Damg:
    """Hasse diagram with the unique minimum removed; atoms become roots."""
    g = hasse_damg(spec)
    bottom = bottom if bottom is not None else spec.bottom
    if len(g.roots) != 1 or (bottom is not None and g.roots[0] != bottom):
        raise NoUniqueBottomError(f"minimal elements are {list(g.roots)}, expected a single bottom")
    bot = g.roots[0]
    return build_damg(
        [v for v in g.order if v != bot],
        [e for e in g.edges if e.tail != bot],
    )


def coalition_damg(part: CoalitionPartition) -> Damg:
    """Unions of coalition blocks, named by their sorted members."""
    _check_labels(part.players)
    units = sorted((subset_label(b), b) for b in part.blocks)
    return _boolean_damg(units)


def ising_game(spec: IsingSpec) -> tuple[Damg, ValueFunction]:
    """v(y) = beta * energy of the configuration with spins in y set to 1, others 0."""
    if len(spec.spins) > MAX_SPINS:
        raise TooLargeError(f"{len(spec.spins)} spins exceeds the limit of {MAX_SPINS}")
    g = power_set_damg(spec.spins)
    beta = Fraction(spec.beta)
    values = {}
    for y in g.order:
        members = frozenset(y.split(SUBSET_SEP))
        values[y] = beta * sum((j for t, j in spec.interactions.items() if t <= members), Fraction(0))
    return g, ValueFunction(g, values)

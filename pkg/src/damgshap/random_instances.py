"""Seeded random DAMGs, weights and games for property tests and scripts."""

from __future__ import annotations

import random
from fractions import Fraction

from .algebra import ValueFunction
from .builders import power_set_damg
from .graph import Damg, build_damg
from .scalars import Vector
from .weights import EdgeWeights, RootWeights


def random_rational(rng: random.Random, span: int = 5, max_den: int = 4) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, max_den))


def random_positive(rng: random.Random, span: int = 4, max_den: int = 3) -> Fraction:
    return Fraction(rng.randint(1, span), rng.randint(1, max_den))


def random_damg(rng: random.Random, n: int | None = None, *, max_vertices: int = 15,
                max_parents: int = 3, max_mult: int = 3, p_parallel: float = 0.2) -> Damg:
    """Random DAMG; each vertex draws a few parents among earlier vertices.

    Labels are shuffled so the stored topological order differs from the
    generation order.
    """
    n = n if n is not None else rng.randint(1, max_vertices)
    labels = [f"v{i}" for i in range(n)]
    rng.shuffle(labels)
    edges = []
    for j in range(1, n):
        if rng.random() < 0.25:
            continue  # another root
        k = rng.randint(1, min(max_parents, j))
        for p in rng.sample(range(j), k):
            mult = rng.randint(2, max_mult) if rng.random() < p_parallel else 1
            for _ in range(mult):
                edges.append((f"e{len(edges)}", labels[p], labels[j]))
    return build_damg(labels, edges)


def random_flat_damg(rng: random.Random, n_roots: int | None = None, n_leaves: int | None = None,
                     max_mult: int = 3) -> Damg:
    """Hierarchically flat: every vertex is a root or a leaf."""
    n_roots = n_roots if n_roots is not None else rng.randint(1, 5)
    n_leaves = n_leaves if n_leaves is not None else rng.randint(1, 6)
    roots = [f"r{i}" for i in range(n_roots)]
    leaves = [f"l{i}" for i in range(n_leaves)]
    edges = []
    for y in leaves:
        for r in roots:
            if rng.random() < 0.5:
                for _ in range(rng.randint(1, max_mult)):
                    edges.append((f"e{len(edges)}", r, y))
    return build_damg(roots + leaves, edges)


def random_value_function(rng: random.Random, g: Damg, dimension: int | None = None,
                          p_zero: float = 0.0) -> ValueFunction:
    def draw():
        return 0 if rng.random() < p_zero else random_rational(rng)

    if dimension is None:
        values = {v: draw() for v in g.order}
    else:
        values = {v: Vector(draw() for _ in range(dimension)) for v in g.order}
    return ValueFunction(g, values)


def random_synergy_game(rng: random.Random, g: Damg, p_zero: float = 0.4,
                        dimension: int | None = None) -> ValueFunction:
    """A synergy function with many exact zeros, so weak and null elements occur."""
    return random_value_function(rng, g, dimension, p_zero)


def random_edge_weights(rng: random.Random, g: Damg) -> EdgeWeights:
    return EdgeWeights(g, {e.id: random_positive(rng) for e in g.edges})


def random_root_weights(rng: random.Random, g: Damg) -> RootWeights:
    return RootWeights(g, {r: random_positive(rng) for r in g.roots})


def random_power_set_game(rng: random.Random, n: int) -> ValueFunction:
    g = power_set_damg([chr(ord("a") + i) for i in range(n)])
    return random_value_function(rng, g)


def layered_damg(rng: random.Random, n_vertices: int, n_roots: int, width: int,
                 max_parents: int = 3) -> Damg:
    """Layers of ``width`` vertices, each with parents in the previous layer only."""
    labels = [f"x{i}" for i in range(n_vertices)]
    edges = []
    prev = list(range(n_roots))
    i = n_roots
    while i < n_vertices:
        layer = list(range(i, min(i + width, n_vertices)))
        for j in layer:
            for p in rng.sample(prev, min(len(prev), rng.randint(1, max_parents))):
                edges.append((f"e{len(edges)}", labels[p], labels[j]))
        prev = layer
        i += width
    return build_damg(labels, edges)


def chain_damg(n: int) -> Damg:
    labels = [f"c{i:05d}" for i in range(n)]
    return build_damg(labels, [(f"e{i}", labels[i], labels[i + 1]) for i in range(n - 1)])

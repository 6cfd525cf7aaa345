"""Worked instances with their known answers, shared by the CLI and scripts.

Each demo returns a list of :class:`Check` rows; a demo passes when every
row does.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .algebra import ValueFunction, moebius_function, moebius_transform, unanimity
from .builders import CoalitionPartition, IsingSpec, PosetSpec, coalition_damg, hasse_damg, ising_game
from .errors import UnknownDemoError
from .graph import Damg, build_damg, root_path_totals
from .projection import drop_weak
from .random_instances import random_power_set_game
from .shapley import (
    chain_shapley_comparator,
    classic_shapley_oracle,
    shapley_path_uniform,
    shapley_recursive,
    shapley_total_weights,
    shapley_weighted,
)
from .weights import ProjectionKernel, RootWeights, path_uniform_kernel


@dataclass
class Check:
    name: str
    got: object
    expected: object

    @property
    def passed(self) -> bool:
        return self.got == self.expected


def figure1_graph() -> tuple[Damg, ValueFunction]:
    edges = [
        ("ad", "a", "d"), ("bd", "b", "d"), ("be", "b", "e"), ("ce", "c", "e"),
        ("df", "d", "f"), ("dg", "d", "g"), ("eg", "e", "g"), ("eh", "e", "h"),
    ]
    g = build_damg("abcdefgh", edges)
    v = ValueFunction(g, dict(zip("abcdefgh", [1, 2, 3, 3, 5, 5, 14, 9])))
    return g, v


def reverse_tree() -> tuple[Damg, ValueFunction]:
    g = build_damg("abcde", [("ad", "a", "d"), ("bd", "b", "d"), ("de", "d", "e"), ("ce", "c", "e")])
    return g, ValueFunction(g, dict(zip("abcde", [1, 1, 1, 2, 7])))


def poset_game() -> tuple[Damg, ValueFunction]:
    spec = PosetSpec(list("abcd"), [("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")])
    g = hasse_damg(spec)
    return g, ValueFunction(g, dict(a=2, b=1, c=4, d=5))


def ising_spec(j_bcd, beta=1) -> IsingSpec:
    return IsingSpec(
        spins=list("abcd"),
        interactions={("a", "b"): 1, ("a", "c"): 1, ("a", "d"): 1, ("b", "c", "d"): Fraction(j_bcd)},
        beta=beta,
    )


def demo_figure1() -> list[Check]:
    g, v = figure1_graph()
    w = moebius_transform(v)
    sh = shapley_recursive(g, path_uniform_kernel(g), v)
    tw = shapley_total_weights(g, path_uniform_kernel(g), v)
    totals = root_path_totals(g)
    rows = [
        Check("synergy", [w[x] for x in "abcdefgh"], [1, 2, 3, 0, 0, 2, 8, 4]),
        Check("pi(g), pi(f), pi(h)", [totals["g"], totals["f"], totals["h"]], [4, 2, 2]),
        Check("Sh_a", sh["a"], 4),
        Check("Sh_b", sh["b"], 9),
        Check("Sh_c", sh["c"], 7),
        Check("recursive = total-weights", sh.per_root, tw.per_root),
        Check("efficiency", sh.total(), w.total()),
    ]
    q = path_uniform_kernel(g)
    h2, q2, v2 = drop_weak(g, q, v, ["d", "e"])
    rows.append(Check("parallel b->g edges after removing d, e", h2.multiplicity("b", "g"), 2))
    rows.append(Check("Sh after dropping weak {d,e}", shapley_recursive(h2, q2, v2).per_root, sh.per_root))
    return rows


def demo_reverse_tree() -> list[Check]:
    g, v = reverse_tree()
    third = Fraction(1, 3)
    custom = ProjectionKernel(g, {"ad": Fraction(1, 2), "bd": Fraction(1, 2), "de": third, "ce": 2 * third})
    expected_chain = {"a": Fraction(5, 3), "b": Fraction(5, 3), "c": Fraction(11, 3)}
    return [
        Check("synergy", [moebius_transform(v)[x] for x in "abcde"], [1, 1, 1, 0, 4]),
        Check("path-uniform Sh", shapley_path_uniform(g, v).per_root, dict.fromkeys("abc", Fraction(7, 3))),
        Check("chain comparator", chain_shapley_comparator(g, v).per_root, expected_chain),
        Check("custom kernel reproduces comparator", shapley_total_weights(g, custom, v).per_root, expected_chain),
    ]


def demo_poset_game() -> list[Check]:
    g, v = poset_game()
    mu = moebius_function(g)
    return [
        Check("mu on covers", [mu[x, y] for x, y in ("ac", "ad", "bc", "bd")], [-1] * 4),
        Check("Sh", shapley_path_uniform(g, v).per_root, {"a": Fraction(7, 2), "b": Fraction(5, 2)}),
    ]


def ising_sweep(values=range(7), beta=1) -> list[tuple]:
    """(J_bcd, Sh_a, Sh_d, Sh_a / Sh_d) for each J_bcd."""
    out = []
    for x in values:
        g, v = ising_game(ising_spec(x, beta))
        sh = shapley_path_uniform(g, v)
        ratio = Fraction(sh["a"]) / sh["d"] if sh["d"] else None
        out.append((Fraction(x), sh["a"], sh["d"], ratio))
    return out


def demo_ising() -> list[Check]:
    rows = []
    sweep = ising_sweep()
    for x, sa, sd, ratio in sweep:
        label = f"J_bcd={x}: Sh_a, Sh_d (ratio {ratio})"
        rows.append(Check(label, (sa, sd), (Fraction(3, 2), Fraction(1, 2) + x / 3)))
    above = [x for x, _, _, r in sweep if r is not None and r > 1]
    below = [x for x, _, _, r in sweep if r is not None and r < 1]
    equal = [x for x, _, _, r in sweep if r == 1]
    rows.append(Check("crossing Sh_a = Sh_d", equal, [3]))
    rows.append(Check("Sh_a > Sh_d below, < above", (max(above) < 3, min(below) > 3), (True, True)))
    g, v = ising_game(ising_spec(5, beta=0))
    rows.append(Check("beta = 0", set(shapley_path_uniform(g, v).per_root.values()), {0}))
    return rows


def coalition_coefficients(g: Damg, tau) -> dict:
    """Sh_r of each unanimity game: the coefficient of w(y) in Sh_r."""
    out = {}
    for y in g.order:
        sh = shapley_weighted(g, None, tau, unanimity(g, y))
        out[y] = sh.per_root
    return out


def _size(label: str) -> int:
    return len(label.split("|"))


def demo_coalition() -> list[Check]:
    part = CoalitionPartition(list("abcde"), [{"a", "b"}, {"c"}, {"d"}, {"e"}])
    g = coalition_damg(part)
    r1 = "a|b"
    rows = []
    ones = coalition_coefficients(g, RootWeights.ones(g))
    got = {y: ones[y][r1] for y in g.order if set(r1.split("|")) <= set(y.split("|"))}
    want = {y: Fraction(1, _size(y) - 2 + 1) for y in got}
    rows.append(Check("tau = 1: coefficient of r1", got, want))
    sized = RootWeights(g, {r: _size(r) for r in g.roots})
    coef = coalition_coefficients(g, sized)
    got = {(r, y): coef[y][r] for y in g.order for r in g.roots if g.is_ancestor(r, y)}
    want = {(r, y): Fraction(_size(r), _size(y)) for r, y in got}
    rows.append(Check("tau = |r|: coefficients |r|/|y|", got, want))
    return rows


def demo_classic(seed: int = 4) -> list[Check]:
    rng = random.Random(seed)
    v = random_power_set_game(rng, 4)
    oracle = classic_shapley_oracle(4, v)
    return [Check("path-uniform = classic oracle (n=4)", shapley_path_uniform(v.base, v).per_root, oracle.per_root)]


DEMOS = {
    "figure1": demo_figure1,
    "reverse-tree": demo_reverse_tree,
    "poset-game": demo_poset_game,
    "ising": demo_ising,
    "coalition": demo_coalition,
    "classic": demo_classic,
}


def run_demo(name: str) -> list[Check]:
    try:
        fn = DEMOS[name]
    except KeyError:
        raise UnknownDemoError(f"unknown demo {name!r}; choose from {sorted(DEMOS)}") from None
    return fn()

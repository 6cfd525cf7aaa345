"""Acceptance gate: one test per criterion, each recording a PASS/FAIL line.

Run ``pytest tests/test_acceptance.py -v``; the summary section at the end of
the run lists every criterion with its runtime.
"""

import random
import time
from fractions import Fraction as F

import pytest
from conftest import record

import damgshap.shapley as shapley_mod
import damgshap.weights as weights_mod
from damgshap.algebra import (
    PathAlgebraElement,
    inverse_moebius,
    moebius_function,
    moebius_transform,
    unanimity,
)
from damgshap.builders import CoalitionPartition, coalition_damg, ising_game
from damgshap.demos import coalition_coefficients, figure1_graph, ising_spec, poset_game, reverse_tree
from damgshap.graph import path_counts
from damgshap.projection import (
    drop_weak,
    is_admissible,
    null_elements,
    project_edge_weights,
    project_subset,
    weak_elements,
)
from damgshap.random_instances import (
    chain_damg,
    layered_damg,
    random_damg,
    random_edge_weights,
    random_flat_damg,
    random_power_set_game,
    random_rational,
    random_root_weights,
    random_synergy_game,
    random_value_function,
)
from damgshap.scalars import Vector, is_zero
from damgshap.shapley import (
    chain_shapley_comparator,
    classic_shapley_oracle,
    shapley_path_uniform,
    shapley_recursive,
    shapley_total_weights,
    shapley_weighted,
)
from damgshap.weights import (
    ProjectionKernel,
    RootWeights,
    extend_root_weights,
    induced_kernel,
    kernel_total_weights,
    path_uniform_kernel,
)


def test_criterion_1_figure1():
    t0 = time.perf_counter()
    g, v = figure1_graph()
    w = moebius_transform(v)
    q = path_uniform_kernel(g)
    sh = shapley_path_uniform(g, v)
    tw = shapley_total_weights(g, q, v)
    elapsed = time.perf_counter() - t0
    ok = (
        [w[x] for x in "abcdefgh"] == [1, 2, 3, 0, 0, 2, 8, 4]
        and sh["b"] == 9
        and tw.per_root == {"a": 4, "b": 9, "c": 7} == sh.per_root
        and sh.total() == 20 == w.total()
        and elapsed < 1
    )
    assert record(1, "Figure-1 regression", ok, elapsed, f"Sh={sh.per_root}")


def test_criterion_2_reverse_tree():
    t0 = time.perf_counter()
    g, v = reverse_tree()
    sh = shapley_path_uniform(g, v).per_root
    chain = chain_shapley_comparator(g, v).per_root
    custom = ProjectionKernel(g, {"ad": F(1, 2), "bd": F(1, 2), "de": F(1, 3), "ce": F(2, 3)})
    via_kernel = shapley_total_weights(g, custom, v).per_root
    expected_chain = {"a": F(5, 3), "b": F(5, 3), "c": F(11, 3)}
    ok = sh == dict.fromkeys("abc", F(7, 3)) and chain == expected_chain and via_kernel == expected_chain
    assert record(2, "reverse-tree regression", ok, time.perf_counter() - t0)


def test_criterion_3_poset_game():
    t0 = time.perf_counter()
    g, v = poset_game()
    mu = moebius_function(g)
    ok = (
        all(mu[x, y] == -1 for x, y in ("ac", "ad", "bc", "bd"))
        and shapley_path_uniform(g, v).per_root == {"a": F(7, 2), "b": F(5, 2)}
    )
    assert record(3, "poset-game regression", ok, time.perf_counter() - t0)


def test_criterion_4_classic_recovery():
    rng = random.Random(20240401)
    t0 = time.perf_counter()
    bad = []
    for k in range(200):
        n = 2 + k % 4
        v = random_power_set_game(rng, n)
        # the oracle raises unless its synergy and permutation forms agree
        if shapley_path_uniform(v.base, v).per_root != classic_shapley_oracle(n, v).per_root:
            bad.append(k)
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 30
    assert record(4, "classic recovery, 200 games, n=2..5", ok, elapsed, f"mismatches={bad}")


def test_criterion_5_coalitions():
    t0 = time.perf_counter()
    g = coalition_damg(CoalitionPartition(list("abcde"), [{"a", "b"}, {"c"}, {"d"}, {"e"}]))
    size = {x: len(x.split("|")) for x in g.order}
    r1 = "a|b"
    ones = coalition_coefficients(g, RootWeights.ones(g))
    first = all(
        ones[y][r1] == F(1, size[y] - size[r1] + 1)
        for y in g.order
        if set(r1.split("|")) <= set(y.split("|"))
    )
    sized = coalition_coefficients(g, RootWeights(g, {r: size[r] for r in g.roots}))
    second = all(
        sized[y][r] == (F(size[r], size[y]) if g.is_ancestor(r, y) else 0)
        for y in g.order
        for r in g.roots
    )
    assert record(5, "coalition recovery", first and second, time.perf_counter() - t0)


def test_criterion_6_ising():
    t0 = time.perf_counter()
    grid = [F(k, 4) for k in range(25)]
    equal = []
    for j in grid:
        g, v = ising_game(ising_spec(j))
        sh = shapley_path_uniform(g, v)
        if sh["a"] == sh["d"]:
            equal.append(j)
    g, v = ising_game(ising_spec(5, beta=0))
    cold = set(shapley_path_uniform(g, v).per_root.values()) == {0}
    ok = equal == [3] and cold
    assert record(6, "Ising crossing at J_bcd = 3", ok, time.perf_counter() - t0, f"equal at {[str(x) for x in equal]}")


# -- criterion 7 ---------------------------------------------------------


def _axioms(rng, dimension):
    """All axiom checks for one random instance; returns the names that failed."""
    failed = []
    g = random_damg(rng, max_vertices=15, max_mult=3, p_parallel=0.3)
    v = random_value_function(rng, g, dimension)
    w = moebius_transform(v)
    if inverse_moebius(w) != v or moebius_transform(inverse_moebius(v)) != v:
        failed.append("moebius roundtrip")
    zeta, mu, delta = PathAlgebraElement.zeta(g), moebius_function(g), PathAlgebraElement.delta(g)
    if zeta.convolve(mu) != delta or mu.convolve(zeta) != delta:
        failed.append("zeta*mu = mu*zeta = delta")

    q = path_uniform_kernel(g)
    sh = shapley_recursive(g, q, v)
    if sh.per_root != shapley_total_weights(g, q, v).per_root or sh.per_root != shapley_path_uniform(g, v).per_root:
        failed.append("engine equivalence (path-uniform)")
    sigma, tau = random_edge_weights(rng, g), random_root_weights(rng, g)
    qi = induced_kernel(g, sigma, tau)
    shi = shapley_recursive(g, qi, v)
    if shi.per_root != shapley_total_weights(g, qi, v).per_root or shi.per_root != shapley_weighted(g, sigma, tau, v).per_root:
        failed.append("engine equivalence (induced)")
    if sh.total() != w.total() or shi.total() != w.total():
        failed.append("efficiency")

    vn = inverse_moebius(random_synergy_game(rng, g, p_zero=0.6, dimension=dimension))
    shn = shapley_recursive(g, q, vn)
    if any(not is_zero(shn[r]) for r in null_elements(g, vn) & set(g.roots)):
        failed.append("null roots")

    u1, u2 = random_value_function(rng, g), random_value_function(rng, g)
    c1, c2 = random_rational(rng), random_rational(rng)
    s1, s2 = shapley_recursive(g, q, u1), shapley_recursive(g, q, u2)
    if shapley_recursive(g, q, c1 * u1 + c2 * u2).per_root != {r: c1 * s1[r] + c2 * s2[r] for r in g.roots}:
        failed.append("R-linearity")
    a1, a2 = Vector(random_rational(rng) for _ in range(3)), Vector(random_rational(rng) for _ in range(3))
    if shapley_recursive(g, q, u1 * a1 + u2 * a2).per_root != {r: s1[r] * a1 + s2[r] * a2 for r in g.roots}:
        failed.append("A-linearity")

    S = [x for x in g.order if not g.is_root(x) and rng.random() < 0.5]
    res = project_subset(g, q, w, S)
    if shapley_recursive(res.graph, res.kernel, res.value).per_root != sh.per_root:
        failed.append("projection invariance")

    W = [x for x in weak_elements(g, vn) if not g.is_root(x) and rng.random() < 0.7]
    h, qh, vh = drop_weak(g, q, vn, W)
    if shapley_recursive(h, qh, vh).per_root != shn.per_root:
        failed.append("weak elements")

    flat = random_flat_damg(rng, max_mult=3)
    for y in flat.order:
        shy = shapley_path_uniform(flat, unanimity(flat, y))
        for r in flat.roots:
            want = int(r == y) if flat.is_root(y) else F(flat.multiplicity(r, y), flat.in_degree(y))
            if shy[r] != want:
                failed.append("flat edge-uniformity")
                break
    return failed


def test_criterion_7_axiom_suite():
    rng = random.Random(7)
    t0 = time.perf_counter()
    failures = {}
    for k in range(1000):
        failed = _axioms(rng, None if k % 2 == 0 else 3)
        if failed:
            failures[k] = failed
    elapsed = time.perf_counter() - t0
    ok = not failures and elapsed < 120
    assert record(7, "axiom suite, 1000 instances", ok, elapsed, f"failures={dict(list(failures.items())[:5])}")


# -- criterion 8 ---------------------------------------------------------


def _stability(rng):
    failed = []
    g = random_damg(rng, max_vertices=12, max_mult=3, p_parallel=0.3)
    sigma, tau0 = random_edge_weights(rng, g), random_root_weights(rng, g)
    tau = extend_root_weights(g, sigma, tau0)
    qi = induced_kernel(g, sigma, tau0)
    S = [x for x in g.order if rng.random() < 0.4]

    res = project_subset(g, qi, None, S, sigma=sigma)
    h = res.graph
    pi, _ = path_counts(g)
    pih, _ = path_counts(h)
    if any(h.ancestors(y) != g.ancestors(y) - set(S) for y in h.order):
        failed.append("ancestors")
    if any(pih[x, y] != pi[x, y] for x in h.order for y in h.order):
        failed.append("path counts")
    s, sh = kernel_total_weights(g, qi), kernel_total_weights(h, res.kernel)
    if any(sh[x, y] != s[x, y] for x in h.order for y in h.order):
        failed.append("total path weights")

    # strengths and kernels commute on admissible sets; non-root sets always are
    if not is_admissible(g, S):
        S = [x for x in g.order if not g.is_root(x) and rng.random() < 0.5]
    res = project_subset(g, qi, None, S, sigma=sigma)
    h, sigma_h = res.graph, res.edge_weights
    tau_h = {y: tau[y] for y in h.order}
    if dict(extend_root_weights(h, sigma_h, tau_h)) != tau_h:
        failed.append("strengths")
    if res.kernel != induced_kernel(h, sigma_h, tau_h):
        failed.append("induced kernel")
    if project_edge_weights(g, sigma, S) != (h, sigma_h):
        failed.append("edge weights")
    # path-uniform weights commute with projections that keep every root
    T = [x for x in S if not g.is_root(x)]
    pu = project_subset(g, path_uniform_kernel(g), None, T)
    if pu.kernel != path_uniform_kernel(pu.graph):
        failed.append("path-uniform kernel")

    q = path_uniform_kernel(g)
    w = moebius_transform(random_value_function(rng, g, rng.choice([None, 3])))
    A = [x for x in g.order if rng.random() < 0.3]
    B = [x for x in g.order if x not in A and rng.random() < 0.3]
    together = project_subset(g, q, w, A + B, sigma=sigma)
    first = project_subset(g, q, w, A, sigma=sigma)
    a_then_b = project_subset(first.graph, first.kernel, first.synergy, B, sigma=first.edge_weights)
    shuffled = A + B
    rng.shuffle(shuffled)
    arbitrary = project_subset(g, q, w, A + B, sigma=sigma, order=shuffled)
    for other in (a_then_b, arbitrary):
        for field in ("graph", "kernel", "synergy", "value", "edge_weights"):
            if getattr(other, field) != getattr(together, field):
                failed.append(f"order independence: {field}")
    return failed


def test_criterion_8_projection_stability():
    rng = random.Random(8)
    t0 = time.perf_counter()
    failures = {}
    for k in range(500):
        failed = _stability(rng)
        if failed:
            failures[k] = failed
    ok = not failures
    assert record(8, "projection stability, 500 instances", ok, time.perf_counter() - t0,
                  f"failures={dict(list(failures.items())[:5])}")


# -- criterion 9 ---------------------------------------------------------


def _forbid(*_args, **_kw):
    raise AssertionError("the full total-weights matrix was requested")


@pytest.mark.slow
def test_criterion_9_complexity_smoke(monkeypatch):
    monkeypatch.setattr(weights_mod, "_total_weights", _forbid)
    monkeypatch.setattr(shapley_mod, "kernel_total_weights", _forbid)
    rng = random.Random(9)
    t0 = time.perf_counter()
    details = []
    ok = True
    for name, g in (("chain 10000", chain_damg(10_000)), ("layered 5000/64", layered_damg(rng, 5000, 64, 64))):
        t1 = time.perf_counter()
        v = random_value_function(rng, g)
        w = moebius_transform(v)
        sh = shapley_recursive(g, path_uniform_kernel(g), v)
        ok = ok and sh.total() == w.total() and len(sh.per_root) == len(g.roots)
        details.append(f"{name}: {time.perf_counter() - t1:.2f}s")
    elapsed = time.perf_counter() - t0
    ok = ok and elapsed < 10
    assert record(9, "complexity smoke", ok, elapsed, "; ".join(details))

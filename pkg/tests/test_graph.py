import random

import pytest
from hypothesis import given

from damgshap.errors import (
    CapExceededError,
    CycleError,
    DanglingEndpointError,
    DuplicateIdError,
    ReservedCharacterError,
    UnknownVertexError,
)
from damgshap.graph import (
    build_damg,
    enumerate_paths,
    is_horizontal_subset,
    is_topological_order,
    path_counts,
    relations,
    root_path_totals,
)

from conftest import damg_from_seed, seeds


def test_reverse_tree_roots_and_leaves(rtree):
    g, _ = rtree
    assert g.roots == ("a", "b", "c")
    assert g.leaves == ("e",)


def test_single_vertex():
    g = build_damg(["x"], [])
    assert g.roots == g.leaves == ("x",)
    pi, totals = path_counts(g)
    assert pi["x", "x"] == 1 and totals == {"x": 1}


def test_cycles_rejected():
    with pytest.raises(CycleError) as err:
        build_damg("xy", [("1", "x", "y"), ("2", "y", "x")])
    assert err.value.cycle[0] == err.value.cycle[-1]
    assert set(err.value.cycle) == {"x", "y"}
    with pytest.raises(CycleError):
        build_damg("x", [("1", "x", "x")])


def test_cycle_report_is_a_real_cycle():
    g_edges = [("1", "a", "b"), ("2", "b", "c"), ("3", "c", "d"), ("4", "d", "b"), ("5", "a", "e")]
    with pytest.raises(CycleError) as err:
        build_damg("abcde", g_edges)
    cyc = err.value.cycle
    pairs = {(t, h) for _, t, h in g_edges}
    assert all((cyc[i], cyc[i + 1]) in pairs for i in range(len(cyc) - 1))


def test_validation_errors():
    with pytest.raises(DuplicateIdError):
        build_damg("ab", [("1", "a", "b"), ("1", "a", "b")])
    with pytest.raises(DuplicateIdError):
        build_damg(["a", "a"], [])
    with pytest.raises(DanglingEndpointError):
        build_damg("a", [("1", "a", "z")])
    with pytest.raises(ReservedCharacterError):
        build_damg("ab", [("x*y", "a", "b")])
    assert build_damg("ab", [("x*y", "a", "b")], composite_ids=True).edges[0].id == "x*y"


def test_parallel_edges_counted(rtree):
    g = build_damg("xy", [("1", "x", "y"), ("2", "x", "y")])
    assert g.multiplicity("x", "y") == 2
    assert g.parents("y") == {"x"}
    assert g.in_degree("y") == 2


def test_topological_order_is_lexicographic_kahn():
    g = build_damg(["z", "b", "a"], [("1", "z", "a")])
    assert g.order == ("b", "z", "a")


def test_relations_figure1(fig1):
    g, _ = fig1
    rel = relations(g, "d")
    assert rel.parents == {"a", "b"}
    assert rel.ancestors == {"a", "b", "d"}
    assert rel.descendants == {"d", "f", "g"}
    assert relations(g, "a").parents == frozenset()
    with pytest.raises(UnknownVertexError):
        relations(g, "zz")


def test_isolated_vertex_relations():
    g = build_damg("xy", [])
    rel = relations(g, "x")
    assert rel.ancestors == rel.descendants == {"x"}


def test_path_counts_figure1(fig1):
    g, _ = fig1
    pi, totals = path_counts(g)
    assert (totals["g"], totals["f"], totals["h"]) == (4, 2, 2)
    assert pi["b", "g"] == 2
    assert all(totals[r] == 1 for r in g.roots)


def test_path_counts_reverse_tree(rtree):
    g, _ = rtree
    totals = root_path_totals(g)
    assert totals["e"] == 3 and totals["d"] == 2


def test_enumerate_paths(fig1):
    g, _ = fig1
    assert sorted(enumerate_paths(g, "b", "g")) == [("bd", "dg"), ("be", "eg")]
    assert enumerate_paths(g, "a", "a") == [()]
    assert enumerate_paths(g, "a", "h") == []
    with pytest.raises(CapExceededError):
        enumerate_paths(g, "b", "g", cap=1)


def test_horizontal_subsets(fig1):
    g, _ = fig1
    assert is_horizontal_subset(g, g.roots)
    assert is_horizontal_subset(g, g.leaves)
    assert is_horizontal_subset(g, "de")
    assert not is_horizontal_subset(g, "d")
    assert not is_horizontal_subset(g, "adg")


def _brute_horizontal(g, subset):
    for r in g.roots:
        for leaf in g.leaves:
            for path in enumerate_paths(g, r, leaf):
                verts = [r] + [g.edge_by_id[e].head for e in path]
                if sum(v in subset for v in verts) != 1:
                    return False
    return True


@given(seeds)
def test_horizontal_matches_brute_force(seed):
    g = damg_from_seed(seed, max_vertices=9, p_parallel=0.1)
    rng = random.Random(seed)
    subset = {v for v in g.order if rng.random() < 0.4}
    assert is_horizontal_subset(g, subset) == _brute_horizontal(g, subset)


@given(seeds)
def test_path_counts_match_enumeration(seed):
    g = damg_from_seed(seed, max_vertices=10)
    pi, totals = path_counts(g)
    for x in g.order:
        for y in g.order:
            assert pi[x, y] == len(enumerate_paths(g, x, y))
    for j, y in enumerate(g.order):
        if g.parent_mult[j]:
            assert totals[y] == sum(totals[g.order[p]] * m for p, m in g.parent_mult[j].items())
        assert totals[y] == sum(pi[r, y] for r in g.roots)


@given(seeds)
def test_order_certificate_and_relations(seed):
    g = damg_from_seed(seed)
    assert is_topological_order(g, g.order)
    for x in g.order:
        assert x in g.ancestors(x) and x in g.descendants(x)
        for y in g.descendants(x):
            assert x in g.ancestors(y)
    assert set(g.roots) == {v for v in g.order if not g.parents(v)}

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bicirc.bicircular import (
    EXCLUDED_MINORS,
    bicircular_contract,
    bicircular_delete,
    bicircular_independent,
    bicircular_matrix,
    bicircular_matroid,
    bicircular_rank,
    enumerate_representations,
    find_cobicircular_witness,
    find_representation,
    is_bicircular,
    is_cobicircular,
    is_minimally_not_cobicircular,
    matrix_matroid_of,
    minimality_report,
    named_matroid,
    primes,
    wagner_3connected,
)
from bicirc.matroid import (
    contract,
    delete,
    direct_sum,
    dual,
    graphic_matroid,
    is_3connected,
    matroid_isomorphic,
    relabel,
    uniform,
    whirl3,
)
from bicirc.multigraph import Multigraph, build_named, canonical_form, is_connected

from oracles import bases_as_sets, brute_3connected, numeric_bases
from test_multigraph import multigraphs

# (rank, number of bases), computed once with a random real matrix oracle.
FROZEN_BASES = {
    "2C3": (3, 20),
    "2C4": (4, 66),
    "2C5": (5, 212),
    "2C6": (6, 666),
    "2C7": (7, 2060),
    "K4": (4, 15),
    "K4++": (4, 66),
    "N8": (4, 61),
    "O8": (4, 53),
    "Z8": (4, 60),
    "Z8d": (4, 60),
    "F10": (5, 155),
    "D4ll": (4, 31),
    "W4": (5, 52),
    "C3o": (3, 17),
}


@pytest.mark.parametrize("key,expected", sorted(FROZEN_BASES.items()))
def test_frozen_basis_counts(key, expected):
    m = bicircular_matroid(build_named(key))
    assert (m.rank, len(m.bases)) == expected


def _rank_by_components(g: Multigraph) -> int:
    parent = list(range(g.vertex_count))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for e in g.edges:
        if e.kind == "link":
            parent[find(e.u)] = find(e.v)
    sizes, edges = {}, {}
    for v in range(g.vertex_count):
        sizes[find(v)] = sizes.get(find(v), 0) + 1
    for e in g.edges:
        if e.kind != "free":
            edges[find(e.u)] = edges.get(find(e.u), 0) + 1
    acyclic = sum(1 for r in sizes if edges.get(r, 0) == sizes[r] - 1)
    return g.vertex_count - acyclic


@given(multigraphs(max_vertices=6, max_edges=9))
def test_rank_formula(g):
    assert bicircular_rank(g) == _rank_by_components(g)
    assert bicircular_matroid(g).rank == _rank_by_components(g)


@settings(max_examples=80, deadline=None)
@given(multigraphs(max_vertices=5, max_edges=8))
def test_matches_numeric_oracle(g):
    assert bases_as_sets(bicircular_matroid(g)) == numeric_bases(g)


@settings(max_examples=80, deadline=None)
@given(multigraphs(max_vertices=5, max_edges=8))
def test_matches_exact_matrix(g):
    assert matrix_matroid_of(g) == bicircular_matroid(g)


def test_free_edge_is_a_loop():
    g = Multigraph.from_spec(2, [(0, 1), ()])
    assert not bicircular_independent(g, 0b10)
    assert bicircular_independent(g, 0b01)


def test_theta_and_handcuffs_are_circuits():
    theta = Multigraph.from_spec(2, [(0, 1)] * 3)
    tight = Multigraph.from_spec(1, [(0,), (0,)])
    loose = Multigraph.from_spec(2, [(0,), (0, 1), (1,)])
    for g in (theta, tight, loose):
        m = bicircular_matroid(g)
        assert m.circuits == {m.full}


def test_primes_and_matrix():
    assert primes(5) == [2, 3, 5, 7, 11]
    a = bicircular_matrix(Multigraph.from_spec(2, [(0, 1), (1,)]))
    assert [list(map(int, row)) for row in a] == [[-1, 0], [2, 1]]
    with pytest.raises(ValueError):
        bicircular_matrix(build_named("K4"), [2, 2, 3, 5, 7, 11])


@settings(max_examples=80, deadline=None)
@given(multigraphs(max_vertices=5, max_edges=8), st.data())
def test_contraction_commutes(g, data):
    if not len(g):
        return
    i = data.draw(st.integers(0, len(g) - 1))
    m = bicircular_matroid(g)
    assert bicircular_matroid(bicircular_contract(g, g.labels[i])) == contract(m, 1 << i)
    assert bicircular_matroid(bicircular_delete(g, g.labels[i])) == delete(m, 1 << i)


def test_loop_contraction_rule():
    g = Multigraph.from_spec(3, [(0,), (0,), (0, 1), (1, 2)])
    h = bicircular_contract(g, 0)
    assert h.vertex_count == 2
    assert h.free_count == 1
    assert h.loop_count == 1


@settings(max_examples=80, deadline=None)
@given(multigraphs(max_vertices=5, max_edges=9, free=False))
def test_wagner_criterion(g):
    if g.vertex_count < 3 or not is_connected(g) or len(g) > 10:
        return
    assert wagner_3connected(g) == brute_3connected(bicircular_matroid(g))


def test_wagner_hypothesis():
    with pytest.raises(ValueError):
        wagner_3connected(build_named("5K2"))


def test_free_swirls_identically_self_dual():
    for n in range(3, 6):
        m = bicircular_matroid(build_named(f"2C{n}"))
        assert dual(m) == m
        assert is_3connected(m)


def _forms(cat):
    return {canonical_form(g) for g in cat.graphs}


def test_catalog_u46():
    cat = enumerate_representations(uniform(4, 6))
    assert _forms(cat) == {canonical_form(build_named("C4++")), canonical_form(build_named("K4"))}
    assert all(g.loop_count == 0 for g in cat.graphs)


def test_catalog_whirl_and_u36():
    assert _forms(enumerate_representations(whirl3())) == {canonical_form(build_named("C3o"))}
    assert _forms(enumerate_representations(uniform(3, 6))) == {canonical_form(build_named("T222"))}


def test_catalog_u35_loops():
    cat = enumerate_representations(uniform(3, 5))
    assert len(cat) == 2
    assert all(g.loop_count <= 1 for g in cat.graphs)


def test_catalog_sizes():
    assert len(enumerate_representations(named_matroid("MK23"))) == 4
    assert len(enumerate_representations(uniform(2, 7))) == 3


def test_catalog_members_certified():
    for g in enumerate_representations(uniform(2, 7)).graphs:
        assert matroid_isomorphic(bicircular_matroid(g), uniform(2, 7))


def test_enumeration_rejects_disconnected():
    with pytest.raises(ValueError):
        enumerate_representations(direct_sum(uniform(1, 2), relabel(uniform(1, 2), "ab")))


def test_find_representation_disconnected():
    m = direct_sum(uniform(2, 3), relabel(uniform(1, 2), "ab"))
    g = find_representation(m)
    assert g is not None
    assert bicircular_matroid(g) == m


@settings(max_examples=40, deadline=None)
@given(multigraphs(max_vertices=4, max_edges=7))
def test_bicircular_matroids_are_recognised(g):
    m = bicircular_matroid(g)
    h = find_representation(m)
    assert h is not None
    assert bicircular_matroid(h) == m


def test_non_bicircular():
    assert not is_bicircular(graphic_matroid(build_named("K4")))
    assert is_bicircular(uniform(2, 7))


@pytest.mark.parametrize("key", EXCLUDED_MINORS)
def test_excluded_minor(key):
    m = named_matroid(key)
    assert is_bicircular(m)
    assert not is_cobicircular(m)
    assert is_minimally_not_cobicircular(m)


def test_minimality_report_witnesses():
    m = named_matroid("U2,7")
    report = minimality_report(m)
    assert report.minimally_not_cobicircular
    for i, x in enumerate(m.labels):
        assert bicircular_matroid(report.deletion_witnesses[x]) == dual(delete(m, 1 << i))
        assert bicircular_matroid(report.contraction_witnesses[x]) == dual(contract(m, 1 << i))


def test_cobicircular_witness():
    m = bicircular_matroid(build_named("2C4"))
    w = find_cobicircular_witness(m)
    assert bicircular_matroid(w) == dual(m)


def test_named_matroids():
    assert named_matroid("U2,6p").n == 7
    assert named_matroid("U2,5pp").n == 7
    assert named_matroid("U2,6'").n == 7
    assert np.array_equal(named_matroid("W3").rank_table, whirl3().rank_table)
    with pytest.raises(KeyError):
        named_matroid("Q9")

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bicirc.multigraph import (
    FIGURE_GRAPHS,
    BgrParseError,
    Edge,
    Multigraph,
    build_named,
    canonical_form,
    contract_link,
    delete_edges,
    find_graph_minor,
    format_bgr,
    graph_properties,
    is_2connected,
    is_3connected_graph,
    is_isomorphic,
    parse_bgr,
    parse_bgr_bundle,
    relabel_vertices,
    replay_minor,
)

from oracles import brute_canonical, brute_isomorphic, brute_minor


@st.composite
def multigraphs(draw, max_vertices=5, max_edges=8, free=True):
    nv = draw(st.integers(1, max_vertices))
    ne = draw(st.integers(0, max_edges))
    spec = []
    for _ in range(ne):
        kind = draw(st.sampled_from(["link", "link", "link", "loop"] + (["free"] if free else [])))
        if kind == "link" and nv >= 2:
            u, v = draw(st.lists(st.integers(0, nv - 1), min_size=2, max_size=2, unique=True))
            spec.append((u, v))
        elif kind == "free":
            spec.append(())
        else:
            spec.append((draw(st.integers(0, nv - 1)),))
    return Multigraph.from_spec(nv, spec)


def permuted(g: Multigraph, seed: int) -> Multigraph:
    rng = random.Random(seed)
    perm = list(range(g.vertex_count))
    rng.shuffle(perm)
    h = relabel_vertices(g, perm)
    order = list(range(len(h)))
    rng.shuffle(order)
    return Multigraph(h.vertex_count, [h.edges[i] for i in order], [h.labels[i] for i in order])


def test_edge_validation():
    with pytest.raises(ValueError):
        Edge.link(1, 1)
    with pytest.raises(ValueError):
        Edge("loop", 0, 1)
    with pytest.raises(ValueError):
        Multigraph.from_spec(2, [(0, 2)])
    with pytest.raises(ValueError):
        Multigraph.from_spec(2, [(0, 1), (0, 1)], labels=["a", "a"])


def test_named_graphs():
    assert len(build_named("2C3")) == 6
    g = build_named("T_2_2_3")
    assert (g.vertex_count, len(g)) == (3, 7)
    assert build_named("C3^o").loop_count == 3
    assert build_named("C3o").loop_count == 3
    assert build_named("K4^l").loop_count == 1
    assert len(build_named("K4++")) == 8
    assert len(build_named("7K2")) == 7
    assert len(build_named("W4")) == 8
    with pytest.raises(KeyError):
        build_named("Q9")


@pytest.mark.parametrize("name", FIGURE_GRAPHS)
def test_figure_graphs_load(name):
    g = build_named(name)
    assert len(g) in (7, 8, 10)


def test_bgr_round_trip_named():
    g = build_named("F10")
    assert parse_bgr(format_bgr(g, ["a comment"])) == g


@given(multigraphs())
def test_bgr_round_trip(g):
    assert parse_bgr(format_bgr(g)) == g


def test_bgr_errors():
    with pytest.raises(BgrParseError):
        parse_bgr("vertices 2\nlink 0 5\n")
    with pytest.raises(BgrParseError):
        parse_bgr("link 0 1\n")
    with pytest.raises(BgrParseError):
        parse_bgr("vertices 2\nbogus 1\n")


def test_bundle():
    text = "# name: A\nvertices 2\nlink 0 1\n\n# name: B\nvertices 1\nloop 0\n"
    bundle = parse_bgr_bundle(text)
    assert set(bundle) == {"A", "B"}
    assert bundle["B"][0].loop_count == 1


@settings(max_examples=60)
@given(multigraphs(max_vertices=5, max_edges=7), st.integers(0, 10**6))
def test_canonical_form_invariant(g, seed):
    assert canonical_form(permuted(g, seed)) == canonical_form(g)


@settings(max_examples=60)
@given(multigraphs(max_vertices=4, max_edges=6), multigraphs(max_vertices=4, max_edges=6))
def test_isomorphism_matches_brute_force(g, h):
    assert is_isomorphic(g, h) == brute_isomorphic(g, h)
    assert (canonical_form(g) == canonical_form(h)) == (brute_canonical(g) == brute_canonical(h))


def test_canonical_form_separates_figure_graphs():
    forms = {canonical_form(build_named(k)) for k in ("N8", "O8", "Z8", "Z8d", "K4++")}
    assert len(forms) == 5


def test_contract_link_makes_loops():
    g = build_named("2C3")
    h = contract_link(g, 0)
    assert h.vertex_count == 2
    assert h.loop_count == 1


def test_properties():
    p = graph_properties(build_named("C3o"))
    assert p.is_2connected and p.min_degree == 4 and p.max_loops_per_vertex == 1
    assert not p.has_free_edge
    path = Multigraph.from_spec(3, [(0, 1), (1, 2)])
    assert not is_2connected(path)
    assert is_3connected_graph(build_named("K4"))
    assert not is_3connected_graph(build_named("C4"))


@pytest.mark.parametrize(
    "host,minor",
    [("K4", "C3"), ("2C4", "2C3"), ("K4++", "K4"), ("W4", "K4"), ("T_2_2_3", "5K2"), ("C3", "K4")],
)
def test_graph_minor_against_brute_force(host, minor):
    g, h = build_named(host), build_named(minor)
    w = find_graph_minor(g, h)
    assert (w is not None) == brute_minor(g, h)
    if w is not None:
        assert is_isomorphic(replay_minor(g, w), h)


@settings(max_examples=40, deadline=None)
@given(multigraphs(max_vertices=4, max_edges=6, free=False), multigraphs(max_vertices=3, max_edges=4, free=False))
def test_graph_minor_property(g, h):
    w = find_graph_minor(g, h)
    assert (w is not None) == brute_minor(g, h)
    if w is not None:
        assert is_isomorphic(replay_minor(g, w), h)


def test_delete_edges_keeps_labels():
    g = build_named("K4")
    h = delete_edges(g, [0, 3])
    assert h.labels == tuple(x for x in g.labels if x not in (0, 3))

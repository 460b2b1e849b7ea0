import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bicirc.decomp import (
    CYCLE,
    MULTILINK,
    THREE_CONNECTED,
    TwoSumSite,
    Virtual,
    canonical_tree_decomposition,
    recompose,
    subtree_minor,
    to_dot,
    tree_canonical_form,
    tree_from_terms,
    two_sum,
)
from bicirc.multigraph import Multigraph, build_named, graph_minor_contains, is_isomorphic

from test_multigraph import permuted

ROUND_TRIP = ["K4", "2C4", "2C5", "5K2", "T_3_3_1", "Z8", "N8", "O8", "K4++", "W4", "C4++"]


@pytest.mark.parametrize("key", ROUND_TRIP)
def test_round_trip_named(key):
    g = build_named(key)
    t = canonical_tree_decomposition(g)
    t.validate()
    h = recompose(t)
    assert is_isomorphic(h, g)
    assert set(h.labels) == set(g.labels)


def test_doubled_square_shape():
    t = canonical_tree_decomposition(build_named("2C4"))
    kinds = sorted(n.kind for n in t.nodes)
    assert kinds == [CYCLE] + [MULTILINK] * 4


def test_single_terms():
    assert [n.kind for n in canonical_tree_decomposition(build_named("K4")).nodes] == [THREE_CONNECTED]
    assert [n.kind for n in canonical_tree_decomposition(build_named("C5")).nodes] == [CYCLE]
    assert [n.kind for n in canonical_tree_decomposition(build_named("4K2")).nodes] == [MULTILINK]


def test_rejects_bad_input():
    with pytest.raises(ValueError, match="separable"):
        canonical_tree_decomposition(Multigraph.from_spec(3, [(0, 1), (1, 2)]))
    with pytest.raises(ValueError):
        canonical_tree_decomposition(build_named("C3o"))
    with pytest.raises(ValueError):
        canonical_tree_decomposition(build_named("2K2"))


def test_two_sum_of_triangle_and_multilink():
    g = two_sum(TwoSumSite(build_named("C3"), 0), TwoSumSite(build_named("3K2"), 0))
    assert is_isomorphic(g, build_named("T_2_1_1"))


def test_two_sum_needs_link():
    with pytest.raises(ValueError):
        TwoSumSite(build_named("C3o"), 3)


def test_tree_from_terms_and_subtree():
    a, b = Virtual(0), Virtual(1)
    c3 = build_named("C3").with_labels(["x", a, b])
    m1 = build_named("4K2").with_labels([a, "p", "q", "r"])
    m2 = build_named("4K2").with_labels([b, "s", "t", "u"])
    t = tree_from_terms([(CYCLE, c3), (MULTILINK, m1), (MULTILINK, m2)], [(0, a, 1, a), (0, b, 2, b)])
    assert is_isomorphic(recompose(t), build_named("T_3_3_1"))
    assert is_isomorphic(subtree_minor(t, {0, 1}), build_named("T_3_1_1"))


@st.composite
def nonseparable(draw):
    """A Hamiltonian cycle plus extra links, which is always 2-connected."""
    n = draw(st.integers(2, 6))
    spec = [(i, (i + 1) % n) for i in range(n)] if n > 2 else [(0, 1), (0, 1)]
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    extra = draw(st.lists(st.sampled_from(pairs), min_size=1 if n == 2 else 0, max_size=10 - len(spec)))
    g = Multigraph.from_spec(n, spec + extra)
    return permuted(g, draw(st.integers(0, 10**6)))


@settings(max_examples=60, deadline=None)
@given(nonseparable())
def test_round_trip_property(g):
    t = canonical_tree_decomposition(g)
    t.validate()
    assert is_isomorphic(recompose(t), g)


@settings(max_examples=40, deadline=None)
@given(nonseparable(), st.integers(0, 10**6))
def test_tree_canonical_form_invariant(g, seed):
    a = tree_canonical_form(canonical_tree_decomposition(g))
    b = tree_canonical_form(canonical_tree_decomposition(permuted(g, seed)))
    assert a == b


@settings(max_examples=30, deadline=None)
@given(nonseparable())
def test_subtree_minor_law(g):
    t = canonical_tree_decomposition(g)
    for i in range(len(t.nodes)):
        for j in t.neighbours(i):
            assert graph_minor_contains(g, subtree_minor(t, {i, j}))
        assert graph_minor_contains(g, subtree_minor(t, {i}))


def test_subtree_must_be_connected():
    t = canonical_tree_decomposition(build_named("2C4"))
    leaves = [i for i, n in enumerate(t.nodes) if n.kind == MULTILINK][:2]
    with pytest.raises(ValueError):
        subtree_minor(t, leaves)


def test_dot_output():
    text = to_dot(canonical_tree_decomposition(build_named("2C4")), "square")
    assert text.startswith("graph square {")
    assert text.count("--") == 4

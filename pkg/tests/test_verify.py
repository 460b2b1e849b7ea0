import json

import pytest

import bicirc.verify as verify
from bicirc.bicircular import bicircular_matroid, named_matroid
from bicirc.matroid import is_3connected, matroid_isomorphic, uniform
from bicirc.multigraph import build_named, is_connected
from bicirc.verify import (
    FAIL,
    PASS,
    Corpus,
    MinorCatalog,
    VerificationReport,
    bicircular_minor_graphs,
    check_free_swirls,
    check_main_theorem,
    check_self_dualities,
    find_matroid_minor,
    reports_to_json,
    run_suite,
    single_edge_extensions,
    swirl_host,
    three_connected_corpus,
)

from oracles import all_multigraphs, brute_3connected, brute_canonical


def _brute_corpus(max_vertices, max_edges, keep=lambda g: True):
    found = set()
    for nv in range(1, max_vertices + 1):
        for ne in range(1, max_edges + 1):
            for g in all_multigraphs(nv, ne):
                if not g.isolated_vertices() and is_connected(g) and keep(g):
                    found.add(brute_canonical(g))
    return found


def test_corpus_matches_brute_force():
    ours = {brute_canonical(g) for g in Corpus(3, 4)}
    assert len(ours) == len(list(Corpus(3, 4)))
    assert ours == _brute_corpus(3, 4)


def test_corpus_is_deterministic():
    assert [g.edges for g in Corpus(3, 4, free_edges=1)] == [g.edges for g in Corpus(3, 4, free_edges=1)]


def test_three_connected_corpus_matches_brute_force():
    ours = {brute_canonical(g) for g in three_connected_corpus(6)}
    brute = _brute_corpus(4, 6, lambda g: brute_3connected(bicircular_matroid(g)))
    assert ours == brute


@pytest.mark.parametrize("k,n", [(3, 4), (3, 5), (3, 6), (4, 5), (4, 6), (5, 6), (5, 7), (6, 7)])
def test_swirl_host_suffices(k, n):
    """Every 3-connected k-element minor of a larger free swirl is already a minor of the k-swirl host."""
    catalog = MinorCatalog({"host": swirl_host(k)}, k)
    checked = 0
    for h in bicircular_minor_graphs(build_named(f"2C{n}"), k):
        m = bicircular_matroid(h)
        if is_3connected(m):
            checked += 1
            assert catalog.find(m) is not None
    assert checked


def test_minor_graphs_have_requested_size():
    for h in bicircular_minor_graphs(build_named("K4++"), 6):
        assert len(h) == 6 and not h.free_count


def test_find_matroid_minor():
    host = bicircular_matroid(build_named("2C4"))
    w = find_matroid_minor(host, uniform(2, 4))
    assert w is not None
    assert matroid_isomorphic(w.replay(host), uniform(2, 4))
    assert find_matroid_minor(uniform(2, 5), uniform(3, 4)) is None
    with pytest.raises(ValueError):
        find_matroid_minor(uniform(3, 15), uniform(2, 4))


def test_single_edge_extensions():
    ext = single_edge_extensions(build_named("K4"))
    assert all(len(g) == 7 for g in ext)
    assert len(ext) >= 2


def test_report_json():
    reps = [VerificationReport("b", PASS), VerificationReport("a", FAIL, counterexample="x\n")]
    rows = json.loads(reports_to_json(reps))
    assert [r["check_id"] for r in rows] == ["a", "b"]
    assert set(rows[0]) == {"check_id", "status", "witnesses", "counterexample", "elapsed_ms"}


def test_self_dualities_witnesses():
    rep = check_self_dualities()
    assert rep.passed
    assert rep.check_id == "check_self_dualities"
    assert rep.witnesses


def test_free_swirls_bounds():
    assert check_free_swirls(5).passed
    with pytest.raises(ValueError):
        check_free_swirls(8)


def test_missing_figure_data_skips(monkeypatch):
    monkeypatch.setattr(verify, "figure_graph_data", lambda: {})
    for check in (verify.check_self_dualities, verify.check_excluded_minors):
        rep = check()
        assert rep.status.startswith("skipped(")
    rep = check_main_theorem(5)
    assert rep.status.startswith("skipped(")


def test_sharding_agrees():
    one = check_main_theorem(6, jobs=1)
    two = check_main_theorem(6, jobs=2)
    assert one.passed and two.passed
    assert one.witnesses == two.witnesses


def test_main_theorem_bound():
    with pytest.raises(ValueError):
        check_main_theorem(10)


def test_run_suite_unknown():
    with pytest.raises(KeyError):
        run_suite(["check_nothing"])


def test_named_excluded_minor_sizes():
    sizes = {k: named_matroid(k).n for k in verify.EXCLUDED_MINORS}
    assert sizes["U2,7"] == 7 and sizes["D4ll"] == 7 and sizes["W4"] == 8

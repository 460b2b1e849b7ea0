"""Machine checks of the structure theory of doubly bicircular matroids.

Each ``check_*`` function returns a :class:`VerificationReport`.  Checks take
their fixtures as optional arguments so that :func:`negative_controls` can run
every one of them against a deliberately corrupted fixture, which must fail.
"""

from __future__ import annotations

import json
import random
import time
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Callable, Iterable, Iterator

from .bicircular import (
    EXCLUDED_MINORS,
    bicircular_contract,
    bicircular_matrix,
    bicircular_matroid,
    enumerate_representations,
    find_cobicircular_witness,
    find_representation,
    matrix_matroid,
    minimality_report,
    named_matroid,
    primes,
    wagner_3connected,
)
from .decomp import (
    canonical_tree_decomposition,
    recompose,
    subtree_minor,
    tree_canonical_form,
)
from .matroid import (
    Matroid,
    contract,
    delete,
    dual,
    find_isomorphism,
    format_mtd,
    is_3connected,
    is_coloop,
    is_loop,
    matroid_isomorphic,
    uniform,
)
from .multigraph import (
    FREE,
    LINK,
    LOOP,
    Edge,
    Multigraph,
    build_named,
    canonical_form,
    contract_edge,
    delete_edge,
    figure_graph_data,
    find_graph_minor,
    format_bgr,
    graph_properties,
    is_3connected_graph,
    is_connected,
    is_isomorphic,
    relabel_vertices,
    strip_isolated,
)

PASS = "pass"
FAIL = "fail"
SPORADIC = ("K4++", "N8", "O8", "Z8", "Z8d", "F10")
MAX_MINOR_HOST = 14
MAX_MINOR_TARGET = 10


@dataclass
class VerificationReport:
    check_id: str
    status: str
    witnesses: list[str] = field(default_factory=list)
    counterexample: str | None = None
    elapsed_ms: int = 0

    @property
    def passed(self) -> bool:
        return self.status == PASS

    @property
    def failed(self) -> bool:
        return self.status == FAIL

    def to_dict(self) -> dict:
        return {
            "check_id": self.check_id,
            "status": self.status,
            "witnesses": list(self.witnesses),
            "counterexample": self.counterexample,
            "elapsed_ms": self.elapsed_ms,
        }


def skipped(reason: str) -> str:
    return f"skipped({reason})"


def reports_to_json(reports: Iterable[VerificationReport]) -> str:
    rows = sorted((r.to_dict() for r in reports), key=lambda d: d["check_id"])
    return json.dumps(rows, indent=2) + "\n"


def _timed(check_id: str):
    """Fill in ``check_id`` and ``elapsed_ms`` of the report a check returns."""

    def wrap(fn):
        def run(*args, **kwargs) -> VerificationReport:
            t0 = time.perf_counter()
            rep = fn(*args, **kwargs)
            rep.check_id = check_id
            rep.elapsed_ms = int((time.perf_counter() - t0) * 1000)
            if rep.failed and rep.counterexample is None:
                raise AssertionError(f"{check_id} failed without a counterexample")
            return rep

        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        run.check_id = check_id
        return run

    return wrap


def _result(ok: bool, witnesses: list[str], counterexample: str | None) -> VerificationReport:
    return VerificationReport("", PASS if ok else FAIL, witnesses if ok else [], None if ok else counterexample)


def _missing_figures(names: Iterable[str]) -> list[str]:
    data = figure_graph_data()
    return [n for n in names if n in ("N8", "O8", "Z8", "Z8d", "F10", "D4ll") and n not in data]


# -- corpora ---------------------------------------------------------------------


def _degree_sequences(v: int, total: int, lo: int) -> Iterator[tuple[int, ...]]:
    def rec(prefix: list[int], left: int, cap: int) -> Iterator[tuple[int, ...]]:
        slots = v - len(prefix)
        if slots == 0:
            if left == 0:
                yield tuple(prefix)
            return
        for d in range(min(cap, left - lo * (slots - 1)), lo - 1, -1):
            if d * slots < left:
                break
            prefix.append(d)
            yield from rec(prefix, left - d, d)
            prefix.pop()

    yield from rec([], total, total)


def _realisations(degrees: tuple[int, ...], max_loops: int) -> Iterator[dict]:
    """Multiplicity maps ``{(i, j): m}`` (``i == j`` counts loops) with the given degrees."""
    v = len(degrees)
    rem = list(degrees)
    mult: dict[tuple[int, int], int] = {}

    def rec(i: int, j: int) -> Iterator[dict]:
        if i == v:
            yield dict(mult)
            return
        if j == v:
            if rem[i] == 0:
                yield from rec(i + 1, i + 1)
            return
        if j == i:
            for k in range(min(max_loops, rem[i] // 2), -1, -1):
                rem[i] -= 2 * k
                if k:
                    mult[i, i] = k
                yield from rec(i, j + 1)
                mult.pop((i, i), None)
                rem[i] += 2 * k
            return
        top = min(rem[i], rem[j])
        # the rest of row i has to absorb what is left of its degree
        room = sum(rem[x] for x in range(j + 1, v))
        for k in range(top, max(0, rem[i] - room) - 1, -1):
            rem[i] -= k
            rem[j] -= k
            if k:
                mult[i, j] = k
            yield from rec(i, j + 1)
            mult.pop((i, j), None)
            rem[i] += k
            rem[j] += k

    yield from rec(0, 0)


def _from_multiplicities(v: int, mult: dict) -> Multigraph:
    spec = []
    for (i, j), k in sorted(mult.items()):
        spec.extend([(i,) if i == j else (i, j)] * k)
    return Multigraph.from_spec(v, spec)


@dataclass(frozen=True)
class Corpus:
    """Connected multigraphs without isolated vertices, one per isomorphism class.

    Graphs are produced by vertex count, then edge count, then canonical form,
    so the stream is deterministic.  ``free_edges`` adds copies with up to that
    many free edges appended.
    """

    max_vertices: int
    max_edges: int
    min_vertices: int = 1
    min_edges: int = 1
    min_degree: int = 1
    max_loops_per_vertex: int | None = None
    two_connected: bool = False
    free_edges: int = 0

    def __iter__(self) -> Iterator[Multigraph]:
        for v in range(self.min_vertices, self.max_vertices + 1):
            plain: dict[int, list[Multigraph]] = {}
            for e in range(self.min_edges, self.max_edges + 1):
                plain[e] = self._level(v, e)
                yield from plain[e]
                for f in range(1, self.free_edges + 1):
                    for g in plain.get(e - f, ()):
                        yield g.add_edges([Edge.free()] * f)

    def _level(self, v: int, e: int) -> list[Multigraph]:
        found: dict[bytes, Multigraph] = {}
        max_loops = e if self.max_loops_per_vertex is None else self.max_loops_per_vertex
        for degs in _degree_sequences(v, 2 * e, max(self.min_degree, 1)):
            for mult in _realisations(degs, max_loops):
                g = _from_multiplicities(v, mult)
                if not is_connected(g):
                    continue
                if self.two_connected and v >= 3 and not graph_properties(g).is_2connected:
                    continue
                found.setdefault(canonical_form(g), g)
        return [found[k] for k in sorted(found)]


def general_corpus(max_edges: int = 8, max_vertices: int = 5) -> Corpus:
    """Small connected graphs with loops and up to one free edge; the property corpus."""
    return Corpus(max_vertices, max_edges, free_edges=1)


def three_connected_corpus(max_edges: int = 9) -> Iterator[Multigraph]:
    """All graphs ``G`` with ``B(G)`` 3-connected and at most ``max_edges`` edges.

    On three or more vertices such a graph is 2-connected with minimum degree 3
    and at most one loop per vertex; those conditions prefilter the search and
    the matroid test decides.  Graphs on one or two vertices are tested in full.
    """
    small = Corpus(2, max_edges)
    large = Corpus(max(3, 2 * max_edges // 3), max_edges, min_vertices=3, min_edges=3, min_degree=3,
                   max_loops_per_vertex=1, two_connected=True)
    for g in list(small) + list(large):
        if is_3connected(bicircular_matroid(g)):
            yield g


# -- minors of bicircular matroids -------------------------------------------------


def _normalise(g: Multigraph) -> Multigraph:
    """Drop free edges and isolated vertices: they are matroid loops or nothing."""
    for i in reversed(range(len(g))):
        if g.edges[i].kind == FREE:
            g = delete_edge(g, g.labels[i])
    return strip_isolated(g)


@lru_cache(maxsize=None)
def _minor_graph_levels(host_key: bytes, host: Multigraph, size: int) -> tuple[Multigraph, ...]:
    levels: dict[int, dict[bytes, Multigraph]] = defaultdict(dict)
    start = _normalise(host)
    levels[len(start)][canonical_form(start)] = start
    for m in range(len(start), size, -1):
        for g in levels.pop(m, {}).values():
            for x in g.labels:
                for child in (delete_edge(g, x), bicircular_contract(g, x)):
                    child = _normalise(child)
                    if len(child) >= size:
                        levels[len(child)].setdefault(canonical_form(child), child)
    final = levels.get(size, {})
    return tuple(final[k] for k in sorted(final))


def bicircular_minor_graphs(host: Multigraph, size: int) -> tuple[Multigraph, ...]:
    """Graphs ``H`` with ``size`` edges, no free edges and ``B(H)`` a minor of ``B(host)``.

    Deletion and bicircular contraction realise every single-element minor, so a
    breadth-first search over graphs reaches every loopless minor.  Free edges
    are deleted on sight since a loopless minor never keeps them.
    """
    return _minor_graph_levels(canonical_form(host), host, size)


class MinorCatalog:
    """Loopless ``size``-element minors of ``B(host)`` for a family of hosts, up to isomorphism."""

    def __init__(self, hosts: dict[str, Multigraph], size: int):
        self.size = size
        self.buckets: dict[tuple, list[tuple[Matroid, str, Multigraph]]] = defaultdict(list)
        for name, host in hosts.items():
            for h in bicircular_minor_graphs(host, size):
                m = bicircular_matroid(h)
                bucket = self.buckets[m.invariants]
                if not any(matroid_isomorphic(m, other) for other, _, _ in bucket):
                    bucket.append((m, name, h))

    def find(self, m: Matroid) -> tuple[str, Multigraph] | None:
        for other, name, h in self.buckets.get(m.invariants, ()):
            if matroid_isomorphic(m, other):
                return name, h
        return None

    def __len__(self) -> int:
        return sum(len(b) for b in self.buckets.values())


def swirl_host(size: int) -> Multigraph:
    """The free swirl graph used as host for ``size``-element targets."""
    return build_named(f"2C{max(size, 3)}")


@lru_cache(maxsize=None)
def theorem_catalog(size: int, sporadic: tuple[str, ...] = SPORADIC) -> MinorCatalog:
    hosts = {f"2C{max(size, 3)}": swirl_host(size)}
    hosts.update({name: build_named(name) for name in sporadic})
    return MinorCatalog(hosts, size)


@dataclass(frozen=True)
class MatroidMinorWitness:
    """Delete ``delete`` and contract ``contract`` (labels of the host)."""

    delete: tuple
    contract: tuple

    def replay(self, m: Matroid) -> Matroid:
        d = delete(m, m.subset(self.delete))
        return contract(d, d.subset(self.contract))


def find_matroid_minor(m: Matroid, n: Matroid) -> MatroidMinorWitness | None:
    """A delete/contract sequence taking ``m`` to a matroid isomorphic to ``n``.

    Elements are removed one at a time, keeping one representative per
    isomorphism class at every size (bucketed by invariants), and only as long
    as enough rank and corank remain to reach ``n``.
    """
    if m.n > MAX_MINOR_HOST or n.n > MAX_MINOR_TARGET:
        raise ValueError(f"minor search supports hosts up to {MAX_MINOR_HOST} and targets up to {MAX_MINOR_TARGET} elements")
    return _find_matroid_minor(m, n)


@lru_cache(maxsize=4096)
def _find_matroid_minor(m: Matroid, n: Matroid) -> MatroidMinorWitness | None:
    if n.n > m.n or n.rank > m.rank or n.corank > m.corank:
        return None
    level: list[tuple[Matroid, tuple, tuple]] = [(m, (), ())]
    while level:
        top = level[0][0]
        if top.n == n.n:
            for cand, dels, cons in level:
                if cand.invariants == n.invariants and matroid_isomorphic(cand, n):
                    return MatroidMinorWitness(dels, cons)
            return None
        buckets: dict[tuple, list[Matroid]] = defaultdict(list)
        nxt = []
        for cand, dels, cons in level:
            for i, x in enumerate(cand.labels):
                options = []
                if cand.corank > n.corank or is_coloop(cand, i):
                    options.append(("d", delete(cand, 1 << i)))
                if cand.rank > n.rank and not is_loop(cand, i) and not is_coloop(cand, i):
                    options.append(("c", contract(cand, 1 << i)))
                for op, child in options:
                    if child.rank < n.rank or child.corank < n.corank:
                        continue
                    bucket = buckets[child.invariants]
                    if any(matroid_isomorphic(child, other) for other in bucket):
                        continue
                    bucket.append(child)
                    nxt.append((child, dels + (x,) if op == "d" else dels, cons + (x,) if op == "c" else cons))
        level = nxt
    return None


def matroid_minor_contains(m: Matroid, n: Matroid) -> bool:
    return find_matroid_minor(m, n) is not None


def _graph_payload(g: Multigraph, *notes: str) -> str:
    return format_bgr(g, notes)


def _certify(g: Multigraph, target: Matroid, labelled: bool = False) -> bool:
    """Re-check a witness graph through the matrix construction."""
    other = matrix_matroid(bicircular_matrix(g), g.labels)
    return other == target if labelled else matroid_isomorphic(other, target)


# -- the checks ------------------------------------------------------------------------


def _sporadic_graphs(names: Iterable[str] = SPORADIC) -> dict[str, Multigraph]:
    return {name: build_named(name) for name in names}


@_timed("check_self_dualities")
def check_self_dualities(graphs: dict[str, Multigraph] | None = None) -> VerificationReport:
    """B(K4++), B(N8), B(O8), B(F10) are self-dual and B(Z8)* is B(Z8d)."""
    if graphs is None:
        missing = _missing_figures(SPORADIC)
        if missing:
            return VerificationReport("", skipped(f"missing figure data: {', '.join(missing)}"))
        graphs = _sporadic_graphs()
    pairs = [(x, x) for x in ("K4++", "N8", "O8", "F10")] + [("Z8", "Z8d")]
    witnesses = []
    for a, b in pairs:
        m, n = dual(bicircular_matroid(graphs[a])), bicircular_matroid(graphs[b])
        iso = None if m.invariants != n.invariants else find_isomorphism(m, n)
        if iso is None:
            why = "invariants differ" if m.invariants != n.invariants else "no isomorphism"
            return _result(False, [], _graph_payload(
                graphs[a], f"dual of B({a}) is not isomorphic to B({b}): {why}",
                f"dual invariants {m.invariants[:3]}", f"target invariants {n.invariants[:3]}"))
        mapping = " ".join(f"{x}->{y}" for x, y in sorted(iso.items()))
        witnesses.append(_graph_payload(graphs[a], f"{a}: dual of B({a}) isomorphic to B({b})", f"map {mapping}"))
    return _result(True, witnesses, None)


@_timed("check_free_swirls")
def check_free_swirls(n_max: int = 7, builder: Callable[[int], Multigraph] | None = None) -> VerificationReport:
    """For every n, each basis complement of B(2C_n) is a basis and B(2C_n) is 3-connected."""
    if not 3 <= n_max <= 7:
        raise ValueError("n_max must lie in 3..7")
    builder = builder or (lambda n: build_named(f"2C{n}"))
    witnesses = []
    for n in range(3, n_max + 1):
        g = builder(n)
        m = bicircular_matroid(g)
        bad = next((b for b in sorted(m.bases) if m.full & ~b not in m.bases), None)
        if bad is not None:
            return _result(False, [], _graph_payload(g, f"n={n}: complement of basis {m.members(bad)} is not a basis"))
        if not is_3connected(m):
            return _result(False, [], _graph_payload(g, f"n={n}: B is not 3-connected"))
        witnesses.append(_graph_payload(g, f"2C{n}: identically self-dual, 3-connected, {len(m.bases)} bases"))
    return _result(True, witnesses, None)


@_timed("check_excluded_minors")
def check_excluded_minors(matroids: dict[str, Matroid] | None = None) -> VerificationReport:
    """Each excluded minor is bicircular, not cobicircular, and minimally so."""
    missing = []
    if matroids is None:
        missing = _missing_figures(["D4ll"])
        matroids = {k: named_matroid(k) for k in EXCLUDED_MINORS if k not in missing}
    witnesses = []
    for name, m in matroids.items():
        rep = find_representation(m)
        if rep is None:
            return _result(False, [], format_mtd(m, [f"{name}: no bicircular representation"]))
        if not _certify(rep, m, labelled=True):
            return _result(False, [], _graph_payload(rep, f"{name}: matrix construction disagrees"))
        report = minimality_report(m)
        if report.cobicircular_witness is not None:
            return _result(False, [], _graph_payload(report.cobicircular_witness, f"{name}: dual is bicircular"))
        witnesses.append(_graph_payload(rep, f"{name}: bicircular representation"))
        for kind, table, op in (("delete", report.deletion_witnesses, delete), ("contract", report.contraction_witnesses, contract)):
            for x, w in table.items():
                if w is None:
                    return _result(False, [], format_mtd(m, [f"{name}: {kind} {x} is not cobicircular"]))
                minor = op(m, m.subset([x]))
                if not _certify(w, dual(minor), labelled=True):
                    return _result(False, [], _graph_payload(w, f"{name}: {kind} {x} witness fails the matrix check"))
                witnesses.append(_graph_payload(w, f"{name}: {kind} {x}: witness for the dual"))
    if missing:
        return VerificationReport("", skipped("missing figure data: D4ll"), witnesses)
    return _result(True, witnesses, None)


def _graph_set(keys: Iterable[str]) -> set[bytes]:
    return {canonical_form(build_named(k)) for k in keys}


def default_catalog_targets() -> dict[str, tuple[Matroid, Callable]]:
    """Targets and their expectations; an expectation maps a catalog to an error or ``None``."""

    def exactly(*keys: str):
        want = _graph_set(keys)
        return lambda graphs: None if {canonical_form(g) for g in graphs} == want else f"expected exactly {', '.join(keys)}"

    def count(k: int):
        return lambda graphs: None if len(graphs) == k else f"expected {k} graphs"

    def loops_at_most(k: int, base=None):
        def check(graphs):
            if base and (err := base(graphs)):
                return err
            bad = [g for g in graphs if g.loop_count > k]
            return f"a representation has more than {k} loops" if bad else None

        return check

    return {
        "U4,6": (named_matroid("U4,6"), loops_at_most(0, exactly("C4++", "K4"))),
        "W3": (named_matroid("W3"), exactly("C3o")),
        "U3,6": (named_matroid("U3,6"), exactly("T_2_2_2")),
        "MK23": (named_matroid("MK23"), count(4)),
        "U2,7": (named_matroid("U2,7"), exactly("7K2", "6K2^l", "5K2^o")),
        "U3,5": (named_matroid("U3,5"), loops_at_most(1)),
        "U2,6p": (named_matroid("U2,6p"), lambda graphs: None),
        "U2,5pp": (named_matroid("U2,5pp"), lambda graphs: None),
    }


@_timed("check_representation_catalogs")
def check_representation_catalogs(targets: dict[str, tuple[Matroid, Callable]] | None = None) -> VerificationReport:
    """Complete lists of bicircular representations of the small targets."""
    targets = targets or default_catalog_targets()
    witnesses = []
    for name, (m, expect) in targets.items():
        cat = enumerate_representations(m)
        for g in cat.graphs:
            if not _certify(g, m):
                return _result(False, [], _graph_payload(g, f"{name}: matrix construction disagrees"))
        err = expect(cat.graphs)
        if err:
            blocks = "".join(_graph_payload(g) for g in cat.graphs)
            return _result(False, [], f"# {name}: {err}; found {len(cat)}\n{blocks}")
        witnesses.extend(_graph_payload(g, f"{name}: representation {i + 1} of {len(cat)}") for i, g in enumerate(cat.graphs))
    return _result(True, witnesses, None)


def k4pp_corpus(max_vertices: int = 5, max_edges: int = 9) -> list[Multigraph]:
    """Graphs on 4 or more vertices whose underlying simple graph is 3-connected."""
    corpus = Corpus(max_vertices, max_edges, min_vertices=4, min_edges=6, min_degree=3)
    return [g for g in corpus if is_3connected_graph(g)]


@_timed("check_prop_41")
def check_k4pp_equivalence(corpus: list[Multigraph] | None = None, host: str = "K4++") -> VerificationReport:
    """For 3-connected G: B(G) cobicircular, no W4/K4^l/T223 minor, and G a minor of K4++ agree."""
    corpus = k4pp_corpus() if corpus is None else corpus
    forbidden = [build_named(k) for k in ("W4", "K4l", "T_2_2_3")]
    top = build_named(host)
    witnesses = []
    for g in corpus:
        p1 = find_cobicircular_witness(bicircular_matroid(g)) is not None
        p2 = not any(_has_minor(g, h) for h in forbidden)
        p3 = _has_minor(top, g)
        if not p1 == p2 == p3:
            return _result(False, [], _graph_payload(g, f"cobicircular={p1} excluded-free={p2} minor-of-{host}={p3}"))
        if p1:
            witnesses.append(_graph_payload(g, f"cobicircular, minor of {host}"))
    witnesses.append(f"# {len(corpus)} graphs checked\n")
    return _result(True, witnesses, None)


def _has_minor(g: Multigraph, h: Multigraph) -> bool:
    if len(h) > len(g) or h.vertex_count > g.vertex_count:
        return False
    return find_graph_minor(g, h) is not None


def single_edge_extensions(s: Multigraph) -> list[Multigraph]:
    """New link on existing vertices, or a loop at a vertex without one; one per isomorphism class."""
    loops = {e.u for e in s.edges if e.kind == LOOP}
    new = [Edge.link(u, v) for u, v in combinations(range(s.vertex_count), 2)]
    new += [Edge.loop(v) for v in range(s.vertex_count) if v not in loops]
    found: dict[bytes, Multigraph] = {}
    for e in new:
        g = s.add_edges([e])
        found.setdefault(canonical_form(g), g)
    return [found[k] for k in sorted(found)]


EXTENSION_MINORS = ("T_2_2_3", "7K2", "6K2^l", "5K2^o")


@_timed("check_lemma_43")
def check_sporadic_extensions(graphs: dict[str, Multigraph] | None = None, minors: tuple[str, ...] = EXTENSION_MINORS) -> VerificationReport:
    """Every 3-connected single-edge extension of a sporadic graph has one of four minors."""
    if graphs is None:
        missing = _missing_figures(SPORADIC)
        if missing:
            return VerificationReport("", skipped(f"missing figure data: {', '.join(missing)}"))
        graphs = _sporadic_graphs()
    targets = [(k, build_named(k)) for k in minors]
    witnesses = []
    for name, s in graphs.items():
        for g in single_edge_extensions(s):
            if not is_3connected(bicircular_matroid(g)):
                continue
            hit = next((k for k, h in targets if _has_minor(g, h)), None)
            if hit is None:
                return _result(False, [], _graph_payload(g, f"{name} plus {_edge_word(g.edges[-1])}: none of {', '.join(minors)}"))
            witnesses.append(_graph_payload(g, f"{name} plus one edge: {hit} minor"))
    return _result(True, witnesses, None)


@lru_cache(maxsize=None)
def excluded_catalog_graphs() -> tuple[Multigraph, ...]:
    """All bicircular representations of the nine excluded minors, up to isomorphism."""
    found: dict[bytes, Multigraph] = {}
    for key in EXCLUDED_MINORS:
        for g in enumerate_representations(named_matroid(key)).graphs:
            found.setdefault(canonical_form(g), g)
    return tuple(found[k] for k in sorted(found))


def theorem_predicates(g: Multigraph, sporadic: tuple[str, ...] = SPORADIC) -> tuple[bool, bool, bool, str]:
    """The three conditions of the main equivalence, by disjoint routes, plus a note."""
    m = bicircular_matroid(g)
    cobic = find_cobicircular_witness(m)
    blocker = next((h for h in excluded_catalog_graphs() if _has_minor(g, h)), None)
    host = theorem_catalog(len(g), tuple(sporadic)).find(m)
    note = []
    if cobic is not None:
        note.append("dual witness " + " ".join(_edge_word(e) for e in cobic.edges))
    if blocker is not None:
        note.append("excluded minor " + " ".join(_edge_word(e) for e in blocker.edges))
    if host is not None:
        note.append(f"minor of B({host[0]})")
    return cobic is not None, blocker is None, host is not None, "; ".join(note)


def _edge_word(e: Edge) -> str:
    return {LINK: f"{e.u}-{e.v}", LOOP: f"{e.u}o", FREE: "f"}[e.kind]


def _theorem_rows(args) -> list[tuple[bool, bool, bool, str]]:
    graphs, sporadic = args
    return [theorem_predicates(g, sporadic) for g in graphs]


@_timed("check_main_theorem")
def check_main_theorem(max_edges: int = 9, jobs: int = 1, sporadic: tuple[str, ...] = SPORADIC) -> VerificationReport:
    """For every G with B(G) 3-connected: cobicircular, excluded-minor free, and
    minor of a free swirl or a sporadic matroid agree."""
    if max_edges > 9:
        raise ValueError("max_edges is bounded by 9")
    missing = _missing_figures(sporadic)
    if missing:
        return VerificationReport("", skipped(f"missing figure data: {', '.join(missing)}"))
    corpus = list(three_connected_corpus(max_edges))
    excluded_catalog_graphs()
    if jobs > 1:
        shards = [(corpus[i::jobs], tuple(sporadic)) for i in range(jobs)]
        with ProcessPoolExecutor(jobs) as pool:
            parts = list(pool.map(_theorem_rows, shards))
        rows = [None] * len(corpus)
        for i, part in enumerate(parts):
            rows[i::jobs] = part
    else:
        rows = _theorem_rows((corpus, tuple(sporadic)))
    witnesses = []
    for g, (p1, p2, p3, note) in zip(corpus, rows):
        if not p1 == p2 == p3:
            return _result(False, [], _graph_payload(g, f"cobicircular={p1} excluded-free={p2} catalogued={p3}", note))
        witnesses.append(_graph_payload(g, f"all {'true' if p1 else 'false'}", note))
    return _result(True, witnesses, None)


# -- structural suites ---------------------------------------------------------------


@_timed("check_oracle_agreement")
def check_oracle_agreement(corpus: Iterable[Multigraph] | None = None,
                           matrix_builder: Callable = bicircular_matrix) -> VerificationReport:
    """Combinatorial and matrix constructions give the same labelled bases."""
    corpus = general_corpus() if corpus is None else corpus
    witnesses, n = [], 0
    for g in corpus:
        n += 1
        m = bicircular_matroid(g)
        if matrix_matroid(matrix_builder(g), g.labels) == m:
            continue
        # a coincidence among the chosen primes would be a degenerate assignment;
        # retry once with later primes before calling it a disagreement
        k = sum(e.kind == LINK for e in g.edges)
        later = primes(k + 20)[20:]
        if matrix_matroid(matrix_builder(g, later), g.labels) == m:
            witnesses.append(_graph_payload(g, "degenerate default primes; agreement with later primes"))
            continue
        return _result(False, [], _graph_payload(g, "matrix construction disagrees with the combinatorial one"))
    witnesses.append(f"# {n} graphs agree\n")
    return _result(True, witnesses, None)


@_timed("check_commutation")
def check_commutation(corpus: Iterable[Multigraph] | None = None,
                      contract_rule: Callable = bicircular_contract) -> VerificationReport:
    """B(G) minus e is B(G minus e) and B(G)/e is B of the bicircular contraction, as labelled matroids."""
    corpus = general_corpus() if corpus is None else corpus
    n = 0
    for g in corpus:
        n += 1
        m = bicircular_matroid(g)
        for i, x in enumerate(g.labels):
            if delete(m, 1 << i) != bicircular_matroid(delete_edge(g, x)):
                return _result(False, [], _graph_payload(g, f"deleting {x} does not commute"))
            if contract(m, 1 << i) != bicircular_matroid(contract_rule(g, x)):
                return _result(False, [], _graph_payload(g, f"contracting {x} does not commute"))
    return _result(True, [f"# {n} graphs, every edge\n"], None)


def wagner_corpus(max_edges: int = 10, max_vertices: int = 5) -> Iterator[Multigraph]:
    """Connected graphs on three or more vertices; the hypothesis of the criterion."""
    return iter(Corpus(max_vertices, max_edges, min_vertices=3, min_edges=2))


@_timed("check_wagner")
def check_wagner(corpus: Iterable[Multigraph] | None = None,
                 criterion: Callable[[Multigraph], bool] = wagner_3connected) -> VerificationReport:
    """The graph criterion for 3-connectivity of B(G) matches the matroid test."""
    corpus = wagner_corpus() if corpus is None else corpus
    n = yes = 0
    for g in corpus:
        n += 1
        direct = is_3connected(bicircular_matroid(g))
        if criterion(g) != direct:
            return _result(False, [], _graph_payload(g, f"criterion says {not direct}, matroid says {direct}"))
        yes += direct
    return _result(True, [f"# {n} graphs, {yes} with B(G) 3-connected\n"], None)


def decomposition_corpus(max_edges: int = 10, max_vertices: int = 6) -> Iterator[Multigraph]:
    """Loopless non-separable graphs: multilinks and 2-connected graphs."""
    yield from (build_named(f"{m}K2") for m in range(3, max_edges + 1))
    yield from Corpus(max_vertices, max_edges, min_vertices=3, min_edges=3, min_degree=2,
                      max_loops_per_vertex=0, two_connected=True)


def _connected_subtrees(t) -> Iterator[frozenset[int]]:
    n = len(t.nodes)
    seen: set[frozenset[int]] = set()
    frontier = [frozenset([i]) for i in range(n)]
    while frontier:
        nxt = []
        for s in frontier:
            if s in seen:
                continue
            seen.add(s)
            yield s
            for i in s:
                for j in t.neighbours(i):
                    if j not in s:
                        nxt.append(s | {j})
        frontier = nxt


def _shuffled(g: Multigraph, seed: int) -> Multigraph:
    rng = random.Random(seed)
    perm = list(range(g.vertex_count))
    rng.shuffle(perm)
    h = relabel_vertices(g, perm)
    order = list(range(len(h)))
    rng.shuffle(order)
    return Multigraph(h.vertex_count, tuple(h.edges[i] for i in order), tuple(h.labels[i] for i in order))


@_timed("check_decomposition")
def check_decomposition(corpus: Iterable[Multigraph] | None = None,
                        decompose: Callable = canonical_tree_decomposition) -> VerificationReport:
    """Round trip, validity, uniqueness under relabelling, and the subtree-minor law."""
    corpus = decomposition_corpus() if corpus is None else corpus
    n = subtrees = 0
    for g in corpus:
        n += 1
        t = decompose(g)
        try:
            t.validate()
        except ValueError as err:
            return _result(False, [], _graph_payload(g, f"invalid decomposition: {err}"))
        if not is_isomorphic(recompose(t), g):
            return _result(False, [], _graph_payload(g, "recomposition is not isomorphic to the input"))
        if tree_canonical_form(decompose(_shuffled(g, n))) != tree_canonical_form(t):
            return _result(False, [], _graph_payload(g, "relabelled input gives a different tree"))
        if len(g) <= 9:
            for s in _connected_subtrees(t):
                subtrees += 1
                if not _has_minor(g, subtree_minor(t, s)):
                    return _result(False, [], _graph_payload(g, f"subtree {sorted(s)} is not a minor"))
    return _result(True, [f"# {n} graphs, {subtrees} subtrees\n"], None)


# -- suites and negative controls ---------------------------------------------------------

CHECKS: dict[str, Callable[..., VerificationReport]] = {
    "check_self_dualities": check_self_dualities,
    "check_free_swirls": check_free_swirls,
    "check_excluded_minors": check_excluded_minors,
    "check_representation_catalogs": check_representation_catalogs,
    "check_prop_41": check_k4pp_equivalence,
    "check_lemma_43": check_sporadic_extensions,
    "check_main_theorem": check_main_theorem,
    "check_oracle_agreement": check_oracle_agreement,
    "check_commutation": check_commutation,
    "check_wagner": check_wagner,
    "check_decomposition": check_decomposition,
}


def run_suite(names: Iterable[str] | None = None, max_edges: int = 9, jobs: int = 1) -> list[VerificationReport]:
    names = sorted(CHECKS) if names is None else list(names)
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise KeyError(f"unknown check {unknown[0]!r}")
    out = []
    for name in sorted(names):
        if name == "check_main_theorem":
            out.append(check_main_theorem(max_edges=max_edges, jobs=jobs))
        else:
            out.append(CHECKS[name]())
    return out


def _corrupted_z8() -> dict[str, Multigraph]:
    graphs = _sporadic_graphs()
    z8 = graphs["Z8"]
    # move one of the doubled 3-2 edges onto 0-3
    edges = list(z8.edges)
    edges[-1] = Edge.link(0, 3)
    graphs["Z8"] = Multigraph(z8.vertex_count, tuple(edges), z8.labels)
    return graphs


def _loop_blind_matrix(g: Multigraph, prime_list=None):
    a = bicircular_matrix(g, prime_list)
    for j, e in enumerate(g.edges):
        if e.kind == LOOP:
            a[e.u][j] = 0 * a[e.u][j]
    return a


def _criterion_ignoring_loops(g: Multigraph) -> bool:
    p = graph_properties(g)
    return p.is_2connected and p.min_degree >= 3


def _decompose_wrong_graph(g: Multigraph):
    for x in g.labels:
        h = delete_edge(g, x)
        try:
            return canonical_tree_decomposition(h)
        except ValueError:
            continue
    return canonical_tree_decomposition(g)


def negative_controls() -> dict[str, Callable[[], VerificationReport]]:
    """One corrupted run per check; each must report ``fail``."""
    bad_targets = default_catalog_targets()
    bad_targets["U4,6"] = (named_matroid("U3,6"), bad_targets["U4,6"][1])
    small = list(general_corpus(6, 4))
    return {
        "check_self_dualities": lambda: check_self_dualities(_corrupted_z8()),
        "check_free_swirls": lambda: check_free_swirls(4, lambda n: build_named(f"2C{n}^l")),
        "check_excluded_minors": lambda: check_excluded_minors({"U2,6": uniform(2, 6)}),
        "check_representation_catalogs": lambda: check_representation_catalogs(bad_targets),
        "check_prop_41": lambda: check_k4pp_equivalence(host="K4+"),
        "check_lemma_43": lambda: check_sporadic_extensions(minors=("5K2^o",)),
        "check_main_theorem": lambda: check_main_theorem(7, sporadic=()),
        "check_oracle_agreement": lambda: check_oracle_agreement(small, _loop_blind_matrix),
        "check_commutation": lambda: check_commutation(small, contract_edge),
        "check_wagner": lambda: check_wagner(wagner_corpus(6, 4), _criterion_ignoring_loops),
        "check_decomposition": lambda: check_decomposition(list(decomposition_corpus(7, 4)), _decompose_wrong_graph),
    }

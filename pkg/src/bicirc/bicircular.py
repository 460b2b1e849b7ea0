"""Bicircular matroids of multigraphs.

``B(G)`` has the edges of ``G`` as elements.  An edge set is independent when
it contains no free edge and every connected component of the subgraph it
spans has at most as many edges as vertices (at most one cycle, loops
counting as cycles).  Two constructions are provided: a combinatorial one and
the exact rational matrix one; they must agree.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Hashable, Iterator

from .matroid import (
    Matroid,
    bits,
    components,
    contract,
    coparallel_extend,
    delete,
    dual,
    from_independence,
    graphic_matroid,
    matroid_isomorphic,
    popcount,
    restrict,
    uniform,
    whirl3,
)
from .multigraph import (
    FREE,
    LINK,
    LOOP,
    Edge,
    Multigraph,
    build_named,
    canonical_form,
    contract_link,
    delete_edge,
    disjoint_union,
    graph_properties,
    is_connected,
)

MAX_BICIRCULAR_EDGES = 20
MAX_MATRIX_EDGES = 16
MAX_REPRESENTATION = 10


def _ends(g: Multigraph) -> list[tuple[int, int] | None]:
    return [None if e.kind == FREE else (e.u, e.v) for e in g.edges]


def _independent(nv: int, ends: list, mask: int) -> bool:
    parent = list(range(nv))
    surplus = [-1] * nv  # edges minus vertices per component root
    i = 0
    while mask:
        if mask & 1:
            uv = ends[i]
            if uv is None:
                return False
            a, b = uv
            while parent[a] != a:
                a = parent[a]
            while parent[b] != b:
                b = parent[b]
            if a != b:
                parent[a] = b
                surplus[b] += surplus[a] + 1
            else:
                surplus[b] += 1
            if surplus[b] > 0:
                return False
        mask >>= 1
        i += 1
    return True


def bicircular_independent(g: Multigraph, s: int) -> bool:
    if s >> len(g):
        raise ValueError("edge set outside the graph")
    return _independent(g.vertex_count, _ends(g), s)


def bicircular_rank(g: Multigraph) -> int:
    """Vertices minus acyclic components; loops count as cycles, free edges span nothing."""
    n = g.vertex_count
    parent = list(range(n))
    surplus = [-1] * n

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for e in g.edges:
        if e.kind == FREE:
            continue
        a, b = find(e.u), find(e.v)
        if a != b:
            parent[a] = b
            surplus[b] += surplus[a] + 1
        else:
            surplus[b] += 1
    acyclic = sum(1 for v in range(n) if parent[v] == v and surplus[v] < 0)
    return n - acyclic


def bicircular_matroid(g: Multigraph) -> Matroid:
    if len(g) > MAX_BICIRCULAR_EDGES:
        raise ValueError(f"bicircular_matroid supports at most {MAX_BICIRCULAR_EDGES} edges")
    ends = _ends(g)
    nv = g.vertex_count
    return from_independence(g.labels, bicircular_rank(g), lambda m: _independent(nv, ends, m))


# -- the rational matrix oracle ------------------------------------------------


def primes(k: int) -> list[int]:
    out: list[int] = []
    x = 2
    while len(out) < k:
        if all(x % p for p in out if p * p <= x):
            out.append(x)
        x += 1
    return out


def bicircular_matrix(g: Multigraph, prime_list: list[int] | None = None) -> list[list[Fraction]]:
    """Vertex-by-edge matrix: a link ``u-v`` gets -1 in row u and its own prime in
    row v, a loop gets the unit column of its vertex, a free edge a zero column."""
    k = sum(e.kind == LINK for e in g.edges)
    if prime_list is None:
        prime_list = primes(k)
    if len(set(prime_list)) != len(prime_list):
        raise ValueError("primes must be distinct")
    if len(prime_list) < k:
        raise ValueError(f"need {k} primes, got {len(prime_list)}")
    a = [[Fraction(0)] * len(g) for _ in range(g.vertex_count)]
    it = iter(prime_list)
    for j, e in enumerate(g.edges):
        if e.kind == LINK:
            a[e.u][j] = Fraction(-1)
            a[e.v][j] = Fraction(next(it))
        elif e.kind == LOOP:
            a[e.u][j] = Fraction(1)
    return a


def column_rank(a: list[list[Fraction]], cols: list[int]) -> int:
    rows = [[a[i][j] for j in cols] for i in range(len(a))]
    rank = 0
    ncols = len(cols)
    for c in range(ncols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        p = rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][c] != 0:
                f = rows[i][c] / p[c]
                rows[i] = [x - f * y for x, y in zip(rows[i], p)]
        rank += 1
    return rank


def matrix_matroid(a: list[list[Fraction]], labels) -> Matroid:
    n = len(labels)
    r = column_rank(a, list(range(n))) if a else 0
    return from_independence(labels, r, lambda m: column_rank(a, bits(m)) == popcount(m))


def matrix_matroid_of(g: Multigraph, prime_list: list[int] | None = None) -> Matroid:
    if len(g) > MAX_MATRIX_EDGES:
        raise ValueError(f"matrix_matroid_of supports at most {MAX_MATRIX_EDGES} edges")
    return matrix_matroid(bicircular_matrix(g, prime_list), g.labels)


# -- graph operations matching matroid minors ----------------------------------


def bicircular_contract(g: Multigraph, e: Hashable) -> Multigraph:
    """Graph ``H`` with ``B(H) = B(G)/e``.

    A free edge is deleted and a link contracted as usual.  Contracting a loop
    at ``v`` removes ``v``: its other loops become free edges and its links
    become loops at their far ends.
    """
    i = g.index(e)
    edge = g.edges[i]
    if edge.kind == FREE:
        return delete_edge(g, e)
    if edge.kind == LINK:
        return contract_link(g, e)
    v = edge.u

    def shift(x: int) -> int:
        return x - 1 if x > v else x

    new_edges = []
    for j, x in enumerate(g.edges):
        if j == i:
            continue
        if x.kind == LOOP and x.u == v:
            new_edges.append(Edge.free())
        elif x.kind == LINK and v in (x.u, x.v):
            new_edges.append(Edge.loop(shift(x.v if x.u == v else x.u)))
        else:
            new_edges.append(x.mapped(shift))
    return Multigraph(g.vertex_count - 1, tuple(new_edges), g.labels[:i] + g.labels[i + 1:])


def bicircular_delete(g: Multigraph, e: Hashable) -> Multigraph:
    return delete_edge(g, e)


def wagner_3connected(g: Multigraph) -> bool:
    """Wagner's criterion for 3-connectivity of ``B(G)``.

    Valid for connected graphs without free edges on at least three vertices:
    ``G`` must be 2-connected, have no vertex of degree 2 and no two loops at a
    vertex.
    """
    if g.vertex_count < 3 or g.free_count or not is_connected(g):
        raise ValueError("Wagner's criterion needs a connected graph on >= 3 vertices without free edges")
    p = graph_properties(g)
    return p.is_2connected and p.min_degree >= 3 and p.max_loops_per_vertex <= 1


# -- representation search -----------------------------------------------------


@dataclass(frozen=True)
class RepresentationCatalog:
    target: Matroid
    graphs: tuple[Multigraph, ...]

    def __len__(self) -> int:
        return len(self.graphs)


def _search_order(m: Matroid) -> list[int]:
    circ = sorted(m.circuits, key=popcount)
    order: list[int] = []
    placed = 0
    while len(order) < m.n:
        best = None
        for i in range(m.n):
            if placed >> i & 1:
                continue
            closes = sum(1 for c in circ if c >> i & 1 and (c & ~(1 << i)) & ~placed == 0)
            touches = sum(1 for c in circ if c >> i & 1 and c & placed)
            key = (-closes, -touches, i)
            if best is None or key < best[0]:
                best = (key, i)
        order.append(best[1])
        placed |= 1 << best[1]
    return order


def _labeled_representations(m: Matroid, first_only: bool) -> Iterator[Multigraph]:
    """Graphs ``G`` on ``rank(M)`` vertices with ``B(G) == M`` as labelled matroids.

    Elements are placed one at a time.  After placing element ``k`` the partial
    graph must realise ``M`` restricted to the placed elements: every circuit
    through ``k`` must be dependent and every basis of the restriction through
    ``k`` independent (earlier elements were checked at earlier steps).
    Vertices are introduced in increasing order to avoid relabelled copies.
    """
    n, r = m.n, m.rank
    order = _search_order(m)
    ind = m.independence_table
    rank = m.rank_table

    def pos_mask(orig: int) -> int:
        return sum(1 << k for k, e in enumerate(order) if orig >> e & 1)

    dep_checks: list[list[int]] = []
    ind_checks: list[list[int]] = []
    prefix = 0
    for k, e in enumerate(order):
        prefix |= 1 << e
        circ = [c for c in m.circuits if c >> e & 1 and c & ~prefix == 0]
        dep_checks.append(sorted((pos_mask(c) for c in circ), key=popcount))
        rk = int(rank[prefix])
        others = [x for x in bits(prefix) if x != e]
        found = []
        for combo in combinations(others, rk - 1):
            s = (1 << e) | sum(1 << x for x in combo)
            if ind[s]:
                found.append(pos_mask(s))
        ind_checks.append(found)

    cocircuits = sorted({pos_mask(c) for c in dual(m).circuits}, key=popcount)

    ends: list[tuple[int, int]] = []

    def stars_ok(k: int) -> bool:
        # the edges missing a vertex span at most r - 1 vertices, so each vertex
        # star contains a cocircuit.  Unplaced elements of that cocircuit still
        # have to land on the vertex, and each element reaches at most two stars.
        placed = (1 << k) - 1
        star = [0] * r
        for i, (a, b) in enumerate(ends):
            star[a] |= 1 << i
            star[b] |= 1 << i
        need = 0
        for s in star:
            best = min((popcount(d & ~placed) for d in cocircuits if d & placed & ~s == 0), default=None)
            if best is None:
                return False
            need += best
        return need <= 2 * (n - k)

    def slots(used: int) -> Iterator[tuple[int, int, int]]:
        for v in range(min(used + 1, r)):
            yield v, v, max(used, v + 1)
        for a in range(min(used + 1, r)):
            for b in range(a + 1, min(max(used, a + 1) + 1, r)):
                yield a, b, max(used, b + 1)

    def rec(k: int, used: int) -> Iterator[list[tuple[int, int]]]:
        if k == n:
            if used == r:
                yield list(ends)
            return
        if r - used > 2 * (n - k):
            return
        for a, b, nu in slots(used):
            ends.append((a, b))
            ok = all(not _independent(r, ends, c) for c in dep_checks[k]) and all(
                _independent(r, ends, s) for s in ind_checks[k]
            )
            if ok and stars_ok(k + 1):
                yield from rec(k + 1, nu)
            ends.pop()

    if not stars_ok(0):
        return
    for sol in rec(0, 0):
        edges = [None] * n
        for k, e in enumerate(order):
            a, b = sol[k]
            edges[e] = Edge.loop(a) if a == b else Edge.link(a, b)
        yield Multigraph(r, tuple(edges), m.labels)
        if first_only:
            return


def _check_size(m: Matroid) -> None:
    if m.n > MAX_REPRESENTATION:
        raise ValueError(f"representation search supports at most {MAX_REPRESENTATION} elements")


def _single_element_graphs(m: Matroid) -> list[Multigraph]:
    if m.n == 0:
        return [Multigraph(0, ())]
    if m.rank == 0:
        return [Multigraph(0, (Edge.free(),), m.labels)]
    return [Multigraph(2, (Edge.link(0, 1),), m.labels), Multigraph(1, (Edge.loop(0),), m.labels)]


def enumerate_representations(m: Matroid) -> RepresentationCatalog:
    """All graphs ``G`` (up to isomorphism, without isolated vertices) with ``B(G) ≅ M``."""
    _check_size(m)
    if m.n <= 1:
        graphs = _single_element_graphs(m)
    else:
        if len(components(m)) > 1:
            raise ValueError("representation search needs a connected matroid")
        seen: dict[bytes, Multigraph] = {}
        for g in _labeled_representations(m, first_only=False):
            seen.setdefault(canonical_form(g), g)
        graphs = [seen[k] for k in sorted(seen)]
    for g in graphs:
        if not matroid_isomorphic(bicircular_matroid(g), m):
            raise AssertionError("representation search produced an uncertified graph")
    return RepresentationCatalog(m, tuple(graphs))


@lru_cache(maxsize=4096)
def _component_representation(m: Matroid) -> Multigraph | None:
    if m.n <= 1:
        return _single_element_graphs(m)[0]
    return next(_labeled_representations(m, first_only=True), None)


def find_representation(m: Matroid) -> Multigraph | None:
    """A graph ``G`` with ``B(G) == M`` (same labels), or ``None``.

    Disconnected matroids are handled componentwise since ``B`` of a disjoint
    union is the direct sum.
    """
    _check_size(m)
    parts = components(m) if m.n > 1 else [m.full]
    g = Multigraph(0, ())
    for comp in parts:
        rep = _component_representation(restrict(m, comp))
        if rep is None:
            return None
        g = disjoint_union(g, rep)
    order = [g.labels.index(x) for x in m.labels]
    return Multigraph(g.vertex_count, tuple(g.edges[i] for i in order), m.labels)


def is_bicircular(m: Matroid) -> bool:
    return find_representation(m) is not None


def find_cobicircular_witness(m: Matroid) -> Multigraph | None:
    """A graph ``G`` with ``B(G) == M*``."""
    return find_representation(dual(m))


def is_cobicircular(m: Matroid) -> bool:
    return find_cobicircular_witness(m) is not None


@dataclass(frozen=True)
class MinimalityReport:
    """Outcome of the minimal non-cobicircularity test with its certificates."""

    cobicircular_witness: Multigraph | None
    deletion_witnesses: dict
    contraction_witnesses: dict

    @property
    def minimally_not_cobicircular(self) -> bool:
        return (
            self.cobicircular_witness is None
            and all(w is not None for w in self.deletion_witnesses.values())
            and all(w is not None for w in self.contraction_witnesses.values())
        )


def minimality_report(m: Matroid) -> MinimalityReport:
    _check_size(m)
    dels = {x: find_cobicircular_witness(delete(m, 1 << i)) for i, x in enumerate(m.labels)}
    cons = {x: find_cobicircular_witness(contract(m, 1 << i)) for i, x in enumerate(m.labels)}
    return MinimalityReport(find_cobicircular_witness(m), dels, cons)


def is_minimally_not_cobicircular(m: Matroid) -> bool:
    _check_size(m)
    if is_cobicircular(m):
        return False
    return all(
        is_cobicircular(delete(m, 1 << i)) and is_cobicircular(contract(m, 1 << i)) for i in range(m.n)
    )


# -- named matroids ----------------------------------------------------------------

EXCLUDED_MINORS = ("U2,7", "U2,6p", "U2,5pp", "MK23", "T223", "T222p", "W4", "K4l", "D4ll")
BUILTIN_MATROIDS = EXCLUDED_MINORS + ("U4,6", "W3", "U3,6", "U3,5")


def named_matroid(key: str) -> Matroid:
    """Builtin matroids: ``Ur,n``; primes mark coparallel extensions of uniform
    matroids (``U2,6p``, ``U2,5pp``); ``W3`` the rank-3 whirl; ``MK23`` the cycle
    matroid of K_{2,3}; any other key is a named graph ``G`` standing for ``B(G)``."""
    key = key.strip().replace("'", "p")
    if m := re.fullmatch(r"U(\d+),(\d+)(p*)", key):
        mat = uniform(int(m.group(1)), int(m.group(2)))
        for i in range(len(m.group(3))):
            mat = coparallel_extend(mat, i)
        return mat
    if key == "W3":
        return whirl3()
    if key == "MK23":
        return graphic_matroid(build_named("K23"))
    return bicircular_matroid(build_named(key))

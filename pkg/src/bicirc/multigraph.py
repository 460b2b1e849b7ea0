"""Multigraphs with links, loops and free edges.

A :class:`Multigraph` is an immutable value: a vertex count plus an ordered
tuple of edges, each carrying a distinct label.  Edge order is the ground-set
order of every matroid derived from the graph.

Besides construction and the ``.bgr`` text format this module provides the
ordinary (graphic-sense) minor operations, canonical forms for isomorphism
testing, and a small registry of named graphs.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from itertools import combinations
from typing import Hashable, Iterable, Iterator, Sequence

LINK = "link"
LOOP = "loop"
FREE = "free"

MAX_CANONICAL_VERTICES = 10
MAX_MINOR_EDGES = 12


@dataclass(frozen=True, order=True)
class Edge:
    kind: str
    u: int = -1
    v: int = -1

    def __post_init__(self) -> None:
        if self.kind == LINK:
            if self.u == self.v or self.u < 0 or self.v < 0:
                raise ValueError(f"link needs two distinct vertices, got ({self.u}, {self.v})")
        elif self.kind == LOOP:
            if self.u < 0 or self.u != self.v:
                raise ValueError("loop needs a single vertex")
        elif self.kind == FREE:
            if (self.u, self.v) != (-1, -1):
                raise ValueError("free edges are not incident to vertices")
        else:
            raise ValueError(f"unknown edge kind {self.kind!r}")

    @classmethod
    def link(cls, u: int, v: int) -> "Edge":
        return cls(LINK, u, v)

    @classmethod
    def loop(cls, v: int) -> "Edge":
        return cls(LOOP, v, v)

    @classmethod
    def free(cls) -> "Edge":
        return cls(FREE)

    @property
    def ends(self) -> tuple[int, ...]:
        if self.kind == LINK:
            return (self.u, self.v)
        if self.kind == LOOP:
            return (self.u,)
        return ()

    def mapped(self, f) -> "Edge":
        """Image of the edge under a vertex map; a link whose ends collide becomes a loop."""
        if self.kind == FREE:
            return self
        a, b = f(self.u), f(self.v)
        return Edge(LOOP, a, a) if a == b else Edge(LINK, a, b)


@dataclass(frozen=True)
class Multigraph:
    vertex_count: int
    edges: tuple[Edge, ...]
    labels: tuple[Hashable, ...] = field(default=())

    def __post_init__(self) -> None:
        edges = tuple(self.edges)
        object.__setattr__(self, "edges", edges)
        labels = tuple(self.labels) if self.labels else tuple(range(len(edges)))
        object.__setattr__(self, "labels", labels)
        if self.vertex_count < 0:
            raise ValueError("negative vertex count")
        if len(labels) != len(edges):
            raise ValueError("one label per edge required")
        if len(set(labels)) != len(labels):
            raise ValueError("edge labels must be distinct")
        for e in edges:
            if any(x >= self.vertex_count for x in e.ends):
                raise ValueError(f"edge {e} refers to a missing vertex")

    def __len__(self) -> int:
        return len(self.edges)

    def __repr__(self) -> str:
        body = ", ".join(_edge_text(e) for e in self.edges)
        return f"Multigraph({self.vertex_count}, [{body}])"

    @classmethod
    def from_spec(cls, vertex_count: int, spec: Iterable, labels: Sequence[Hashable] = ()) -> "Multigraph":
        """Build from shorthand: ``(u, v)`` is a link, ``(v,)`` a loop, ``()`` a free edge."""
        edges = []
        for item in spec:
            item = tuple(item)
            if len(item) == 2:
                edges.append(Edge.link(*item))
            elif len(item) == 1:
                edges.append(Edge.loop(item[0]))
            elif not item:
                edges.append(Edge.free())
            else:
                raise ValueError(f"bad edge shorthand {item!r}")
        return cls(vertex_count, tuple(edges), tuple(labels))

    def index(self, label: Hashable) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"no edge labelled {label!r}") from None

    def edge(self, label: Hashable) -> Edge:
        return self.edges[self.index(label)]

    def with_labels(self, labels: Sequence[Hashable]) -> "Multigraph":
        return Multigraph(self.vertex_count, self.edges, tuple(labels))

    def add_edges(self, edges: Iterable[Edge], labels: Sequence[Hashable] = ()) -> "Multigraph":
        edges = tuple(edges)
        if not labels:
            labels = _fresh_labels(self.labels, len(edges))
        return Multigraph(self.vertex_count, self.edges + edges, self.labels + tuple(labels))

    @property
    def loop_count(self) -> int:
        return sum(e.kind == LOOP for e in self.edges)

    @property
    def free_count(self) -> int:
        return sum(e.kind == FREE for e in self.edges)

    def degrees(self) -> list[int]:
        deg = [0] * self.vertex_count
        for e in self.edges:
            if e.kind == LINK:
                deg[e.u] += 1
                deg[e.v] += 1
            elif e.kind == LOOP:
                deg[e.u] += 2
        return deg

    def loops_at(self) -> list[int]:
        loops = [0] * self.vertex_count
        for e in self.edges:
            if e.kind == LOOP:
                loops[e.u] += 1
        return loops

    def multiplicity(self) -> list[list[int]]:
        """Symmetric link-multiplicity matrix; the diagonal holds loop counts."""
        n = self.vertex_count
        a = [[0] * n for _ in range(n)]
        for e in self.edges:
            if e.kind == LINK:
                a[e.u][e.v] += 1
                a[e.v][e.u] += 1
            elif e.kind == LOOP:
                a[e.u][e.u] += 1
        return a

    def isolated_vertices(self) -> list[int]:
        touched = set()
        for e in self.edges:
            touched.update(e.ends)
        return [v for v in range(self.vertex_count) if v not in touched]


def _fresh_labels(existing: Sequence[Hashable], k: int) -> tuple[Hashable, ...]:
    ints = [x for x in existing if isinstance(x, int)]
    start = max(ints, default=-1) + 1
    taken = set(existing)
    out = []
    x = start
    while len(out) < k:
        if x not in taken:
            out.append(x)
        x += 1
    return tuple(out)


def _edge_text(e: Edge) -> str:
    if e.kind == LINK:
        return f"link {e.u} {e.v}"
    if e.kind == LOOP:
        return f"loop {e.u}"
    return "free"


# --------------------------------------------------------------------------
# .bgr text format


def format_bgr(g: Multigraph, comments: Sequence[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(f"vertices {g.vertex_count}")
    lines.extend(_edge_text(e) for e in g.edges)
    return "\n".join(lines) + "\n"


class BgrParseError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def parse_bgr(text: str) -> Multigraph:
    n = None
    edges: list[Edge] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            if n is None:
                if parts[0] != "vertices" or len(parts) != 2:
                    raise BgrParseError(lineno, "expected 'vertices N'")
                n = int(parts[1])
                continue
            if parts[0] == "link" and len(parts) == 3:
                e = Edge.link(int(parts[1]), int(parts[2]))
            elif parts[0] == "loop" and len(parts) == 2:
                e = Edge.loop(int(parts[1]))
            elif parts[0] == "free" and len(parts) == 1:
                e = Edge.free()
            else:
                raise BgrParseError(lineno, f"cannot parse {line!r}")
        except BgrParseError:
            raise
        except ValueError as exc:
            raise BgrParseError(lineno, str(exc)) from None
        if any(x >= n for x in e.ends):
            raise BgrParseError(lineno, f"vertex index out of range in {line!r}")
        edges.append(e)
    if n is None:
        raise BgrParseError(0, "missing 'vertices N' header")
    return Multigraph(n, tuple(edges))


def parse_bgr_bundle(text: str) -> dict[str, tuple[Multigraph, list[str]]]:
    """Split a multi-graph file into named blocks.

    Each block starts with a ``# name: KEY`` comment; other comment lines up to
    the next block are kept as provenance notes.
    """
    blocks: dict[str, tuple[list[str], list[str]]] = {}
    current = None
    for raw in text.splitlines():
        m = re.match(r"#\s*name:\s*(\S+)", raw.strip())
        if m:
            current = m.group(1)
            blocks[current] = ([], [])
            continue
        if current is None:
            continue
        body, notes = blocks[current]
        if raw.strip().startswith("#"):
            notes.append(raw.strip().lstrip("#").strip())
        body.append(raw)
    return {k: (parse_bgr("\n".join(body)), notes) for k, (body, notes) in blocks.items()}


# --------------------------------------------------------------------------
# graph-sense minor operations


def delete_edge(g: Multigraph, e: Hashable) -> Multigraph:
    i = g.index(e)
    return Multigraph(g.vertex_count, g.edges[:i] + g.edges[i + 1:], g.labels[:i] + g.labels[i + 1:])


def delete_edges(g: Multigraph, labels: Iterable[Hashable]) -> Multigraph:
    drop = {g.index(x) for x in labels}
    keep = [i for i in range(len(g)) if i not in drop]
    return Multigraph(g.vertex_count, tuple(g.edges[i] for i in keep), tuple(g.labels[i] for i in keep))


def identify_vertices(g: Multigraph, a: int, b: int) -> Multigraph:
    """Merge vertices ``a`` and ``b`` into the smaller index and compact indices."""
    lo, hi = min(a, b), max(a, b)

    def f(x: int) -> int:
        if x == hi:
            x = lo
        return x - 1 if x > hi else x

    return Multigraph(g.vertex_count - 1, tuple(e.mapped(f) for e in g.edges), g.labels)


def contract_link(g: Multigraph, e: Hashable) -> Multigraph:
    i = g.index(e)
    edge = g.edges[i]
    if edge.kind != LINK:
        raise ValueError(f"edge {e!r} is a {edge.kind}, not a link")
    h = identify_vertices(g, edge.u, edge.v)
    return Multigraph(h.vertex_count, h.edges[:i] + h.edges[i + 1:], h.labels[:i] + h.labels[i + 1:])


def contract_edge(g: Multigraph, e: Hashable) -> Multigraph:
    """Ordinary graph contraction: loops and free edges are simply deleted."""
    if g.edge(e).kind == LINK:
        return contract_link(g, e)
    return delete_edge(g, e)


def delete_vertex(g: Multigraph, v: int) -> Multigraph:
    if any(v in e.ends for e in g.edges):
        raise ValueError(f"vertex {v} is not isolated")
    f = lambda x: x - 1 if x > v else x
    return Multigraph(g.vertex_count - 1, tuple(e.mapped(f) for e in g.edges), g.labels)


def strip_isolated(g: Multigraph) -> Multigraph:
    for v in reversed(g.isolated_vertices()):
        g = delete_vertex(g, v)
    return g


def relabel_vertices(g: Multigraph, perm: Sequence[int]) -> Multigraph:
    """Vertex ``v`` becomes ``perm[v]``."""
    if sorted(perm) != list(range(g.vertex_count)):
        raise ValueError("not a permutation of the vertices")
    return Multigraph(g.vertex_count, tuple(e.mapped(lambda x: perm[x]) for e in g.edges), g.labels)


def disjoint_union(g: Multigraph, h: Multigraph) -> Multigraph:
    off = g.vertex_count
    edges = g.edges + tuple(e.mapped(lambda x: x + off) for e in h.edges)
    return Multigraph(g.vertex_count + h.vertex_count, edges, g.labels + h.labels)


# --------------------------------------------------------------------------
# connectivity and the properties used by Wagner's criterion


def _components(n: int, pairs: Iterable[tuple[int, int]], skip: int = -1) -> list[set[int]]:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in pairs:
        if skip in (a, b):
            continue
        parent[find(a)] = find(b)
    comps: dict[int, set[int]] = {}
    for v in range(n):
        if v != skip:
            comps.setdefault(find(v), set()).add(v)
    return list(comps.values())


def link_pairs(g: Multigraph) -> list[tuple[int, int]]:
    return [(e.u, e.v) for e in g.edges if e.kind == LINK]


def is_connected(g: Multigraph) -> bool:
    return len(_components(g.vertex_count, link_pairs(g))) <= 1


def is_2connected(g: Multigraph) -> bool:
    """Connected, at least three vertices and no cut vertex (loops and free edges ignored)."""
    if g.vertex_count < 3 or not is_connected(g):
        return False
    pairs = link_pairs(g)
    return all(len(_components(g.vertex_count, pairs, skip=v)) == 1 for v in range(g.vertex_count))


def is_3connected_graph(g: Multigraph) -> bool:
    """Vertex 3-connectivity of the underlying graph: at least four vertices and
    no pair of vertices whose removal disconnects it."""
    n = g.vertex_count
    if n < 4 or not is_2connected(g):
        return False
    pairs = link_pairs(g)
    for a, b in combinations(range(n), 2):
        rest = [(x, y) for x, y in pairs if x not in (a, b) and y not in (a, b)]
        keep = [v for v in range(n) if v not in (a, b)]
        idx = {v: i for i, v in enumerate(keep)}
        if len(_components(len(keep), [(idx[x], idx[y]) for x, y in rest])) > 1:
            return False
    return True


@dataclass(frozen=True)
class GraphProperties:
    is_2connected: bool
    min_degree: int
    max_loops_per_vertex: int
    has_free_edge: bool


def graph_properties(g: Multigraph) -> GraphProperties:
    deg = g.degrees()
    return GraphProperties(
        is_2connected=is_2connected(g),
        min_degree=min(deg, default=0),
        max_loops_per_vertex=max(g.loops_at(), default=0),
        has_free_edge=g.free_count > 0,
    )


# --------------------------------------------------------------------------
# canonical forms


def _refine(colors: list[int], adj: list[list[int]]) -> list[int]:
    n = len(colors)
    while True:
        sigs = []
        for i in range(n):
            nb = sorted((colors[j], adj[i][j]) for j in range(n) if j != i and adj[i][j])
            sigs.append((colors[i], tuple(nb)))
        order = {s: k for k, s in enumerate(sorted(set(sigs)))}
        new = [order[s] for s in sigs]
        if len(order) == len(set(colors)):
            return new
        colors = new


def _encode(order: Sequence[int], adj: list[list[int]]) -> tuple:
    n = len(order)
    loops = tuple(adj[order[i]][order[i]] for i in range(n))
    links = tuple(adj[order[i]][order[j]] for i in range(n) for j in range(i + 1, n))
    return loops + links


def _canonical_search(colors: list[int], adj: list[list[int]]) -> tuple:
    n = len(colors)
    if len(set(colors)) == n:
        order = sorted(range(n), key=colors.__getitem__)
        return _encode(order, adj)
    cells: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        cells.setdefault(c, []).append(v)
    target = min((c for c, vs in cells.items() if len(vs) > 1), key=lambda c: (len(cells[c]), c))
    best = None
    for v in cells[target]:
        split = [2 * c + (1 if c == target and u != v else 0) for u, c in enumerate(colors)]
        code = _canonical_search(_refine(split, adj), adj)
        if best is None or code < best:
            best = code
    return best


def canonical_form(g: Multigraph) -> bytes:
    """Byte string equal for two graphs exactly when they are isomorphic.

    Colour refinement on (loops, degree, neighbourhood multiset) prunes the
    permutation search; only vertices in the same refined cell are branched on.
    """
    n = g.vertex_count
    if n > MAX_CANONICAL_VERTICES:
        raise ValueError(f"canonical_form supports at most {MAX_CANONICAL_VERTICES} vertices, got {n}")
    adj = g.multiplicity()
    deg = g.degrees()
    init = [(adj[v][v], deg[v]) for v in range(n)]
    rank = {s: k for k, s in enumerate(sorted(set(init)))}
    colors = _refine([rank[s] for s in init], adj) if n else []
    code = _canonical_search(colors, adj) if n else ()
    return f"{n}|{g.free_count}|{','.join(map(str, code))}".encode()


def is_isomorphic(g: Multigraph, h: Multigraph) -> bool:
    if (g.vertex_count, len(g), g.loop_count, g.free_count) != (h.vertex_count, len(h), h.loop_count, h.free_count):
        return False
    if sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return canonical_form(g) == canonical_form(h)


# --------------------------------------------------------------------------
# ordinary graph minors


@dataclass(frozen=True)
class MinorWitness:
    """Contract ``contract`` (in order), delete ``delete``, then drop ``drop_isolated`` isolated vertices."""

    contract: tuple[Hashable, ...]
    delete: tuple[Hashable, ...]
    drop_isolated: int


def replay_minor(g: Multigraph, w: MinorWitness) -> Multigraph:
    for x in w.contract:
        g = contract_link(g, x)
    g = delete_edges(g, w.delete)
    for _ in range(w.drop_isolated):
        iso = g.isolated_vertices()
        if not iso:
            raise ValueError("witness drops more vertices than are isolated")
        g = delete_vertex(g, iso[-1])
    return g


def _connected_partitions(n: int, adj_sets: list[set[int]], min_parts: int) -> Iterator[list[list[int]]]:
    """Set partitions of range(n) whose blocks induce connected subgraphs."""
    blocks: list[list[int]] = []

    def connected(block: list[int]) -> bool:
        if len(block) == 1:
            return True
        seen = {block[0]}
        stack = [block[0]]
        members = set(block)
        while stack:
            x = stack.pop()
            for y in adj_sets[x]:
                if y in members and y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == len(block)

    def rec(v: int) -> Iterator[list[list[int]]]:
        if len(blocks) + (n - v) < min_parts:
            return
        if v == n:
            if all(connected(b) for b in blocks):
                yield [list(b) for b in blocks]
            return
        for b in blocks:
            b.append(v)
            yield from rec(v + 1)
            b.pop()
        blocks.append([v])
        yield from rec(v + 1)
        blocks.pop()

    yield from rec(0)


def find_graph_minor(g: Multigraph, h: Multigraph) -> MinorWitness | None:
    """Search for an ordinary minor of ``g`` isomorphic to ``h``.

    Contracting a set of links only matters through the partition of vertices
    it induces, so the search runs over partitions into connected blocks and
    then looks for ``h`` as a sub-multigraph of the contracted graph.
    """
    if len(g) > MAX_MINOR_EDGES or len(h) > MAX_MINOR_EDGES:
        raise ValueError(f"graph minor search supports at most {MAX_MINOR_EDGES} edges")
    if len(h) > len(g) or h.free_count > g.free_count or h.vertex_count > g.vertex_count:
        return None
    n = g.vertex_count
    adj_sets: list[set[int]] = [set() for _ in range(n)]
    for a, b in link_pairs(g):
        adj_sets[a].add(b)
        adj_sets[b].add(a)
    h_adj = h.multiplicity()
    h_core = [v for v in range(h.vertex_count) if any(h_adj[v]) or h_adj[v][v]]
    h_core.sort(key=lambda v: -sum(h_adj[v]))
    for parts in _connected_partitions(n, adj_sets, h.vertex_count):
        where = [0] * n
        for k, block in enumerate(parts):
            for v in block:
                where[v] = k
        m = len(parts)
        # edge indices grouped by their image in the contracted graph
        slots: dict[tuple[int, int], list[int]] = {}
        tree: list[int] = []
        uf = list(range(n))

        def find(x: int) -> int:
            while uf[x] != x:
                uf[x] = uf[uf[x]]
                x = uf[x]
            return x

        for i, e in enumerate(g.edges):
            if e.kind == FREE:
                continue
            a, b = where[e.u], where[e.v]
            if e.kind == LINK and a == b and find(e.u) != find(e.v):
                uf[find(e.u)] = find(e.v)
                tree.append(i)
                continue
            key = (min(a, b), max(a, b))
            slots.setdefault(key, []).append(i)
        mult = {k: len(v) for k, v in slots.items()}
        phi = _embed(h_core, h_adj, m, mult)
        if phi is None:
            continue
        keep: list[int] = []
        for i, a in enumerate(h_core):
            if h_adj[a][a]:
                keep.extend(slots[(phi[a], phi[a])][: h_adj[a][a]])
            for b in h_core[:i]:
                if h_adj[a][b]:
                    x, y = sorted((phi[a], phi[b]))
                    keep.extend(slots[(x, y)][: h_adj[a][b]])
        frees = [i for i, e in enumerate(g.edges) if e.kind == FREE]
        keep.extend(frees[: h.free_count])
        keep_set = set(keep) | set(tree)
        return MinorWitness(
            contract=tuple(g.labels[i] for i in tree),
            delete=tuple(g.labels[i] for i in range(len(g)) if i not in keep_set),
            drop_isolated=m - h.vertex_count,
        )
    return None


def _embed(core: list[int], h_adj: list[list[int]], m: int, mult: dict[tuple[int, int], int]) -> dict[int, int] | None:
    phi: dict[int, int] = {}
    used: set[int] = set()

    def rec(i: int) -> bool:
        if i == len(core):
            return True
        a = core[i]
        for x in range(m):
            if x in used or mult.get((x, x), 0) < h_adj[a][a]:
                continue
            ok = True
            for b in core[:i]:
                need = h_adj[a][b]
                if need and mult.get((min(x, phi[b]), max(x, phi[b])), 0) < need:
                    ok = False
                    break
            if ok:
                phi[a] = x
                used.add(x)
                if rec(i + 1):
                    return True
                used.discard(x)
                del phi[a]
        return False

    return dict(phi) if rec(0) else None


def graph_minor_contains(g: Multigraph, h: Multigraph) -> bool:
    return find_graph_minor(g, h) is not None


# --------------------------------------------------------------------------
# named graphs


def cycle(n: int) -> Multigraph:
    if n < 2:
        raise ValueError("cycles need at least two vertices")
    return Multigraph.from_spec(n, [(i, (i + 1) % n) for i in range(n)])


def doubled_cycle(n: int) -> Multigraph:
    if n < 2:
        raise ValueError("2C_n needs n >= 2")
    return Multigraph.from_spec(n, [(i, (i + 1) % n) for i in range(n) for _ in range(2)])


def multilink(m: int) -> Multigraph:
    if m < 1:
        raise ValueError("multilink needs at least one link")
    return Multigraph.from_spec(2, [(0, 1)] * m)


def fat_triangle(a: int, b: int, c: int) -> Multigraph:
    if min(a, b, c) < 1:
        raise ValueError(f"triangle multiplicities must be >= 1, got ({a}, {b}, {c})")
    return Multigraph.from_spec(3, [(0, 1)] * a + [(1, 2)] * b + [(2, 0)] * c)


def wheel(n: int) -> Multigraph:
    if n < 3:
        raise ValueError("wheels need a rim of length >= 3")
    rim = [(i, (i + 1) % n) for i in range(n)]
    spokes = [(i, n) for i in range(n)]
    return Multigraph.from_spec(n + 1, rim + spokes)


def with_loop(g: Multigraph, v: int = 0) -> Multigraph:
    return g.add_edges([Edge.loop(v)])


def with_all_loops(g: Multigraph) -> Multigraph:
    return g.add_edges([Edge.loop(v) for v in range(g.vertex_count)])


K4_SPEC = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]

_FIXED = {
    "K4": lambda: Multigraph.from_spec(4, K4_SPEC),
    "K4+": lambda: Multigraph.from_spec(4, K4_SPEC + [(0, 1)]),
    "K4++": lambda: Multigraph.from_spec(4, K4_SPEC + [(0, 1), (2, 3)]),
    "C4++": lambda: Multigraph.from_spec(4, [(0, 1), (0, 1), (1, 2), (2, 3), (2, 3), (3, 0)]),
    "K23": lambda: Multigraph.from_spec(5, [(a, b) for a in (0, 1) for b in (2, 3, 4)]),
    # doubled triangle with one edge subdivided
    "T222p": lambda: Multigraph.from_spec(4, [(0, 1), (0, 3), (3, 1), (1, 2), (1, 2), (2, 0), (2, 0)]),
}

FIGURE_GRAPHS = ("N8", "O8", "Z8", "Z8d", "F10", "D4ll")


@lru_cache(maxsize=None)
def figure_graph_data() -> dict[str, tuple[Multigraph, list[str]]]:
    try:
        text = resources.files("bicirc").joinpath("data/figure_graphs.bgr").read_text()
    except FileNotFoundError:
        return {}
    return parse_bgr_bundle(text)


def figure_graph(name: str) -> Multigraph:
    data = figure_graph_data()
    if name not in data:
        raise FileNotFoundError(f"figure graph {name} is missing from data/figure_graphs.bgr")
    return data[name][0]


def _build_base(key: str) -> Multigraph | None:
    if key in _FIXED:
        return _FIXED[key]()
    if key in FIGURE_GRAPHS:
        return figure_graph(key)
    if m := re.fullmatch(r"2C(\d+)", key):
        return doubled_cycle(int(m.group(1)))
    if m := re.fullmatch(r"C(\d+)", key):
        return cycle(int(m.group(1)))
    if m := re.fullmatch(r"(\d+)K2", key):
        return multilink(int(m.group(1)))
    if m := re.fullmatch(r"W(\d+)", key):
        return wheel(int(m.group(1)))
    if m := re.fullmatch(r"T(\d+)_(\d+)_(\d+)", key) or re.fullmatch(r"T(\d)(\d)(\d)", key):
        return fat_triangle(*(int(x) for x in m.groups()))
    return None


def _clean_key(key: str) -> str:
    k = key.strip().replace("{", "").replace("}", "").replace(",", "_").replace("'", "p")
    k = k.replace("ℓ", "l").replace("∘", "o")
    k = re.sub(r"^T_", "T", k)
    k = re.sub(r"^(\d*)C_", r"\1C", k)
    k = re.sub(r"^W_", "W", k)
    return "T222p" if k in ("T2_2_2p", "T222p") else k


def build_named(key: str) -> Multigraph:
    """Build a graph from the registry grammar, e.g. ``2C3``, ``T_2_2_3``, ``K4^l``, ``C3^o``.

    The loop suffixes may also be written without the caret (``C3o``, ``K4l``)
    as long as the result is not itself a registry name.
    """
    k = _clean_key(key)
    base = _build_base(k)
    if base is not None:
        return base
    m = re.fullmatch(r"(.+?)_?\^?([lo])", k)
    if m:
        base = _build_base(m.group(1))
        if base is not None:
            return with_loop(base) if m.group(2) == "l" else with_all_loops(base)
    raise KeyError(f"unknown named graph {key!r}")

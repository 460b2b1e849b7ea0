"""2-sums and the canonical tree decomposition of non-separable multigraphs.

Every loopless non-separable graph is built by 2-sums from cycles,
multilinks ``mK2`` (``m >= 3``) and 3-connected simple graphs, along a tree in
which no two cycles and no two multilinks are adjacent.  That tree is unique.

The decomposition here is exhaustive: split off parallel classes, split along
any 2-vertex separation, and finally merge adjacent terms of the same kind.
Terms keep the vertex ids of the input graph while they are built, so the two
copies of a virtual edge always join the same pair of vertices.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations, count
from typing import Hashable, Iterable

from .multigraph import (
    LINK,
    Edge,
    Multigraph,
    _fresh_labels,
    canonical_form,
    format_bgr,
    is_2connected,
    is_3connected_graph,
)

THREE_CONNECTED = "3-connected"
CYCLE = "cycle"
MULTILINK = "multilink"
MAX_DECOMPOSITION_EDGES = 12


@dataclass(frozen=True, order=True)
class Virtual:
    """Label of a virtual edge; never equal to a label of the input graph."""

    index: int

    def __repr__(self) -> str:
        return f"v{self.index}"


@dataclass(frozen=True)
class TwoSumSite:
    graph: Multigraph
    edge: Hashable

    def __post_init__(self) -> None:
        if self.graph.edge(self.edge).kind != LINK:
            raise ValueError("the 2-sum edge must be a link")


def _glue(g1: Multigraph, e1: Hashable, g2: Multigraph, e2: Hashable, pairs) -> tuple[Multigraph, dict[int, int]]:
    """2-sum with an explicit vertex matching ``pairs = ((a1, a2), (b1, b2))``.

    Returns the sum and the map from vertices of ``g2`` to vertices of the sum.
    """
    (a1, a2), (b1, b2) = pairs
    i1, i2 = g1.index(e1), g2.index(e2)
    vmap = {a2: a1, b2: b1}
    nxt = g1.vertex_count
    for v in range(g2.vertex_count):
        if v not in vmap:
            vmap[v] = nxt
            nxt += 1
    edges = [e for k, e in enumerate(g1.edges) if k != i1]
    labels = [x for k, x in enumerate(g1.labels) if k != i1]
    for k, e in enumerate(g2.edges):
        if k != i2:
            edges.append(e.mapped(vmap.__getitem__))
            labels.append(g2.labels[k])
    if len(set(labels)) != len(labels):
        raise ValueError("2-sum operands share edge labels")
    return Multigraph(nxt, tuple(edges), tuple(labels)), vmap


def two_sum(s1: TwoSumSite, s2: TwoSumSite, flip: bool = False) -> Multigraph:
    """Identify the designated edges end to end and delete them.

    The first end of the first edge meets the first end of the second edge,
    unless ``flip`` is set.  ``G2`` vertices are appended after those of ``G1``;
    if the remaining labels of ``G2`` clash with those of ``G1`` they are
    replaced by fresh ones.
    """
    g1, g2, e2 = s1.graph, s2.graph, s2.edge
    u1, v1 = g1.edge(s1.edge).ends
    u2, v2 = g2.edge(e2).ends
    if flip:
        u2, v2 = v2, u2
    keep1 = set(g1.labels) - {s1.edge}
    if keep1 & (set(g2.labels) - {e2}):
        fresh = iter(_fresh_labels(g1.labels, len(g2)))
        g2 = g2.with_labels([x if x == e2 else next(fresh) for x in g2.labels])
    return _glue(g1, s1.edge, g2, e2, ((u1, u2), (v1, v2)))[0]


@dataclass(frozen=True)
class TreeNode:
    kind: str
    graph: Multigraph
    vertices: tuple[int, ...] = ()  # input vertex of each local vertex, when known


@dataclass(frozen=True)
class TreeEdge:
    """Virtual edge ``label`` shared by nodes ``a`` and ``b``; ``match`` pairs
    local vertices of ``a`` with local vertices of ``b``."""

    a: int
    b: int
    label: Hashable
    match: tuple[tuple[int, int], tuple[int, int]]


@dataclass(frozen=True)
class DecompositionTree:
    nodes: tuple[TreeNode, ...]
    edges: tuple[TreeEdge, ...]

    def neighbours(self, i: int) -> list[int]:
        return [e.b if e.a == i else e.a for e in self.edges if i in (e.a, e.b)]

    def validate(self) -> None:
        for node in self.nodes:
            g = node.graph
            if node.kind == CYCLE:
                ok = g.vertex_count >= 3 and len(g) == g.vertex_count and all(d == 2 for d in g.degrees())
                ok = ok and is_2connected(g)
            elif node.kind == MULTILINK:
                ok = g.vertex_count == 2 and len(g) >= 3
            else:
                ok = is_3connected_graph(g) and all(m <= 1 for row in g.multiplicity() for m in row)
            if not ok:
                raise ValueError(f"bad {node.kind} term {g!r}")
        for e in self.edges:
            if self.nodes[e.a].kind == self.nodes[e.b].kind and self.nodes[e.a].kind != THREE_CONNECTED:
                raise ValueError(f"adjacent {self.nodes[e.a].kind} terms")
        if len(self.edges) != len(self.nodes) - 1 or not self._connected(range(len(self.nodes))):
            raise ValueError("not a tree")

    def _connected(self, selection: Iterable[int]) -> bool:
        sel = set(selection)
        if not sel:
            return False
        start = min(sel)
        seen = {start}
        queue = deque([start])
        while queue:
            i = queue.popleft()
            for j in self.neighbours(i):
                if j in sel and j not in seen:
                    seen.add(j)
                    queue.append(j)
        return seen == sel


# -- decomposition ---------------------------------------------------------------

_Piece = list  # list of (label, u, v) in input vertex ids


def _piece_vertices(piece: _Piece) -> set[int]:
    return {x for _, u, v in piece for x in (u, v)}


def _split_parallel(piece: _Piece, fresh) -> list[_Piece] | None:
    if len(_piece_vertices(piece)) == 2:
        return None
    classes: dict[frozenset, list] = {}
    for item in piece:
        classes.setdefault(frozenset(item[1:]), []).append(item)
    for key, group in classes.items():
        if len(group) > 1:
            u, v = group[0][1], group[0][2]
            x = fresh()
            rest = [it for it in piece if it not in group] + [(x, u, v)]
            return [rest, group + [(x, u, v)]]
    return None


def _split_separation(piece: _Piece, fresh) -> list[_Piece] | None:
    verts = sorted(_piece_vertices(piece))
    if len(verts) < 4:
        return None
    adj: dict[int, set[int]] = {v: set() for v in verts}
    for _, u, v in piece:
        adj[u].add(v)
        adj[v].add(u)
    for a, b in combinations(verts, 2):
        rest = [v for v in verts if v not in (a, b)]
        comp = {rest[0]}
        stack = [rest[0]]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in comp and y not in (a, b):
                    comp.add(y)
                    stack.append(y)
        if len(comp) == len(rest):
            continue
        x = fresh()
        side = [it for it in piece if it[1] in comp or it[2] in comp]
        other = [it for it in piece if it not in side]
        return [side + [(x, a, b)], other + [(x, a, b)]]
    return None


def _classify(piece: _Piece) -> str:
    verts = _piece_vertices(piece)
    if len(verts) == 2:
        return MULTILINK
    if len(piece) == len(verts):
        return CYCLE
    return THREE_CONNECTED


def _local(piece: _Piece, kind: str) -> TreeNode:
    verts = tuple(sorted(_piece_vertices(piece)))
    pos = {v: i for i, v in enumerate(verts)}
    edges = tuple(Edge.link(pos[u], pos[v]) for _, u, v in piece)
    return TreeNode(kind, Multigraph(len(verts), edges, tuple(x for x, _, _ in piece)), verts)


def canonical_tree_decomposition(g: Multigraph) -> DecompositionTree:
    if len(g) > MAX_DECOMPOSITION_EDGES:
        raise ValueError(f"decomposition supports at most {MAX_DECOMPOSITION_EDGES} edges")
    if any(e.kind != LINK for e in g.edges):
        raise ValueError("decomposition needs a loopless graph without free edges")
    used = {v for e in g.edges for v in e.ends}
    if g.vertex_count == 2 and len(used) == 2:
        if len(g) < 3:
            raise ValueError("a multilink term needs at least three edges")
    elif not is_2connected(g):
        raise ValueError("graph is separable; decomposition needs a non-separable graph")
    counter = count()

    def fresh() -> Virtual:
        return Virtual(next(counter))

    todo = [[(x, e.u, e.v) for x, e in zip(g.labels, g.edges)]]
    done: list[_Piece] = []
    while todo:
        piece = todo.pop()
        parts = _split_parallel(piece, fresh) or _split_separation(piece, fresh)
        if parts:
            todo.extend(parts)
        else:
            done.append(piece)

    kinds = [_classify(p) for p in done]
    merged = True
    while merged:
        merged = False
        for i, j in combinations(range(len(done)), 2):
            if kinds[i] != kinds[j] or kinds[i] == THREE_CONNECTED:
                continue
            shared = {x for x, _, _ in done[i]} & {x for x, _, _ in done[j]}
            shared = {x for x in shared if isinstance(x, Virtual)}
            if not shared:
                continue
            x = shared.pop()
            done[i] = [it for it in done[i] if it[0] != x] + [it for it in done[j] if it[0] != x]
            del done[j], kinds[j]
            merged = True
            break

    nodes = tuple(_local(p, k) for p, k in zip(done, kinds))
    owner: dict[Virtual, list[int]] = {}
    for i, p in enumerate(done):
        for x, _, _ in p:
            if isinstance(x, Virtual):
                owner.setdefault(x, []).append(i)
    tree_edges = []
    for x in sorted(owner):
        a, b = owner[x]
        ea = nodes[a].graph.edge(x)
        ia = {v: k for k, v in enumerate(nodes[a].vertices)}
        ib = {v: k for k, v in enumerate(nodes[b].vertices)}
        u, v = nodes[a].vertices[ea.u], nodes[a].vertices[ea.v]
        tree_edges.append(TreeEdge(a, b, x, ((ia[u], ib[u]), (ia[v], ib[v]))))
    tree = DecompositionTree(nodes, tuple(tree_edges))
    tree.validate()
    return tree


def tree_from_terms(terms: list[tuple[str, Multigraph]], joins: list[tuple[int, Hashable, int, Hashable]]) -> DecompositionTree:
    """Assemble a tree from terms and 2-sum instructions ``(a, edge_a, b, edge_b)``.

    Real edges are relabelled ``(term, label)`` so terms may reuse labels; each
    joined pair of edges gets a common virtual label and is matched end to end
    in stored order.
    """
    graphs = [g.with_labels([(i, x) for x in g.labels]) for i, (_, g) in enumerate(terms)]
    joins = [(a, (a, xa), b, (b, xb)) for a, xa, b, xb in joins]
    edges = []
    for k, (a, xa, b, xb) in enumerate(joins):
        v = Virtual(k)
        ea, eb = graphs[a].edge(xa), graphs[b].edge(xb)
        if ea.kind != LINK or eb.kind != LINK:
            raise ValueError("2-sum edges must be links")
        graphs[a] = graphs[a].with_labels([v if x == xa else x for x in graphs[a].labels])
        graphs[b] = graphs[b].with_labels([v if x == xb else x for x in graphs[b].labels])
        edges.append(TreeEdge(a, b, v, ((ea.u, eb.u), (ea.v, eb.v))))
    nodes = tuple(TreeNode(kind, g) for (kind, _), g in zip(terms, graphs))
    return DecompositionTree(nodes, tuple(edges))


# -- recomposition -------------------------------------------------------------------


def _recompose_nodes(t: DecompositionTree, selection: set[int]) -> Multigraph:
    start = min(selection)
    acc = t.nodes[start].graph
    where = {start: {v: v for v in range(acc.vertex_count)}}
    queue = deque([start])
    while queue:
        i = queue.popleft()
        for e in t.edges:
            if i not in (e.a, e.b):
                continue
            j = e.b if e.a == i else e.a
            if j not in selection or j in where:
                continue
            pairs = e.match if e.a == i else tuple((q, p) for p, q in e.match)
            pairs = tuple((where[i][p], q) for p, q in pairs)
            acc, vmap = _glue(acc, e.label, t.nodes[j].graph, e.label, pairs)
            where[j] = vmap
            queue.append(j)
    return acc


def recompose(t: DecompositionTree) -> Multigraph:
    """Execute every 2-sum of the tree; no virtual edge may be left over."""
    g = _recompose_nodes(t, set(range(len(t.nodes))))
    if any(isinstance(x, Virtual) for x in g.labels):
        raise ValueError("dangling virtual edge")
    return g


def subtree_minor(t: DecompositionTree, selection: Iterable[int]) -> Multigraph:
    """2-sums of a connected set of nodes; virtual edges leaving the set stay as edges."""
    sel = set(selection)
    if not t._connected(sel):
        raise ValueError("selection is not a connected subtree")
    return _recompose_nodes(t, sel)


# -- canonical form and export ---------------------------------------------------------


def tree_canonical_form(t: DecompositionTree) -> str:
    """Equal for decompositions that agree up to term isomorphism and tree shape."""
    labels = [f"{n.kind}:{canonical_form(n.graph).decode()}" for n in t.nodes]
    n = len(t.nodes)
    adj = {i: t.neighbours(i) for i in range(n)}

    def encode(i: int, parent: int) -> str:
        kids = sorted(encode(j, i) for j in adj[i] if j != parent)
        return "(" + labels[i] + "".join(kids) + ")"

    # the centre of the tree is one node or one edge
    leaves = [i for i in range(n) if len(adj[i]) <= 1]
    deg = {i: len(adj[i]) for i in range(n)}
    remaining = n
    removed: set[int] = set()
    while remaining > 2:
        remaining -= len(leaves)
        nxt = []
        for leaf in leaves:
            removed.add(leaf)
            for j in adj[leaf]:
                if j not in removed:
                    deg[j] -= 1
                    if deg[j] == 1:
                        nxt.append(j)
        leaves = nxt
    centres = [i for i in range(n) if i not in removed]
    if len(centres) == 1:
        return encode(centres[0], -1)
    a, b = centres
    return "|".join(sorted((encode(a, b), encode(b, a))))


def to_dot(t: DecompositionTree, name: str = "decomposition") -> str:
    lines = [f"graph {name} {{", "  node [shape=box, fontname=monospace];"]
    for i, node in enumerate(t.nodes):
        body = format_bgr(node.graph).strip().replace("\n", "\\l")
        edge_names = " ".join(str(x) for x in node.graph.labels)
        lines.append(f'  n{i} [label="{node.kind}\\l{body}\\ledges {edge_names}\\l"];')
    for e in t.edges:
        lines.append(f'  n{e.a} -- n{e.b} [label="{e.label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"

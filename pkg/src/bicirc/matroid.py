"""Explicit small matroids.

A matroid is stored as its family of bases, each basis a bitmask over the
ground-set positions.  Rank, independence and circuit tables are computed on
demand with numpy over all ``2**n`` subsets, which is cheap for the ground
sets this package deals with (at most 24 elements, usually 12 or fewer).
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Hashable, Iterable, Sequence

import numpy as np

from .multigraph import LINK, Multigraph

MAX_GROUND = 24
MAX_EXHAUSTIVE = 12
MAX_TABLE = 20
MAX_CIRCUITS = 16
MAX_ISO = 16
MAX_CONNECTIVITY = 20

EdgeSet = int


class MatroidAxiomError(ValueError):
    def __init__(self, message: str, triple: tuple | None = None):
        super().__init__(message)
        self.triple = triple


def popcount(x: int) -> int:
    return bin(x).count("1")


def bits(x: int) -> list[int]:
    out = []
    i = 0
    while x:
        if x & 1:
            out.append(i)
        x >>= 1
        i += 1
    return out


def _halves(arr: np.ndarray, b: int) -> tuple[np.ndarray, np.ndarray]:
    """Views of the entries without / with bit ``b``."""
    v = arr.reshape(-1, 2, 1 << b)
    return v[:, 0, :], v[:, 1, :]


def _popcounts(n: int) -> np.ndarray:
    pc = np.zeros(1 << n, dtype=np.int8)
    for b in range(n):
        _, hi = _halves(pc, b)
        hi += 1
    return pc


class Matroid:
    """A matroid on labelled elements given by its bases.

    Instances are immutable; equality compares labels and bases exactly.
    """

    __slots__ = ("labels", "bases", "rank", "__dict__")

    def __init__(self, labels: Sequence[Hashable], bases: Iterable[int], *, _check: bool = True):
        labels = tuple(labels)
        bases = frozenset(bases)
        n = len(labels)
        if n > MAX_GROUND:
            raise ValueError(f"ground set of size {n} exceeds the cap of {MAX_GROUND}")
        if len(set(labels)) != n:
            raise ValueError("element labels must be distinct")
        if not bases:
            raise MatroidAxiomError("a matroid needs at least one basis")
        sizes = {popcount(b) for b in bases}
        if len(sizes) != 1:
            raise MatroidAxiomError(f"bases have unequal cardinalities {sorted(sizes)}")
        if any(b >> n for b in bases):
            raise ValueError("basis refers to an element outside the ground set")
        self.labels = labels
        self.bases = bases
        self.rank = sizes.pop()
        if _check:
            self._check_exchange()

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Matroid) and self.labels == other.labels and self.bases == other.bases

    def __hash__(self) -> int:
        return hash((self.labels, self.bases))

    def __repr__(self) -> str:
        return f"<Matroid n={self.n} r={self.rank} bases={len(self.bases)}>"

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def full(self) -> EdgeSet:
        return (1 << self.n) - 1

    @property
    def corank(self) -> int:
        return self.n - self.rank

    def subset(self, labels: Iterable[Hashable]) -> EdgeSet:
        pos = {x: i for i, x in enumerate(self.labels)}
        mask = 0
        for x in labels:
            if x not in pos:
                raise KeyError(f"no element labelled {x!r}")
            mask |= 1 << pos[x]
        return mask

    def members(self, mask: EdgeSet) -> tuple[Hashable, ...]:
        return tuple(self.labels[i] for i in bits(mask))

    # -- axiom checks -----------------------------------------------------

    def _check_exchange(self) -> None:
        # An independence system is a matroid iff its rank function is
        # submodular, and local submodularity over (S, a, b) is enough.
        if self.n <= MAX_EXHAUSTIVE:
            r = self.rank_table.astype(np.int16)
            idx = np.arange(1 << self.n)
            ok = True
            for a, b in combinations(range(self.n), 2):
                s = idx[((idx >> a) & 1 == 0) & ((idx >> b) & 1 == 0)]
                if np.any(r[s | 1 << a] + r[s | 1 << b] < r[s | 1 << a | 1 << b] + r[s]):
                    ok = False
                    break
            if ok:
                return
        else:
            rng = random.Random(0)
            pool = sorted(self.bases)
            for _ in range(1000):
                b1, b2 = rng.choice(pool), rng.choice(pool)
                diff = b1 & ~b2
                if diff and not self._exchange_ok(b1, b2, rng.choice(bits(diff))):
                    break
            else:
                return
        triple = self._find_violation()
        if triple is not None:
            b1, b2, x = triple
            raise MatroidAxiomError(
                f"basis exchange fails for B1={self.members(b1)}, B2={self.members(b2)}, x={self.labels[x]!r}",
                (self.members(b1), self.members(b2), self.labels[x]),
            )

    def _exchange_ok(self, b1: int, b2: int, x: int) -> bool:
        return any((b1 & ~(1 << x)) | (1 << y) in self.bases for y in bits(b2 & ~b1))

    def _find_violation(self) -> tuple[int, int, int] | None:
        for b1 in sorted(self.bases):
            for b2 in sorted(self.bases):
                for x in bits(b1 & ~b2):
                    if not self._exchange_ok(b1, b2, x):
                        return b1, b2, x
        return None

    # -- subset tables ----------------------------------------------------

    @cached_property
    def independence_table(self) -> np.ndarray:
        if self.n > MAX_TABLE:
            raise ValueError(f"subset tables need n <= {MAX_TABLE}")
        ind = np.zeros(1 << self.n, dtype=bool)
        ind[np.fromiter(self.bases, dtype=np.int64)] = True
        for b in range(self.n):
            lo, hi = _halves(ind, b)
            lo |= hi
        return ind

    @cached_property
    def rank_table(self) -> np.ndarray:
        r = np.where(self.independence_table, _popcounts(self.n), 0).astype(np.int8)
        for b in range(self.n):
            lo, hi = _halves(r, b)
            np.maximum(hi, lo, out=hi)
        return r

    @cached_property
    def circuit_table(self) -> np.ndarray:
        if self.n > MAX_CIRCUITS:
            raise ValueError(f"circuit enumeration supports n <= {MAX_CIRCUITS}")
        ind = self.independence_table
        circ = ~ind
        for b in range(self.n):
            _, chi = _halves(circ, b)
            ilo, _ = _halves(ind, b)
            chi &= ilo
        return circ

    @cached_property
    def circuits(self) -> frozenset[EdgeSet]:
        return frozenset(int(x) for x in np.flatnonzero(self.circuit_table))

    def is_independent(self, s: EdgeSet) -> bool:
        if self.n <= MAX_TABLE:
            return bool(self.independence_table[s])
        return any(s & b == s for b in self.bases)

    @cached_property
    def invariants(self) -> tuple:
        """Isomorphism invariant: (n, rank, basis count, sorted element profiles)."""
        return (self.n, self.rank, len(self.bases), tuple(sorted(self.element_profiles)))

    @cached_property
    def element_profiles(self) -> tuple[tuple, ...]:
        counts = [0] * self.n
        for b in self.bases:
            for i in bits(b):
                counts[i] += 1
        circ = [Counter() for _ in range(self.n)]
        for c in self.circuits:
            k = popcount(c)
            for i in bits(c):
                circ[i][k] += 1
        cocirc = [Counter() for _ in range(self.n)]
        for c in dual(self).circuits:
            k = popcount(c)
            for i in bits(c):
                cocirc[i][k] += 1
        return tuple(
            (counts[i], tuple(sorted(circ[i].items())), tuple(sorted(cocirc[i].items())))
            for i in range(self.n)
        )

    def circuit_spectrum(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(Counter(popcount(c) for c in self.circuits).items()))


# -- construction -----------------------------------------------------------


def _as_mask(item, pos: dict) -> int:
    if isinstance(item, (int, np.integer)) and not isinstance(item, bool):
        return int(item)
    mask = 0
    for x in item:
        mask |= 1 << pos[x]
    return mask


def from_bases(labels: Sequence[Hashable], bases: Iterable) -> Matroid:
    """Validated matroid; a basis is a bitmask or a collection of labels."""
    labels = tuple(labels)
    pos = {x: i for i, x in enumerate(labels)}
    return Matroid(labels, [_as_mask(b, pos) for b in bases])


def uniform(r: int, n: int) -> Matroid:
    if not 0 <= r <= n <= MAX_GROUND:
        raise ValueError(f"need 0 <= r <= n <= {MAX_GROUND}, got r={r}, n={n}")
    return Matroid(range(n), [sum(1 << i for i in c) for c in combinations(range(n), r)], _check=False)


def from_independence(labels: Sequence[Hashable], rank: int, independent) -> Matroid:
    """Bases as the ``rank``-subsets accepted by the ``independent(mask)`` predicate."""
    n = len(labels)
    bases = [m for c in combinations(range(n), rank) if independent(m := sum(1 << i for i in c))]
    return Matroid(labels, bases, _check=False)


def direct_sum(m: Matroid, n: Matroid) -> Matroid:
    shift = m.n
    bases = [a | b << shift for a in m.bases for b in n.bases]
    return Matroid(m.labels + n.labels, bases, _check=False)


def relabel(m: Matroid, labels: Sequence[Hashable]) -> Matroid:
    return Matroid(labels, m.bases, _check=False)


def whirl3() -> Matroid:
    """The rank-3 whirl: all 3-subsets of six points except the three lines of a triangle."""
    lines = {0b000111, 0b011100, 0b110001}
    bases = [m for c in combinations(range(6), 3) if (m := sum(1 << i for i in c)) not in lines]
    return Matroid(range(6), bases, _check=False)


def graphic_matroid(g: Multigraph) -> Matroid:
    """Cycle matroid; bases are the spanning forests."""
    if g.free_count:
        raise ValueError("graphic matroids are undefined for graphs with free edges")
    if len(g) > MAX_TABLE:
        raise ValueError(f"graphic_matroid supports at most {MAX_TABLE} edges")
    ends = [(e.u, e.v) for e in g.edges]

    def forest(mask: int) -> bool:
        parent = list(range(g.vertex_count))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i in bits(mask):
            a, b = find(ends[i][0]), find(ends[i][1])
            if a == b:
                return False
            parent[a] = b
        return True

    links = [(e.u, e.v) for e in g.edges if e.kind == LINK]
    parent = list(range(g.vertex_count))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    r = 0
    for a, b in links:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            r += 1
    return from_independence(g.labels, r, forest)


# -- duality and minors -------------------------------------------------------


def dual(m: Matroid) -> Matroid:
    full = m.full
    return Matroid(m.labels, [full ^ b for b in m.bases], _check=False)


def _compress(masks: Iterable[int], keep: list[int]) -> list[int]:
    out = []
    for b in masks:
        x = 0
        for j, i in enumerate(keep):
            if b >> i & 1:
                x |= 1 << j
        out.append(x)
    return out


def delete(m: Matroid, s: EdgeSet) -> Matroid:
    keep = [i for i in range(m.n) if not s >> i & 1]
    kmask = m.full & ~s
    r = max(popcount(b & kmask) for b in m.bases)
    restricted = {b & kmask for b in m.bases if popcount(b & kmask) == r}
    return Matroid([m.labels[i] for i in keep], _compress(restricted, keep), _check=False)


def contract(m: Matroid, s: EdgeSet) -> Matroid:
    keep = [i for i in range(m.n) if not s >> i & 1]
    kmask = m.full & ~s
    rs = max(popcount(b & s) for b in m.bases)
    contracted = {b & kmask for b in m.bases if popcount(b & s) == rs}
    return Matroid([m.labels[i] for i in keep], _compress(contracted, keep), _check=False)


def rank_of(m: Matroid, s: EdgeSet) -> int:
    if s >> m.n:
        raise ValueError("subset outside the ground set")
    if m.n <= MAX_TABLE:
        return int(m.rank_table[s])
    return max(popcount(b & s) for b in m.bases)


def closure(m: Matroid, s: EdgeSet) -> EdgeSet:
    r = rank_of(m, s)
    return s | sum(1 << i for i in range(m.n) if rank_of(m, s | 1 << i) == r)


def is_loop(m: Matroid, i: int) -> bool:
    return not any(b >> i & 1 for b in m.bases)


def is_coloop(m: Matroid, i: int) -> bool:
    return all(b >> i & 1 for b in m.bases)


def parallel_extend(m: Matroid, label: Hashable, new_label: Hashable | None = None) -> Matroid:
    i = m.labels.index(label)
    if new_label is None:
        new_label = _fresh_label(m.labels, label)
    f = 1 << m.n
    bases = set(m.bases)
    bases.update((b & ~(1 << i)) | f for b in m.bases if b >> i & 1)
    return Matroid(m.labels + (new_label,), bases, _check=False)


def coparallel_extend(m: Matroid, label: Hashable, new_label: Hashable | None = None) -> Matroid:
    """Replace ``label`` by a coparallel (series) pair; the new element is appended."""
    i = m.labels.index(label)
    if is_loop(m, i):
        raise ValueError(f"element {label!r} is a loop")
    return dual(parallel_extend(dual(m), label, new_label))


def _fresh_label(labels: Sequence[Hashable], base: Hashable) -> Hashable:
    if all(isinstance(x, int) for x in labels):
        return max(labels, default=-1) + 1
    cand = f"{base}'"
    while cand in labels:
        cand += "'"
    return cand


# -- connectivity -------------------------------------------------------------


@dataclass(frozen=True)
class SeparationProfile:
    """Violating partitions found by :func:`separations`; ``None`` when absent."""

    one: tuple[tuple, tuple] | None
    two: tuple[tuple, tuple] | None


def separations(m: Matroid) -> SeparationProfile:
    if m.n > MAX_CONNECTIVITY:
        raise ValueError(f"connectivity test supports n <= {MAX_CONNECTIVITY}")
    r = m.rank_table.astype(np.int16)
    lam = r + r[::-1] - m.rank
    size = _popcounts(m.n).astype(np.int16)
    small = np.minimum(size, m.n - size)
    found = []
    for k in (1, 2):
        hits = np.flatnonzero((small >= k) & (lam <= k - 1))
        if hits.size:
            s = int(hits[0])
            found.append((m.members(s), m.members(m.full ^ s)))
        else:
            found.append(None)
    return SeparationProfile(*found)


def is_connected(m: Matroid) -> bool:
    return separations(m).one is None


def is_3connected(m: Matroid) -> bool:
    prof = separations(m)
    return prof.one is None and prof.two is None


def components(m: Matroid) -> list[EdgeSet]:
    parent = list(range(m.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c in m.circuits:
        idx = bits(c)
        for j in idx[1:]:
            parent[find(j)] = find(idx[0])
    groups: dict[int, int] = {}
    for i in range(m.n):
        groups[find(i)] = groups.get(find(i), 0) | 1 << i
    return sorted(groups.values(), key=lambda s: (s & -s))


def restrict(m: Matroid, s: EdgeSet) -> Matroid:
    return delete(m, m.full & ~s)


# -- isomorphism ----------------------------------------------------------------


def find_isomorphism(m: Matroid, n: Matroid) -> dict | None:
    """An element bijection taking bases of ``m`` onto bases of ``n``, or ``None``.

    Elements are matched only within classes of equal profile (basis count,
    circuit and cocircuit size counts).  The search checks every circuit and
    cocircuit of ``m`` as soon as all its elements are mapped; since both
    matroids have equally many circuits, a complete map that sends circuits to
    circuits is an isomorphism.
    """
    if m.n != n.n:
        return None
    if m.n > MAX_ISO:
        raise ValueError(f"isomorphism search supports n <= {MAX_ISO}")
    if m.invariants != n.invariants:
        return None
    size = m.n
    if size == 0:
        return {}
    mp, np_ = m.element_profiles, n.element_profiles
    candidates = [[j for j in range(size) if np_[j] == mp[i]] for i in range(size)]
    m_circ = sorted(m.circuits)
    m_cocirc = sorted(dual(m).circuits)
    n_circ = n.circuits
    n_cocirc = dual(n).circuits

    # element order: smallest class first, then greedily close circuits
    order: list[int] = []
    placed = 0
    small = [c for c in m_circ + m_cocirc if popcount(c) <= 5]
    while len(order) < size:
        best = None
        for i in range(size):
            if placed >> i & 1:
                continue
            closes = sum(1 for c in small if c >> i & 1 and (c & ~(1 << i)) & ~placed == 0)
            touches = sum(1 for c in small if c >> i & 1 and c & placed)
            key = (-closes, -touches, len(candidates[i]), i)
            if best is None or key < best[0]:
                best = (key, i)
        order.append(best[1])
        placed |= 1 << best[1]
    position = {e: k for k, e in enumerate(order)}
    checks: list[list[tuple[int, bool]]] = [[] for _ in range(size)]
    for c in m_circ:
        checks[max(position[i] for i in bits(c))].append((c, True))
    for c in m_cocirc:
        checks[max(position[i] for i in bits(c))].append((c, False))

    image = [0] * size
    used = 0

    def rec(k: int) -> bool:
        nonlocal used
        if k == size:
            return True
        e = order[k]
        for f in candidates[e]:
            if used >> f & 1:
                continue
            image[e] = 1 << f
            ok = True
            for c, is_circ in checks[k]:
                img = 0
                for i in bits(c):
                    img |= image[i]
                if img not in (n_circ if is_circ else n_cocirc):
                    ok = False
                    break
            if ok:
                used |= 1 << f
                if rec(k + 1):
                    return True
                used &= ~(1 << f)
        image[e] = 0
        return False

    if not rec(0):
        return None
    return {m.labels[i]: n.labels[bits(image[i])[0]] for i in range(size)}


def matroid_isomorphic(m: Matroid, n: Matroid) -> bool:
    return find_isomorphism(m, n) is not None


# -- .mtd text format ----------------------------------------------------------


def format_mtd(m: Matroid, comments: Sequence[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(f"ground {m.n}")
    if m.labels != tuple(range(m.n)):
        lines.append("labels " + " ".join(str(x) for x in m.labels))
    for b in sorted(m.bases, key=lambda b: bits(b)):
        lines.append(" ".join(["basis"] + [str(i) for i in bits(b)]))
    return "\n".join(lines) + "\n"


def parse_mtd(text: str) -> Matroid:
    n = None
    labels: list | None = None
    bases: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "ground" and len(parts) == 2:
            n = int(parts[1])
        elif parts[0] == "labels":
            labels = parts[1:]
        elif parts[0] == "basis":
            if n is None:
                raise ValueError(f"line {lineno}: 'basis' before 'ground'")
            idx = [int(x) for x in parts[1:]]
            if idx != sorted(set(idx)) or any(not 0 <= i < n for i in idx):
                raise ValueError(f"line {lineno}: basis indices must be sorted, distinct and < {n}")
            bases.append(sum(1 << i for i in idx))
        else:
            raise ValueError(f"line {lineno}: cannot parse {line!r}")
    if n is None:
        raise ValueError("missing 'ground N' header")
    if labels is None:
        labels = list(range(n))
    elif len(labels) != n:
        raise ValueError(f"expected {n} labels, got {len(labels)}")
    return Matroid(labels, bases)

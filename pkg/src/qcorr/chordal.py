"""Pattern graphs, chordality and psd completion of partial matrices.

Vertices are ``0 .. n-1``. A partial symmetric matrix always has a unit
diagonal; its off-diagonal specified entries are exactly the pattern edges.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import numkernel
from .errors import DimensionTooLarge, NotChordal, NotPartialPsd

MAX_CLIQUE_VERTICES = 16


@dataclass(frozen=True)
class Graph:
    vertex_count: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.vertex_count < 1:
            raise ValueError("graph needs at least one vertex")
        canon = set()
        for e in self.edges:
            i, j = int(e[0]), int(e[1])
            if i == j:
                raise ValueError(f"self-loop at vertex {i}")
            if not (0 <= i < self.vertex_count and 0 <= j < self.vertex_count):
                raise ValueError(f"edge {e} references a missing vertex")
            canon.add((min(i, j), max(i, j)))
        object.__setattr__(self, "edges", tuple(sorted(canon)))

    def adjacency(self):
        adj = [set() for _ in range(self.vertex_count)]
        for i, j in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        return adj

    def with_edge(self, i, j):
        return Graph(self.vertex_count, self.edges + ((i, j),))

    def to_json(self):
        return {"vertices": self.vertex_count, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, data):
        return cls(int(data["vertices"]), tuple(tuple(e) for e in data["edges"]))


def complete_graph(n):
    return Graph(n, tuple(combinations(range(n), 2)))


def complete_bipartite(n, m):
    """K_{n,m} with the first party on ``0..n-1`` and the second on ``n..n+m-1``."""
    return Graph(n + m, tuple((x, n + y) for x in range(n) for y in range(m)))


def split_pattern(n=3, m=3):
    """Clique on the first ``n`` vertices, every cross edge, no edges among the rest."""
    return Graph(n + m, tuple(combinations(range(n), 2)) + complete_bipartite(n, m).edges)


def lex_bfs(G):
    adj = G.adjacency()
    labels = {v: [] for v in range(G.vertex_count)}
    order = []
    for step in range(G.vertex_count, 0, -1):
        v = max(labels, key=lambda u: (labels[u], -u))
        order.append(v)
        del labels[v]
        for w in adj[v]:
            if w in labels:
                labels[w].append(step)
    return order


def _is_peo(adj, ordering):
    pos = {v: i for i, v in enumerate(ordering)}
    for v in ordering:
        later = [w for w in adj[v] if pos[w] > pos[v]]
        for a, b in combinations(later, 2):
            if b not in adj[a]:
                return False
    return True


def _chordless_cycle(G):
    adj = G.adjacency()
    for v in range(G.vertex_count):
        for a, b in combinations(sorted(adj[v]), 2):
            if b in adj[a]:
                continue
            blocked = (adj[v] | {v}) - {a, b}
            prev = {a: None}
            queue = deque([a])
            while queue and b not in prev:
                u = queue.popleft()
                for w in sorted(adj[u]):
                    if w not in prev and w not in blocked:
                        prev[w] = u
                        queue.append(w)
            if b in prev:
                path = [b]
                while path[-1] != a:
                    path.append(prev[path[-1]])
                return [v] + path[::-1]
    return None


def is_chordal(G):
    """Return ``(True, peo)`` or ``(False, chordless_cycle)``.

    ``peo`` is a perfect elimination ordering (first entry eliminated
    first), obtained by reversing a lexicographic BFS order.
    """
    adj = G.adjacency()
    peo = lex_bfs(G)[::-1]
    if _is_peo(adj, peo):
        return True, peo
    cycle = _chordless_cycle(G)
    assert cycle is not None and len(cycle) >= 4
    return False, cycle


def _bron_kerbosch(adj, r, p, x, out):
    if not p and not x:
        out.append(tuple(sorted(r)))
        return
    pivot = max(p | x, key=lambda u: len(adj[u] & p))
    for v in sorted(p - adj[pivot]):
        _bron_kerbosch(adj, r | {v}, p & adj[v], x & adj[v], out)
        p = p - {v}
        x = x | {v}


def maximal_cliques(G):
    if G.vertex_count > MAX_CLIQUE_VERTICES:
        raise DimensionTooLarge(f"clique enumeration capped at {MAX_CLIQUE_VERTICES} vertices")
    adj = G.adjacency()
    chordal, peo = is_chordal(G)
    if chordal:
        pos = {v: i for i, v in enumerate(peo)}
        candidates = {tuple(sorted({v} | {w for w in adj[v] if pos[w] > pos[v]})) for v in peo}
        cliques = [c for c in candidates
                   if not any(set(c) < set(d) for d in candidates)]
    else:
        cliques = []
        _bron_kerbosch(adj, set(), set(range(G.vertex_count)), set(), cliques)
    return sorted(set(cliques))


@dataclass(frozen=True)
class PartialSymMatrix:
    dim: int
    entries: tuple[tuple[int, int, float], ...]

    def __post_init__(self):
        canon = {}
        for i, j, v in self.entries:
            i, j = int(i), int(j)
            if i == j:
                raise ValueError("diagonal is fixed to 1 and may not be specified")
            canon[(min(i, j), max(i, j))] = float(v)
        object.__setattr__(self, "entries", tuple((i, j, v) for (i, j), v in sorted(canon.items())))
        Graph(self.dim, tuple((i, j) for i, j, _ in self.entries))

    @property
    def pattern(self):
        return Graph(self.dim, tuple((i, j) for i, j, _ in self.entries))

    def value(self, i, j):
        if i == j:
            return 1.0
        key = (min(i, j), max(i, j))
        for a, b, v in self.entries:
            if (a, b) == key:
                return v
        return None

    def submatrix(self, idx):
        return np.array([[self.value(i, j) for j in idx] for i in idx], dtype=float)

    def to_json(self):
        return {"dim": self.dim, "entries": [[i, j, v] for i, j, v in self.entries]}

    @classmethod
    def from_json(cls, data):
        return cls(int(data["dim"]), tuple(tuple(e) for e in data["entries"]))

    def dumps(self):
        return json.dumps(self.to_json())


def is_partial_psd(P, tol=1e-9):
    return all(numkernel.is_psd(P.submatrix(c), tol) for c in maximal_cliques(P.pattern))


def _next_fill_edge(G, peo):
    """A missing edge whose addition keeps ``G`` chordal, scanned in reverse elimination order."""
    adj = G.adjacency()
    rank = {v: i for i, v in enumerate(reversed(peo))}
    missing = [(i, j) for i, j in combinations(range(G.vertex_count), 2) if j not in adj[i]]
    missing.sort(key=lambda e: (min(rank[e[0]], rank[e[1]]), max(rank[e[0]], rank[e[1]])))
    for i, j in missing:
        ok, order = is_chordal(G.with_edge(i, j))
        if ok:
            return (i, j), order
    raise AssertionError("chordal graph without a chordal one-edge extension")


def chordal_complete(P, tol=1e-9):
    """Fill the unspecified entries of a chordal partial psd matrix.

    Entries are added one at a time, each time through an edge that keeps
    the pattern chordal. The new entry ``(i, j)`` closes a unique maximal
    clique ``{i, j} + S`` and receives ``M[i,S] M[S,S]^+ M[S,j]``, the value
    maximizing that clique's determinant. Eigenvalues of ``M[S,S]`` below
    ``tol`` (relative to the largest) are treated as zero, since the
    specified blocks are only psd up to ``tol``.
    """
    G = P.pattern
    chordal, peo = is_chordal(G)
    if not chordal:
        raise NotChordal(f"pattern has chordless cycle {peo}")
    if not is_partial_psd(P, tol):
        raise NotPartialPsd("a maximal specified block is not psd")
    n = P.dim
    M = np.eye(n)
    for i, j, v in P.entries:
        M[i, j] = M[j, i] = v
    while len(G.edges) < n * (n - 1) // 2:
        (i, j), new_peo = _next_fill_edge(G, peo)
        adj = G.adjacency()
        S = sorted(adj[i] & adj[j])
        if S:
            inv = np.linalg.pinv(M[np.ix_(S, S)], rcond=max(tol, 1e-12), hermitian=True)
            fill = M[i, S] @ inv @ M[S, j]
        else:
            fill = 0.0
        M[i, j] = M[j, i] = float(np.clip(fill, -1.0, 1.0))
        G, peo = G.with_edge(i, j), new_peo
    return M

"""Cut and metric polytopes of a graph, one coordinate per edge (sorted edge order)."""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from ..chordal import Graph
from ..errors import TooLarge
from .reps import HPolytope, VPolytope

MAX_CUT_EDGES = 20
MAX_METRIC_VERTICES = 10

ZERO_ONE = "zero-one"
PLUS_MINUS_ONE = "plus-minus-one"


def edge_names(G: Graph):
    return tuple(f"x{i}_{j}" for i, j in G.edges)


def cut_polytope_vertices(G: Graph, variant=ZERO_ONE) -> VPolytope:
    """Cut vectors ``delta_S`` over all ``S`` avoiding vertex 0 (each cut once up to complement)."""
    if variant not in (ZERO_ONE, PLUS_MINUS_ONE):
        raise ValueError(f"unknown cut variant {variant!r}")
    if len(G.edges) > MAX_CUT_EDGES:
        raise TooLarge(f"cut enumeration capped at {MAX_CUT_EDGES} edges")
    others = range(1, G.vertex_count)
    verts = set()
    for mask in range(1 << (G.vertex_count - 1)):
        side = {0} | {v for k, v in enumerate(others) if not mask >> k & 1}
        delta = [int((i in side) != (j in side)) for i, j in G.edges]
        if variant == PLUS_MINUS_ONE:
            delta = [1 - 2 * d for d in delta]
        verts.add(tuple(Fraction(d) for d in delta))
    return VPolytope(len(G.edges), tuple(verts))


def chordless_cycles(G: Graph):
    """Every induced cycle of length >= 3, each once, as a vertex tuple starting at its minimum."""
    adj = G.adjacency()
    out = []

    def extend(path, on_path):
        last = path[-1]
        for w in sorted(adj[last]):
            if w <= path[0] or w in on_path:
                continue
            # w may touch only ``last`` among internal vertices, and the start only when closing
            if any(w in adj[u] for u in path[1:-1]):
                continue
            if len(path) >= 2 and path[0] in adj[w]:
                if path[1] < w:
                    out.append(tuple(path + [w]))
                continue
            extend(path + [w], on_path | {w})

    for s in range(G.vertex_count):
        extend([s], {s})
    return sorted(out, key=lambda c: (len(c), c))


def metric_polytope_h(G: Graph) -> HPolytope:
    """Cycle inequalities ``x(F) - x(C - F) <= |F| - 1`` (chordless C, odd F) and ``0 <= x <= 1``."""
    if G.vertex_count > MAX_METRIC_VERTICES:
        raise TooLarge(f"chordless-cycle enumeration capped at {MAX_METRIC_VERTICES} vertices")
    index = {e: k for k, e in enumerate(G.edges)}
    dim = len(G.edges)
    rows = []
    for k in range(dim):
        unit = [0] * dim
        unit[k] = 1
        rows.append((tuple(unit), 1))
        rows.append((tuple(-u for u in unit), 0))
    for cycle in chordless_cycles(G):
        cedges = [index[(min(a, b), max(a, b))] for a, b in zip(cycle, cycle[1:] + cycle[:1])]
        for size in range(1, len(cedges) + 1, 2):
            for F in combinations(cedges, size):
                a = [0] * dim
                for e in cedges:
                    a[e] = 1 if e in F else -1
                rows.append((tuple(a), size - 1))
    return HPolytope(dim, tuple(rows), (), edge_names(G))

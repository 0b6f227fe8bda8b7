import itertools

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import random_chordal
from qcorr.chordal import (Graph, PartialSymMatrix, chordal_complete, complete_bipartite,
                           complete_graph, is_chordal, is_partial_psd, lex_bfs,
                           maximal_cliques, split_pattern)
from qcorr.errors import DimensionTooLarge, NotChordal, NotPartialPsd
from qcorr.numkernel import is_psd


def to_nx(G):
    H = nx.Graph()
    H.add_nodes_from(range(G.vertex_count))
    H.add_edges_from(G.edges)
    return H


def random_graph(rng, n, p):
    edges = [(i, j) for i, j in itertools.combinations(range(n), 2) if rng.random() < p]
    return Graph(n, tuple(edges))


def test_graph_canonical_and_validated():
    G = Graph(3, ((2, 1), (0, 1), (1, 2)))
    assert G.edges == ((0, 1), (1, 2))
    with pytest.raises(ValueError):
        Graph(2, ((0, 0),))
    with pytest.raises(ValueError):
        Graph(2, ((0, 2),))
    assert Graph.from_json(G.to_json()) == G


def test_is_chordal_examples():
    ok, order = is_chordal(complete_graph(3))
    assert ok and sorted(order) == [0, 1, 2]
    ok, cycle = is_chordal(complete_bipartite(3, 3))
    assert not ok and len(cycle) == 4
    E = set(complete_bipartite(3, 3).edges)
    for a, b in zip(cycle, cycle[1:] + cycle[:1]):
        assert (min(a, b), max(a, b)) in E
    assert (min(cycle[0], cycle[2]), max(cycle[0], cycle[2])) not in E
    ok, order = is_chordal(split_pattern(3, 3))
    assert ok and set(order[-3:]) == {0, 1, 2}


def test_maximal_cliques_examples():
    assert maximal_cliques(split_pattern(3, 3)) == [(0, 1, 2, 3), (0, 1, 2, 4), (0, 1, 2, 5)]
    assert maximal_cliques(complete_graph(3)) == [(0, 1, 2)]
    assert maximal_cliques(Graph(3, ((0, 1), (1, 2)))) == [(0, 1), (1, 2)]
    with pytest.raises(DimensionTooLarge):
        maximal_cliques(complete_graph(17))


def test_against_networkx():
    rng = np.random.default_rng(0)
    for _ in range(300):
        G = random_graph(rng, int(rng.integers(1, 9)), rng.uniform(0.2, 0.9))
        H = to_nx(G)
        ok, witness = is_chordal(G)
        assert ok == nx.is_chordal(H)
        if ok:
            pos = {v: k for k, v in enumerate(witness)}
            for v in witness:
                later = [w for w in H[v] if pos[w] > pos[v]]
                assert all(H.has_edge(a, b) for a, b in itertools.combinations(later, 2))
        else:
            sub = H.subgraph(witness)
            assert len(witness) >= 4 and sub.number_of_edges() == len(witness)
            assert nx.is_connected(sub) and all(d == 2 for _, d in sub.degree())
        expected = sorted(tuple(sorted(c)) for c in nx.find_cliques(H))
        assert maximal_cliques(G) == expected


def test_lex_bfs_is_permutation():
    G = complete_bipartite(2, 3)
    assert sorted(lex_bfs(G)) == list(range(5))


def _split(alpha, beta, gamma, c):
    entries = [(0, 1, alpha), (0, 2, beta), (1, 2, gamma)]
    entries += [(x, 3 + y, c[x][y]) for x in range(3) for y in range(3)]
    return PartialSymMatrix(6, tuple(entries))


def test_is_partial_psd_examples():
    for c, expected in [(0.5, True), (1.0, True), (-1.0, True), (1.2, False), (-1.01, False)]:
        assert is_partial_psd(PartialSymMatrix(2, ((0, 1, c),))) is expected
    assert is_partial_psd(_split(1, 1, 1, np.ones((3, 3))))
    assert not is_partial_psd(_split(1, 1, -1, np.zeros((3, 3))))
    # the 3x3 block has determinant -4
    assert np.linalg.det([[1, 1, 1], [1, 1, -1], [1, -1, 1]]) == pytest.approx(-4)


def test_chordal_complete_examples():
    P = PartialSymMatrix(3, ((0, 1, 1.0), (1, 2, 1.0)))
    assert chordal_complete(P)[0, 2] == pytest.approx(1.0, abs=1e-12)
    P = PartialSymMatrix(3, ((0, 1, 0.0), (1, 2, 0.0)))
    assert chordal_complete(P)[0, 2] == pytest.approx(0.0, abs=1e-12)


def test_chordal_complete_errors():
    P = PartialSymMatrix(4, ((0, 1, 0.1), (1, 2, 0.1), (2, 3, 0.1), (0, 3, 0.1)))
    with pytest.raises(NotChordal):
        chordal_complete(P)
    with pytest.raises(NotPartialPsd):
        chordal_complete(PartialSymMatrix(3, ((0, 1, 1.5), (1, 2, 0.0))))


def test_partial_json_roundtrip():
    P = _split(0.1, 0.2, 0.3, np.full((3, 3), 0.4))
    assert PartialSymMatrix.from_json(P.to_json()) == P


def test_split_pattern_completion_from_feasible_point():
    rng = np.random.default_rng(4)
    v = rng.standard_normal((6, 6))
    v /= np.linalg.norm(v, axis=1, keepdims=True)
    G = v @ v.T
    P = _split(G[0, 1], G[0, 2], G[1, 2], G[:3, 3:])
    M = chordal_complete(P)
    assert is_psd(M, 1e-9)
    np.testing.assert_array_equal(M[:3, 3:], G[:3, 3:])


@settings(max_examples=200, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(2, 7), rank=st.integers(1, 7))
def test_chordal_complete_property(seed, n, rank):
    rng = np.random.default_rng(seed)
    pattern = random_chordal(rng, n)
    v = rng.standard_normal((n, min(rank, n)))
    v /= np.linalg.norm(v, axis=1, keepdims=True)
    G = v @ v.T
    P = PartialSymMatrix(n, tuple((i, j, G[i, j]) for i, j in pattern.edges))
    M = chordal_complete(P)
    assert is_psd(M, 1e-9)
    for i, j, val in P.entries:
        assert M[i, j] == val and M[j, i] == val
    np.testing.assert_array_equal(np.diag(M), 1.0)


def test_partial_psd_monotone_under_valid_fill():
    rng = np.random.default_rng(9)
    for _ in range(100):
        n = int(rng.integers(3, 7))
        pattern = random_chordal(rng, n)
        v = rng.standard_normal((n, 3))
        v /= np.linalg.norm(v, axis=1, keepdims=True)
        G = v @ v.T
        P = PartialSymMatrix(n, tuple((i, j, G[i, j]) for i, j in pattern.edges))
        missing = [(i, j) for i, j in itertools.combinations(range(n), 2) if (i, j) not in pattern.edges]
        if not missing:
            continue
        i, j = missing[rng.integers(len(missing))]
        Q = PartialSymMatrix(n, P.entries + ((i, j, G[i, j]),))
        assert is_partial_psd(P) and is_partial_psd(Q)

import random
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from nicepartition import DynamicMatching
from nicepartition.oracles import (
    OracleGuardError, audit_all, exact_max_matching, exact_min_vertex_cover, is_vertex_cover,
    max_matching_by_edges, max_matching_by_vertices, min_vertex_cover_by_independent_set,
    min_vertex_cover_by_subsets, recompute_from_scratch,
)

TRIANGLE = [(0, 1), (1, 2), (0, 2)]
C4 = [(0, 1), (1, 2), (2, 3), (0, 3)]
STAR5 = [(0, x) for x in range(1, 6)]


def petersen_subgraph():
    g = nx.petersen_graph()
    edges = sorted(g.edges())
    return edges[:-3]  # drop three edges so it is no longer regular


def nx_max_matching(edges):
    g = nx.Graph(edges)
    return len(nx.max_weight_matching(g, maxcardinality=True))


def nx_min_cover(edges):
    g = nx.Graph(edges)
    clique, size = nx.max_weight_clique(nx.complement(g), weight=None)
    return g.number_of_nodes() - size


def test_small_matchings():
    assert exact_max_matching(TRIANGLE) == 1
    assert exact_max_matching(C4) == 2
    assert exact_max_matching([]) == 0


def test_small_covers():
    assert exact_min_vertex_cover([(3, 9)]) == 1
    assert exact_min_vertex_cover(STAR5) == 1
    assert exact_min_vertex_cover(TRIANGLE) == 2


def test_random_instance_dual_methods():
    rng = random.Random(10)
    edges = rng.sample(list(combinations(range(10), 2)), 20)
    a = max_matching_by_vertices(edges)
    assert a == max_matching_by_edges(edges) == nx_max_matching(edges)


def test_petersen_subgraph_covers():
    edges = petersen_subgraph()
    a = min_vertex_cover_by_independent_set(edges)
    assert a == min_vertex_cover_by_subsets(edges) == nx_min_cover(edges)


def test_guards():
    big = [(0, x) for x in range(1, 20)]
    with pytest.raises(OracleGuardError):
        min_vertex_cover_by_independent_set(big)
    with pytest.raises(OracleGuardError):
        max_matching_by_edges([(2 * i, 2 * i + 1) for i in range(25)])
    # a star on 20 nodes passes through the edge-count fallback
    assert exact_max_matching(big) == 1
    assert exact_min_vertex_cover(big, max_nodes=24) == 1


def test_is_vertex_cover():
    assert is_vertex_cover(C4, [0, 2])
    assert not is_vertex_cover(C4, [0, 1])


graphs = st.lists(st.tuples(st.integers(0, 9), st.integers(0, 9))
                  .filter(lambda t: t[0] < t[1]), max_size=24, unique=True)


@settings(max_examples=80)
@given(edges=graphs)
def test_oracles_agree(edges):
    mm = max_matching_by_vertices(edges)
    vc = min_vertex_cover_by_independent_set(edges)
    assert mm == max_matching_by_edges(edges)
    assert vc == min_vertex_cover_by_subsets(edges)
    if edges:
        assert mm == nx_max_matching(edges)
        assert vc == nx_min_cover(edges)
    assert mm <= vc <= 2 * mm


def test_oracles_are_pure():
    edges = list(C4)
    exact_max_matching(edges)
    exact_min_vertex_cover(edges)
    assert edges == C4


class TestRecompute:
    def test_empty(self):
        assert recompute_from_scratch(DynamicMatching(5, K=2).core) == []

    def test_after_random_updates(self):
        rng = random.Random(4)
        dm = DynamicMatching(64, K=2)
        for _ in range(10_000):
            u, v = rng.sample(range(64), 2)
            if dm.has_edge(u, v):
                dm.delete(u, v)
            else:
                dm.insert(u, v)
        assert recompute_from_scratch(dm.core) == []
        assert dm.audit() == []

    def test_corrupted_weight(self):
        dm = DynamicMatching(5, K=2)
        dm.insert(0, 1)
        dm.core.nodes[1].weight += 3
        diff = recompute_from_scratch(dm.core)
        assert diff and "node 1" in diff[0]
        assert audit_all(dm.core, dm.residual)

    def test_corrupted_edge_level(self):
        dm = DynamicMatching(5, K=2)
        dm.insert(0, 1)
        dm.core.edge(0, 1).level = 3
        assert any("edge (0, 1)" in d for d in recompute_from_scratch(dm.core))


def test_audit_all_flags_missing_cover(monkeypatch):
    dm = DynamicMatching(6, K=2)
    dm.insert(0, 1)
    monkeypatch.setattr(type(dm.residual), "vertex_cover", lambda self: [])
    assert any("V* misses" in b for b in audit_all(dm.core, dm.residual))

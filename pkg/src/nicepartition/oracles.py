"""Brute-force oracles and the combined auditor.

Nothing here is used on the update path.  Matching and cover sizes are each
computed by two unrelated searches so tests can check them against each other.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .partition import NicePartition
from .residual import ResidualState

MAX_ORACLE_NODES = 16
MAX_ORACLE_EDGES = 24


class OracleGuardError(ValueError):
    pass


def recompute_from_scratch(p: NicePartition) -> list[str]:
    """Rebuild edge levels from node levels plus mark sets, and node weights
    by summation, then diff against what the structure stores."""
    diffs = []
    weights = [0] * p.config.n
    for key, e in p.edges.items():
        levels = []
        for y in (e.a, e.b):
            lv = y.level
            if e in y.m_up:
                lv += 1
            elif e in y.m_down:
                lv -= 1
            levels.append(lv)
        level = max(levels)
        if level != e.level:
            diffs.append(f"edge {key}: stored level {e.level}, recomputed {level}")
        w = p.config.weight_of_level(level)
        weights[e.a.id] += w
        weights[e.b.id] += w
    for y in p.nodes:
        if weights[y.id] != y.weight:
            diffs.append(f"node {y.id}: stored W {y.weight}, recomputed {weights[y.id]}")
    return diffs


def _compress(edges):
    verts = sorted({x for e in edges for x in e})
    index = {v: i for i, v in enumerate(verts)}
    return len(verts), [(index[u], index[v]) for u, v in edges]


def _adjacency(k, edges):
    adj = [0] * k
    for u, v in edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return adj


def max_matching_by_vertices(edges, max_nodes: int = MAX_ORACLE_NODES) -> int:
    """Branch on the lowest remaining vertex: leave it single or match it."""
    k, es = _compress(edges)
    if k > max_nodes:
        raise OracleGuardError(f"{k} non-isolated nodes > {max_nodes}")
    adj = _adjacency(k, es)

    @lru_cache(maxsize=None)
    def best(avail: int) -> int:
        if not avail:
            return 0
        v = (avail & -avail).bit_length() - 1
        rest = avail & ~(1 << v)
        out = best(rest)
        nbrs = adj[v] & rest
        while nbrs:
            low = nbrs & -nbrs
            nbrs ^= low
            out = max(out, 1 + best(rest & ~low))
        return out

    return best((1 << k) - 1)


def max_matching_by_edges(edges) -> int:
    """Include/exclude each edge in turn, pruning on a trivial upper bound."""
    es = list(edges)
    if len(es) > MAX_ORACLE_EDGES:
        raise OracleGuardError(f"{len(es)} edges > {MAX_ORACLE_EDGES}")
    best = 0

    def go(i, used, size):
        nonlocal best
        if size > best:
            best = size
        if i == len(es) or size + (len(es) - i) <= best:
            return
        u, v = es[i]
        if u not in used and v not in used:
            go(i + 1, used | {u, v}, size + 1)
        go(i + 1, used, size)

    go(0, frozenset(), 0)
    return best


def exact_max_matching(edges, max_nodes: int = MAX_ORACLE_NODES) -> int:
    edges = list(edges)
    k, _ = _compress(edges)
    if k <= max_nodes:
        return max_matching_by_vertices(edges, max_nodes)
    if len(edges) <= MAX_ORACLE_EDGES:
        return max_matching_by_edges(edges)
    raise OracleGuardError(f"{k} nodes and {len(edges)} edges exceed the oracle guards")


def min_vertex_cover_by_independent_set(edges, max_nodes: int = MAX_ORACLE_NODES) -> int:
    """Cover size = (non-isolated nodes) - (maximum independent set)."""
    k, es = _compress(edges)
    if k > max_nodes:
        raise OracleGuardError(f"{k} non-isolated nodes > {max_nodes}")
    adj = _adjacency(k, es)

    @lru_cache(maxsize=None)
    def mis(avail: int) -> int:
        if not avail:
            return 0
        v = (avail & -avail).bit_length() - 1
        rest = avail & ~(1 << v)
        return max(mis(rest), 1 + mis(rest & ~adj[v]))

    return k - mis((1 << k) - 1)


def min_vertex_cover_by_subsets(edges, max_nodes: int = MAX_ORACLE_NODES) -> int:
    """Smallest subset of nodes touching every edge, by increasing size."""
    k, es = _compress(edges)
    if k > max_nodes:
        raise OracleGuardError(f"{k} non-isolated nodes > {max_nodes}")
    masks = [(1 << u) | (1 << v) for u, v in es]
    for size in range(k + 1):
        for combo in combinations(range(k), size):
            s = 0
            for x in combo:
                s |= 1 << x
            if all(m & s for m in masks):
                return size
    return k


def exact_min_vertex_cover(edges, max_nodes: int = MAX_ORACLE_NODES) -> int:
    return min_vertex_cover_by_independent_set(list(edges), max_nodes)


def is_vertex_cover(edges, cover) -> bool:
    c = set(cover)
    return all(u in c or v in c for u, v in edges)


def audit_all(p: NicePartition, r: ResidualState) -> list[str]:
    bad = p.audit_nice_partition()
    bad += recompute_from_scratch(p)
    bad += r.audit()
    fm = r.fm_value()
    cover = r.vertex_cover()
    if not is_vertex_cover(p.edges.keys(), cover):
        bad.append("V* misses an edge")
    size = len(cover)
    f = p.config.f_beta
    if not f / 2 * size <= fm <= size:
        bad.append(f"duality sandwich broken: |V*|={size}, fm={fm}")
    if fm > Fraction(p.config.n, 2):
        bad.append(f"fm={fm} exceeds n/2")
    return bad

"""Edge insertion/deletion.

An update first changes the edge structure only, leaving both stored node
weights untouched (both endpoints are "blind").  Each endpoint then wakes up
in turn and receives its weight change in small chunks; after every chunk we
apply the dirty rules, refresh the node's state and drain the dirty chain.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fixers import fix_dirty_drain
from .partition import DOWN, DOWN_B, UP, UP_B, EdgeRecord, NicePartition, NodeRecord, NodeState


class ClientError(ValueError):
    """Bad request: self-loop, duplicate/missing edge, node id out of range."""


@dataclass
class PendingDelta:
    node: int
    delta: int
    edge: int


def dirty_rule(state: NodeState, level: int, sign: int, K: int) -> bool:
    """Whether an activation changing the weight in direction ``sign`` makes
    a clean node in ``state`` dirty."""
    if sign > 0:
        return state is UP or state is DOWN_B
    if sign < 0:
        return state is UP_B or (state is DOWN and level > K)
    return False


def pivot_ceiling(p: NicePartition) -> int:
    b = p.beta
    return 2 * b ** 2 * 2 * (p.L - p.K + 1) * b ** 5 * p.L


def apply_natural_delta(p: NicePartition, x: NodeRecord, delta: int) -> int:
    """Apply ``delta`` to ``W_x`` in chunks; returns the number of chunks."""
    if abs(delta) > p.w(max(p.K, x.level - 1)):
        raise AssertionError(f"natural delta {delta} too large for node {x.id}")
    remaining, chunks = delta, 0
    while remaining:
        cap = p.w(x.level + 1)
        step = min(abs(remaining), cap)
        sign = 1 if remaining > 0 else -1
        step *= sign
        make_dirty = dirty_rule(x.state, x.level, sign, p.K)
        x.weight += step
        if x.weight < 0:
            raise AssertionError(f"weight underflow at node {x.id}")
        remaining -= step
        chunks += 1
        p.touch(x)
        if make_dirty:
            p.set_dirty(x)
        p.update_status(x)
        longest = fix_dirty_drain(p)
        if longest > p.max_chain:
            p.max_chain = longest
    p.counters.chunks += chunks
    if chunks > p.beta ** 2:
        raise AssertionError(f"{chunks} chunks for one natural activation of node {x.id}")
    return chunks


def _wake_order(a: NodeRecord, b: NodeRecord):
    # Lower stored weight wakes first so the still-blind endpoint never
    # holds a stored weight below zero.
    return (a, b) if (a.weight, a.id) <= (b.weight, b.id) else (b, a)


def _wake(p: NicePartition, e: EdgeRecord, delta: int):
    p.pending = [PendingDelta(y.id, delta, e.id) for y in _wake_order(e.a, e.b)]
    while p.pending:
        pd = p.pending.pop(0)
        apply_natural_delta(p, p.nodes[pd.node], pd.delta)


def _begin(p: NicePartition):
    p.counters.reset()
    p.max_chain = 0
    p.min_window_drop = None


def _finish(p: NicePartition):
    c, t = p.counters, p.totals
    for name in vars(c):
        setattr(t, name, getattr(t, name) + getattr(c, name))
    if c.pivot_calls > pivot_ceiling(p):
        raise AssertionError(f"{c.pivot_calls} pivot calls exceed {pivot_ceiling(p)}")
    p.reclaim()


def _check_pair(p: NicePartition, u: int, v: int):
    n = p.config.n
    if not (0 <= u < n and 0 <= v < n):
        raise ClientError(f"node id out of range in ({u}, {v}); n={n}")
    if u == v:
        raise ClientError(f"self-loop on node {u}")


def insert_edge(p: NicePartition, u: int, v: int) -> EdgeRecord:
    _check_pair(p, u, v)
    key = (u, v) if u < v else (v, u)
    if key in p.edges:
        raise ClientError(f"edge {key} already present")
    _begin(p)
    a, b = p.nodes[key[0]], p.nodes[key[1]]
    e = EdgeRecord(p._next_edge_id, a, b, max(a.level, b.level))
    p._next_edge_id += 1
    p.edges[key] = e
    for y in (a, b):
        p.e_insert(y, e, e.level)
        p.touch(y)
    w0 = p.w(e.level)
    for y in (a, b):
        p.update_status(y)
    _wake(p, e, w0)
    _finish(p)
    return e


def delete_edge(p: NicePartition, u: int, v: int):
    _check_pair(p, u, v)
    key = (u, v) if u < v else (v, u)
    e = p.edges.get(key)
    if e is None:
        raise ClientError(f"edge {key} not present")
    _begin(p)
    w0 = p.w(e.level)
    del p.edges[key]
    a, b = e.a, e.b
    for y in (a, b):
        p.e_remove(y, e, e.level)
        y.m_up.pop(e, None)
        y.m_down.pop(e, None)
        p.touch(y)
    p.deleted_edges.append(e)
    for y in (a, b):
        p.update_status(y)
    _wake(p, e, -w0)
    _finish(p)

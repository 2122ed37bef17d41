"""MOVE-UP / MOVE-DOWN and the pivots built on them.

A pivot shifts one shadow-level of ``v`` on an edge ``(u, v)`` by one, then
decides whether the other endpoint ``u`` becomes dirty.  Both pivots return
True exactly when the stored edge level changed (net of any undo by ``u``).
"""

from __future__ import annotations

from .partition import DOWN, DOWN_B, UP, UP_B, EdgeRecord, NicePartition, NodeRecord


def _relevel(p: NicePartition, e: EdgeRecord, new_level: int):
    old = e.level
    delta = p.w(new_level) - p.w(old)
    for y in (e.a, e.b):
        p.e_remove(y, e, old)
        y.weight += delta
        if y.weight < 0:
            raise AssertionError(f"weight underflow at node {y.id}")
    e.level = new_level
    for y in (e.a, e.b):
        p.e_insert(y, e, new_level)


def move_up(p: NicePartition, v: NodeRecord, e: EdgeRecord) -> bool:
    p.counters.move_calls += 1
    u = e.other(v)
    i_v = p.shadow(v, e)
    i_u = p.shadow(u, e)
    if i_v >= p.L + 1:
        raise AssertionError(f"move_up on {e} with shadow-level {i_v} at node {v.id}")
    if e in v.m_down:
        p.drop_down_mark(v, e)
    else:
        v.m_up[e] = None
    if i_v + 1 > u.level:
        # u may no longer mark e once v's shadow-level exceeds u's level
        if e in u.m_up:
            del u.m_up[e]
        if e in u.m_down:
            p.drop_down_mark(u, e)
    if e.level == max(i_v + 1, i_u):
        return False
    _relevel(p, e, e.level + 1)
    p.touch(u)
    p.touch(v)
    return True


def move_down(p: NicePartition, v: NodeRecord, e: EdgeRecord) -> bool:
    p.counters.move_calls += 1
    u = e.other(v)
    i_v = p.shadow(v, e)
    i_u = p.shadow(u, e)
    if i_v <= p.K:
        raise AssertionError(f"move_down on {e} with shadow-level {i_v} at node {v.id}")
    if e in v.m_up:
        del v.m_up[e]
    else:
        p.add_down_mark(v, e)
    if e.level == max(i_v - 1, i_u):
        return False
    _relevel(p, e, e.level - 1)
    p.touch(u)
    p.touch(v)
    return True


def pivot_up(p: NicePartition, v: NodeRecord, e: EdgeRecord) -> bool:
    p.counters.pivot_calls += 1
    u = e.other(v)
    Y = move_up(p, v, e)
    if Y and (u.state is UP_B or (u.state is DOWN and u.level > p.K)):
        p.set_dirty(u)
    p.update_status(u)
    return Y


def _undo(p: NicePartition, u: NodeRecord, e: EdgeRecord):
    if not move_up(p, u, e):
        raise AssertionError(f"undo by node {u.id} left {e} at a new level")
    p.update_status(u)


def pivot_down(p: NicePartition, v: NodeRecord, e: EdgeRecord) -> bool:
    p.counters.pivot_calls += 1
    u = e.other(v)
    Y = move_down(p, v, e)
    if Y and u.state is UP:
        if e not in u.m_up and u.level >= p.shadow(v, e):
            _undo(p, u, e)
            return False
        p.set_dirty(u)
    elif Y and u.state is DOWN_B:
        if e in u.m_down and p.shadow(v, e) < u.level:
            _undo(p, u, e)
            return False
        p.set_dirty(u)
    p.update_status(u)
    return Y

"""The four fixers, FIX-DIRTY-NODE and the drain loop.

Each fixer makes at most one successful pivot, so at most one neighbour of
the fixed node becomes dirty.  The drain follows that chain of dirty nodes
until it dies out and checks that the down-level of the dirty node drops by
at least one every two steps.
"""

from __future__ import annotations

from dataclasses import dataclass

from .partition import DOWN, DOWN_B, UP, UP_B, NicePartition, NodeRecord
from .pivots import pivot_down, pivot_up


class ChainLengthError(AssertionError):
    pass


@dataclass(frozen=True)
class FixBudget:
    unmark_budget: int
    downmark_budget: int

    @classmethod
    def for_partition(cls, p: NicePartition) -> "FixBudget":
        b5 = p.beta ** 5
        return cls(unmark_budget=b5, downmark_budget=b5 * p.L)


def _budget(p: NicePartition) -> FixBudget:
    b = getattr(p, "_fix_budget", None)
    if b is None:
        b = p._fix_budget = FixBudget.for_partition(p)
    return b


def fix_up(p: NicePartition, v: NodeRecord):
    p.clear_dirty(v)
    e = v.E[v.level - p.K].first()
    if e is None:
        raise AssertionError(f"fix_up: E_l({v.id}) empty")
    # e is at v's own level, so its other shadow-level is at most l(v)
    if not pivot_up(p, v, e):
        raise AssertionError(f"fix_up: first up-mark at node {v.id} failed")


def fix_down_b(p: NicePartition, v: NodeRecord):
    if not v.m_down:
        raise AssertionError(f"fix_down_b: M_down({v.id}) empty on entry")
    p.clear_dirty(v)
    for _ in range(_budget(p).unmark_budget):
        e = v.m_down.first()
        if e is None or pivot_up(p, v, e):
            break


def fix_down(p: NicePartition, v: NodeRecord):
    p.clear_dirty(v)
    level_set = v.E[v.level - p.K]
    for _ in range(_budget(p).downmark_budget):
        # front block holds the unmarked edges; a marked front means it is empty
        e = level_set.first()
        if e is None or e in v.m_down:
            break
        # a failed pivot leaves e down-marked, which already moved it to the back
        if pivot_down(p, v, e):
            break


def fix_up_b(p: NicePartition, v: NodeRecord):
    if not v.m_up:
        raise AssertionError(f"fix_up_b: M_up({v.id}) empty on entry")
    p.clear_dirty(v)
    for _ in range(_budget(p).unmark_budget):
        e = v.m_up.first()
        if e is None or pivot_down(p, v, e):
            break


def fix_dirty_node(p: NicePartition, v: NodeRecord):
    if not v.dirty:
        raise AssertionError(f"fix_dirty_node on clean node {v.id}")
    s = v.state
    if s is UP:
        fix_up(p, v)
    elif s is DOWN_B:
        fix_down_b(p, v)
    elif s is DOWN and v.level > p.K:
        fix_down(p, v)
    elif s is UP_B:
        fix_up_b(p, v)
    else:
        raise AssertionError(f"node {v.id} dirty in state {s.name} at level {v.level}")
    p.update_status(v)


def fix_dirty_drain(p: NicePartition) -> int:
    """Fix dirty nodes until none is left; returns the iteration count."""
    cap = 2 * (p.L - p.K + 1)
    trace = p.drain_log
    trace.clear()
    k = 0
    while p.dirty_slot is not None:
        x = p.dirty_slot
        lstar = p.down_level(x)
        trace.append((x.id, lstar, x.level))
        k += 1
        p.counters.drain_iterations += 1
        if k > cap:
            p.counters.chain_violations += 1
            raise ChainLengthError(f"drain exceeded {cap} iterations: {trace}")
        if k >= 2 and lstar > trace[-2][1]:
            p.counters.chain_violations += 1
            raise ChainLengthError(f"down-level increased along the chain: {trace}")
        if k >= 3:
            drop = trace[-3][1] - lstar
            if drop < 1:
                p.counters.chain_violations += 1
                raise ChainLengthError(f"down-level did not drop within two steps: {trace}")
            if p.min_window_drop is None or drop < p.min_window_drop:
                p.min_window_drop = drop
        fix_dirty_node(p, x)
    return k

"""Node/edge records, per-level edge sets, node states and UPDATE-STATUS.

Shadow-levels are never stored.  For a node ``y`` and incident edge ``e`` the
shadow-level is ``level(y) + 1`` if ``e`` is up-marked by ``y``, ``level(y) - 1``
if it is down-marked, and ``level(y)`` otherwise.  Edge levels are stored and
must always equal the max of the two derived shadow-levels.
"""

from __future__ import annotations

import enum
from collections import OrderedDict
from dataclasses import dataclass, fields

from .weights import Config


class NodeState(enum.Enum):
    UP = "UP"
    DOWN = "DOWN"
    SLACK = "SLACK"
    IDLE = "IDLE"
    UP_B = "UP_B"
    DOWN_B = "DOWN_B"


UP, DOWN, SLACK, IDLE, UP_B, DOWN_B = (
    NodeState.UP, NodeState.DOWN, NodeState.SLACK,
    NodeState.IDLE, NodeState.UP_B, NodeState.DOWN_B,
)


class Halt(RuntimeError):
    """UPDATE-STATUS could not make a node fit any admissible state."""

    def __init__(self, message: str, dump: dict):
        super().__init__(f"{message}: {dump}")
        self.dump = dump


class SingleDirtyViolation(AssertionError):
    pass


class OrderedEdgeSet(OrderedDict):
    """Insertion-ordered set of edges with O(1) front/back moves.

    Used both for mark sets (pick-first order) and for the per-level sets
    ``E_i(v)``, whose order is kept as a front block of edges not
    down-marked by ``v`` followed by a back block of down-marked edges.
    """

    def first(self):
        return next(iter(self)) if self else None

    def push_front(self, e):
        self[e] = None
        self.move_to_end(e, last=False)

    def push_back(self, e):
        self[e] = None
        self.move_to_end(e)

    def to_front(self, e):
        self.move_to_end(e, last=False)

    def to_back(self, e):
        self.move_to_end(e)


class NodeRecord:
    __slots__ = ("id", "level", "weight", "state", "dirty", "m_up", "m_down", "E")

    def __init__(self, node_id: int, K: int, n_edge_levels: int):
        self.id = node_id
        self.level = K
        self.weight = 0
        self.state = SLACK
        self.dirty = False
        self.m_up = OrderedEdgeSet()
        self.m_down = OrderedEdgeSet()
        self.E = [OrderedEdgeSet() for _ in range(n_edge_levels)]

    def __repr__(self):
        return (f"Node({self.id}, level={self.level}, W={self.weight}, "
                f"{self.state.name}, dirty={self.dirty}, "
                f"|M_up|={len(self.m_up)}, |M_down|={len(self.m_down)})")


class EdgeRecord:
    __slots__ = ("id", "a", "b", "level", "rpairs")

    def __init__(self, edge_id: int, a: NodeRecord, b: NodeRecord, level: int):
        self.id = edge_id
        self.a = a
        self.b = b
        self.level = level
        self.rpairs = 0  # matched copy pairs in the residual layer

    def other(self, x: NodeRecord) -> NodeRecord:
        return self.b if x is self.a else self.a

    @property
    def key(self) -> tuple[int, int]:
        return (self.a.id, self.b.id)

    def __repr__(self):
        return f"Edge({self.a.id}, {self.b.id}, level={self.level})"


@dataclass
class WorkCounters:
    pivot_calls: int = 0
    move_calls: int = 0
    drain_iterations: int = 0
    chunks: int = 0
    halts: int = 0
    chain_violations: int = 0
    mark_repairs: int = 0

    def reset(self):
        for f in fields(self):
            setattr(self, f.name, 0)


class NicePartition:
    """The whole hierarchical structure (single writer)."""

    def __init__(self, config: Config):
        self.config = config
        K, L = config.K, config.L
        self.K, self.L, self.beta = K, L, config.beta
        self.t_f = config.threshold("f_beta")
        self.t_2 = config.threshold("one_minus_2_over_beta")
        self.t_1 = config.threshold("one_minus_1_over_beta")
        self.t_one = config.threshold("one")
        # _w[i - K] is the numerator of beta^-i for i in [K, L+1]; one extra
        # slot keeps w(i+1) lookups in range for transient-slack computations.
        self._w = [config.beta ** (L + 1 - i) for i in range(K, L + 2)] + [0]
        n_levels = L - K + 2
        self.nodes = [NodeRecord(i, K, n_levels) for i in range(config.n)]
        self.edges: dict[tuple[int, int], EdgeRecord] = {}
        self._next_edge_id = 0
        self.dirty_slot: NodeRecord | None = None
        self.counters = WorkCounters()
        self.totals = WorkCounters()
        # consumed by the residual layer
        self.changed_nodes: dict[int, None] = {}
        self.deleted_edges: list[EdgeRecord] = []
        self._junk: list[OrderedEdgeSet] = []
        # per-drain trace: (node id, down-level, level) per iteration
        self.drain_log: list[tuple[int, int, int]] = []
        self.max_chain = 0
        self.min_window_drop: int | None = None
        # weight changes not yet applied to a still-blind endpoint
        self.pending: list = []

    # -- weights -------------------------------------------------------

    def w(self, level: int) -> int:
        return self._w[level - self.K]

    def touch(self, x: NodeRecord):
        self.changed_nodes[x.id] = None

    # -- derived quantities -------------------------------------------

    def shadow(self, y: NodeRecord, e: EdgeRecord) -> int:
        if e in y.m_up:
            return y.level + 1
        if e in y.m_down:
            return y.level - 1
        return y.level

    def derive_shadow_level(self, v: int, e: EdgeRecord) -> int:
        y = self.nodes[v]
        if e.a is not y and e.b is not y:
            raise AssertionError(f"{e} not incident to node {v}")
        return self.shadow(y, e)

    def down_level(self, x: NodeRecord) -> int:
        return x.level - 1 if x.m_down else x.level

    def has_unmarked_at_level(self, y: NodeRecord) -> bool:
        """``E_l(y) \\ M_down(y)`` nonempty, read off the two-block order."""
        first = y.E[y.level - self.K].first()
        return first is not None and first not in y.m_down

    # -- edge-set and mark-set maintenance ---------------------------------

    def e_insert(self, y: NodeRecord, e: EdgeRecord, level: int):
        s = y.E[level - self.K]
        if e in y.m_down:
            s.push_back(e)
        else:
            s.push_front(e)

    def e_remove(self, y: NodeRecord, e: EdgeRecord, level: int):
        del y.E[level - self.K][e]

    def add_down_mark(self, y: NodeRecord, e: EdgeRecord):
        y.m_down[e] = None
        y.E[e.level - self.K].to_back(e)

    def drop_down_mark(self, y: NodeRecord, e: EdgeRecord):
        del y.m_down[e]
        y.E[e.level - self.K].to_front(e)

    def clear_mark_set(self, y: NodeRecord, which: str):
        # Detach in O(1); the old container is reclaimed later in bounded
        # chunks by reclaim().
        if which == "up":
            old, y.m_up = y.m_up, OrderedEdgeSet()
        elif which == "down":
            old, y.m_down = y.m_down, OrderedEdgeSet()
        else:
            raise ValueError(which)
        if old:
            self._junk.append(old)

    def reclaim(self, budget: int = 64) -> int:
        freed = 0
        while self._junk and freed < budget:
            s = self._junk[-1]
            while s and freed < budget:
                s.popitem()
                freed += 1
            if not s:
                self._junk.pop()
        return freed

    # -- dirty slot ------------------------------------------------------

    def set_dirty(self, x: NodeRecord):
        slot = self.dirty_slot
        if slot is not None and slot is not x:
            self.counters.chain_violations += 1
            raise SingleDirtyViolation(
                f"node {x.id} becoming dirty while node {slot.id} is dirty")
        x.dirty = True
        self.dirty_slot = x

    def clear_dirty(self, x: NodeRecord):
        if self.dirty_slot is not x:
            raise SingleDirtyViolation(f"node {x.id} is not the dirty node")
        x.dirty = False
        self.dirty_slot = None

    # -- state fitness ---------------------------------------------------

    def fits(self, y: NodeRecord, s: NodeState) -> bool:
        W = y.weight
        if s is UP:
            return (self.t_1 <= W < self.t_one and not y.m_down
                    and bool(y.E[y.level - self.K]))
        if s is DOWN:
            return (self.t_f <= W < self.t_2 and not y.m_up
                    and (y.level == self.K or self.has_unmarked_at_level(y)))
        if s is SLACK:
            return (0 <= W < self.t_f and not y.m_up and not y.m_down
                    and y.level == self.K)
        if not self.t_2 <= W < self.t_1:
            return False
        if s is IDLE:
            return not y.m_up and not y.m_down
        if s is UP_B:
            return bool(y.m_up) and not y.m_down
        if s is DOWN_B:
            return not y.m_up and bool(y.m_down)
        raise ValueError(s)

    def fits_state(self, v: int, s: NodeState) -> bool:
        return self.fits(self.nodes[v], s)

    def transient_slack(self, y: NodeRecord) -> int:
        """Largest weight change a single activation can cause at ``y``."""
        m = self.down_level(y)
        return self.w(m) - self.w(m + 1)

    def fits_while_dirty(self, y: NodeRecord) -> bool:
        """Fitness of a dirty node in its current state.

        The weight may overshoot the band by one activation on the side the
        fixer is about to repair.  A dirty DOWN node may also have run out of
        unmarked edges at its level; the fixer then stops at once and the
        closing UPDATE-STATUS moves it down.
        """
        W, s = y.weight, y.state
        slack = self.transient_slack(y)
        if s is UP:
            # increases at an UP node come in chunks of at most w(l+1)
            return (self.t_1 <= W < self.t_one + self.w(y.level + 1) and not y.m_down
                    and bool(y.E[y.level - self.K]))
        if s is DOWN_B:
            return (self.t_2 <= W < self.t_1 + slack and not y.m_up
                    and bool(y.m_down))
        if s is DOWN:
            return (y.level > self.K and self.t_f - slack <= W < self.t_2
                    and not y.m_up)
        if s is UP_B:
            return (self.t_2 - slack <= W < self.t_1 and not y.m_down
                    and bool(y.m_up))
        return False

    def dump(self, y: NodeRecord) -> dict:
        return {
            "node": y.id, "level": y.level, "weight": y.weight,
            "denom": self.config.denom, "state": y.state.name, "dirty": y.dirty,
            "m_up": sorted(e.key for e in y.m_up),
            "m_down": sorted(e.key for e in y.m_down),
            "E": {i: sorted(e.key for e in s)
                  for i, s in enumerate(y.E, start=self.K) if s},
        }

    def halt(self, y: NodeRecord, why: str):
        self.counters.halts += 1
        raise Halt(why, self.dump(y))

    # -- UPDATE-STATUS ----------------------------------------------------

    def update_status(self, y: NodeRecord):
        if y.dirty:
            if not self.fits_while_dirty(y):
                self.halt(y, "dirty node unfit in its current state")
            return

        fitting = [s for s in NodeState if self.fits(y, s)]
        if len(fitting) > 1:
            raise AssertionError(f"node {y.id} fits several states {fitting}")
        if fitting:
            y.state = fitting[0]
            return

        K, W = self.K, y.weight
        i = y.level
        if self.t_1 <= W < self.t_one and not y.m_down and not y.E[i - K]:
            # 2-a: jump to the first nonempty level above.
            j = i + 1
            while j <= self.L + 1 and not y.E[j - K]:
                j += 1
            if j > self.L:
                self.halt(y, f"case 2-a would move node to level {j} > L")
            y.level = j
            self.clear_mark_set(y, "up")
            y.state = UP
            self.touch(y)
            self._strip_foreign_marks(y, j)
            if not self.fits(y, UP):
                self.halt(y, "unfit for UP after case 2-a")
            return

        if (self.t_f <= W < self.t_2 and not y.m_up and i > K
                and not self.has_unmarked_at_level(y)):
            # 2-b: one level down, down-marks dissolve; straight to K if the
            # new level has no edges.
            y.level = i - 1
            self.clear_mark_set(y, "down")
            if not y.E[i - 1 - K]:
                y.level = K
            y.state = DOWN
            self.touch(y)
            if not self.fits(y, DOWN):
                self.halt(y, "unfit for DOWN after case 2-b")
            return

        self.halt(y, "clean node unfit in every state")

    def _strip_foreign_marks(self, y: NodeRecord, j: int):
        # After a jump to level j, a neighbour x below j may still mark an
        # edge of E_j(y) even though y's shadow-level now exceeds l(x).
        # Dropping that mark leaves the edge at level j, so no weight moves.
        touched = []
        for e in y.E[j - self.K]:
            self.counters.mark_repairs += 1
            x = e.other(y)
            if x.level >= j:
                continue
            if e in x.m_up:
                del x.m_up[e]
            elif e in x.m_down:
                self.drop_down_mark(x, e)
            else:
                continue
            if max(self.shadow(x, e), j) != e.level:
                raise AssertionError(f"mark repair would move {e}")
            touched.append(x)
        for x in touched:
            self.update_status(x)

    # -- inspection --------------------------------------------------------

    def edge(self, u: int, v: int) -> EdgeRecord | None:
        return self.edges.get((u, v) if u < v else (v, u))

    def query_raw(self, v: int):
        y = self.nodes[v]
        return (y.level, y.state, y.weight, len(y.m_up), len(y.m_down))

    def audit_nice_partition(self) -> list[str]:
        """Recheck every structural condition from scratch (quiescent only)."""
        bad: list[str] = []
        K, L, cfg = self.K, self.L, self.config
        if self.dirty_slot is not None:
            bad.append(f"dirty slot occupied by node {self.dirty_slot.id}")
        recomputed = [0] * cfg.n
        for key, e in self.edges.items():
            a, b = e.a, e.b
            if key != (a.id, b.id):
                bad.append(f"edge key {key} does not match endpoints {e.key}")
            if not K <= e.level <= L + 1:
                bad.append(f"{e}: level outside [K, L+1]")
                continue
            sa, sb = self.shadow(a, e), self.shadow(b, e)
            for y, s in ((a, sa), (b, sb)):
                if e in y.m_up and e in y.m_down:
                    bad.append(f"{e}: in both mark sets of node {y.id}")
                if not y.level - 1 <= s <= y.level + 1 or s < K:
                    bad.append(f"{e}: shadow-level {s} of node {y.id} out of range")
            if e.level != max(sa, sb):
                bad.append(f"{e}: stored level != max shadow-levels ({sa}, {sb})")
            top = max(a.level, b.level)
            if not top - 1 <= e.level <= top + 1:
                bad.append(f"{e}: weight not within a beta factor")
            for y, sy, sx, x in ((a, sa, sb, b), (b, sb, sa, a)):
                if sy != y.level and sx > y.level:
                    bad.append(f"{e}: node {y.id} marked it while node {x.id}'s "
                               f"shadow-level {sx} > {y.level}")
                if e not in y.E[e.level - K]:
                    bad.append(f"{e}: missing from E_{e.level}({y.id})")
            wt = self.w(e.level)
            recomputed[a.id] += wt
            recomputed[b.id] += wt

        for y in self.nodes:
            if recomputed[y.id] != y.weight:
                bad.append(f"node {y.id}: stored W {y.weight} != recomputed "
                           f"{recomputed[y.id]}")
            if not K <= y.level <= L:
                bad.append(f"node {y.id}: level {y.level} outside [K, L]")
            if y.weight >= self.t_one or y.weight < 0:
                bad.append(f"node {y.id}: W out of [0, 1)")
            if y.level > K and y.weight < self.t_f:
                bad.append(f"node {y.id}: W < f(beta) above level K")
            if y.m_up and y.m_down:
                bad.append(f"node {y.id}: both mark sets nonempty")
            if y.level == K and y.m_down:
                bad.append(f"node {y.id}: down-marks at level K")
            if y.dirty:
                bad.append(f"node {y.id}: dirty at quiescence")
            if not self.fits(y, y.state):
                bad.append(f"node {y.id}: unfit in state {y.state.name}")
            for ms, name in ((y.m_up, "M_up"), (y.m_down, "M_down")):
                for e in ms:
                    if self.edges.get(e.key) is not e or (e.a is not y and e.b is not y):
                        bad.append(f"node {y.id}: stale edge {e} in {name}")
            for i, s in enumerate(y.E, start=K):
                seen_marked = False
                for e in s:
                    if e.level != i or (e.a is not y and e.b is not y) \
                            or self.edges.get(e.key) is not e:
                        bad.append(f"node {y.id}: foreign edge {e} in E_{i}")
                    if e in y.m_down:
                        seen_marked = True
                    elif seen_marked:
                        bad.append(f"node {y.id}: E_{i} two-block order broken")
                        break
            if len(y.E[y.level - K]) >= self.beta ** (y.level + 1):
                bad.append(f"node {y.id}: |E_l(v)| too large")
        return bad

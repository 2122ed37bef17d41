"""Residual weights on edges whose endpoints both sit at level K.

Each level-K node ``v`` has ``beta`` copies, of which the first ``t(v)`` are
switched on, where ``t(v) / beta`` is the spare capacity ``1 - W_v`` rounded
down to a multiple of ``1/beta``.  A maximal matching ``M*`` between on-copies
along residual edges gives every residual edge an extra weight of
``(matched copy pairs) / beta``.  Maximality makes every residual edge have an
endpoint whose total weight is at least ``1 - 1/beta``.
"""

from __future__ import annotations

from fractions import Fraction

from .partition import EdgeRecord, NicePartition, NodeRecord


class ResidualState:
    def __init__(self, p: NicePartition):
        self.p = p
        beta = p.beta
        self.unit = p.config.denom // beta  # numerator of 1/beta
        n = p.config.n
        self.t = [0] * n
        self.matched = [0] * n
        self.mates: list[list] = [[None] * beta for _ in range(n)]
        self.pairs = 0
        self.repairs = 0  # match/unmatch operations in the last sync
        for y in p.nodes:
            self.t[y.id] = self._target(y)

    def _target(self, y: NodeRecord) -> int:
        if y.level != self.p.K:
            return 0
        return (self.p.t_one - y.weight) // self.unit

    def residual_edges(self, y: NodeRecord):
        """Incident edges whose other endpoint is also at level K."""
        K = self.p.K
        if y.level != K:
            return
        for s in (y.E[0], y.E[1]):
            for e in s:
                if e.other(y).level == K:
                    yield e

    # -- matching primitives -------------------------------------------

    def _unmatch(self, x: int, c: int):
        e, y, cy = self.mates[x][c]
        self.mates[x][c] = None
        self.mates[y][cy] = None
        e.rpairs -= 1
        self.pairs -= 1
        self.matched[x] -= 1
        self.matched[y] -= 1
        self.repairs += 1

    def _match(self, e: EdgeRecord, x: int, cx: int, y: int, cy: int):
        self.mates[x][cx] = (e, y, cy)
        self.mates[y][cy] = (e, x, cx)
        e.rpairs += 1
        self.pairs += 1
        self.matched[x] += 1
        self.matched[y] += 1
        self.repairs += 1

    def _free_copy(self, x: int) -> int | None:
        row = self.mates[x]
        for c in range(self.t[x]):
            if row[c] is None:
                return c
        return None

    def _has_free(self, x: int) -> bool:
        return self.matched[x] < self.t[x]

    # -- sync ----------------------------------------------------------------

    def sync(self):
        """Bring the residual layer up to date with the core's change-log."""
        p = self.p
        self.repairs = 0
        queue: dict[int, None] = {}
        for e in p.deleted_edges:
            if e.rpairs:
                row = self.mates[e.a.id]
                for c in range(len(row)):
                    if row[c] is not None and row[c][0] is e:
                        self._unmatch(e.a.id, c)
            queue[e.a.id] = None
            queue[e.b.id] = None
        p.deleted_edges.clear()

        for xid in p.changed_nodes:
            x = p.nodes[xid]
            t_new = self._target(x)
            row = self.mates[xid]
            # on-copies stay a prefix: switch off from the top
            for c in range(len(row) - 1, t_new - 1, -1):
                if row[c] is not None:
                    queue[row[c][1]] = None
                    self._unmatch(xid, c)
            self.t[xid] = t_new
            queue[xid] = None
        p.changed_nodes.clear()

        for xid in queue:
            self._rematch(p.nodes[xid])

    def _rematch(self, x: NodeRecord):
        xid = x.id
        if not self._has_free(xid):
            return
        for e in self.residual_edges(x):
            y = e.other(x).id
            while self._has_free(y) and self._has_free(xid):
                self._match(e, xid, self._free_copy(xid), y, self._free_copy(y))
            if not self._has_free(xid):
                return

    # -- queries ---------------------------------------------------------------

    def total_weight(self, y: NodeRecord) -> int:
        """Numerator of W_y + W^r_y."""
        return y.weight + self.matched[y.id] * self.unit

    def residual_weight(self, e: EdgeRecord) -> Fraction:
        return Fraction(e.rpairs, self.p.beta)

    def fm_value(self) -> Fraction:
        p = self.p
        twice = sum(y.weight for y in p.nodes)
        return Fraction(twice, 2 * p.config.denom) + Fraction(self.pairs, p.beta)

    def vertex_cover(self) -> list[int]:
        t_f = self.p.t_f
        return [y.id for y in self.p.nodes if self.total_weight(y) >= t_f]

    def audit(self) -> list[str]:
        p, bad = self.p, []
        K, beta = p.K, p.beta
        pair_count = 0
        for y in p.nodes:
            yid = y.id
            if self.t[yid] != self._target(y):
                bad.append(f"node {yid}: {self.t[yid]} on-copies, expected {self._target(y)}")
            row = self.mates[yid]
            live = 0
            for c, m in enumerate(row):
                if m is None:
                    continue
                live += 1
                e, z, cz = m
                if c >= self.t[yid]:
                    bad.append(f"node {yid}: off-copy {c} is matched")
                if p.edges.get(e.key) is not e:
                    bad.append(f"node {yid}: copy {c} matched along deleted edge {e}")
                if e.a.level != K or e.b.level != K:
                    bad.append(f"{e}: residual pair on an edge outside E^r")
                m2 = self.mates[z][cz]
                if m2 is None or m2[0] is not e or m2[1] != yid or m2[2] != c:
                    bad.append(f"node {yid}: copy {c} mate is not mutual")
            if live != self.matched[yid]:
                bad.append(f"node {yid}: matched count {self.matched[yid]} != {live}")
            pair_count += live
            tot = self.total_weight(y)
            if not 0 <= tot <= p.t_one:
                bad.append(f"node {yid}: W + W^r = {tot} outside [0, 1]")
            if y.level == K:
                deg_r = sum(1 for _ in self.residual_edges(y))
                if deg_r >= beta ** (K + 1):
                    bad.append(f"node {yid}: residual degree {deg_r} too large")
        if pair_count != 2 * self.pairs:
            bad.append(f"pair count {self.pairs} inconsistent with mates")
        edge_pairs = 0
        for e in p.edges.values():
            edge_pairs += e.rpairs
            if e.a.level != K or e.b.level != K:
                if e.rpairs:
                    bad.append(f"{e}: residual weight outside E^r")
                continue
            a, b = e.a.id, e.b.id
            if self._has_free(a) and self._has_free(b):
                bad.append(f"{e}: both endpoints have free on-copies (M* not maximal)")
            if max(self.total_weight(e.a), self.total_weight(e.b)) < p.t_1:
                bad.append(f"{e}: no endpoint with W + W^r >= 1 - 1/beta")
        if edge_pairs != self.pairs:
            bad.append(f"edge pair sum {edge_pairs} != {self.pairs}")
        return bad

"""Public entry point: a dynamic graph with a fractional matching and cover."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction

from .oracles import audit_all
from .partition import Halt, NicePartition
from .residual import ResidualState
from .updates import delete_edge, insert_edge
from .weights import Config


@dataclass
class UpdateStats:
    pivot_calls: int
    move_calls: int
    drain_iterations: int
    max_chain: int
    min_window_drop: int | None
    chunks: int
    mark_repairs: int
    residual_repairs: int
    halts: int

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass
class NodeView:
    level: int
    state: str
    weight: Fraction
    n_up: int
    n_down: int


class DynamicMatching:
    """Maintains a (2+eps)-approximate fractional matching and vertex cover
    under edge insertions and deletions on a fixed node set ``0..n-1``."""

    def __init__(self, n: int, beta: int = 5, K: int = 20):
        self.config = Config(n=n, beta=beta, K=K)
        self.core = NicePartition(self.config)
        self.residual = ResidualState(self.core)
        self.halts = 0

    def _run(self, op, u, v) -> UpdateStats:
        try:
            op(self.core, u, v)
        except Halt:
            self.halts += 1
            raise
        self.residual.sync()
        c, p = self.core.counters, self.core
        return UpdateStats(
            pivot_calls=c.pivot_calls, move_calls=c.move_calls,
            drain_iterations=c.drain_iterations, max_chain=p.max_chain,
            min_window_drop=p.min_window_drop, chunks=c.chunks,
            mark_repairs=c.mark_repairs, residual_repairs=self.residual.repairs,
            halts=c.halts,
        )

    def insert(self, u: int, v: int) -> UpdateStats:
        return self._run(insert_edge, u, v)

    def delete(self, u: int, v: int) -> UpdateStats:
        return self._run(delete_edge, u, v)

    def has_edge(self, u: int, v: int) -> bool:
        return self.core.edge(u, v) is not None

    def edges(self) -> list[tuple[int, int]]:
        return sorted(self.core.edges)

    def fm_value(self) -> Fraction:
        return self.residual.fm_value()

    def vertex_cover(self) -> list[int]:
        return self.residual.vertex_cover()

    def edge_weight(self, u: int, v: int) -> Fraction:
        """Total weight w(e) + w^r(e) of a present edge."""
        e = self.core.edge(u, v)
        if e is None:
            raise KeyError((u, v))
        return self.config.as_fraction(self.config.weight_of_level(e.level)) \
            + self.residual.residual_weight(e)

    def node(self, v: int) -> NodeView:
        level, state, w, n_up, n_down = self.core.query_raw(v)
        return NodeView(level, state.name, self.config.as_fraction(w), n_up, n_down)

    def audit(self) -> list[str]:
        return audit_all(self.core, self.residual)

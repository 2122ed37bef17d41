"""Replay an update stream and collect per-update work counters."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .dynamic import DynamicMatching
from .fixers import ChainLengthError
from .partition import Halt, SingleDirtyViolation
from .streams import UpdateStream
from .updates import pivot_ceiling

COUNTERS = ("pivot_calls", "move_calls", "drain_iterations", "max_chain",
            "chunks", "mark_repairs", "residual_repairs", "halts")


def frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


@dataclass
class RunSummary:
    L: int
    K: int
    updates: int = 0
    maxima: dict = field(default_factory=lambda: dict.fromkeys(COUNTERS, 0))
    sums: dict = field(default_factory=lambda: dict.fromkeys(COUNTERS, 0))
    min_window_drop: int | None = None
    audits: int = 0
    violations: list = field(default_factory=list)
    halts: int = 0
    chain_violations: int = 0
    dirty_violations: int = 0
    ceiling: int = 0
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None and not self.violations

    def as_record(self, dm: DynamicMatching) -> dict:
        return {
            "updates": self.updates,
            "max": self.maxima,
            "mean": {k: round(v / self.updates, 6) if self.updates else 0
                     for k, v in self.sums.items()},
            "min_window_drop": self.min_window_drop,
            "violations": len(self.violations),
            "halts": self.halts,
            "fm": frac(dm.fm_value()),
            "vc": len(dm.vertex_cover()),
            "L": self.L,
            "status": 0 if self.ok else 1,
        }


def replay(stream: UpdateStream, beta: int = 5, K: int = 2, audit_every: int = 0,
           out=None) -> tuple[RunSummary, DynamicMatching]:
    """Run every record of ``stream``; stop at the first violation.

    With ``out`` set, one JSON line per record is written there, followed by
    a summary line.
    """
    dm = DynamicMatching(stream.n, beta=beta, K=K)
    rs = RunSummary(L=dm.config.L, K=K, ceiling=pivot_ceiling(dm.core))

    def emit(rec):
        if out is not None:
            out.write(json.dumps(rec, separators=(",", ":")) + "\n")

    for step, r in enumerate(stream.records):
        if r.op in ("+", "-"):
            try:
                st = dm.insert(r.u, r.v) if r.op == "+" else dm.delete(r.u, r.v)
            except Halt as ex:
                rs.halts += 1
                rs.error = f"step {step}: HALT {ex}"
            except ChainLengthError as ex:
                rs.chain_violations += 1
                rs.error = f"step {step}: {ex}"
            except SingleDirtyViolation as ex:
                rs.dirty_violations += 1
                rs.error = f"step {step}: {ex}"
            except AssertionError as ex:
                rs.error = f"step {step}: {ex}"
            if rs.error:
                break
            rs.updates += 1
            d = st.as_dict()
            rec = {"step": step, "op": r.op, "u": r.u, "v": r.v}
            for key in COUNTERS:
                rec[key] = d[key]
                rs.maxima[key] = max(rs.maxima[key], d[key])
                rs.sums[key] += d[key]
            drop = d["min_window_drop"]
            rec["min_window_drop"] = drop
            if drop is not None and (rs.min_window_drop is None or drop < rs.min_window_drop):
                rs.min_window_drop = drop
            emit(rec)
            if audit_every and rs.updates % audit_every == 0:
                rs.audits += 1
                bad = dm.audit()
                if bad:
                    rs.violations += [f"step {step}: {b}" for b in bad]
                    break
        elif r.op == "fm":
            emit({"step": step, "query": "fm", "value": frac(dm.fm_value())})
        elif r.op == "vc":
            emit({"step": step, "query": "vc", "size": len(dm.vertex_cover())})
        else:
            nv = dm.node(r.u)
            emit({"step": step, "query": "node", "v": r.u, "level": nv.level,
                  "state": nv.state, "weight": frac(nv.weight),
                  "m_up": nv.n_up, "m_down": nv.n_down})
    if rs.ok and audit_every:
        rs.audits += 1
        rs.violations += [f"final: {b}" for b in dm.audit()]
    emit({"summary": rs.as_record(dm)})
    return rs, dm

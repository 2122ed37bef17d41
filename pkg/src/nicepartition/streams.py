"""Update streams: text format, parser and workload generators.

Format, one record per line::

    n 256          header, must come first
    + 3 7          insert edge
    - 3 7          delete edge
    ? fm           query fractional matching value
    ? vc           query vertex cover size
    ? node 3       query one node
    # anything     comment
"""

from __future__ import annotations

import random
from dataclasses import dataclass


class StreamError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


@dataclass(frozen=True)
class Record:
    op: str          # "+", "-", "fm", "vc" or "node"
    u: int = -1
    v: int = -1


@dataclass
class UpdateStream:
    n: int
    records: list[Record]

    def updates(self):
        return [r for r in self.records if r.op in "+-"]

    def to_text(self) -> str:
        out = [f"n {self.n}"]
        for r in self.records:
            if r.op in ("+", "-"):
                out.append(f"{r.op} {r.u} {r.v}")
            elif r.op == "node":
                out.append(f"? node {r.u}")
            else:
                out.append(f"? {r.op}")
        return "\n".join(out) + "\n"


def _int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise StreamError(lineno, f"expected an integer, got {tok!r}") from None


def parse_stream(text: str) -> UpdateStream:
    """Parse and validate a stream (edge presence is tracked while reading)."""
    n = None
    records: list[Record] = []
    present: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tok = line.split()
        if n is None:
            if tok[0] != "n" or len(tok) != 2:
                raise StreamError(lineno, "stream must start with 'n <count>'")
            n = _int(tok[1], lineno)
            if n < 1:
                raise StreamError(lineno, "node count must be positive")
            continue
        head = tok[0]
        if head in ("+", "-"):
            if len(tok) != 3:
                raise StreamError(lineno, f"'{head}' takes two node ids")
            u, v = _int(tok[1], lineno), _int(tok[2], lineno)
            if not (0 <= u < n and 0 <= v < n):
                raise StreamError(lineno, f"node id out of range 0..{n - 1}")
            if u == v:
                raise StreamError(lineno, "self-loop")
            key = (min(u, v), max(u, v))
            if head == "+":
                if key in present:
                    raise StreamError(lineno, f"insert of present edge {key}")
                present.add(key)
            else:
                if key not in present:
                    raise StreamError(lineno, f"delete of absent edge {key}")
                present.remove(key)
            records.append(Record(head, u, v))
        elif head == "?":
            if tok[1:] == ["fm"] or tok[1:] == ["vc"]:
                records.append(Record(tok[1]))
            elif len(tok) == 3 and tok[1] == "node":
                u = _int(tok[2], lineno)
                if not 0 <= u < n:
                    raise StreamError(lineno, f"node id out of range 0..{n - 1}")
                records.append(Record("node", u))
            else:
                raise StreamError(lineno, f"unknown query {line!r}")
        elif head == "n":
            raise StreamError(lineno, "duplicate header")
        else:
            raise StreamError(lineno, f"unknown record {line!r}")
    if n is None:
        raise StreamError(0, "empty stream")
    return UpdateStream(n, records)


# -- generators -------------------------------------------------------------


def _parse_spec(spec: str) -> tuple[str, dict[str, int]]:
    name, _, rest = spec.partition(":")
    params = {}
    for item in filter(None, rest.split(",")):
        key, eq, val = item.partition("=")
        if not eq:
            raise ValueError(f"generator parameter {item!r} is not key=value")
        params[key.strip()] = int(val)
    return name.strip(), params


def gen_random(rng: random.Random, n: int, steps: int, m: int | None = None,
               hubs: int = 0, queries: int = 0) -> UpdateStream:
    """Random inserts/deletes hovering around ``m`` edges.

    With ``hubs > 0`` half of all new edges have an endpoint among the first
    ``hubs`` nodes, which drives those nodes to higher levels.
    """
    if n < 2:
        raise ValueError("random workload needs n >= 2")
    cap = n * (n - 1) // 2
    target = min(m if m is not None else 4 * n, cap // 2) or 1
    edges: list[tuple[int, int]] = []
    pos: dict[tuple[int, int], int] = {}
    recs: list[Record] = []
    for step in range(steps):
        if edges and rng.random() >= 1 - len(edges) / (2 * target):
            i = rng.randrange(len(edges))
            key = edges[i]
            last = edges.pop()
            if last != key:
                edges[i] = last
                pos[last] = i
            del pos[key]
            recs.append(Record("-", *key))
        else:
            while True:
                if hubs and rng.random() < 0.5:
                    u = rng.randrange(min(hubs, n))
                else:
                    u = rng.randrange(n)
                v = rng.randrange(n)
                key = (min(u, v), max(u, v))
                if u != v and key not in pos:
                    break
            pos[key] = len(edges)
            edges.append(key)
            recs.append(Record("+", *key))
        if queries and (step + 1) % queries == 0:
            recs.append(Record("fm"))
            recs.append(Record("vc"))
    return UpdateStream(n, recs)


def gen_star(beta: int, i: int, delete: int = 0) -> UpdateStream:
    """``beta**i`` insertions into a star centred at node 0, then optionally
    the same edges deleted in insertion order."""
    leaves = beta ** i
    recs = [Record("+", 0, x) for x in range(1, leaves + 1)]
    if delete:
        recs += [Record("-", 0, x) for x in range(1, leaves + 1)]
    return UpdateStream(leaves + 1, recs)


def gen_tree_of_stars(beta: int, i: int | None = None, k: int | None = None,
                      j: int | None = None, rounds: int = 1) -> UpdateStream:
    """Root 0 with ``k`` children, each the centre of a star with ``j`` leaves.

    Leaves go in first, then the root edges; each round then deletes every
    root edge (forcing failed down-markings at the root) and re-inserts them.
    ``i`` sets the defaults ``j = beta**i - 2`` and ``k = beta**(i-1)``.
    """
    if i is not None:
        j = beta ** i - 2 if j is None else j
        k = beta ** (i - 1) if k is None else k
    k = 5 if k is None else k
    j = 23 if j is None else j
    centres = list(range(1, k + 1))
    n = 1 + k + k * j
    recs = []
    nxt = k + 1
    for c in centres:
        for _ in range(j):
            recs.append(Record("+", c, nxt))
            nxt += 1
    recs += [Record("+", 0, c) for c in centres]
    for r in range(rounds):
        recs += [Record("-", 0, c) for c in centres]
        if r + 1 < rounds:
            recs += [Record("+", 0, c) for c in centres]
    return UpdateStream(n, recs)


def gen_sliding_window(rng: random.Random, n: int, steps: int, window: int) -> UpdateStream:
    """Each step inserts a fresh random edge; once ``window`` edges are live
    the oldest one is deleted first."""
    if window < 1 or window > n * (n - 1) // 4:
        raise ValueError(f"window {window} infeasible for n={n}")
    live: dict[tuple[int, int], None] = {}
    recs = []
    for _ in range(steps):
        if len(live) >= window:
            old = next(iter(live))
            del live[old]
            recs.append(Record("-", *old))
        while True:
            u, v = rng.randrange(n), rng.randrange(n)
            key = (min(u, v), max(u, v))
            if u != v and key not in live:
                break
        live[key] = None
        recs.append(Record("+", *key))
    return UpdateStream(n, recs)


def gen_hub_swing(rng: random.Random, pool: int = 300, climb: int = 130,
                  swing: int = 110, cycles: int = 8) -> UpdateStream:
    """Hub 0 first gains ``climb`` random leaves from a pool, which lifts it
    above level K; then its degree swings down and up by ``swing`` for
    ``cycles`` rounds.  The down swings make it down-mark above level K and
    the up swings then catch it with down-marks in place."""
    if not 0 < swing <= climb <= pool:
        raise ValueError("hub_swing needs 0 < swing <= climb <= pool")
    free = list(range(1, pool + 1))
    live: list[int] = []
    recs = []

    def insert():
        x = free.pop(rng.randrange(len(free)))
        live.append(x)
        recs.append(Record("+", 0, x))

    def delete():
        x = live.pop(rng.randrange(len(live)))
        free.append(x)
        recs.append(Record("-", 0, x))

    for _ in range(climb):
        insert()
    for _ in range(cycles):
        for _ in range(swing):
            delete()
        for _ in range(swing):
            insert()
    return UpdateStream(pool + 1, recs)


def generate(spec: str, beta: int = 5, seed: int = 0) -> UpdateStream:
    """Build a workload from ``name:key=value,...``."""
    name, params = _parse_spec(spec)
    beta = params.pop("beta", beta)
    rng = random.Random(seed)
    try:
        if name == "random":
            return gen_random(rng, **params)
        if name == "star":
            return gen_star(beta, **params)
        if name == "tree_of_stars":
            return gen_tree_of_stars(beta, **params)
        if name == "sliding_window":
            return gen_sliding_window(rng, **params)
        if name == "hub_swing":
            return gen_hub_swing(rng, **params)
    except TypeError as ex:
        raise ValueError(f"bad parameters for {name!r}: {ex}") from None
    raise ValueError(f"unknown generator {name!r}")

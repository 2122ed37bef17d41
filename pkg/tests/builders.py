"""Hand-built partitions for unit tests (desk config unless overridden)."""

from nicepartition.partition import EdgeRecord, NicePartition, NodeState, SLACK
from nicepartition.weights import Config


def craft(edges, levels=None, up=None, down=None, states=None, n=100, beta=5, K=2):
    """Build a partition directly from node levels and mark sets.

    Edge levels and node weights are derived, so the result is always
    consistent with recompute_from_scratch.  Nodes take the unique state
    they fit unless ``states`` pins one.
    """
    p = NicePartition(Config(n=n, beta=beta, K=K))
    for v, lv in (levels or {}).items():
        p.nodes[v].level = lv
    for u, v in edges:
        a, b = p.nodes[min(u, v)], p.nodes[max(u, v)]
        p.edges[(a.id, b.id)] = EdgeRecord(p._next_edge_id, a, b, K)
        p._next_edge_id += 1
    for marks, attr in ((up, "m_up"), (down, "m_down")):
        for v, keys in (marks or {}).items():
            for key in keys:
                getattr(p.nodes[v], attr)[p.edge(*key)] = None
    for e in p.edges.values():
        e.level = max(p.shadow(e.a, e), p.shadow(e.b, e))
        for y in (e.a, e.b):
            p.e_insert(y, e, e.level)
            y.weight += p.w(e.level)
    for y in p.nodes:
        if states and y.id in states:
            y.state = states[y.id]
        else:
            fit = [s for s in NodeState if p.fits(y, s)]
            y.state = fit[0] if fit else SLACK
    return p


def spokes(center, first, count):
    """Edges from ``center`` to ``first, first+1, ...``."""
    return [(center, x) for x in range(first, first + count)]

"""Command-line harness: replay or generate update streams, audit, verify.

Exit codes: 0 success, 1 violation or HALT, 2 malformed input, 3 oracle
size guard exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from contextlib import nullcontext
from fractions import Fraction

from .bench import replay
from .dynamic import DynamicMatching
from .oracles import MAX_ORACLE_NODES, OracleGuardError, exact_max_matching, exact_min_vertex_cover, is_vertex_cover
from .partition import Halt
from .streams import StreamError, generate, parse_stream
from .weights import Config

EXIT_OK, EXIT_VIOLATION, EXIT_PARSE, EXIT_GUARD = 0, 1, 2, 3


def _load(args):
    if args.stream:
        with open(args.stream) as fh:
            return parse_stream(fh.read())
    return generate(args.gen, beta=args.beta, seed=args.seed)


def cmd_run(args) -> int:
    try:
        stream = _load(args)
        Config(n=stream.n, beta=args.beta, K=args.k)
    except (StreamError, ValueError, OSError) as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_PARSE
    sink = open(args.metrics_out, "w") if args.metrics_out else nullcontext()
    with sink as out:
        rs, dm = replay(stream, beta=args.beta, K=args.k,
                        audit_every=args.audit_every, out=out)
    if rs.error:
        print(rs.error, file=sys.stderr)
    if rs.violations:
        print("audit failed:", *rs.violations[:20], sep="\n  ", file=sys.stderr)
    if not args.quiet:
        print(json.dumps(rs.as_record(dm), sort_keys=True))
    return EXIT_OK if rs.ok else EXIT_VIOLATION


def cmd_gen(args) -> int:
    try:
        stream = generate(args.spec, beta=args.beta, seed=args.seed)
    except ValueError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_PARSE
    text = stream.to_text()
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def check_sandwich(dm: DynamicMatching, edges, max_nodes: int = MAX_ORACLE_NODES) -> list[str]:
    """Exact duality checks against brute-force optima."""
    bad = []
    f = dm.config.f_beta
    fm = dm.fm_value()
    cover = dm.vertex_cover()
    if not is_vertex_cover(edges, cover):
        bad.append("V* is not a vertex cover")
    if not fm <= len(cover) <= (2 / f) * fm:
        bad.append(f"fm={fm}, |V*|={len(cover)} outside [fm, 2fm/f]")
    mm = exact_max_matching(edges, max_nodes)
    vc = exact_min_vertex_cover(edges, max_nodes)
    if not f / 2 * vc <= fm <= Fraction(3, 2) * mm:
        bad.append(f"fm={fm} outside [f/2 * {vc}, 3/2 * {mm}]")
    return bad


def cmd_verify(args) -> int:
    try:
        with open(args.stream) as fh:
            stream = parse_stream(fh.read())
    except (StreamError, OSError) as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_PARSE
    touched = {x for r in stream.updates() for x in (r.u, r.v)}
    if len(touched) > args.oracle_max_n:
        print(f"error: stream touches {len(touched)} nodes > {args.oracle_max_n}", file=sys.stderr)
        return EXIT_GUARD
    dm = DynamicMatching(stream.n, beta=args.beta, K=args.k)
    checked = 0
    for step, r in enumerate(stream.updates()):
        try:
            dm.insert(r.u, r.v) if r.op == "+" else dm.delete(r.u, r.v)
        except (Halt, AssertionError) as ex:
            print(f"update {step}: {type(ex).__name__}: {ex}", file=sys.stderr)
            return EXIT_VIOLATION
        try:
            bad = check_sandwich(dm, dm.edges(), args.oracle_max_n) + dm.audit()
        except OracleGuardError as ex:
            print(f"error: {ex}", file=sys.stderr)
            return EXIT_GUARD
        if bad:
            print(f"update {step}:", *bad[:20], sep="\n  ", file=sys.stderr)
            return EXIT_VIOLATION
        checked += 1
    print(json.dumps({"verified_updates": checked}))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="nicepartition", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="replay a stream or generated workload")
    src = run.add_mutually_exclusive_group(required=True)
    src.add_argument("--stream", help="stream file")
    src.add_argument("--gen", help="generator spec, e.g. random:n=256,steps=1000")
    run.add_argument("--beta", type=int, default=5)
    run.add_argument("--k", type=int, default=2)
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--audit-every", type=int, default=0, help="full audit every N updates (0: never)")
    run.add_argument("--metrics-out", help="write one JSON record per update here")
    run.add_argument("--quiet", action="store_true")
    run.set_defaults(func=cmd_run)

    gen = sub.add_parser("gen", help="write a generated stream")
    gen.add_argument("spec")
    gen.add_argument("--beta", type=int, default=5)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("-o", "--output")
    gen.set_defaults(func=cmd_gen)

    ver = sub.add_parser("verify", help="check approximation bounds against exact optima")
    ver.add_argument("--stream", required=True)
    ver.add_argument("--oracle-max-n", type=int, default=MAX_ORACLE_NODES)
    ver.add_argument("--beta", type=int, default=5)
    ver.add_argument("--k", type=int, default=2)
    ver.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

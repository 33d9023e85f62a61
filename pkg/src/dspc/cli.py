"""Command-line interface: solve, verify, generate, oracle, and bench.

Exit codes: 0 feasible/verified, 1 infeasible/refuted, 2 usage or input
error. Set DSPC_LOG to quiet, info, or debug to control stderr logging.
"""

from __future__ import annotations

import argparse
import logging
import os
import random
import sys
import time
from pathlib import Path as FilePath

from .core import EDGE, VERTEX, verify_solution
from .errors import DspcError, OracleTooLarge
from .exact import brute_force_oracle, solve_disjoint_shortest
from .congestion import solve_with_congestion
from .kernel import solve_kdspc
from .edge_disjoint import solve_edsp
from .formats import emit_instance, emit_solution, parse_instance, parse_solution
from .hardness import (
    complete_bipartite_pattern,
    find_colorful_clique,
    make_certificate,
    mcc_to_planar_edsp,
    plant_colorful_clique,
    psi_to_dspc,
    random_colored_graph,
    random_host,
)
from .randgen import random_instance

log = logging.getLogger("dspc")


def _setup_logging() -> None:
    level = {"quiet": logging.WARNING, "info": logging.INFO, "debug": logging.DEBUG}.get(
        os.environ.get("DSPC_LOG", "quiet"), logging.WARNING
    )
    logging.basicConfig(stream=sys.stderr, level=level, format="%(levelname)s %(message)s")


def _read(path: str) -> str:
    return FilePath(path).read_text()


def _write(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        FilePath(path).write_text(text)


def _cmd_solve(args) -> int:
    inst = parse_instance(_read(args.instance))
    if args.mode is not None and args.mode != inst.mode:
        raise DspcError(f"instance is {inst.mode} mode, not {args.mode}")
    if inst.mode == EDGE:
        if args.algo == "kernel":
            raise DspcError("the kernel algorithm handles vertex mode only")
        sol = solve_edsp(inst)
    elif args.algo == "kernel":
        sol = solve_kdspc(inst)
    else:
        sol = solve_with_congestion(inst)
    _write(args.output, emit_solution(sol))
    return 0 if sol is not None else 1


def _cmd_verify(args) -> int:
    inst = parse_instance(_read(args.instance))
    sol = parse_solution(_read(args.solution))
    if sol is None:
        print("solution file claims infeasibility; nothing to verify", file=sys.stderr)
        return 1
    if len(sol.paths) != inst.k:
        raise DspcError(f"solution has {len(sol.paths)} paths for {inst.k} demands")
    report = verify_solution(inst, sol)
    if report.feasible:
        return 0
    for violation in report.violations:
        print(f"violation: {violation}", file=sys.stderr)
    return 1


def _cmd_oracle(args) -> int:
    inst = parse_instance(_read(args.instance))
    sol = brute_force_oracle(inst)
    sys.stdout.write(emit_solution(sol))
    return 0 if sol is not None else 1


def _cmd_gen(args) -> int:
    rng = random.Random(args.seed)
    comments = [f"family={args.family} seed={args.seed}"]
    if args.family == "random":
        inst = random_instance(
            rng,
            n=args.size,
            k=args.demands,
            congestion=args.congestion,
            mode=args.mode,
            edge_prob=args.edge_prob,
            max_weight=args.max_weight,
        )
        comments.append(
            f"params size={args.size} demands={args.demands} congestion={args.congestion}"
            f" mode={args.mode} edge-prob={args.edge_prob} max-weight={args.max_weight}"
        )
    elif args.family == "mcc":
        cg = random_colored_graph(rng, args.size, args.colors, args.edge_prob)
        witness = None
        if args.plant:
            cg, witness = plant_colorful_clique(rng, cg)
        inst, layout = mcc_to_planar_edsp(cg, args.colors)
        comments.append(
            f"params size={args.size} colors={args.colors} edge-prob={args.edge_prob}"
            f" plant={args.plant}"
        )
        if witness is not None:
            make_certificate(layout, ("clique", witness))  # also verifies the plant
            comments.append("witness clique " + " ".join(str(v) for v in witness))
    else:  # psi
        pattern = complete_bipartite_pattern()
        sizes = [args.class_size] * pattern.vertex_count
        host, witness = random_host(rng, pattern, sizes, args.edge_prob, plant=args.plant)
        inst, layout = psi_to_dspc(pattern, host, args.congestion)
        comments.append(
            f"params class-size={args.class_size} congestion={args.congestion}"
            f" edge-prob={args.edge_prob} plant={args.plant}"
        )
        if witness is not None:
            make_certificate(layout, ("homomorphism", witness))
            comments.append("witness homomorphism " + " ".join(str(j) for j in witness))
    _write(args.output, emit_instance(inst, comments))
    return 0


def _cmd_bench(args) -> int:
    started = time.monotonic()
    if args.suite == "dnc-oracle":
        agree = 0
        for seed in range(args.count):
            rng = random.Random(seed)
            inst = random_instance(rng, n=rng.randint(2, 8), k=rng.randint(1, 3), congestion=1)
            got = solve_disjoint_shortest(inst.dag, inst.demands)
            want = brute_force_oracle(inst)
            agree += (got is None) == (want is None)
        print(f"dnc-oracle agreement {agree}/{args.count}")
    elif args.suite == "congestion":
        agree = 0
        for seed in range(args.count):
            rng = random.Random(seed)
            inst = random_instance(
                rng, n=rng.randint(2, 6), k=rng.randint(1, 3), congestion=rng.randint(1, 2)
            )
            got = solve_with_congestion(inst)
            want = brute_force_oracle(inst)
            agree += (got is None) == (want is None)
        print(f"congestion agreement {agree}/{args.count}")
    elif args.suite == "kernel":
        agree = 0
        for seed in range(args.count):
            rng = random.Random(seed)
            k = rng.choice((4, 5))
            inst = random_instance(rng, n=rng.randint(3, 8), k=k, congestion=k - 1)
            got = solve_kdspc(inst)
            want = solve_with_congestion(inst)
            agree += (got is None) == (want is None)
        print(f"kernel agreement {agree}/{args.count}")
    else:  # mcc
        agree = 0
        for seed in range(args.count):
            rng = random.Random(seed)
            cg = random_colored_graph(rng, n=rng.randint(2, 5), k=2)
            inst, _layout = mcc_to_planar_edsp(cg, 2)
            routed = solve_edsp(inst)
            clique = find_colorful_clique(cg, 2)
            agree += (routed is None) == (clique is None)
        print(f"mcc agreement {agree}/{args.count}")
    log.info("suite %s finished in %.2fs", args.suite, time.monotonic() - started)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dspc",
        description="Disjoint shortest paths with congestion on weighted DAGs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="solve an instance file")
    solve.add_argument("-i", "--instance", required=True)
    solve.add_argument("-o", "--output", default=None)
    solve.add_argument("--algo", choices=("dnc", "kernel"), default="dnc")
    solve.add_argument("--mode", choices=(VERTEX, EDGE), default=None,
                       help="assert the instance mode")
    solve.set_defaults(func=_cmd_solve)

    verify = sub.add_parser("verify", help="check a solution file against its instance")
    verify.add_argument("-i", "--instance", required=True)
    verify.add_argument("-s", "--solution", required=True)
    verify.set_defaults(func=_cmd_verify)

    oracle = sub.add_parser("oracle", help="solve by brute force (small instances only)")
    oracle.add_argument("-i", "--instance", required=True)
    oracle.set_defaults(func=_cmd_oracle)

    gen = sub.add_parser("gen", help="generate an instance file")
    gen.add_argument("family", choices=("psi", "mcc", "random"))
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument("-o", "--output", default=None)
    gen.add_argument("--size", type=int, default=6, help="vertex count (random, mcc)")
    gen.add_argument("--demands", type=int, default=2, help="demand count (random)")
    gen.add_argument("--congestion", type=int, default=1, help="budget (random, psi)")
    gen.add_argument("--mode", choices=(VERTEX, EDGE), default=VERTEX)
    gen.add_argument("--edge-prob", type=float, default=0.5)
    gen.add_argument("--max-weight", type=int, default=2)
    gen.add_argument("--colors", type=int, default=2, help="color count (mcc)")
    gen.add_argument("--class-size", type=int, default=1, help="host class size (psi)")
    gen.add_argument("--plant", action=argparse.BooleanOptionalAction, default=True,
                     help="plant a witness (mcc, psi)")
    gen.set_defaults(func=_cmd_gen)

    bench = sub.add_parser("bench", help="run a built-in agreement suite")
    bench.add_argument("--suite", choices=("dnc-oracle", "congestion", "kernel", "mcc"),
                       required=True)
    bench.add_argument("--count", type=int, default=50)
    bench.set_defaults(func=_cmd_bench)
    return parser


def main(argv=None) -> int:
    _setup_logging()
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except OracleTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DspcError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Exit status: 0 on success, 1 on bad input, 2 when ``--verify-oracle`` finds a
mismatch.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
import threading
import warnings
from dataclasses import dataclass
from typing import Optional, Sequence

from .generate import random_instance
from .oracle import DEFAULT_CAP, OracleRefused, brute_force_enumerate
from .problem import ParseError, ProblemInstance, ReducedSystem, parse_problem
from .simplex import ARITH_MODES
from .traversal import Signal, TraversalStats, VertexSolution, enumerate_parallel, enumerate_vertices

log = logging.getLogger("typetree")


@dataclass
class RunConfig:
    input: Optional[str] = None
    mode: str = "enumerate"  # enumerate | verify-oracle | stats-only
    jobs: int = 1
    output: str = "canonical"  # canonical | stream
    arith: str = "auto"
    progress: bool = False
    progress_interval: int = 1000
    stats_path: Optional[str] = None
    seed: Optional[int] = None
    gen_tets: int = 3
    max_solutions: Optional[int] = None
    oracle_cap: int = DEFAULT_CAP


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="typetree",
        description="Enumerate admissible vertices of a quadrilateral-coordinate solution space.",
    )
    p.add_argument("--input", metavar="FILE", help="instance file ('-' for stdin)")
    p.add_argument("--jobs", type=int, default=1, metavar="N", help="worker threads (default 1)")
    out = p.add_mutually_exclusive_group()
    out.add_argument("--canonical", dest="output", action="store_const", const="canonical",
                     help="print solutions sorted by type vector at the end (default)")
    out.add_argument("--stream", dest="output", action="store_const", const="stream",
                     help="print solutions as they are found")
    p.set_defaults(output="canonical")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--verify-oracle", dest="mode", action="store_const", const="verify-oracle",
                      help="compare against brute-force enumeration")
    mode.add_argument("--stats-only", dest="mode", action="store_const", const="stats-only",
                      help="suppress solution lines")
    p.set_defaults(mode="enumerate")
    p.add_argument("--progress", action="store_true", help="report progress on stderr")
    p.add_argument("--progress-interval", type=int, default=1000, metavar="NODES")
    p.add_argument("--stats-json", dest="stats_path", metavar="FILE", help="write run statistics")
    p.add_argument("--arith", choices=ARITH_MODES, default="auto")
    p.add_argument("--seed", type=int, help="generate a random instance instead of reading one")
    p.add_argument("--gen-tets", type=int, default=3, metavar="N",
                   help="tetrahedron count for --seed instances")
    p.add_argument("--max-solutions", type=int, metavar="K", help="stop after K solutions")
    p.add_argument("--oracle-cap", type=int, default=DEFAULT_CAP, metavar="N")
    return p


def config_from_args(argv: Optional[Sequence[str]] = None) -> RunConfig:
    ns = build_parser().parse_args(argv)
    return RunConfig(
        input=ns.input, mode=ns.mode, jobs=ns.jobs, output=ns.output, arith=ns.arith,
        progress=ns.progress, progress_interval=ns.progress_interval, stats_path=ns.stats_path,
        seed=ns.seed, gen_tets=ns.gen_tets, max_solutions=ns.max_solutions,
        oracle_cap=ns.oracle_cap,
    )


def load_instance(cfg: RunConfig) -> ProblemInstance:
    if cfg.input is not None:
        if cfg.input == "-":
            text = sys.stdin.read()
        else:
            with open(cfg.input, encoding="utf-8") as fh:
                text = fh.read()
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            inst = parse_problem(text)
        for w in caught:
            print(f"warning: {w.message}", file=sys.stderr)
        return inst
    if cfg.seed is not None:
        return random_instance(cfg.gen_tets, random.Random(cfg.seed))
    raise ParseError("no input: give --input FILE or --seed S")


def emit_stats(stats: TraversalStats, path: Optional[str], system: ReducedSystem) -> dict:
    doc = stats.as_dict()
    doc["coordinate_bound"] = system.bound.vertex
    doc["tableau_bound"] = system.bound.tableau
    if path:
        try:
            with open(path, "w", encoding="utf-8") as fh:
                json.dump(doc, fh, indent=2, sort_keys=True)
                fh.write("\n")
            return doc
        except OSError as exc:
            print(f"warning: cannot write stats to {path}: {exc}", file=sys.stderr)
            print(json.dumps(doc, sort_keys=True), file=sys.stderr)
    return doc


def run(cfg: RunConfig, out=None) -> int:
    out = out if out is not None else sys.stdout
    if cfg.jobs < 1:
        print("error: --jobs must be at least 1", file=sys.stderr)
        return 1
    try:
        inst = load_instance(cfg)
    except (ParseError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    system = ReducedSystem.from_instance(inst)

    found: list[VertexSolution] = []
    lock = threading.Lock()
    show = cfg.mode != "stats-only"

    def sink(sol: VertexSolution):
        with lock:
            found.append(sol)
            if show and cfg.output == "stream":
                print(sol.line(), file=out, flush=True)
            if cfg.max_solutions is not None and len(found) >= cfg.max_solutions:
                return Signal.STOP
        return Signal.CONTINUE

    def report(value):
        print(f"progress: {float(value):.4%}", file=sys.stderr)

    kwargs = dict(
        arith=cfg.arith,
        progress=report if cfg.progress else None,
        progress_interval=cfg.progress_interval,
        system=system,
    )
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        if cfg.jobs == 1:
            stats = enumerate_vertices(inst, sink, **kwargs)
        else:
            stats = enumerate_parallel(inst, sink, cfg.jobs, **kwargs)
    if cfg.arith == "wide" and stats.arith != "wide":
        print("warning: bounds exceed 64-bit arithmetic, ran with big integers", file=sys.stderr)

    found.sort(key=lambda s: s.tau)
    if show and cfg.output == "canonical":
        for sol in found:
            print(sol.line(), file=out)
    emit_stats(stats, cfg.stats_path, system)

    if cfg.mode == "verify-oracle":
        try:
            ref = brute_force_enumerate(inst, cap=cfg.oracle_cap)
        except OracleRefused as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
        mine = {s.tau: s.u for s in found}
        theirs = {t: v.u for t, v in ref.solutions.items()}
        if mine != theirs or stats.aborted:
            missing = sorted(set(theirs) - set(mine))
            extra = sorted(set(mine) - set(theirs))
            print(f"MISMATCH: {len(mine)} found, {len(theirs)} expected; "
                  f"missing {len(missing)}, extra {len(extra)}", file=out)
            return 2
        print(f"MATCH: {len(mine)} solutions", file=out)
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    return run(config_from_args(argv))


if __name__ == "__main__":
    sys.exit(main())

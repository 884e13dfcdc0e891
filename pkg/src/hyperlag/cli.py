"""Command line entry point: ``hyperlag verify|enumerate|lagrangian|oracle``."""

from __future__ import annotations

import argparse
import logging
import sys
from contextlib import nullcontext

from .certify import DEFAULT_BUDGET
from .hypergraph import read_graph
from .lagrangian import SolverConfig, maximize
from .oracles import motzkin_straus_trials
from .poset import enumerate_candidates
from .verifier import DEFAULT_MARGIN, verify, write_report

EXIT_OK, EXIT_USAGE, EXIT_FAIL = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _solver_args(p: argparse.ArgumentParser) -> None:
    defaults = SolverConfig()
    p.add_argument("--restarts", type=int, default=defaults.restarts)
    p.add_argument("--seed", type=int, default=defaults.random_seed)
    p.add_argument("--max-iterations", type=int, default=defaults.max_iterations)


def _config(args) -> SolverConfig:
    return SolverConfig(
        restarts=args.restarts, random_seed=args.seed, max_iterations=args.max_iterations
    )


def _open_out(path):
    return open(path, "w") if path else nullcontext(sys.stdout)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hyperlag", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("verify", help="check every candidate on [l] against the threshold")
    p.add_argument("--l", type=int, required=True)
    _solver_args(p)
    p.add_argument("--margin", type=float, default=DEFAULT_MARGIN)
    p.add_argument("--certify", action="store_true", help="add rigorous grid upper bounds")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="grid points per candidate")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--timing", action="store_true", help="record runtime in the summary line")
    p.add_argument("--out", help="report file (JSON lines); stdout when omitted")

    p = sub.add_parser("enumerate", help="stream candidate graphs as JSON lines")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--out")

    p = sub.add_parser("lagrangian", help="maximise lambda for a graph file")
    p.add_argument("--input", required=True)
    _solver_args(p)

    p = sub.add_parser("oracle", help="property suites against closed forms")
    oracles = p.add_subparsers(dest="oracle", required=True, parser_class=_Parser)
    q = oracles.add_parser("motzkin-straus", help="random 2-graphs against (1 - 1/w)/2")
    q.add_argument("--n", type=int, required=True, help="largest vertex count")
    q.add_argument("--trials", type=int, required=True)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--tolerance", type=float, default=1e-6)
    return parser


def _cmd_verify(args) -> int:
    if args.l < 6:
        raise ValueError("--l must be at least 6")
    summary, reports = verify(
        args.l, _config(args), args.margin, certify=args.certify, budget=args.budget, jobs=args.jobs
    )
    with _open_out(args.out) as fh:
        write_report(fh, summary, reports, timing=args.timing)
    print(
        f"l={summary.l} candidates={summary.candidate_count} "
        f"max_lambda={summary.max_lambda:.12g} threshold={float(summary.threshold):.12g} "
        f"min_margin={summary.min_margin:.6g} certified={summary.certified_count} "
        f"all_pass={summary.all_pass} ({summary.runtime_seconds:.1f}s)",
        file=sys.stderr,
    )
    return EXIT_OK if summary.all_pass else EXIT_FAIL


def _cmd_enumerate(args) -> int:
    if args.l < 6:
        raise ValueError("--l must be at least 6")
    with _open_out(args.out) as fh:
        for G in enumerate_candidates(args.l):
            fh.write(G.dumps() + "\n")
    return EXIT_OK


def _cmd_lagrangian(args) -> int:
    G = read_graph(args.input)
    res = maximize(G, _config(args))
    print(f"value {res.value!r}")
    print("support " + " ".join(str(v) for v in res.support))
    print("weighting " + " ".join(repr(w) for w in res.weighting))
    print(f"kkt_residual {res.kkt_residual!r}")
    return EXIT_OK


def _cmd_oracle(args) -> int:
    trials = motzkin_straus_trials(args.n, args.trials, seed=args.seed)
    worst = max((t.error for t in trials), default=0.0)
    failures = [t for t in trials if t.error > args.tolerance]
    for t in failures:
        print(f"FAIL n={t.graph.n} edges={t.graph.m} omega={t.clique_order} "
              f"value={t.value!r} expected={t.expected!r}")
    print(f"motzkin-straus trials={len(trials)} failures={len(failures)} max_error={worst:.3g}")
    return EXIT_FAIL if failures else EXIT_OK


COMMANDS = {
    "verify": _cmd_verify,
    "enumerate": _cmd_enumerate,
    "lagrangian": _cmd_lagrangian,
    "oracle": _cmd_oracle,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return COMMANDS[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"hyperlag: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

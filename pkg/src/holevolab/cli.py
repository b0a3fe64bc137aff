"""Command-line entry point.

``holevolab [options]`` runs relation suites and writes a report;
``holevolab eval RELATION --state F --povm F ...`` evaluates one relation
on instances read from files. Exit status: 0 every check passed,
1 a relation failed, 2 usage or input error, 3 internal abort.
"""

import argparse
import sys

from . import __version__, config
from .entropy import QUADRATIC, renyi
from .errors import EvaluatorAbort, HolevoLabError
from .lab.instances import Instance
from .lab.relations import REGISTRY, evaluate
from .lab.suite import (
    DEFAULT_DIMS,
    DEFAULT_SEED,
    DEFAULT_TRIALS,
    TOL_EQ,
    TOL_INEQ,
    SuiteReport,
    example_blocks,
    run_suite,
    search_counterexample_eq37,
)

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_ABORT = 0, 1, 2, 3
SEARCH_BUDGET = 10_000


class UsageError(Exception):
    pass


def _dims(text):
    try:
        parts = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"dims must be three comma-separated integers, got {text!r}")
    if len(parts) != 3 or min(parts) < 1:
        raise argparse.ArgumentTypeError(f"dims must be three positive integers, got {text!r}")
    return parts


def _base(text):
    if text not in ("2", "e"):
        raise argparse.ArgumentTypeError(f"log base must be 2 or e, got {text!r}")
    return text


def _common(p):
    p.add_argument("--tolerance-eq", type=float, default=TOL_EQ,
                   help="tolerance for equalities (default %(default)g)")
    p.add_argument("--tolerance-ineq", type=float, default=TOL_INEQ,
                   help="allowed violation for inequalities (default %(default)g)")
    p.add_argument("--log-base", type=_base, default="2", help="2 (bits) or e (nats)")


def run_parser():
    p = argparse.ArgumentParser(prog="holevolab", description="Run relation suites.",
                                epilog="Use 'holevolab eval --help' to evaluate one instance.")
    p.add_argument("--suite", choices=("all", "paper-examples"), default="all")
    p.add_argument("--relation", action="append", choices=sorted(REGISTRY), metavar="ID",
                   help="restrict to this relation (repeatable)")
    p.add_argument("--dims", action="append", type=_dims, metavar="DA,DB,DC",
                   help="dimension triple (repeatable); default 2,2,2 2,3,4 3,3,3")
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--workers", type=int, default=1, help="processes for trial evaluation")
    p.add_argument("--out", help="report path")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--list-relations", action="store_true")
    p.add_argument("--quiet", action="store_true", help="print only the final status line")
    p.add_argument("--version", action="version", version=f"holevolab {__version__}")
    _common(p)
    return p


def eval_parser():
    p = argparse.ArgumentParser(prog="holevolab eval",
                                description="Evaluate one relation on instances read from files.")
    p.add_argument("relation", choices=sorted(REGISTRY), metavar="RELATION")
    p.add_argument("--state", help="density operator JSON file")
    p.add_argument("--aux-state", help="constructed boundary-case state for relations that use one")
    p.add_argument("--channel", help="Kraus channel JSON file")
    p.add_argument("--povm", action="append", default=[],
                   help="POVM JSON file, assigned to the relation's roles in order (repeatable)")
    _common(p)
    return p


def _run(args):
    if args.list_relations:
        for rid, rel in REGISTRY.items():
            print(f"{rid:26s} roles={','.join(rel.roles) or '-':14s} {rel.description}")
        return EXIT_PASS
    if args.trials < 1:
        raise UsageError(f"--trials must be >= 1, got {args.trials}")
    if args.workers < 1:
        raise UsageError(f"--workers must be >= 1, got {args.workers}")
    dims = args.dims or list(DEFAULT_DIMS)
    try:
        with config.log_base(args.log_base):
            if args.suite == "paper-examples":
                report = SuiteReport({"suite": "paper-examples", "log_base": args.log_base},
                                     example_blocks())
            else:
                report = run_suite(args.relation, dims, args.trials, args.seed, args.tolerance_eq,
                                   args.tolerance_ineq, workers=args.workers)
                report.config["log_base"] = args.log_base
                if not args.relation:
                    report.config["suite"] = "all"
                    report.blocks.extend(example_blocks())
                    search = {}
                    for kind in (QUADRATIC, renyi(0.5)):
                        found = search_counterexample_eq37(kind, SEARCH_BUDGET, args.seed)
                        search[str(kind)] = found.to_dict()
                    report.extras["eq37_counterexample_search"] = search
    except EvaluatorAbort:
        raise
    except Exception as exc:
        raise EvaluatorAbort(f"{type(exc).__name__}: {exc}") from exc
    if not args.quiet:
        for line in report.summary_lines():
            print(line)
        for kind, res in report.extras.get("eq37_counterexample_search", {}).items():
            status = (f"witness after {res['trials']} trials, violation {res['violation']:.3e}"
                      if res["found"] else f"not found in {res['trials']} trials")
            print(f"INFO eq37 search {kind}: {status}")
    if args.out:
        report.write(args.out, args.format)
    n_fail = sum(len(b.results) - b.passed for b in report.blocks)
    print(f"{'PASS' if report.ok else 'FAIL'}: {len(report.blocks)} blocks, {n_fail} failing results"
          + (f", report written to {args.out}" if args.out else ""))
    return EXIT_PASS if report.ok else EXIT_FAIL


def _eval(args):
    from .io import read_channel, read_povm, read_state

    rel = REGISTRY[args.relation]
    if len(args.povm) > len(rel.roles):
        raise UsageError(f"{args.relation} takes at most {len(rel.roles)} POVMs "
                         f"(roles {', '.join(rel.roles)}), got {len(args.povm)}")
    state = read_state(args.state) if args.state else None
    aux = read_state(args.aux_state) if args.aux_state else None
    channel = read_channel(args.channel) if args.channel else None
    povms = {role: read_povm(path) for role, path in zip(rel.roles, args.povm)}
    if state is not None:
        dims = tuple(d for _, d in state.dims) + (1,) * (3 - len(state.dims))
    elif channel is not None:
        V = channel.isometry
        dims = (V.d_a, V.d_b, V.d_c)
    else:
        raise UsageError("eval needs --state or --channel")
    inst = Instance(dims[:3], state, channel, aux, povms, rel.kinds)
    with config.log_base(args.log_base):
        result = evaluate(args.relation, inst, args.tolerance_eq, args.tolerance_ineq)
    print(f"relation {result.relation}")
    print(f"check    {result.check} ({result.mode}, {result.checks} checks)")
    print(f"lhs      {result.lhs!r}")
    print(f"rhs      {result.rhs!r}")
    print(f"slack    {result.slack!r}")
    print(f"pass     {str(result.passed).lower()} (tolerance {result.tolerance:g})")
    return EXIT_PASS if result.passed else EXIT_FAIL


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    evaluating = bool(argv) and argv[0] == "eval"
    parser = eval_parser() if evaluating else run_parser()
    try:
        args = parser.parse_args(argv[1:] if evaluating else argv)
    except SystemExit as exc:
        return EXIT_PASS if exc.code == 0 else EXIT_USAGE
    try:
        return _eval(args) if evaluating else _run(args)
    except (UsageError, ValueError, KeyError, HolevoLabError) as exc:
        if isinstance(exc, EvaluatorAbort):
            print(f"holevolab: aborted: {exc}", file=sys.stderr)
            return EXIT_ABORT
        print(f"holevolab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # evaluator bug or numerical breakdown
        print(f"holevolab: aborted: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ABORT


if __name__ == "__main__":
    sys.exit(main())

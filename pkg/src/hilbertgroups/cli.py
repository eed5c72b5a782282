"""Command-line front end.

Exit codes: 0 success / all checks pass, 1 a check failed, 2 usage error,
3 I/O error, 4 numerical or parameter error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import checks, config, fastconv, operators, spectral
from .errors import HilbertGroupsError, SequenceFormatError
from .operators import OperatorSpec
from .seqcore import Window, read_sequence_csv, write_sequence_csv

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO, EXIT_NUMERIC = 0, 1, 2, 3, 4

OP_NAMES = {
    "H": "H",
    "Hd": "Hd",
    "Tt": "Tt",
    "K": "K",
    "Ktilde": "Ktilde",
    "Ut": "Ut",
    "exp-series": "ExpSeries",
    "ExpSeries": "ExpSeries",
}


class UsageError(Exception):
    pass


def _window_arg(text):
    try:
        return Window.parse(text)
    except HilbertGroupsError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _sizes_arg(text):
    try:
        return [int(x) for x in text.split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad size list {text!r}") from None


def spec_from_args(args) -> OperatorSpec:
    kind = OP_NAMES[args.op]
    need = {"Hd": ["d"], "Tt": ["t"], "Ut": ["t"], "ExpSeries": ["s", "terms"]}.get(kind, [])
    missing = [n for n in need if getattr(args, n, None) is None]
    if missing:
        raise UsageError(f"--op {args.op} requires " + ", ".join(f"--{n}" for n in missing))
    return OperatorSpec(kind, **{n: getattr(args, n) for n in need})


def _add_op_params(p):
    p.add_argument("--op", required=True, choices=sorted(OP_NAMES))
    p.add_argument("--t", type=float)
    p.add_argument("--d", type=float)
    p.add_argument("--s", type=float)
    p.add_argument("--terms", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hilbertgroups",
        description="Discrete Hilbert transforms, the T_t group and the Kak-Hilbert transform.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("apply", help="apply an operator to a sequence file")
    _add_op_params(p)
    p.add_argument("--margin", type=int, help="exp-series working-window margin")
    p.add_argument("--input", required=True)
    p.add_argument("--window", required=True, type=_window_arg, help="lo:hi (inclusive)")
    p.add_argument("--method", choices=["direct", "fft"], default="direct")
    p.add_argument("--output", required=True)
    p.add_argument("--verbose", action="store_true")

    p = sub.add_parser("check", help="run a property-check suite")
    p.add_argument("--property", choices=list(checks.SUITES))
    p.add_argument("--print-defaults", action="store_true")
    for name in ("t", "s", "d", "lambda", "p"):
        p.add_argument(f"--{name}", type=float, dest=name.replace("lambda", "lam"))
    for name in ("M", "W", "trials"):
        p.add_argument(f"--{name}", type=int)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("analyze", help="norm estimates, constants, benchmarks")
    asub = p.add_subparsers(dest="analysis", required=True)
    q = asub.add_parser("norm")
    _add_op_params(q)
    q.add_argument("--p", type=float, required=True, dest="pnorm")
    q.add_argument("--M", type=int, required=True)
    q.add_argument("--iters", type=int, default=2000)
    q.add_argument("--restarts", type=int, default=8)
    q.add_argument("--seed", type=int, default=0)
    q = asub.add_parser("np")
    q.add_argument("--p", type=float, required=True, dest="pnorm")
    q = asub.add_parser("bench")
    _add_op_params(q)
    q.add_argument("--sizes", type=_sizes_arg, required=True)
    q.add_argument("--repeats", type=int, default=5)
    q.add_argument("--output", help="also write the JSON document here")
    q = asub.add_parser("bench-backends")
    q.add_argument("--sizes", type=_sizes_arg, required=True)
    q.add_argument("--repeats", type=int, default=3)
    return parser


def _emit(obj):
    json.dump(obj, sys.stdout, indent=2)
    sys.stdout.write("\n")


def cmd_apply(args) -> int:
    spec = spec_from_args(args)
    a = read_sequence_csv(args.input)
    kw = {"margin": args.margin} if spec.kind == "ExpSeries" and args.margin is not None else {}
    out = operators.apply(spec, a, args.window, args.method, **kw)
    write_sequence_csv(out, args.output)
    if args.verbose:
        print(f"{spec.label} [{args.method}] -> {args.output} ({len(out)} entries)")
    return EXIT_OK


def cmd_check(args) -> int:
    if args.print_defaults:
        _emit(config.defaults())
        return EXIT_OK
    if args.property is None:
        raise UsageError("check needs --property (or --print-defaults)")
    overrides = {
        "t": args.t,
        "s": args.s,
        "d": args.d,
        "lambda": args.lam,
        "p": args.p,
        "M": args.M,
        "W": args.W,
        "trials": args.trials,
    }
    reports = checks.SUITES[args.property](seed=args.seed, **overrides)
    _emit([r.to_json() for r in reports])
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def cmd_analyze(args) -> int:
    if args.analysis == "np":
        _emit({"p": args.pnorm, "n_p": spectral.np_constant(args.pnorm)})
    elif args.analysis == "norm":
        spec = spec_from_args(args)
        A = spectral.build_truncated_matrix(spec, args.M)
        if args.pnorm == 2:
            est = spectral.l2_norm_estimate(A, seed=args.seed)
        else:
            est = spectral.lp_norm_estimate(A, args.pnorm, args.iters, args.restarts, seed=args.seed)
        _emit(dict(est.to_json(), op=spec.label))
    elif args.analysis == "bench":
        records = fastconv.bench_apply(spec_from_args(args), args.sizes, args.repeats)
        doc = [r.to_json() for r in records]
        if args.output:
            with open(args.output, "w", encoding="utf-8") as fh:
                json.dump(doc, fh, indent=2)
        _emit(doc)
    else:
        _emit(fastconv.bench_backends(args.sizes, args.repeats))
    return EXIT_OK


COMMANDS = {"apply": cmd_apply, "check": cmd_check, "analyze": cmd_analyze}


def _join_window(argv):
    # "--window -8:8" would otherwise parse "-8:8" as an option
    out, it = [], iter(argv)
    for tok in it:
        if tok == "--window":
            nxt = next(it, None)
            out.append(tok if nxt is None else f"--window={nxt}")
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_join_window(argv))  # exits 2 on bad flags
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SequenceFormatError, OSError) as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except HilbertGroupsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())

"""Command-line driver.

Subcommands: ``coin``, ``cloud``, ``peak``, ``oracle-check``, ``infer``.
Exit status is 0 on success or PASS, 1 on a failed check, 2 on usage error.
"""
from __future__ import annotations

import argparse
import contextlib
import math
import re
import sys

from .errors import ComplexityError, FlatFunction
from .inference import estimate_conditionals, reconstruct_machine
from .machine import DEFAULT_MERGE_TOL, SymbolSequence, sample, statistical_complexity
from .processes import CoinParams, perturbed_coin_machine
from .quantum import quantum_complexity
from .sweep import (
    CLOUD_COLUMNS,
    COIN_COLUMNS,
    DEFAULT_ORACLE_GS,
    DEFAULT_ORACLE_KAPPAS,
    SweepSpec,
    cloud_sweep,
    coin_sweep,
    find_peak,
    format_value,
    oracle_check,
    write_csv,
)

_PI_EXPR = re.compile(r"^\s*(?:([0-9.eE+-]+)\s*\*?\s*)?pi\s*(?:/\s*([0-9.eE+-]+))?\s*$")


def parse_angle(text: str) -> float:
    """Parse ``0.3``, ``pi``, ``pi/2``, ``3pi/8`` or ``3*pi/8``."""
    m = _PI_EXPR.match(text)
    if m is None:
        return float(text)
    num, den = m.groups()
    value = math.pi if num is None else float(num) * math.pi
    return value if den is None else value / float(den)


def _float_list(parse):
    def convert(text: str) -> tuple[float, ...]:
        try:
            return tuple(parse(tok) for tok in text.split(",") if tok.strip())
        except ValueError as exc:
            raise argparse.ArgumentTypeError(str(exc)) from None
    return convert


@contextlib.contextmanager
def _output(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", newline="\n", encoding="utf-8") as fh:
            yield fh


def _add_lambda_grid(p, steps_default):
    p.add_argument("--lambda-min", type=float, default=0.0)
    p.add_argument("--lambda-max", type=float, default=1.0)
    p.add_argument("--lambda-steps", "--steps", dest="lambda_steps", type=int, default=steps_default)
    p.add_argument("--kappa", type=_float_list(parse_angle), default=None,
                   help="comma-separated angles, e.g. 'pi/4,pi/2'")
    p.add_argument("--g", type=_float_list(float), default=None, help="comma-separated swap probabilities")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qcomplexity", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", default=None, help="output path (default: stdout)")
        p.add_argument("--merge-tol", type=float, default=DEFAULT_MERGE_TOL)

    p = sub.add_parser("coin", help="C_mu and C_q of the symmetric perturbed coin over q")
    common(p)
    p.add_argument("--q-min", type=float, default=0.0)
    p.add_argument("--q-max", type=float, default=1.0)
    p.add_argument("--steps", type=int, default=101)

    p = sub.add_parser("cloud", help="thermalizing qubit cloud over (lambda, kappa, g)")
    common(p)
    _add_lambda_grid(p, 101)

    p = sub.add_parser("peak", help="lambda maximising C_q")
    common(p)
    p.add_argument("--g", type=float, default=0.5)
    p.add_argument("--kappa", type=parse_angle, default=math.pi / 2)
    p.add_argument("--tol", type=float, default=1e-6)

    p = sub.add_parser("oracle-check", help="circuit simulation vs closed-form flip rates")
    p.add_argument("--out", default=None)
    _add_lambda_grid(p, 11)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--perturb-q0", type=float, default=0.0, help=argparse.SUPPRESS)

    p = sub.add_parser("infer", help="reconstruct a machine from a symbol sequence")
    p.add_argument("--out", default=None)
    p.add_argument("--merge-tol", type=float, default=None,
                   help="state merge tolerance (default: 3 binomial standard errors)")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", help="file holding one line of symbols, '-' for stdin")
    src.add_argument("--sample-coin", nargs=2, type=float, metavar=("Q0", "Q1"),
                     help="sample a perturbed coin instead of reading input")
    p.add_argument("--length", type=int, default=10**6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--order", type=int, default=1)
    p.add_argument("--min-count", type=int, default=100)
    p.add_argument("--machine-out", default=None, help="write the reconstructed machine listing here")
    return parser


def _run_coin(args, parser):
    try:
        spec = SweepSpec("coin", args.q_min, args.q_max, args.steps, merge_tol=args.merge_tol)
    except ValueError as exc:
        parser.error(str(exc))
    with _output(args.out) as fh:
        write_csv(coin_sweep(spec), COIN_COLUMNS, fh)
    return 0


def _run_cloud(args, parser):
    try:
        spec = SweepSpec(
            "cloud", args.lambda_min, args.lambda_max, args.lambda_steps,
            kappas=args.kappa or (math.pi / 2,), gs=args.g or (0.25, 0.5, 0.75),
            merge_tol=args.merge_tol,
        )
    except ValueError as exc:
        parser.error(str(exc))
    with _output(args.out) as fh:
        write_csv(cloud_sweep(spec), CLOUD_COLUMNS, fh)
    return 0


def _run_peak(args, parser):
    try:
        peak = find_peak(args.g, args.kappa, args.tol, args.merge_tol)
    except FlatFunction as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        parser.error(str(exc))
    row = {"g": args.g, "kappa": args.kappa, "lambda": peak.lam, "c_q": peak.c_q}
    with _output(args.out) as fh:
        write_csv([row], ("g", "kappa", "lambda", "c_q"), fh)
    return 0


def _run_oracle(args, parser):
    try:
        spec = SweepSpec("cloud", args.lambda_min, args.lambda_max, args.lambda_steps,
                         kappas=args.kappa or DEFAULT_ORACLE_KAPPAS, gs=args.g or DEFAULT_ORACLE_GS)
        grid = [float(x) for x in spec.grid()]
        report = oracle_check(grid, spec.kappas, spec.gs, args.tol, args.perturb_q0)
    except ValueError as exc:
        parser.error(str(exc))
    with _output(args.out) as fh:
        fh.write("\n".join(report.lines()) + "\n")
    return 0 if report.passed else 1


def _run_infer(args, parser):
    if args.order < 1 or args.length < 0 or args.min_count < 1:
        parser.error("order and min-count must be >= 1 and length >= 0")
    try:
        if args.sample_coin is not None:
            machine = perturbed_coin_machine(CoinParams(*args.sample_coin))
            seq = sample(machine, args.length, args.seed, start="stationary")
        elif args.input == "-":
            seq = SymbolSequence.from_text(sys.stdin.read(), source="stdin")
        else:
            with open(args.input, encoding="utf-8") as fh:
                seq = SymbolSequence.from_text(fh.read(), source=args.input)
    except (OSError, ValueError) as exc:
        parser.error(str(exc))
    try:
        model = estimate_conditionals(seq, args.order)
        rec = reconstruct_machine(model, args.merge_tol, args.min_count)
        # states already merged at the inference tolerance
        c_mu = statistical_complexity(rec.machine, 0.0)
        c_q = quantum_complexity(rec.machine, 0.0)
    except ComplexityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    row = {"order": args.order, "length": len(seq), "states": rec.machine.num_states, "c_mu": c_mu, "c_q": c_q}
    with _output(args.out) as fh:
        fh.write("order,length,states,c_mu,c_q\n")
        fh.write(",".join(format_value(row[c]) for c in ("order", "length", "states", "c_mu", "c_q")) + "\n")
    if args.machine_out:
        with open(args.machine_out, "w", newline="\n", encoding="utf-8") as fh:
            fh.write(rec.machine.to_text())
    return 0


_COMMANDS = {
    "coin": _run_coin,
    "cloud": _run_cloud,
    "peak": _run_peak,
    "oracle-check": _run_oracle,
    "infer": _run_infer,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return _COMMANDS[args.command](args, parser)


if __name__ == "__main__":
    sys.exit(main())

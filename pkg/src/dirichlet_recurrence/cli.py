"""Command-line front end.

Exit codes: 0 success, 2 invalid configuration, 3 numerical breakdown,
4 oracle mismatch in ``verify``.
"""

import argparse
import os
import sys

import numpy as np

from . import _mp, serialize
from .characters import character, euler_phi
from .errors import (ConfigError, DirichletRecurrenceError, EvaluationFailure,
                     NotPositiveDefinite, QuadratureNonConvergence,
                     StabilizationFailure)
from .factorize import cholesky, orthonormal_coeffs, reconstruction_bound
from .kernel import DEFAULT_PRECISION, Rectangle, gram_matrix
from .lfunc import lstar
from .recurrence import (THREADS_ENV, density_scan, distance,
                         truncation_tail_bound, validate_scan)
from .verification import run_all

EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_ORACLE = 4

SUBCOMMANDS = ("gram", "cholesky", "basis", "lstar", "distance", "scan", "verify")


def _floats(text):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="dirichlet-recurrence",
        description="Gram matrices, Cholesky factors and recurrence scans for "
                    "Dirichlet series on rectangles in the critical strip.")
    parser.add_argument("subcommand", choices=SUBCOMMANDS)
    parser.add_argument("--alpha", type=float, default=0.6)
    parser.add_argument("--beta", type=float, default=0.8)
    parser.add_argument("--gamma", type=float, default=1.0)
    parser.add_argument("--modulus", type=int, default=4)
    parser.add_argument("--char-index", type=int, default=1)
    parser.add_argument("--N", type=int, default=16)
    parser.add_argument("--precision", type=int, default=DEFAULT_PRECISION)
    parser.add_argument("--t", type=float, default=1.0)
    parser.add_argument("--t-max", type=float, default=50.0)
    parser.add_argument("--t-step", type=float, default=0.05)
    parser.add_argument("--epsilons", type=_floats, default=[0.01, 0.1, 0.25, 0.5, 1.0, 2.0])
    parser.add_argument("--relative", action="store_true",
                        help="read --epsilons as multiples of the median distance")
    parser.add_argument("--sigma", type=float, default=0.75, help="Re(s) for lstar")
    parser.add_argument("--tau", type=float, default=0.0, help="Im(s) for lstar")
    parser.add_argument("--scale", choices=("A", "K"), default="A",
                        help="cholesky: factor of A or of 2A (U_K)")
    parser.add_argument("--tol", type=float, default=1e-10)
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    parser.add_argument("--output", default=None)
    parser.add_argument("--threads", type=int, default=None,
                        help=f"worker threads (overridden by ${THREADS_ENV})")
    return parser


def validate(args):
    """Check the configuration before any computation; raises ConfigError."""
    rect = Rectangle(args.alpha, args.beta, args.gamma)
    if args.modulus < 1:
        raise ConfigError("modulus must be positive")
    if not 0 <= args.char_index < euler_phi(args.modulus):
        raise ConfigError(f"char-index must lie in 0..{euler_phi(args.modulus) - 1}")
    if args.N < 1:
        raise ConfigError("N must be positive")
    if args.precision < 2:
        raise ConfigError("precision must be at least 2 bits")
    if not args.tol > 0:
        raise ConfigError("tol must be positive")
    if args.subcommand == "scan":
        validate_scan(args.t_max, args.t_step, args.epsilons)
    if args.subcommand == "lstar" and not args.sigma > 0:
        raise ConfigError("lstar needs sigma > 0")
    return rect


def config_dict(args):
    d = {k: v for k, v in vars(args).items() if k != "output"}
    return d


def emit(args, payload, csv_header=None, csv_rows=None):
    if args.format == "csv" and csv_header is not None:
        text = serialize.csv_text(csv_header, csv_rows)
    else:
        text = serialize.dumps(payload)
    if args.output:
        serialize.atomic_write(args.output, text)
    else:
        sys.stdout.write(text)


def cmd_gram(args, rect, chi):
    A = gram_matrix(rect, args.N, args.precision)
    body = serialize.gram_to_dict(A)
    rows = [[i + 1, j + 1, v] for i, row in enumerate(body["entries"]) for j, v in enumerate(row)]
    emit(args, serialize.envelope("gram", config_dict(args), body),
         ["row", "col", "value"], rows)


def cmd_cholesky(args, rect, chi):
    A = gram_matrix(rect, args.N, args.precision)
    U = cholesky(A)
    if args.scale == "K":
        U = U.scaled_to_k()
    residual = U.residual(A)
    bound = reconstruction_bound(A.order, A.precision, A.max_abs() * (2 if args.scale == "K" else 1))
    body = serialize.factor_to_dict(U)
    body["residual"] = serialize.big(U.ctx, residual, U.precision)
    body["residual_bound"] = bound
    emit(args, serialize.envelope("cholesky", config_dict(args), body),
         ["row", "col", "value"], body["entries"])


def cmd_basis(args, rect, chi):
    A = gram_matrix(rect, args.N, args.precision)
    U = cholesky(A).scaled_to_k()
    coeffs = {}
    rows = []
    for n in range(1, args.N + 1):
        c = [serialize.big(U.ctx, v, U.precision) for v in orthonormal_coeffs(U, n)]
        coeffs[str(n)] = c
        rows.extend([n, k + 1, v] for k, v in enumerate(c))
    emit(args, serialize.envelope("basis", config_dict(args), {"coefficients": coeffs}),
         ["n", "k", "value"], rows)


def cmd_lstar(args, rect, chi):
    s = complex(args.sigma, args.tau)
    v = lstar(chi, s, args.tol)
    payload = {"s": [s.real, s.imag], "value": [v.real, v.imag], "tol": args.tol}
    emit(args, serialize.envelope("lstar", config_dict(args), payload),
         ["sigma", "tau", "re", "im"], [[s.real, s.imag, v.real, v.imag]])


def cmd_distance(args, rect, chi):
    qf = distance(rect, chi, args.t, args.N, "quadratic-form")
    fac = distance(rect, chi, args.t, args.N, "factor", precision=args.precision)
    payload = {
        "t": args.t, "order": args.N,
        "quadratic_form": qf, "factor": fac, "abs_diff": abs(qf - fac),
        "tail_bound": truncation_tail_bound(rect, chi, args.t, args.N),
    }
    emit(args, serialize.envelope("distance", config_dict(args), payload),
         ["t", "N", "quadratic_form", "factor"], [[args.t, args.N, qf, fac]])


def _sibling(path, suffix):
    root, _ = os.path.splitext(path)
    return root + suffix


def cmd_scan(args, rect, chi):
    res = density_scan(rect, chi, args.N, args.t_max, args.t_step, args.epsilons,
                       relative=args.relative, threads=args.threads)
    payload = serialize.envelope("scan", config_dict(args), res.to_dict())
    if args.format == "json" or not args.output:
        emit(args, payload)
        return
    serialize.atomic_write(args.output, serialize.csv_text(
        ["t", "D"], zip(res.grid.tolist(), res.distances.tolist())))
    serialize.atomic_write(_sibling(args.output, "_density.csv"), serialize.csv_text(
        ["epsilon", "density", "longest_run"],
        zip(res.epsilons.tolist(), res.densities.tolist(), res.longest_runs.tolist())))
    serialize.atomic_write(_sibling(args.output, "_plot.dat"), "".join(
        f"{t!r} {d!r}\n" for t, d in zip(res.grid.tolist(), res.distances.tolist())))


def cmd_verify(args, rect, chi):
    checks = run_all(rect, chi, args.precision)
    for c in checks:
        print(c.line(), file=sys.stderr)
    payload = {"checks": [{"name": c.name, "passed": c.passed, "worst": c.worst,
                           "limit": c.limit} for c in checks]}
    if args.output:
        serialize.atomic_write(args.output, serialize.dumps(
            serialize.envelope("verify", config_dict(args), payload)))
    return 0 if all(c.passed for c in checks) else EXIT_ORACLE


COMMANDS = {
    "gram": cmd_gram, "cholesky": cmd_cholesky, "basis": cmd_basis,
    "lstar": cmd_lstar, "distance": cmd_distance, "scan": cmd_scan,
    "verify": cmd_verify,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        rect = validate(args)
        chi = character(args.modulus, args.char_index)
    except (ConfigError, IndexError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return COMMANDS[args.subcommand](args, rect, chi) or 0
    except NotPositiveDefinite as exc:
        print(f"numerical breakdown at pivot {exc.pivot}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (QuadratureNonConvergence, EvaluationFailure, StabilizationFailure) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except DirichletRecurrenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())

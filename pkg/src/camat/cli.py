"""Command line driver: ``camat {power,gmres,eig,poisson-eigs}``.

Every flag can also come from an environment variable ``CAMAT_<FLAG>``
(e.g. ``CAMAT_N=16``); explicit flags win.

Exit codes: 0 success, 2 no convergence, 3 I/O or input error,
4 numerical breakdown.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys

from . import _fourier, camfile
from .eigen import canonical_eig
from .errors import DefectiveSliceError, NoConvergenceError, SingularSliceError, ZeroDivisorError
from .experiments import run_gmres_experiment, run_power_experiment
from .poisson import build_poisson, poisson_canonical_eigs, poisson_rates

EXIT_OK = 0
EXIT_NO_CONVERGENCE = 2
EXIT_IO = 3
EXIT_BREAKDOWN = 4

ENV_PREFIX = "CAMAT_"


def _env(name, default, cast=str):
    raw = os.environ.get(ENV_PREFIX + name.upper().replace("-", "_"))
    if raw is None or raw == "":
        return default
    try:
        return cast(raw)
    except ValueError:
        raise SystemExit(f"camat: bad value for {ENV_PREFIX}{name.upper()}: {raw!r}")


def _flag_bool(raw):
    return raw.strip().lower() in ("1", "true", "yes", "on")


def _common(p, n_default, tol_default, maxiter_default):
    p.add_argument("--n", type=int, default=_env("n", n_default, int),
                   help="Poisson grid parameter N (k = N, size N-1)")
    p.add_argument("--tol", type=float, default=_env("tol", tol_default, float))
    p.add_argument("--maxiter", type=int, default=_env("maxiter", maxiter_default, int))
    p.add_argument("--seed", type=int, default=_env("seed", 0, int))
    p.add_argument("--out", default=_env("out", None), help="output file (default: stdout)")
    p.add_argument("--format", choices=["csv"], default=_env("format", "csv"))
    p.add_argument("--matrix", default=_env("matrix", None),
                   help="CAM file with a square matrix to use instead of the Poisson system")


def build_parser():
    ap = argparse.ArgumentParser(prog="camat", description="Experiments in the circulant algebra K_k.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("power", help="power method convergence history")
    _common(p, 16, 1e-10, 100_000)
    p.add_argument("--phase-ref", choices=["pivot", "first"], default=_env("phase_ref", "pivot"))

    p = sub.add_parser("gmres", help="GMRES residual and error history")
    _common(p, 50, 1e-12, None)
    p.add_argument("--identity", action="store_true", default=_env("identity", False, _flag_bool),
                   help="replace A by the identity (debugging)")

    p = sub.add_parser("eig", help="canonical eigenvalues of a matrix")
    _common(p, 8, 0.0, 0)

    p = sub.add_parser("poisson-eigs", help="closed-form canonical eigenvalues and rates")
    _common(p, 50, 0.0, 0)
    return ap


def _scalar_rows(lambdas):
    return [[i + 1] + [_fourier.format_number(v) for v in lam.vec] for i, lam in enumerate(lambdas)]


def _write_eigs(fh, lambdas, k, trailer=()):
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["index"] + [f"param_{j + 1}" for j in range(k)])
    w.writerows(_scalar_rows(lambdas))
    for line in trailer:
        fh.write(f"# {line}\n")


def _run(args, fh):
    A = camfile.read(args.matrix) if args.matrix else None
    if args.command == "power":
        rep = run_power_experiment(args.n, args.tol, args.maxiter, args.seed, fh, A=A,
                                   phase_ref=args.phase_ref)
        return rep.status
    if args.command == "gmres":
        tmax = args.maxiter if args.maxiter else None
        rep = run_gmres_experiment(args.n, tmax, args.tol, fh, A=A, identity=args.identity,
                                   seed=args.seed)
        return rep.status
    if args.command == "eig":
        if A is None:
            A = build_poisson(args.n).A
        eig = canonical_eig(A)
        _write_eigs(fh, eig.lambdas, A.k, eig.warnings)
        return EXIT_OK
    if args.command == "poisson-eigs":
        fast, slow = poisson_rates(args.n)
        _write_eigs(fh, poisson_canonical_eigs(args.n), args.n,
                    [f"fastest_rate={_fourier.format_number(fast)} "
                     f"slowest_rate={_fourier.format_number(slow)}"])
        return EXIT_OK
    raise AssertionError(args.command)


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.out:
            with open(args.out, "w", newline="", encoding="ascii") as fh:
                return _run(args, fh)
        return _run(args, sys.stdout)
    except NoConvergenceError as err:
        print(f"camat: {err}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    except (ZeroDivisorError, SingularSliceError, DefectiveSliceError) as err:
        print(f"camat: numerical breakdown: {err}", file=sys.stderr)
        return EXIT_BREAKDOWN
    except (OSError, ValueError) as err:
        print(f"camat: {err}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())

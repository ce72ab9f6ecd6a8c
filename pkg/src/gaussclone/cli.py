"""Command line front end: CSV tables behind the cloning and teleportation figures.

Every subcommand recomputes its closed forms along an independent numeric
path and exits with status 1 if the two disagree beyond tolerance. Usage
errors exit with status 2.

    python -m gaussclone fbar --sigma-max 10 --steps 201 --out fbar.csv
    python -m gaussclone noclone
    python -m gaussclone tele --lambda 0.5
    python -m gaussclone singlequad
    python -m gaussclone estimate --samples 100000 --seed 7
"""

from __future__ import annotations

import argparse
import csv
import math
import os
import sys
from contextlib import contextmanager

import numpy as np

from . import estimation, single_quad_cloner as sq, symmetric_cloner as sc, teleportation as tp

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_USAGE = 2

FBAR_TOL = 1e-6
LAMBDA_TOL = 1e-8
SINGLEQUAD_TOL = 1e-12
ESTIMATE_MAX_Z = 5.0


class ValidationFailure(Exception):
    pass


def _workers() -> int:
    raw = os.environ.get("GAUSSCLONE_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise SystemExit(f"GAUSSCLONE_THREADS must be an integer, got {raw!r}")
    return max(1, n)


def _fmt(x, precision: int) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "1" if x else "0"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if math.isnan(x):
        return "nan"
    return format(x, f".{precision}g")


@contextmanager
def _output(path):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="", encoding="ascii") as fh:
            yield fh


def write_csv(path, header, rows, precision: int) -> None:
    with _output(path) as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(x, precision) for x in row])


def _sigma_grid(args) -> np.ndarray:
    return np.linspace(args.sigma_min, args.sigma_max, args.steps)


def cmd_fbar(args) -> list:
    rows, worst = [], 0.0
    for sigma in _sigma_grid(args):
        closed = sc.max_average_fidelity(sigma)
        numeric = sc.numeric_optimal_gain(sigma, method="quadrature").value
        diff = abs(closed - numeric)
        worst = max(worst, diff)
        rows.append((sigma, sc.optimal_gain(sigma), closed, numeric, diff))
    write_csv(
        args.out,
        ["sigma", "optimal_G", "fbar_closed", "fbar_numeric", "abs_diff"],
        rows,
        args.precision,
    )
    if worst > FBAR_TOL:
        raise ValidationFailure(f"closed and numeric Fbar differ by {worst:.3e}")
    return rows


def cmd_noclone(args) -> list:
    rows, worst = [], 0.0
    for sigma in _sigma_grid(args):
        closed = tp.nocloning_lambda(sigma)
        bisect = tp.nocloning_lambda_bisect(sigma)
        worst = max(worst, abs(closed - bisect))
        v_db = tp.variance_db(sigma) if sigma > 0 else -math.inf
        rows.append((sigma, closed, bisect, tp.squeezing_db(closed), v_db))
    write_csv(
        args.out,
        ["sigma", "lambda_closed", "lambda_bisect", "squeezing_dB", "variance_dB"],
        rows,
        args.precision,
    )
    if worst > LAMBDA_TOL:
        raise ValidationFailure(f"closed and bisection thresholds differ by {worst:.3e}")
    return rows


def cmd_tele(args) -> list:
    grid = _sigma_grid(args)
    points = tp.crossing_scan(args.lam, grid)
    # dashed curve cross-check: optimal-gain closed form vs piecewise maximum
    alt = sc.average_fidelity_closed(sc.optimal_gain(grid), grid)
    worst = float(np.max(np.abs(alt - np.array([p.noclone_F for p in points]))))
    rows = [(p.sigma, p.tele_F, p.noclone_F, p.above) for p in points]
    write_csv(args.out, ["sigma", "tele_F", "noclone_F", "above"], rows, args.precision)
    if worst > 1e-12:
        raise ValidationFailure(f"no-cloning fidelity forms differ by {worst:.3e}")
    return rows


def cmd_singlequad(args) -> list:
    grid = np.geomspace(args.v_min, args.v_max, args.steps)
    rows, worst = [], 0.0
    for v in grid:
        config = sq.LineClonerConfig(sq.unity_gain_H(), v)
        closed = sq.fidelity_line(v)
        circuit = sq.fidelity_line_circuit(1.0, config)
        snr_closed = sq.snr_plus(v)
        sum_snr = sq.sum_snr_transfer(config)
        worst = max(
            worst,
            abs(closed - circuit),
            abs(snr_closed - sq.snr_plus_circuit(config)),
            abs(sum_snr - 1.0),
        )
        duan = sq.duan_value(sq.clone_line(0.0, config))
        rows.append((v, closed, snr_closed, duan, sum_snr))
    write_csv(
        args.out,
        ["v_plus", "fidelity", "snr_plus", "duan_value", "sum_snr"],
        rows,
        args.precision,
    )

    v_opt, f_opt = sq.optimal_vsqz()
    numeric = sq.optimal_vsqz_numeric()
    config = sq.LineClonerConfig(sq.unity_gain_H(), v_opt)
    summary = [
        ("H", sq.unity_gain_H()),
        ("optimal_v_plus", v_opt),
        ("optimal_v_plus_numeric", numeric.argmax),
        ("F_max", f_opt),
        ("snr_plus_at_optimum", sq.snr_plus(v_opt)),
        ("duan_at_optimum", sq.duan_value(sq.clone_line(0.0, config))),
    ]
    print("# single-quadrature cloner summary", file=sys.stderr)
    for key, value in summary:
        print(f"# {key} = {_fmt(value, args.precision)}", file=sys.stderr)

    if worst > SINGLEQUAD_TOL:
        raise ValidationFailure(f"circuit and closed forms differ by {worst:.3e}")
    if abs(numeric.argmax - v_opt) > 1e-8 or abs(numeric.value - f_opt) > 1e-10:
        raise ValidationFailure("numeric optimum of the line fidelity disagrees with closed form")
    return rows


def cmd_estimate(args) -> list:
    workers = _workers()
    rows, worst = [], 0.0
    for sigma in _sigma_grid(args):
        bayes = estimation.estimator_mse(sigma, args.samples, args.seed, "bayes", workers)
        naive = estimation.estimator_mse(sigma, args.samples, args.seed, "naive", workers)
        theory = float(estimation.bayes_mse_theory(sigma))
        z = (bayes.value - theory) / bayes.std_error if bayes.std_error > 0 else 0.0
        worst = max(worst, abs(z))
        rows.append((sigma, bayes.value, naive.value, theory, z))
    write_csv(
        args.out,
        ["sigma", "mse_bayes", "mse_naive", "mse_theory", "z_score"],
        rows,
        args.precision,
    )
    if worst > ESTIMATE_MAX_Z:
        raise ValidationFailure(f"Monte Carlo MSE is {worst:.2f} standard errors from theory")
    return rows


def _precision(text: str) -> int:
    p = int(text)
    if not 6 <= p <= 17:
        raise argparse.ArgumentTypeError("precision must be between 6 and 17 digits")
    return p


def _positive_int(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gaussclone", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, sigma_max=10.0, steps=201):
        p.add_argument("--out", default=None, help="output CSV path (default: stdout)")
        p.add_argument("--precision", type=_precision, default=12, help="significant digits")
        p.add_argument("--steps", type=_positive_int, default=steps)
        p.add_argument("--sigma-min", type=float, default=0.0)
        p.add_argument("--sigma-max", type=float, default=sigma_max)

    p = sub.add_parser("fbar", help="optimal average cloning fidelity vs prior width")
    common(p)
    p.set_defaults(func=cmd_fbar)

    p = sub.add_parser("noclone", help="entanglement needed to beat the no-cloning limit")
    common(p)
    p.set_defaults(func=cmd_noclone)

    p = sub.add_parser("tele", help="teleportation vs no-cloning fidelity at fixed lambda")
    common(p)
    p.add_argument("--lambda", dest="lam", type=float, default=0.5)
    p.set_defaults(func=cmd_tele)

    p = sub.add_parser("singlequad", help="single-quadrature cloner vs injected squeezing")
    p.add_argument("--out", default=None)
    p.add_argument("--precision", type=_precision, default=12)
    p.add_argument("--steps", type=_positive_int, default=101)
    p.add_argument("--v-min", type=float, default=0.2)
    p.add_argument("--v-max", type=float, default=5.0)
    p.set_defaults(func=cmd_singlequad)

    p = sub.add_parser("estimate", help="Monte Carlo MSE of amplitude estimators")
    common(p, sigma_max=3.0, steps=7)
    p.add_argument("--samples", type=_positive_int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_estimate)
    return parser


def _check_args(parser, args) -> None:
    if hasattr(args, "sigma_min"):
        if not 0 <= args.sigma_min < args.sigma_max:
            parser.error("need 0 <= sigma-min < sigma-max")
    if hasattr(args, "v_min") and not 0 < args.v_min < args.v_max:
        parser.error("need 0 < v-min < v-max")
    if hasattr(args, "lam") and not 0 <= args.lam < 1:
        parser.error("lambda must lie in [0, 1)")
    if hasattr(args, "samples") and args.samples < 1000:
        parser.error("--samples must be at least 1000")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _check_args(parser, args)
    try:
        args.func(args)
    except ValidationFailure as exc:
        print(f"validation failed: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Every command writes a ``#``-prefixed header echoing its effective settings,
then CSV (or an aligned table) on stdout.  Diagnostics go to stderr.
Exit codes: 0 success, 1 failed check, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import logging
import math
import os
import sys
import time
from dataclasses import dataclass, fields
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .analytic import arcsine_pdf, moment_drift
from .exact import catalan_moment, moment_exact
from .samplers import occupation_counts
from .stats import Z_BAND, claim_check
from .suites import SUITES, fmt, run_suite

log = logging.getLogger("arcsine_lab")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


@dataclass
class RunConfig:
    """Effective settings of one invocation.  Fields a subcommand does not
    take stay ``None`` and are left out of the header.
    """

    subcommand: str
    m: Optional[int] = None
    mu: Optional[float] = None
    trials: Optional[int] = None
    steps: Optional[int] = None
    seed: int = 0
    workers: int = 1
    format: str = "csv"
    m_max: Optional[int] = None
    suite: Optional[str] = None
    ks_trials: Optional[int] = None
    bins: Optional[int] = None
    plot: Optional[str] = None

    def header(self) -> str:
        # workers never changes output bytes, so it is left out of the header
        parts = [
            f"{f.name}={fmt(getattr(self, f.name))}"
            for f in fields(self)
            if f.name != "workers" and getattr(self, f.name) is not None
        ]
        return "# arcsine-lab " + " ".join(parts)


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _finite_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}")
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"expected a finite number, got {text!r}")
    return value


def _seed(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer seed, got {text!r}")
    if not 0 <= value < 1 << 64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return value


def _bins(text: str) -> int:
    value = _positive_int(text)
    if value < 2:
        raise argparse.ArgumentTypeError("need at least 2 bins")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=_seed, default=0)
    common.add_argument("--workers", type=_positive_int, default=os.cpu_count() or 1)
    common.add_argument("--format", choices=("csv", "table"), default="csv")
    drift = argparse.ArgumentParser(add_help=False)
    drift.add_argument("--mu", type=_finite_float, default=0.0)
    sim = argparse.ArgumentParser(add_help=False)
    sim.add_argument("--trials", type=_positive_int, default=1_000_000)
    sim.add_argument("--steps", type=_positive_int, default=10_000)

    parser = argparse.ArgumentParser(
        prog="arcsine-lab",
        description="Exact and Monte Carlo checks of the Brownian occupation-time arcsine law.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("moments", parents=[common, drift], help="moment sequence table")
    p.add_argument("--m-max", type=_positive_int, required=True)
    p.add_argument("--plot", metavar="PATH", help="also render the moment curve to PATH")

    p = sub.add_parser("verify", parents=[common, sim], help="run invariant suites")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--ks-trials", type=_positive_int, default=100_000)

    p = sub.add_parser("claim-check", parents=[common, drift, sim], help="drift moment audit")
    p.add_argument("--m", type=_positive_int, default=1)

    p = sub.add_parser("density", parents=[common, sim], help="occupation-time histogram")
    p.add_argument("--bins", type=_bins, default=20)
    p.add_argument("--plot", metavar="PATH", help="also render the histogram to PATH")
    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    known = {f.name for f in fields(RunConfig)}
    return RunConfig(**{k: v for k, v in vars(args).items() if k in known})


def _emit(cfg: RunConfig, columns: Sequence[str], rows: Sequence[Sequence[str]], out=None) -> None:
    out = out or sys.stdout
    out.write(cfg.header() + "\n")
    if cfg.format == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(columns)
        writer.writerows(rows)
    else:
        widths = [max(len(str(r[i])) for r in [columns, *rows]) for i in range(len(columns))]
        for r in [columns, *rows]:
            out.write("  ".join(str(c).ljust(w) for c, w in zip(r, widths)).rstrip() + "\n")
    out.flush()


def cmd_moments(cfg: RunConfig) -> int:
    orders = list(range(1, cfg.m_max + 1))
    rows, values, closed = [], [], []
    for m in orders:
        if cfg.mu == 0:
            value = moment_exact(m, Fraction(1, 2))
            closed_form = catalan_moment(m)
            rows.append([m, fmt(value), fmt(float(value)), fmt(closed_form)])
            closed.append(float(closed_form))
        else:
            value = moment_drift(m, cfg.mu)
            rows.append([m, fmt(value), fmt(value), ""])
        values.append(float(value))
    _emit(cfg, ["m", "value", "value_float", "closed_form"], rows)
    if cfg.plot:
        from .plotting import plot_moments

        reference = closed or [float(catalan_moment(m)) for m in orders]
        plot_moments(orders, values, cfg.plot, reference=reference, mu=cfg.mu)
        log.info("wrote %s", cfg.plot)
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    rows, failed = [], 0
    for check in run_suite(
        cfg.suite,
        trials=cfg.trials,
        ks_trials=cfg.ks_trials,
        steps=cfg.steps,
        seed=cfg.seed,
        workers=cfg.workers,
    ):
        log.info("%s %s", "PASS" if check.passed else "FAIL", check.name)
        failed += not check.passed
        rows.append([check.name, "pass" if check.passed else "fail", check.measured, check.expected, check.tolerance])
    _emit(cfg, ["check", "status", "measured", "expected", "tolerance"], rows)
    print(f"{len(rows) - failed}/{len(rows)} checks passed", file=sys.stderr)
    return EXIT_FAIL if failed else EXIT_OK


def cmd_claim_check(cfg: RunConfig) -> int:
    report = claim_check(cfg.m, cfg.mu, cfg.trials, cfg.seed, cfg.workers)
    zs = report.internal_consistency()
    rows = [["formula_value", fmt(report.formula_value), "", "", ""]]
    for kind, est in report.estimates().items():
        if kind in zs:
            z, ref = zs[kind], "formula_value"
        elif report.fixed_horizon_oracle is not None:
            z = (est.estimate - report.fixed_horizon_oracle) / est.std_error
            ref = "fixed_horizon_oracle"
        else:
            z, ref = None, ""
        rows.append([f"{kind}_estimate", fmt(est.estimate), fmt(est.std_error), "" if z is None else fmt(z), ref])
    if report.fixed_horizon_oracle is not None:
        rows.append(["fixed_horizon_oracle", fmt(report.fixed_horizon_oracle), "", "", ""])
        rows.append(["exp_horizon_oracle", fmt(report.exp_horizon_oracle), "", "", ""])
    ok = report.consistent()
    rows.append(["internal_consistency", "pass" if ok else "fail", "", "", f"|z| < {Z_BAND:g}"])
    _emit(cfg, ["field", "value", "std_error", "z_score", "reference"], rows)
    return EXIT_OK if ok else EXIT_FAIL


def density_rows(counts: np.ndarray, steps: int, bins: int):
    """Histogram of grid occupation counts; bins are [j/bins, (j+1)/bins)."""
    index = np.minimum(counts.astype(np.int64) * bins // steps, bins - 1)
    hist = np.bincount(index, minlength=bins)
    empirical = hist * bins / counts.size
    centers = (np.arange(bins) + 0.5) / bins
    return centers, empirical, [arcsine_pdf(c) for c in centers]


def cmd_density(cfg: RunConfig) -> int:
    counts = occupation_counts(0.0, cfg.steps, cfg.trials, cfg.seed, cfg.workers)
    centers, empirical, analytic = density_rows(counts, cfg.steps, cfg.bins)
    rows = [[fmt(float(c)), fmt(float(e)), fmt(a)] for c, e, a in zip(centers, empirical, analytic)]
    _emit(cfg, ["bin_center", "empirical_density", "analytic_density"], rows)
    if cfg.plot:
        from .plotting import plot_density

        plot_density(centers, empirical, cfg.bins, cfg.plot, title=f"n={cfg.trials}, steps={cfg.steps}")
        log.info("wrote %s", cfg.plot)
    return EXIT_OK


COMMANDS = {
    "moments": cmd_moments,
    "verify": cmd_verify,
    "claim-check": cmd_claim_check,
    "density": cmd_density,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(message)s",
        stream=sys.stderr,
    )
    cfg = _config(args)
    log.info("workers=%d", cfg.workers)
    start = time.perf_counter()
    try:
        code = COMMANDS[cfg.subcommand](cfg)
    except ValueError as exc:
        print(f"arcsine-lab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    log.info("%s finished in %.2fs", cfg.subcommand, time.perf_counter() - start)
    return code


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface: ``bmtdist {fit,sample,curve,describe,region,grid,simulate}``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import warnings
from typing import Sequence

import numpy as np

from .bmt import BmtDistribution
from .descriptives import measure_grid, skew2_kurt_region, summarize
from .estimation import FAMILIES, fit_model
from .io import DataError, DatasetFile, FitReportDocument, fmt, write_text
from .simulation import DEFAULT_THETAS, RecoveryConfig, run_recovery

EXIT_OK = 0
EXIT_ERROR = 2


def _csv_table(header: Sequence[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) if isinstance(v, (float, np.floating)) else v for v in row])
    return buf.getvalue()


def _names(text: str, allowed: Sequence[str], what: str) -> list[str]:
    out = [s.strip() for s in text.split(",") if s.strip()]
    bad = [s for s in out if s not in allowed]
    if bad or not out:
        raise DataError(f"invalid {what} {','.join(bad) or text!r}; choose from {','.join(allowed)}")
    return list(dict.fromkeys(out))


def _thetas(text: str) -> tuple[tuple[float, float], ...]:
    try:
        pairs = [tuple(float(v) for v in chunk.split(",")) for chunk in text.split(";") if chunk.strip()]
    except ValueError:
        raise DataError(f"cannot parse parameter vectors {text!r}") from None
    if not pairs or any(len(p) != 2 for p in pairs):
        raise DataError("parameter vectors must look like 'kl,kr;kl,kr'")
    return tuple(pairs)


def _bmt_from(args) -> BmtDistribution:
    try:
        return BmtDistribution(args.kappa_l, args.kappa_r, *args.domain)
    except ValueError as exc:
        raise DataError(str(exc)) from None


# subcommands ---------------------------------------------------------------


def cmd_fit(args) -> str:
    data = DatasetFile.read(args.input, args.column)
    models = _names(args.models, tuple(FAMILIES), "model")
    methods = _names(args.methods, ("mle", "mpse"), "method")
    x = np.asarray(data.values)
    domain = tuple(args.domain) if args.domain else (0.0, 1.0)
    if args.n_params == 2:
        c, d = domain
        outside = x[(x <= c) | (x >= d)]
        if outside.size:
            raise DataError(f"value {outside[0]!r} is not strictly inside the domain ({c}, {d})")
    results = []
    for model in models:
        for method in methods:
            try:
                results.append(fit_model(x, model, method, args.n_params, domain))
            except ValueError as exc:
                raise DataError(f"{model}/{method}: {exc}") from None
    summary = summarize(x) if x.size >= 2 else None
    doc = FitReportDocument(results, summary, data.path)
    return doc.to_json() + "\n" if args.format == "json" else doc.to_csv()


def cmd_sample(args) -> str:
    if args.n < 0:
        raise DataError("sample size must be nonnegative")
    x = _bmt_from(args).sample(args.n, seed=args.seed)
    if args.format == "json":
        return json.dumps({"x": x.tolist()}) + "\n"
    return _csv_table(["x"], ([float(v)] for v in x))


def cmd_curve(args) -> str:
    if args.points < 2:
        raise DataError("points must be >= 2")
    dist = _bmt_from(args)
    xs = np.linspace(dist.c, dist.d, args.points)
    vals = np.asarray(dist.cdf(xs) if args.which == "cdf" else dist.pdf(xs), dtype=float)
    if args.format == "json":
        return json.dumps({"x": xs.tolist(), args.which: vals.tolist()}) + "\n"
    return _csv_table(["x", args.which], zip(map(float, xs), map(float, vals)))


def cmd_describe(args) -> str:
    data = DatasetFile.read(args.input, args.column)
    try:
        s = summarize(data.values)
    except ValueError as exc:
        raise DataError(str(exc)) from None
    d = s.to_dict()
    if args.format == "json":
        return json.dumps(d) + "\n"
    return _csv_table(list(d), [[float(v) if k != "n" else v for k, v in d.items()]])


def cmd_region(args) -> str:
    if args.resolution < 2:
        raise DataError("resolution must be >= 2")
    pts = skew2_kurt_region(args.resolution)
    cols = ["kappa_l", "kappa_r", "skew2", "kurt"]
    if args.format == "json":
        return json.dumps({c: pts[:, i].tolist() for i, c in enumerate(cols)}) + "\n"
    return _csv_table(cols, (map(float, row) for row in pts))


def cmd_grid(args) -> str:
    if args.resolution < 2:
        raise DataError("resolution must be >= 2")
    grid = measure_grid(args.resolution)
    return grid.to_json() + "\n" if args.format == "json" else grid.to_csv()


def cmd_simulate(args) -> str:
    try:
        sizes = tuple(int(v) for v in args.sizes.split(","))
        config = RecoveryConfig(
            replicates=args.replicates,
            sizes=sizes,
            thetas=_thetas(args.thetas),
            methods=tuple(_names(args.methods, ("mle", "mpse"), "method")),
            base_seed=args.seed,
            n_jobs=args.jobs,
        )
    except ValueError as exc:
        raise DataError(str(exc)) from None
    report = run_recovery(config)
    return report.to_json() + "\n" if args.format == "json" else report.to_csv()


# parser --------------------------------------------------------------------


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    p.add_argument("--output", "-o", default="-", help="output file, '-' for stdout")
    p.add_argument("--format", choices=("csv", "json"), default="csv")


def _add_bmt(p: argparse.ArgumentParser) -> None:
    p.add_argument("--kappa-l", type=float, required=True)
    p.add_argument("--kappa-r", type=float, required=True)
    p.add_argument("--domain", type=float, nargs=2, metavar=("C", "D"), default=(0.0, 1.0))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bmtdist", description="BMT distribution toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fit", help="fit models to a data column")
    p.add_argument("input")
    p.add_argument("--column", default="0", help="column name or zero-based index")
    p.add_argument("--models", default="bmt", help="comma list of bmt,beta,kumaraswamy")
    p.add_argument("--methods", default="mle,mpse", help="comma list of mle,mpse")
    p.add_argument("--n-params", type=int, choices=(2, 4), default=2)
    p.add_argument("--domain", type=float, nargs=2, metavar=("C", "D"), help="fixed domain for 2-parameter fits")
    _add_common(p)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("sample", help="draw a BMT sample")
    _add_bmt(p)
    p.add_argument("-n", type=int, required=True, help="sample size")
    _add_common(p)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("curve", help="tabulate the BMT cdf or pdf")
    _add_bmt(p)
    p.add_argument("--which", choices=("cdf", "pdf"), default="pdf")
    p.add_argument("--points", type=int, default=101)
    _add_common(p)
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("describe", help="summary statistics of a data column")
    p.add_argument("input")
    p.add_argument("--column", default="0", help="column name or zero-based index")
    _add_common(p)
    p.set_defaults(func=cmd_describe)

    p = sub.add_parser("region", help="squared skewness and kurtosis over the shape grid")
    p.add_argument("--resolution", type=int, default=100)
    _add_common(p)
    p.set_defaults(func=cmd_region)

    p = sub.add_parser("grid", help="descriptive measures over the shape grid")
    p.add_argument("--resolution", type=int, default=100)
    _add_common(p)
    p.set_defaults(func=cmd_grid)

    p = sub.add_parser("simulate", help="parameter-recovery experiment")
    p.add_argument("--replicates", type=int, default=1000)
    p.add_argument("--sizes", default="30,300,3000")
    p.add_argument("--thetas", default=";".join(f"{a},{b}" for a, b in DEFAULT_THETAS))
    p.add_argument("--methods", default="mle,mpse")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    _add_common(p)
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            text = args.func(args)
        write_text(text, args.output)
    except DataError as exc:
        print(f"bmtdist {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

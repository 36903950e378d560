"""Command-line front end.

Subcommands::

    kregular gen      -k K -n MAX_N            build/cache a p_k table
    kregular check    -k K -d D -n N           Hankel + Sturm verdict for one J^{d,n}
    kregular scan     -k K -d D --horizon H    hyperbolicity threshold scan (JSON/CSV)
    kregular turan    -k K --order O --horizon H
    kregular converge -k K -d D --points 1000,10000
    kregular asymp    -k K -d D --points 1000,10000

Exit status: 0 success, 1 usage/config error, 2 internal cross-check failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import List, Optional

from . import __version__
from .asymptotics import AsymptoticParams, residual_sweep, residuals_to_csv
from .hyperbolicity import is_hyperbolic_hermite, is_hyperbolic_sturm
from .partitions import cache_path, load_or_build, write_table
from .polynomials import DEFAULT_PRECISION, jensen_poly
from .survey import CrossCheckError, convergence_scan, default_horizon, threshold_scan, turan_scan

log = logging.getLogger("kregular")

EXIT_OK, EXIT_USAGE, EXIT_CROSSCHECK = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    k: int
    d: Optional[int] = None
    max_n: Optional[int] = None
    shift: Optional[int] = None
    horizon: Optional[int] = None
    points: Optional[List[int]] = None
    order: Optional[int] = None
    precision: int = DEFAULT_PRECISION
    format: str = "json"
    cache_dir: Optional[str] = None
    seed: int = 0
    parallelism: int = 1
    out: Optional[str] = None

    def validate(self) -> None:
        if self.k < 2:
            raise UsageError(f"k must be >= 2 (got {self.k})")
        if self.d is not None and self.d < (0 if self.command == "converge" else 1):
            raise UsageError(f"d out of range (got {self.d})")
        for name, least in (("max_n", 0), ("shift", 0), ("horizon", 1)):
            value = getattr(self, name)
            if value is not None and value < least:
                raise UsageError(f"{name} out of range (got {value})")
        if self.points is not None and (not self.points or min(self.points) < 1):
            raise UsageError("points must be a non-empty list of positive integers")
        if self.precision < 53:
            raise UsageError("precision must be at least 53 bits")
        if self.format not in ("json", "csv"):
            raise UsageError("format must be json or csv")
        if self.parallelism < 1:
            raise UsageError("parallelism must be >= 1")

    def header(self) -> dict:
        return {"artifact": "kregular", "version": __version__, "config": asdict(self)}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _points(text: str) -> List[int]:
    try:
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad point list: {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="kregular", description="k-regular partitions, Jensen polynomials, Turán inequalities")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-k", type=int, required=True)
    common.add_argument("--cache-dir", default=None,
                        help="table cache directory (default: $PK_CACHE_DIR or ./pk-cache)")
    common.add_argument("--precision", type=int, default=DEFAULT_PRECISION, help="working precision in bits")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("-j", "--jobs", dest="parallelism", type=int, default=1)
    common.add_argument("-o", "--out", default=None, help="output file (default derived from the command)")

    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    p = sub.add_parser("gen", parents=[common], help="build and cache a p_k table")
    p.add_argument("-n", "--max-n", dest="max_n", type=int, required=True)

    p = sub.add_parser("check", parents=[common], help="decide hyperbolicity of one Jensen polynomial")
    p.add_argument("-d", type=int, required=True)
    p.add_argument("-n", dest="shift", type=int, required=True, help="shift n of J^{d,n}")

    p = sub.add_parser("scan", parents=[common], help="hyperbolicity threshold scan")
    p.add_argument("-d", type=int, required=True)
    p.add_argument("--horizon", type=int, default=None)

    p = sub.add_parser("turan", parents=[common], help="Turán inequality scan")
    p.add_argument("--order", type=int, choices=(2, 3), required=True)
    p.add_argument("--horizon", type=int, required=True)

    p = sub.add_parser("converge", parents=[common], help="distance of renormalized Jensen polynomials to H_d")
    p.add_argument("-d", type=int, required=True)
    p.add_argument("--points", type=_points, required=True)

    p = sub.add_parser("asymp", parents=[common], help="log-quotient residual sweep")
    p.add_argument("-d", type=int, required=True)
    p.add_argument("--points", type=_points, required=True)
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    fields = {name: getattr(args, name) for name in RunConfig.__dataclass_fields__ if hasattr(args, name)}
    fields["cache_dir"] = args.cache_dir or os.environ.get("PK_CACHE_DIR") or "pk-cache"
    config = RunConfig(**fields)
    if config.command == "scan" and config.horizon is None:
        config.horizon = default_horizon(config.d)
    config.validate()
    return config


def _table(config: RunConfig, max_n: int):
    table, hit = load_or_build(config.k, max_n, config.cache_dir)
    log.info("table k=%d max_n=%d: %s", config.k, max_n, "cache hit" if hit else "computed and cached")
    return table


def _emit(config: RunConfig, default_name: str, json_body: dict, csv_body: Optional[str]) -> Path:
    path = Path(config.out or f"{default_name}.{config.format}")
    header = config.header()
    if config.format == "json" or csv_body is None:
        text = json.dumps({**header, "report": json_body}, indent=2) + "\n"
    else:
        text = f"# {json.dumps(header, sort_keys=True)}\n" + csv_body
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
    print(f"wrote {path}")
    return path


def cmd_gen(config: RunConfig) -> int:
    path = cache_path(config.cache_dir, config.k, config.max_n)
    try:
        table, hit = load_or_build(config.k, config.max_n, config.cache_dir)
        if not path.exists():
            # served from a larger cached table; keep an exact-size copy as well
            write_table(table, path)
    except OSError as exc:
        raise UsageError(f"cannot write cache in {config.cache_dir}: {exc}")
    print(f"{'cache hit' if hit else 'computed'}: {path}")
    return EXIT_OK


def cmd_check(config: RunConfig) -> int:
    n, d = config.shift, config.d
    table = _table(config, n + d)
    poly = jensen_poly(table, d, n)
    report = is_hyperbolic_hermite(poly)
    sturm = is_hyperbolic_sturm(poly)
    print(f"J^({d},{n}) for p_{config.k}: coefficients {[str(c) for c in poly.coeffs]}")
    print(f"Hermite/Hankel: {report.verdict.value}")
    print(f"Sturm:          {'Hyperbolic' if sturm else 'NotHyperbolic'}")
    print(json.dumps(report.to_json(), indent=2))
    if sturm != report.hyperbolic:
        print("error: Hankel and Sturm verdicts disagree", file=sys.stderr)
        return EXIT_CROSSCHECK
    return EXIT_OK


def cmd_scan(config: RunConfig) -> int:
    table = _table(config, config.horizon + config.d)
    report = threshold_scan(config.k, config.d, config.horizon, config.parallelism, table=table)
    print(f"k={config.k} d={config.d} horizon={config.horizon}: "
          f"{len(report.failures)} failures, empirical threshold {report.empirical_threshold}"
          f"{'' if report.conclusive else ' (INCONCLUSIVE)'}")
    _emit(config, f"scan_k{config.k}_d{config.d}_h{config.horizon}", report.to_json(), report.to_csv())
    return EXIT_OK


def cmd_turan(config: RunConfig) -> int:
    table = _table(config, config.horizon + config.order - 1)
    report = turan_scan(config.k, config.order, config.horizon, table=table)
    print(f"k={config.k} order={config.order}: failures {report.failures}")
    _emit(config, f"turan_k{config.k}_o{config.order}_h{config.horizon}", report.to_json(), report.to_csv())
    return EXIT_OK


def cmd_converge(config: RunConfig) -> int:
    table = _table(config, max(config.points) + config.d)
    params = AsymptoticParams(config.k, config.d, precision=config.precision)
    report = convergence_scan(config.k, config.d, config.points, params, table=table)
    for note in report.findings():
        log.warning(note)
    _emit(config, f"converge_k{config.k}_d{config.d}", report.to_json(), report.to_csv())
    return EXIT_OK


def cmd_asymp(config: RunConfig) -> int:
    table = _table(config, max(config.points) + config.d)
    params = AsymptoticParams(config.k, config.d, precision=config.precision)
    rows = residual_sweep(table, params, sorted(config.points))
    body = residuals_to_csv(rows)
    _emit(config, f"asymp_k{config.k}_d{config.d}", {"rows": [r.as_row() for r in rows]}, body)
    return EXIT_OK


COMMANDS = {
    "gen": cmd_gen,
    "check": cmd_check,
    "scan": cmd_scan,
    "turan": cmd_turan,
    "converge": cmd_converge,
    "asymp": cmd_asymp,
}


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        config = _config_from_args(args)
        return COMMANDS[config.command](config)
    except UsageError as exc:
        print(f"kregular: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CrossCheckError as exc:
        print(f"kregular: cross-check failure: {exc}", file=sys.stderr)
        return EXIT_CROSSCHECK
    except IndexError as exc:
        print(f"kregular: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

"""Empirical threshold searches and convergence measurements."""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .asymptotics import AsymptoticParams
from .hyperbolicity import (HankelReport, is_hyperbolic_hermite, is_hyperbolic_sturm,
                            turan_order2, turan_order3)
from .partitions import RegularPartitionTable, compute_table_pentagonal
from .polynomials import (DEFAULT_PRECISION, coefficient_deviation, hermite_poly, jensen_poly,
                          renormalized_jensen, sup_distance)

CLEAN_TAIL_FRACTION = 0.9
DEFAULT_INTERVAL = (-5.0, 5.0)
DEFAULT_GRID = 512


class CrossCheckError(RuntimeError):
    """The Hankel and Sturm deciders disagreed on a polynomial."""


def default_horizon(d: int) -> int:
    return 10_000 if d <= 3 else 1_000


@dataclass
class ThresholdReport:
    k: int
    d: int
    horizon: int
    failures: List[int]
    audits: Dict[int, HankelReport] = field(default_factory=dict)
    kind: str = "jensen"

    @property
    def empirical_threshold(self) -> int:
        return max(self.failures) + 1 if self.failures else 1

    @property
    def verified_to(self) -> int:
        return self.horizon

    @property
    def clean_tail(self) -> int:
        return self.horizon - (max(self.failures) if self.failures else 0)

    @property
    def conclusive(self) -> bool:
        return self.clean_tail >= CLEAN_TAIL_FRACTION * self.horizon

    def to_json(self) -> dict:
        out = {
            "kind": self.kind,
            "k": self.k,
            "d": self.d,
            "horizon": self.horizon,
            "failures": self.failures,
            "empirical_threshold": self.empirical_threshold,
            "verified_to": self.verified_to,
            "status": "CONCLUSIVE" if self.conclusive else "INCONCLUSIVE",
        }
        if not self.conclusive:
            out["suggested_horizon"] = 10 * self.horizon
        if self.audits:
            out["audits"] = {str(n): rep.to_json() for n, rep in sorted(self.audits.items())}
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["k", "d", "n", "verdict"])
        for n in self.failures:
            writer.writerow([self.k, self.d, n, "NotHyperbolic" if self.kind == "jensen" else "fails"])
        return buf.getvalue()


def _scan_chunk(table: RegularPartitionTable, d: int, lo: int, hi: int) -> List[Tuple[int, HankelReport]]:
    failures = []
    for n in range(lo, hi):
        poly = jensen_poly(table, d, n)
        report = is_hyperbolic_hermite(poly)
        if not report.hyperbolic:
            if is_hyperbolic_sturm(poly):
                raise CrossCheckError(f"Hankel and Sturm disagree on J^({d},{n}) for k={table.k}")
            failures.append((n, report))
    return failures


def _chunks(lo: int, hi: int, parts: int) -> List[Tuple[int, int]]:
    size = max(1, -(-(hi - lo) // parts))
    return [(a, min(a + size, hi)) for a in range(lo, hi, size)]


def threshold_scan(k: int, d: int, horizon: int, parallelism: int = 1,
                   table: Optional[RegularPartitionTable] = None) -> ThresholdReport:
    """Decide hyperbolicity of J^{d,n}_{p_k} for 1 <= n <= horizon.

    Every shift is decided by the Hankel criterion; each failure is confirmed
    by a Sturm count. With ``k > horizon + d`` the table is plain p(n).
    """
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    if d < 1:
        raise ValueError("d must be >= 1")
    if table is None:
        table = compute_table_pentagonal(k, horizon + d)
    if table.max_n < horizon + d:
        raise IndexError(f"table max_n={table.max_n} too small for horizon {horizon} and d={d}")
    ranges = _chunks(1, horizon + 1, max(1, parallelism) * 4)
    if parallelism > 1:
        with ProcessPoolExecutor(max_workers=parallelism) as pool:
            parts = list(pool.map(_scan_chunk, [table] * len(ranges), [d] * len(ranges),
                                  [a for a, _ in ranges], [b for _, b in ranges]))
    else:
        parts = [_scan_chunk(table, d, a, b) for a, b in ranges]
    found = [item for part in parts for item in part]
    return ThresholdReport(table.k, d, horizon, [n for n, _ in found], dict(found))


def turan_scan(k: int, order: int, horizon: int,
               table: Optional[RegularPartitionTable] = None) -> ThresholdReport:
    """Exact order-2 or order-3 Turán verdicts for 1 <= m <= horizon."""
    if order not in (2, 3):
        raise ValueError("order must be 2 or 3")
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    need = horizon + order - 1
    if table is None:
        table = compute_table_pentagonal(k, need)
    if table.max_n < need:
        raise IndexError(f"table max_n={table.max_n} too small for horizon {horizon}")
    check = turan_order2 if order == 2 else turan_order3
    failures = [m for m in range(1, horizon + 1) if not check(table, m).holds]
    return ThresholdReport(table.k, order, horizon, failures, kind=f"turan{order}")


@dataclass
class ConvergenceReport:
    k: int
    d: int
    rows: List[Tuple[int, float, float]]

    def findings(self) -> List[str]:
        """Places where the distance to H_d failed to shrink (n >= 1000)."""
        notes = []
        tail = [r for r in self.rows if r[0] >= 1000]
        for (n0, s0, _), (n1, s1, _) in zip(tail, tail[1:]):
            if not s1 < s0:
                notes.append(f"sup distance did not decrease from n={n0} ({s0:.6g}) to n={n1} ({s1:.6g})")
        return notes

    def to_json(self) -> dict:
        return {
            "k": self.k, "d": self.d,
            "rows": [{"n": n, "sup_distance": s, "coefficient_deviation": c} for n, s, c in self.rows],
            "findings": self.findings(),
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["k", "d", "n", "sup_distance", "coefficient_deviation"])
        for n, s, c in self.rows:
            writer.writerow([self.k, self.d, n, repr(s), repr(c)])
        return buf.getvalue()


def convergence_scan(k: int, d: int, n_list: Sequence[int], params: Optional[AsymptoticParams] = None,
                     table: Optional[RegularPartitionTable] = None, grid: int = DEFAULT_GRID,
                     interval: Tuple[float, float] = DEFAULT_INTERVAL) -> ConvergenceReport:
    """Distance of the renormalized Jensen polynomial to H_d for each shift in ``n_list``."""
    if params is None:
        params = AsymptoticParams(k, d)
    ns = sorted(n_list)
    if not ns:
        raise ValueError("n_list is empty")
    if table is None:
        table = compute_table_pentagonal(k, ns[-1] + d)
    if table.max_n < ns[-1] + d:
        raise IndexError(f"table max_n={table.max_n} too small for n={ns[-1]}, d={d}")
    target = hermite_poly(d)
    precision = params.precision or DEFAULT_PRECISION
    rows = []
    for n in ns:
        approx = renormalized_jensen(table, d, n, params, precision)
        rows.append((n, sup_distance(approx, target, interval, grid), coefficient_deviation(approx, target)))
    return ConvergenceReport(k, d, rows)


def report_json(report, config: Optional[dict] = None) -> str:
    payload = {"config": config or {}, "report": report.to_json()}
    return json.dumps(payload, indent=2)

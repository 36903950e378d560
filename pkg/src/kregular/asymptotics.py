"""Asymptotics of p_k(n): Hagis' main term, Bessel I_1, and the A_k / delta_k sequences.

All floating work is done in mpmath at an explicit binary precision. Values
coming from partition tables enter as exact integers and are rounded once.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence

import mpmath

from .partitions import RegularPartitionTable

DEFAULT_PRECISION = 128
DEFAULT_DELTA_TRUNCATION = 40
BESSEL_SWITCH = 40
RESIDUAL_CSV_FIELDS = ("k", "d", "n", "j", "lhs", "model", "residual", "normalized")


def regular_m(k: int) -> Fraction:
    """m_k = (k - 1) / (24 k)."""
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    return Fraction(k - 1, 24 * k)


@dataclass(frozen=True)
class AsymptoticParams:
    k: int
    d: int = 1
    delta_truncation: int = DEFAULT_DELTA_TRUNCATION
    precision: int = DEFAULT_PRECISION

    def __post_init__(self):
        if self.k < 2:
            raise ValueError(f"k must be >= 2, got {self.k}")
        if self.d < 0:
            raise ValueError("d must be >= 0")
        if self.delta_truncation < 2:
            raise ValueError("delta_truncation must be >= 2")

    @property
    def m_k(self) -> Fraction:
        return regular_m(self.k)

    @property
    def a_terms(self) -> int:
        """Upper limit floor(3d/4) of the correction sum in A_k(n)."""
        return 3 * self.d // 4


def _mpq(q: Fraction) -> mpmath.mpf:
    return mpmath.mpf(q.numerator) / q.denominator


# -- Bessel I_1 --------------------------------------------------------------

def bessel_I1_series(x, precision: int = DEFAULT_PRECISION) -> mpmath.mpf:
    """Ascending series sum (x/2)^(2m+1) / (m! (m+1)!)."""
    with mpmath.workprec(precision + 16):
        x = mpmath.mpf(x)
        if x < 0:
            raise ValueError("bessel_I1 is only provided for x >= 0")
        if x == 0:
            return mpmath.mpf(0)
        half_sq = (x / 2) ** 2
        term = x / 2
        total = term
        eps = mpmath.ldexp(1, -(precision + 8))
        m = 0
        while True:
            term = term * half_sq / ((m + 1) * (m + 2))
            total += term
            m += 1
            if term < eps * total:
                break
    with mpmath.workprec(precision):
        return +total


def bessel_I1_asymptotic(x, precision: int = DEFAULT_PRECISION) -> mpmath.mpf:
    """Large-argument expansion e^x / sqrt(2 pi x) * sum (-1)^k a_k(1) / x^k.

    The divergent series is cut just before its smallest term, or once terms
    drop below the working precision.
    """
    with mpmath.workprec(precision + 16):
        x = mpmath.mpf(x)
        if x <= 0:
            raise ValueError("asymptotic expansion needs x > 0")
        eps = mpmath.ldexp(1, -(precision + 8))
        total = mpmath.mpf(1)
        term = mpmath.mpf(1)
        i = 1
        while True:
            # a_i(1) / a_{i-1}(1) = (4 - (2i - 1)^2) / (8 i)
            nxt = -term * (4 - (2 * i - 1) ** 2) / (8 * i * x)
            if abs(nxt) >= abs(term) or abs(nxt) < eps:
                if abs(nxt) < abs(term):
                    total += nxt
                break
            total += nxt
            term = nxt
            i += 1
        value = mpmath.exp(x) / mpmath.sqrt(2 * mpmath.pi * x) * total
    with mpmath.workprec(precision):
        return +value


def bessel_I1(x, precision: int = DEFAULT_PRECISION) -> mpmath.mpf:
    """Modified Bessel function I_1(x) for x >= 0."""
    if mpmath.mpf(x) < 0:
        raise ValueError("bessel_I1 is only provided for x >= 0")
    if mpmath.mpf(x) < BESSEL_SWITCH:
        return bessel_I1_series(x, precision)
    return bessel_I1_asymptotic(x, precision)


def bessel_self_test(precision: int = DEFAULT_PRECISION, lo: int = 20, hi: int = 60,
                     tol: float = 1e-10) -> float:
    """Largest relative disagreement between both I_1 routes on [lo, hi]."""
    worst = mpmath.mpf(0)
    with mpmath.workprec(precision):
        for x in range(lo, hi + 1):
            a = bessel_I1_series(x, precision)
            b = bessel_I1_asymptotic(x, precision)
            worst = max(worst, abs(a / b - 1))
    if worst >= tol:
        raise ArithmeticError(f"I_1 series and asymptotic routes disagree by {worst}")
    return float(worst)


# -- main terms --------------------------------------------------------------

def hagis_estimate(k: int, n: int, precision: int = DEFAULT_PRECISION) -> mpmath.mpf:
    """2 pi sqrt(m_k / (k (n + k m_k))) I_1(4 pi sqrt(m_k (n + k m_k)))."""
    if n < 1:
        raise ValueError("n must be >= 1")
    m = regular_m(k)
    shifted = n + k * m
    with mpmath.workprec(precision + 16):
        mq, sq = _mpq(m), _mpq(shifted)
        prefactor = 2 * mpmath.pi * mpmath.sqrt(mq / (k * sq))
        value = prefactor * bessel_I1(4 * mpmath.pi * mpmath.sqrt(mq * sq), precision + 16)
    with mpmath.workprec(precision):
        return +value


def A_k(n: int, params: AsymptoticParams, precision: Optional[int] = None) -> mpmath.mpf:
    """2 pi sqrt(m_k / n) + (3/4) sum_{r=1}^{floor(3d/4)} (-1)^r / (r n^r)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    precision = precision or params.precision
    # the correction sum is a rational number; keep it exact
    correction = sum((Fraction((-1) ** r, r * n ** r) for r in range(1, params.a_terms + 1)), Fraction(0))
    with mpmath.workprec(precision + 16):
        value = 2 * mpmath.pi * mpmath.sqrt(_mpq(params.m_k) / n) + _mpq(Fraction(3, 4) * correction)
    with mpmath.workprec(precision):
        return +value


def delta_k_squared(n: int, params: AsymptoticParams, precision: Optional[int] = None) -> mpmath.mpf:
    """-sum_{r=2}^{R} 4 pi sqrt(m_k) C(1/2, r) / n^(r - 1/2), truncated at R = delta_truncation."""
    if n < 1:
        raise ValueError("n must be >= 1")
    precision = precision or params.precision
    inner = Fraction(0)
    binom = Fraction(1, 2) * Fraction(-1, 2) / 2  # C(1/2, 2)
    for r in range(2, params.delta_truncation + 1):
        inner += binom / Fraction(n) ** (r - 1)
        binom = binom * (Fraction(1, 2) - r) / (r + 1)
    with mpmath.workprec(precision + 16):
        # n^(r - 1/2) = n^(r-1) * sqrt(n)
        value = -4 * mpmath.pi * mpmath.sqrt(_mpq(params.m_k)) * _mpq(inner) / mpmath.sqrt(n)
    if value <= 0:
        raise ArithmeticError(f"delta_k(n)^2 is not positive at n={n}: {value}")
    with mpmath.workprec(precision):
        return +value


def delta_k(n: int, params: AsymptoticParams, precision: Optional[int] = None) -> mpmath.mpf:
    precision = precision or params.precision
    sq = delta_k_squared(n, params, precision + 8)
    with mpmath.workprec(precision):
        return mpmath.sqrt(sq)


# -- log-quotient residuals --------------------------------------------------

@dataclass(frozen=True)
class LogQuotientResidual:
    k: int
    d: int
    n: int
    j: int
    lhs: mpmath.mpf
    model: mpmath.mpf
    residual: mpmath.mpf
    normalized: mpmath.mpf

    def as_row(self) -> dict:
        return {
            "k": self.k, "d": self.d, "n": self.n, "j": self.j,
            "lhs": mpmath.nstr(self.lhs, 30), "model": mpmath.nstr(self.model, 30),
            "residual": mpmath.nstr(self.residual, 20), "normalized": mpmath.nstr(self.normalized, 20),
        }


def log_quotient_residual(table: RegularPartitionTable, n: int, j: int,
                          params: AsymptoticParams) -> LogQuotientResidual:
    """log(p_k(n+j)/p_k(n)) - (A_k(n) j - delta_k(n)^2 j^2), plus that divided by delta_k(n)^d."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0 <= j <= params.d:
        raise ValueError(f"j must lie in 0..{params.d}")
    if n + j > table.max_n:
        raise IndexError(f"n + j = {n + j} exceeds table max_n = {table.max_n}")
    if table.k != params.k:
        raise ValueError("table and params disagree on k")
    prec = params.precision
    with mpmath.workprec(prec):
        ratio = mpmath.mpf(mpmath.libmp.from_rational(table[n + j], table[n], prec + 16, "n"))
        lhs = mpmath.log(ratio)
        a_val = A_k(n, params)
        d2 = delta_k_squared(n, params)
        model = a_val * j - d2 * j * j
        residual = lhs - model
        normalized = residual / mpmath.sqrt(d2) ** params.d
    return LogQuotientResidual(params.k, params.d, n, j, lhs, model, residual, normalized)


def residual_sweep(table: RegularPartitionTable, params: AsymptoticParams,
                   n_values: Iterable[int]) -> List[LogQuotientResidual]:
    return [log_quotient_residual(table, n, j, params)
            for n in n_values for j in range(params.d + 1)]


def residuals_to_csv(rows: Sequence[LogQuotientResidual], header: Optional[str] = None) -> str:
    buf = io.StringIO()
    if header:
        for line in header.splitlines():
            buf.write(f"# {line}\n")
    writer = csv.DictWriter(buf, fieldnames=RESIDUAL_CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row.as_row())
    return buf.getvalue()


def loglog_slope(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Least-squares slope of log|y| against log x."""
    with mpmath.workprec(64):
        lx = [mpmath.log(x) for x in xs]
        ly = [mpmath.log(abs(y)) for y in ys]
        mx, my = sum(lx) / len(lx), sum(ly) / len(ly)
        num = sum((a - mx) * (b - my) for a, b in zip(lx, ly))
        den = sum((a - mx) ** 2 for a in lx)
        return float(num / den)

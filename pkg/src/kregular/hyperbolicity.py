"""Exact hyperbolicity tests and Turán inequalities.

Two independent deciders are provided. ``is_hyperbolic_hermite`` checks that
the Hankel matrix of Newton power sums is positive semi-definite;
``is_hyperbolic_sturm`` counts distinct real roots with a Sturm chain. Both
work over Q with no floating point anywhere.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from .partitions import RegularPartitionTable
from .polynomials import ExactPolynomial, poly_gcd


class Verdict(str, enum.Enum):
    HYPERBOLIC = "Hyperbolic"
    NOT_HYPERBOLIC = "NotHyperbolic"


@dataclass(frozen=True)
class HankelReport:
    n: int
    newton_sums: Tuple[Fraction, ...]
    minors: Tuple[Fraction, ...]
    verdict: Verdict

    @property
    def hyperbolic(self) -> bool:
        return self.verdict is Verdict.HYPERBOLIC

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "newton_sums": [_qstr(s) for s in self.newton_sums],
            "minors": [_qstr(m) for m in self.minors],
            "verdict": self.verdict.value,
        }


@dataclass(frozen=True)
class TuranVerdict:
    order: int
    m: int
    lhs: int
    rhs: int

    @property
    def holds(self) -> bool:
        return self.lhs >= self.rhs

    def to_json(self) -> dict:
        return {"order": self.order, "m": self.m, "lhs": str(self.lhs), "rhs": str(self.rhs),
                "holds": self.holds}


def _qstr(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _require_nonconstant(f: ExactPolynomial) -> None:
    if f.is_zero():
        raise ValueError("zero polynomial")
    if f.degree < 1:
        raise ValueError("constant polynomial has no roots to test")


def newton_sums(f: ExactPolynomial) -> List[Fraction]:
    """Power sums S_0..S_{2n-2} of the roots of ``f`` (n = deg f)."""
    _require_nonconstant(f)
    n = f.degree
    g = f.monic()
    # e[i] is the coefficient of X^(n-i) in the monic polynomial
    e = [g[n - i] for i in range(n + 1)]
    sums = [Fraction(n)]
    for m in range(1, 2 * n - 1):
        acc = Fraction(m) * e[m] if m <= n else Fraction(0)
        for i in range(1, min(m, n + 1)):
            acc += e[i] * sums[m - i]
        sums.append(-acc)
    return sums


def _hankel(S: Sequence[Fraction]) -> List[List[Fraction]]:
    if len(S) % 2 == 0:
        raise ValueError(f"need 2n-1 power sums, got {len(S)}")
    n = (len(S) + 1) // 2
    return [[Fraction(S[i + j]) for j in range(n)] for i in range(n)]


def _bareiss_det(mat: List[List[Fraction]]) -> Fraction:
    """Determinant by fraction-free elimination with row pivoting."""
    a = [row[:] for row in mat]
    size = len(a)
    sign = 1
    prev = Fraction(1)
    for col in range(size - 1):
        pivot = next((r for r in range(col, size) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            sign = -sign
        for r in range(col + 1, size):
            for c in range(col + 1, size):
                a[r][c] = (a[r][c] * a[col][col] - a[r][col] * a[col][c]) / prev
        prev = a[col][col]
    return sign * a[size - 1][size - 1]


def hankel_minors(S: Sequence[Fraction]) -> List[Fraction]:
    """Leading principal minors Delta_1..Delta_n of the Hankel matrix of S."""
    h = _hankel(S)
    return [_bareiss_det([row[:i] for row in h[:i]]) for i in range(1, len(h) + 1)]


def is_psd(mat: Sequence[Sequence[Fraction]]) -> bool:
    """Exact positive semi-definiteness of a symmetric rational matrix.

    Symmetric elimination using diagonal pivots only: pick any positive
    diagonal entry and eliminate. A negative diagonal, or a zero diagonal
    whose row is not identically zero, rules out PSD.
    """
    a = [[Fraction(x) for x in row] for row in mat]
    active = list(range(len(a)))
    while active:
        pivot = next((i for i in active if a[i][i] > 0), None)
        if pivot is None:
            if any(a[i][i] < 0 for i in active):
                return False
            return all(a[i][j] == 0 for i in active for j in active)
        if any(a[i][i] < 0 for i in active):
            return False
        active.remove(pivot)
        p = a[pivot][pivot]
        for i in active:
            f = a[i][pivot] / p
            if f:
                for j in active:
                    a[i][j] -= f * a[pivot][j]
    return True


def is_hyperbolic_hermite(f: ExactPolynomial) -> HankelReport:
    S = newton_sums(f)
    minors = hankel_minors(S)
    verdict = Verdict.HYPERBOLIC if is_psd(_hankel(S)) else Verdict.NOT_HYPERBOLIC
    return HankelReport(f.degree, tuple(S), tuple(minors), verdict)


def squarefree_part(f: ExactPolynomial) -> ExactPolynomial:
    g = poly_gcd(f, f.derivative())
    return (f // g).monic()


def sturm_chain(f: ExactPolynomial) -> List[ExactPolynomial]:
    chain = [f, f.derivative()]
    while not chain[-1].is_zero():
        chain.append(-(chain[-2] % chain[-1]))
    return chain[:-1]


def _sign_changes(signs: Sequence[int]) -> int:
    nz = [s for s in signs if s]
    return sum(1 for a, b in zip(nz, nz[1:]) if a != b)


def _sign(q: Fraction) -> int:
    return (q > 0) - (q < 0)


def sturm_real_root_count(f: ExactPolynomial) -> int:
    """Number of distinct real roots of ``f``."""
    if f.is_zero():
        raise ValueError("zero polynomial")
    if f.degree < 1:
        return 0
    chain = sturm_chain(squarefree_part(f))
    at_pos_inf = [_sign(p.leading) for p in chain]
    at_neg_inf = [_sign(p.leading) * (-1) ** p.degree for p in chain]
    return _sign_changes(at_neg_inf) - _sign_changes(at_pos_inf)


def is_hyperbolic_sturm(f: ExactPolynomial) -> bool:
    if f.is_zero():
        raise ValueError("zero polynomial")
    sf = squarefree_part(f)
    return sturm_real_root_count(sf) == sf.degree


# -- Turán inequalities on sequences -----------------------------------------

def turan_order2(table: RegularPartitionTable, m: int) -> TuranVerdict:
    """a_m^2 >= a_{m-1} a_{m+1}."""
    if m < 1 or m + 1 > table.max_n:
        raise IndexError(f"m={m} needs 1 <= m and m+1 <= {table.max_n}")
    a0, a1, a2 = table[m - 1], table[m], table[m + 1]
    return TuranVerdict(2, m, a1 * a1, a0 * a2)


def turan_order3(table: RegularPartitionTable, m: int) -> TuranVerdict:
    """4 (a_m^2 - a_{m-1}a_{m+1})(a_{m+1}^2 - a_m a_{m+2}) >= (a_m a_{m+1} - a_{m-1} a_{m+2})^2."""
    if m < 1 or m + 2 > table.max_n:
        raise IndexError(f"m={m} needs 1 <= m and m+2 <= {table.max_n}")
    a0, a1, a2, a3 = (table[m + i] for i in range(-1, 3))
    lhs = 4 * (a1 * a1 - a0 * a2) * (a2 * a2 - a1 * a3)
    rhs = (a1 * a2 - a0 * a3) ** 2
    return TuranVerdict(3, m, lhs, rhs)

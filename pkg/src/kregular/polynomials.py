"""Dense polynomials over Q and over arbitrary-precision floats.

Also builds the three polynomial families used throughout the package:
Jensen polynomials of a table, Hermite polynomials in the ``exp(-t^2 + Xt)``
normalization, and the renormalized Jensen polynomials that converge to them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, List, Sequence, Tuple, Union

import mpmath

from .partitions import RegularPartitionTable

Rational = Union[int, Fraction]
DEFAULT_PRECISION = 128


def _trim(coeffs: Iterable[Rational]) -> Tuple[Fraction, ...]:
    out = [Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class ExactPolynomial:
    """Polynomial with exact rational coefficients, ``coeffs[i]`` multiplies ``X**i``.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    coeffs: Tuple[Fraction, ...]

    def __init__(self, coeffs: Iterable[Rational] = ()):
        object.__setattr__(self, "coeffs", _trim(coeffs))

    @classmethod
    def monomial(cls, degree: int, c: Rational = 1) -> "ExactPolynomial":
        return cls([0] * degree + [c])

    @classmethod
    def constant(cls, c: Rational) -> "ExactPolynomial":
        return cls([c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = ExactPolynomial.constant(other)
        if not isinstance(other, ExactPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"ExactPolynomial({[str(c) for c in self.coeffs]})"

    def _coerce(self, other) -> "ExactPolynomial":
        if isinstance(other, ExactPolynomial):
            return other
        return ExactPolynomial.constant(other)

    def __add__(self, other) -> "ExactPolynomial":
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return ExactPolynomial(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> "ExactPolynomial":
        return ExactPolynomial(-c for c in self.coeffs)

    def __sub__(self, other) -> "ExactPolynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "ExactPolynomial":
        return self._coerce(other) - self

    def __mul__(self, other) -> "ExactPolynomial":
        if isinstance(other, (int, Fraction)):
            return ExactPolynomial(c * other for c in self.coeffs)
        other = self._coerce(other)
        if self.is_zero() or other.is_zero():
            return ExactPolynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return ExactPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "ExactPolynomial":
        if e < 0:
            raise ValueError("negative exponent")
        result = ExactPolynomial.constant(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def divmod(self, divisor: "ExactPolynomial") -> Tuple["ExactPolynomial", "ExactPolynomial"]:
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dd = divisor.degree
        lead = divisor.leading
        if len(rem) - 1 < dd:
            return ExactPolynomial(), self
        quot = [Fraction(0)] * (len(rem) - dd)
        for shift in range(len(rem) - 1 - dd, -1, -1):
            c = rem[shift + dd] / lead
            quot[shift] = c
            if c:
                for i, b in enumerate(divisor.coeffs):
                    rem[shift + i] -= c * b
        return ExactPolynomial(quot), ExactPolynomial(rem[:dd])

    def __floordiv__(self, divisor: "ExactPolynomial") -> "ExactPolynomial":
        return self.divmod(divisor)[0]

    def __mod__(self, divisor: "ExactPolynomial") -> "ExactPolynomial":
        return self.divmod(divisor)[1]

    def monic(self) -> "ExactPolynomial":
        if self.is_zero():
            raise ZeroDivisionError("zero polynomial has no monic normalization")
        lead = self.leading
        return ExactPolynomial(c / lead for c in self.coeffs)

    def derivative(self) -> "ExactPolynomial":
        return ExactPolynomial(i * c for i, c in enumerate(self.coeffs) if i)

    def __call__(self, x):
        """Horner evaluation; exact for int/Fraction arguments."""
        if isinstance(x, float):
            x = Fraction(x)
        acc = 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose_affine(self, scale: Rational, shift: Rational) -> "ExactPolynomial":
        """Exact coefficients of ``self(scale * X + shift)``."""
        scale, shift = Fraction(scale), Fraction(shift)
        d = self.degree
        out = [Fraction(0)] * (d + 1)
        # (scale X + shift)^j = sum_i C(j,i) scale^i shift^(j-i) X^i
        shift_pows = [Fraction(1)]
        for _ in range(d):
            shift_pows.append(shift_pows[-1] * shift)
        scale_pows = [Fraction(1)]
        for _ in range(d):
            scale_pows.append(scale_pows[-1] * scale)
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            for i in range(j + 1):
                out[i] += c * comb(j, i) * scale_pows[i] * shift_pows[j - i]
        return ExactPolynomial(out)

    def to_json(self) -> dict:
        return {"coeffs": [f"{c.numerator}/{c.denominator}" for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "ExactPolynomial":
        return cls(Fraction(s) for s in data["coeffs"])


def poly_gcd(a: ExactPolynomial, b: ExactPolynomial) -> ExactPolynomial:
    """Monic gcd over Q (zero if both inputs are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a if a.is_zero() else a.monic()


@dataclass(frozen=True)
class FloatPolynomial:
    """Polynomial with mpmath coefficients held at ``precision`` bits."""

    coeffs: Tuple[mpmath.mpf, ...]
    precision: int = DEFAULT_PRECISION

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def from_exact(cls, poly: ExactPolynomial, precision: int = DEFAULT_PRECISION) -> "FloatPolynomial":
        with mpmath.workprec(precision):
            coeffs = tuple(rational_to_mpf(c, precision) for c in poly.coeffs)
        return cls(coeffs, precision)

    def __call__(self, x) -> mpmath.mpf:
        with mpmath.workprec(self.precision):
            x = mpmath.mpf(x)
            acc = mpmath.mpf(0)
            for c in reversed(self.coeffs):
                acc = acc * x + c
            return +acc

    def __getitem__(self, i: int) -> mpmath.mpf:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else mpmath.mpf(0)


def rational_to_mpf(q: Rational, precision: int) -> mpmath.mpf:
    """Correctly rounded binary value of an exact rational."""
    q = Fraction(q)
    with mpmath.workprec(precision):
        return mpmath.mpf(mpmath.libmp.from_rational(q.numerator, q.denominator, precision, "n"))


def to_fraction(x: mpmath.mpf) -> Fraction:
    """Exact rational value of a binary floating number."""
    if not isinstance(x, mpmath.mpf):
        x = mpmath.mpf(x)
    p, q = mpmath.libmp.to_rational(x._mpf_)
    return Fraction(int(p), int(q))


def jensen_poly(table: RegularPartitionTable, d: int, n: int) -> ExactPolynomial:
    """``sum_j C(d, j) p_k(n + j) X^j``."""
    if d < 0:
        raise ValueError("degree must be >= 0")
    if n < 0 or n + d > table.max_n:
        raise IndexError(f"shift n={n}, degree d={d} exceed table range 0..{table.max_n}")
    return ExactPolynomial(comb(d, j) * table[n + j] for j in range(d + 1))


def hermite_poly(d: int) -> ExactPolynomial:
    """H_d with ``exp(-t^2 + X t) = sum H_d(X) t^d / d!``."""
    if d < 0:
        raise ValueError("degree must be >= 0")
    x = ExactPolynomial.monomial(1)
    prev, cur = ExactPolynomial.constant(1), x
    if d == 0:
        return prev
    for i in range(1, d):
        prev, cur = cur, x * cur - prev * (2 * i)
    return cur


def renormalized_jensen(table: RegularPartitionTable, d: int, n: int, params,
                        precision: int = DEFAULT_PRECISION) -> FloatPolynomial:
    """Jensen polynomial at shift ``n`` rescaled so that it tends to ``H_d``.

    ``A_k(n)``, ``delta_k(n)`` and ``exp(A_k(n))`` are rounded to binary rationals
    at ``precision`` bits; the affine substitution and prefactor are then applied
    exactly and the result is rounded once.
    """
    from . import asymptotics

    if n < 1:
        raise ValueError("renormalization needs n >= 1")
    poly = jensen_poly(table, d, n)
    guard = precision + 32
    with mpmath.workprec(guard):
        a_val = asymptotics.A_k(n, params, precision=guard)
        delta = asymptotics.delta_k(n, params, precision=guard)
        delta_q = to_fraction(_round(delta, precision))
        exp_a_q = to_fraction(_round(mpmath.exp(a_val), precision))
    composed = poly.compose_affine(delta_q / exp_a_q, Fraction(-1) / exp_a_q)
    factor = 1 / (delta_q ** d * table[n])
    return FloatPolynomial.from_exact(composed * factor, precision)


def _round(x: mpmath.mpf, precision: int) -> mpmath.mpf:
    with mpmath.workprec(precision):
        return +x


def sup_distance(a: FloatPolynomial, b: ExactPolynomial, interval: Sequence[float] = (-5.0, 5.0),
                 grid: int = 512) -> float:
    """Max of |a(x) - b(x)| over ``grid`` equispaced points of ``interval``.

    The binary coefficients of ``a`` are exact rationals, so the difference is
    formed exactly at each rational grid point and rounded once.
    """
    lo, hi = interval
    if not lo < hi:
        raise ValueError("interval must satisfy lo < hi")
    if grid < 2:
        raise ValueError("grid must have at least 2 points")
    lo_q, hi_q = Fraction(lo), Fraction(hi)
    diff = ExactPolynomial(to_fraction(c) for c in a.coeffs) - b
    worst = max(abs(diff(lo_q + (hi_q - lo_q) * Fraction(i, grid - 1))) for i in range(grid))
    return float(worst)


def coefficient_deviation(a: FloatPolynomial, b: ExactPolynomial) -> float:
    """Largest absolute coefficient difference between ``a`` and ``b``."""
    n = max(a.degree, b.degree) + 1
    with mpmath.workprec(a.precision):
        return float(max((abs(a[i] - mpmath.mpf(b[i].numerator) / b[i].denominator) for i in range(n)),
                         default=mpmath.mpf(0)))


import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from kregular.hyperbolicity import (
    Verdict,
    hankel_minors,
    is_hyperbolic_hermite,
    is_hyperbolic_sturm,
    is_psd,
    newton_sums,
    squarefree_part,
    sturm_real_root_count,
    turan_order2,
    turan_order3,
)
from kregular.partitions import compute_table_pentagonal, from_sequence, unrestricted_table
from kregular.polynomials import ExactPolynomial, hermite_poly, jensen_poly

X = ExactPolynomial.monomial(1)
SEED = 20240611


def power_sums_bruteforce(roots, count):
    return [sum(Fraction(r) ** m for r in roots) for m in range(count)]


def test_newton_sums_examples():
    assert newton_sums(X ** 2 - 1) == [2, 0, 2]
    assert newton_sums(X ** 2 + 1) == [2, 0, -2]
    assert newton_sums((1 + X) ** 3) == [3, -3, 3, -3, 3]


@settings(max_examples=60, deadline=None)
@given(st.lists(st.fractions(min_value=-6, max_value=6, max_denominator=4), min_size=1, max_size=6),
       st.integers(-5, 5).filter(bool))
def test_newton_sums_match_roots(roots, lead):
    f = ExactPolynomial.constant(lead)
    for r in roots:
        f = f * (X - r)
    n = len(roots)
    S = newton_sums(f)
    assert S == power_sums_bruteforce(roots, 2 * n - 1)
    assert S[0] == n
    if n >= 2:
        assert S[1] == -f[n - 1] / f[n]


def test_newton_sums_rejects_constants():
    for f in (ExactPolynomial(), ExactPolynomial.constant(3)):
        with pytest.raises(ValueError):
            newton_sums(f)


def test_hankel_minor_examples():
    assert hankel_minors([2, 0, 2]) == [2, 4]
    assert hankel_minors([2, 0, -2]) == [2, -4]
    assert hankel_minors([3, -3, 3, -3, 3]) == [3, 0, 0]
    with pytest.raises(ValueError):
        hankel_minors([1, 2])


def test_hermite_examples():
    assert is_hyperbolic_hermite(X ** 2 + 1).verdict is Verdict.NOT_HYPERBOLIC
    report = is_hyperbolic_hermite((1 + X) ** 3)
    assert report.verdict is Verdict.HYPERBOLIC
    assert report.minors[0] == 3


def test_psd_needs_more_than_leading_minors():
    # leading minors are (0, 0) but the form is indefinite
    assert not is_psd([[0, 1], [1, 0]])
    assert is_psd([[0, 0], [0, 3]])
    assert not is_psd([[1, 0, 0], [0, 0, 0], [0, 0, -1]])
    assert is_psd([[2, 2], [2, 2]])


def test_sturm_examples():
    assert sturm_real_root_count(X ** 2 - 1) == 2
    assert sturm_real_root_count(X ** 2 + 1) == 0
    assert sturm_real_root_count(X ** 3 - 6 * X) == 3
    assert is_hyperbolic_sturm((1 + X) ** 3)
    assert not is_hyperbolic_sturm(X ** 4 + 1)
    assert is_hyperbolic_sturm(X ** 3 - X)
    assert squarefree_part((X - 2) ** 3 * (X + 1) ** 2) == (X - 2) * (X + 1)
    with pytest.raises(ValueError):
        sturm_real_root_count(ExactPolynomial())


def random_poly(rng, inject_square=False):
    degree = rng.randint(1, 6)
    if inject_square and degree >= 2:
        # square of a random factor times a random cofactor, capped at degree 6
        base_deg = rng.randint(1, degree // 2)
        base = ExactPolynomial([rng.randint(-5, 5) for _ in range(base_deg)] + [rng.choice([-2, -1, 1, 2])])
        rest_deg = degree - 2 * base_deg
        rest = ExactPolynomial([rng.randint(-5, 5) for _ in range(rest_deg)] + [rng.choice([-3, -1, 1, 3])])
        return base * base * rest
    coeffs = [rng.randint(-20, 20) for _ in range(degree)] + [rng.choice([c for c in range(-20, 21) if c])]
    return ExactPolynomial(coeffs)


def test_hermite_sturm_equivalence_random():
    rng = random.Random(SEED)
    disagreements = []
    for i in range(1000):
        f = random_poly(rng, inject_square=(i % 4 == 0))
        if f.degree < 1:
            continue
        if is_hyperbolic_hermite(f).hyperbolic != is_hyperbolic_sturm(f):
            disagreements.append(f)
    assert not disagreements


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=1, max_size=5), st.integers(0, 1))
def test_real_rooted_products(roots, add_complex_pair):
    f = ExactPolynomial.constant(1)
    for r in roots:
        f = f * (X - r)
    if add_complex_pair:
        f = f * (X ** 2 + 1)
    expected = not add_complex_pair
    assert is_hyperbolic_hermite(f).hyperbolic is expected
    assert is_hyperbolic_sturm(f) is expected


def test_hermite_polys_are_hyperbolic():
    for d in range(1, 9):
        assert is_hyperbolic_hermite(hermite_poly(d)).hyperbolic


def test_turan_order2_examples():
    table = compute_table_pentagonal(2, 10)
    v = turan_order2(table, 1)
    assert (v.lhs, v.rhs, v.holds) == (1, 1, True)
    v = turan_order2(table, 3)
    assert (v.lhs, v.rhs, v.holds) == (4, 2, True)
    assert turan_order2(from_sequence([5] * 6), 2).holds
    with pytest.raises(IndexError):
        turan_order2(table, 10)


def test_turan_order3_examples():
    const = from_sequence([3] * 8)
    v = turan_order3(const, 2)
    assert v.lhs == v.rhs == 0 and v.holds
    geometric = from_sequence([2 ** i for i in range(10)])
    for m in range(1, 8):
        v = turan_order3(geometric, m)
        assert v.lhs == v.rhs == 0
    with pytest.raises(IndexError):
        turan_order3(geometric, 8)


@pytest.mark.parametrize("k", [2, 3, 5])
def test_quadratic_jensen_matches_log_concavity(k):
    table = compute_table_pentagonal(k, 400)
    for n in range(0, 398):
        J = jensen_poly(table, 2, n)
        disc = J[1] ** 2 - 4 * J[0] * J[2]
        assert disc == 4 * (table[n + 1] ** 2 - table[n] * table[n + 2])
        assert is_hyperbolic_hermite(J).hyperbolic == turan_order2(table, n + 1).holds


def test_cubic_jensen_against_turan_conditions():
    """Report any n where the d=3 verdict differs from order-2 and order-3 Turán together."""
    table = unrestricted_table(310)
    divergences = []
    for n in range(1, 301):
        hyper = is_hyperbolic_hermite(jensen_poly(table, 3, n)).hyperbolic
        turan = (turan_order2(table, n + 1).holds and turan_order2(table, n + 2).holds
                 and turan_order3(table, n + 1).holds)
        if hyper != turan:
            divergences.append(n)
    assert divergences == []


def test_report_json_uses_strings():
    report = is_hyperbolic_hermite(jensen_poly(compute_table_pentagonal(2, 20), 2, 1))
    data = json.loads(json.dumps(report.to_json()))
    assert data["verdict"] == "NotHyperbolic"
    assert data["minors"] == ["2", "-1"]
    v = turan_order2(compute_table_pentagonal(2, 10), 3).to_json()
    assert v == {"order": 2, "m": 3, "lhs": "4", "rhs": "2", "holds": True}

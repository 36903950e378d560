import json

import pytest

from kregular.asymptotics import AsymptoticParams
from kregular.hyperbolicity import is_hyperbolic_sturm
from kregular.partitions import compute_table_pentagonal, from_sequence, unrestricted_table
from kregular.polynomials import jensen_poly
from kregular.survey import ConvergenceReport, convergence_scan, threshold_scan, turan_scan

from conftest import big_table

# last failing shift of J^{3,n} for p(n), first observed by an exact scan to n = 300
P_CUBIC_LAST_FAILURE = 93
# last failing index of p(n)^2 >= p(n-1) p(n+1)
P_LOG_CONCAVE_LAST_FAILURE = 25
# frozen regression value: coefficient deviation of the renormalized J^{4,10^5} for p_3 from H_4
K3_D4_COEFF_DEVIATION = 1.3212656647812457


def test_degree_one_never_fails():
    report = threshold_scan(2, 1, 100)
    assert report.failures == []
    assert report.empirical_threshold == 1
    assert report.conclusive


def test_cubic_scan_for_p():
    horizon = 300
    table = unrestricted_table(horizon + 3)
    report = threshold_scan(table.k, 3, horizon, table=table)
    assert report.failures[-1] == P_CUBIC_LAST_FAILURE
    assert report.empirical_threshold == P_CUBIC_LAST_FAILURE + 1
    for n in report.failures:
        assert not report.audits[n].hyperbolic
        assert not is_hyperbolic_sturm(jensen_poly(table, 3, n))
    # clean tail 207 of 300 is short of the 90% rule
    assert not report.conclusive
    assert report.to_json()["status"] == "INCONCLUSIVE"


def test_parallel_scan_is_deterministic():
    table = compute_table_pentagonal(3, 1203)
    serial = threshold_scan(3, 3, 1200, parallelism=1, table=table)
    parallel = threshold_scan(3, 3, 1200, parallelism=2, table=table)
    assert serial.to_json() == parallel.to_json()


def test_quadratic_scan_matches_turan_shifted():
    horizon = 3000
    table = compute_table_pentagonal(2, horizon + 2)
    jensen = threshold_scan(2, 2, horizon, table=table)
    turan = turan_scan(2, 2, horizon + 1, table=table)
    assert [m - 1 for m in turan.failures if m >= 2] == jensen.failures
    tail = range(jensen.empirical_threshold, horizon + 1)
    assert not set(tail) & set(jensen.failures)


def test_turan_scan_for_p():
    report = turan_scan(250, 2, 200)
    assert report.failures[-1] == P_LOG_CONCAVE_LAST_FAILURE
    order3 = turan_scan(400, 3, 300)
    assert order3.failures[-1] == P_CUBIC_LAST_FAILURE + 1


def test_constant_sequence_has_no_failures():
    table = from_sequence([4] * 40)
    assert turan_scan(2, 2, 30, table=table).failures == []
    assert turan_scan(2, 3, 30, table=table).failures == []
    assert threshold_scan(2, 3, 30, table=table).failures == []


def test_scan_range_errors():
    table = compute_table_pentagonal(2, 50)
    with pytest.raises(IndexError):
        threshold_scan(2, 3, 48, table=table)
    with pytest.raises(IndexError):
        turan_scan(2, 3, 50, table=table)
    with pytest.raises(ValueError):
        threshold_scan(2, 2, 0)


def test_report_serialization():
    report = threshold_scan(2, 2, 200)
    data = json.loads(json.dumps(report.to_json()))
    assert data["failures"] == report.failures
    assert set(data["audits"]) == {str(n) for n in report.failures}
    assert data["audits"]["1"]["verdict"] == "NotHyperbolic"
    lines = report.to_csv().splitlines()
    assert lines[0] == "k,d,n,verdict"
    assert len(lines) == len(report.failures) + 1


def test_convergence_degree_zero():
    report = convergence_scan(2, 0, [100, 1000], AsymptoticParams(2, 0))
    assert [(s, c) for _, s, c in report.rows] == [(0.0, 0.0), (0.0, 0.0)]


def test_convergence_quadratic_improves():
    table = big_table(2, 100_010)
    report = convergence_scan(2, 2, [100_000, 1000], table=table)
    assert [n for n, _, _ in report.rows] == [1000, 100_000]
    assert report.rows[1][1] < report.rows[0][1]
    assert report.findings() == []


def test_convergence_k3_d4_regression():
    table = big_table(3, 100_010)
    report = convergence_scan(3, 4, [100_000], table=table)
    assert report.rows[0][2] == pytest.approx(K3_D4_COEFF_DEVIATION, rel=1e-9)


def test_convergence_findings_flag_regressions():
    report = ConvergenceReport(2, 3, [(1000, 0.5, 0.1), (10_000, 0.7, 0.1)])
    assert len(report.findings()) == 1
    assert "did not decrease" in report.to_json()["findings"][0]
    assert report.to_csv().splitlines()[0] == "k,d,n,sup_distance,coefficient_deviation"

import functools

import pytest

from kregular.partitions import compute_table_pentagonal


@functools.lru_cache(maxsize=None)
def big_table(k, max_n):
    return compute_table_pentagonal(k, max_n)


@pytest.fixture(scope="session")
def table_k2():
    return big_table(2, 100_010)


@pytest.fixture(scope="session")
def table_k3():
    return big_table(3, 100_010)


ACCEPTANCE_LINES = []


def record_acceptance(label, ok, detail=""):
    ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {label}{': ' + detail if detail else ''}")
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

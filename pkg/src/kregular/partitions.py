"""Exact k-regular partition numbers.

``p_k(n)`` counts partitions of ``n`` with no part divisible by ``k``. Its
generating function is ``E(q^k) / E(q)`` where ``E(q) = prod (1 - q^n)``, so
multiplying through by ``E(q)`` gives a sparse recurrence over the pentagonal
numbers. Two slower routes (a coin-change DP and brute-force enumeration) are
kept as independent checks.
"""

from __future__ import annotations

import enum
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

ENUMERATION_GUARD = 40
CACHE_VERSION = "v1"


class Method(str, enum.Enum):
    PENTAGONAL = "PentagonalRecurrence"
    DP = "PartDP"
    ENUMERATION = "Enumeration"


@dataclass(frozen=True)
class RegularPartitionTable:
    k: int
    max_n: int
    values: Tuple[int, ...]
    method: Method

    def __post_init__(self):
        if len(self.values) != self.max_n + 1:
            raise ValueError("values must hold exactly max_n + 1 entries")

    def __getitem__(self, n: int) -> int:
        if n < 0 or n > self.max_n:
            raise IndexError(f"n={n} outside table range 0..{self.max_n}")
        return self.values[n]

    def __len__(self) -> int:
        return len(self.values)


PentagonalSupport = List[Tuple[int, int]]


def _check_k(k: int) -> None:
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")


def pentagonal_series(bound: int) -> PentagonalSupport:
    """Nonzero coefficients ``(index, sign)`` of ``prod_{n>=1} (1 - q^n)`` up to ``bound``."""
    if bound < 0:
        raise ValueError("bound must be >= 0")
    support = [(0, 1)]
    j = 1
    while True:
        sign = -1 if j % 2 else 1
        lo = j * (3 * j - 1) // 2
        hi = j * (3 * j + 1) // 2
        if lo > bound:
            break
        support.append((lo, sign))
        if hi <= bound:
            support.append((hi, sign))
        j += 1
    return support


def compute_table_pentagonal(k: int, max_n: int) -> RegularPartitionTable:
    _check_k(k)
    if max_n < 0:
        raise ValueError("max_n must be >= 0")
    support = pentagonal_series(max_n)
    plus = [m for m, s in support[1:] if s > 0]
    minus = [m for m, s in support[1:] if s < 0]
    # coefficients of E(q^k): the same support dilated by k
    dilated = [0] * (max_n + 1)
    for m, s in pentagonal_series(max_n // k):
        dilated[m * k] = s

    values: List[int] = [0] * (max_n + 1)
    for n in range(max_n + 1):
        acc = dilated[n]
        # p(n) = c(n) - sum sign(m) p(n-m): minus-signed terms are added back
        for m in minus:
            if m > n:
                break
            acc += values[n - m]
        for m in plus:
            if m > n:
                break
            acc -= values[n - m]
        values[n] = acc
    return RegularPartitionTable(k, max_n, tuple(values), Method.PENTAGONAL)


def compute_table_dp(k: int, max_n: int) -> RegularPartitionTable:
    _check_k(k)
    if max_n < 0:
        raise ValueError("max_n must be >= 0")
    values = [1] + [0] * max_n
    for part in range(1, max_n + 1):
        if part % k == 0:
            continue
        for n in range(part, max_n + 1):
            values[n] += values[n - part]
    return RegularPartitionTable(k, max_n, tuple(values), Method.DP)


def enumerate_pk(k: int, n: int, guard: int = ENUMERATION_GUARD) -> int:
    """Count k-regular partitions of ``n`` by explicit backtracking."""
    _check_k(k)
    if n < 0:
        raise ValueError("n must be >= 0")
    if n > guard:
        raise ValueError(f"enumeration is exponential; n={n} exceeds guard {guard}")

    def count(remaining: int, largest: int) -> int:
        if remaining == 0:
            return 1
        total = 0
        for part in range(min(remaining, largest), 0, -1):
            if part % k:
                total += count(remaining - part, part)
        return total

    return count(n, n)


def compute_table_enumeration(k: int, max_n: int, guard: int = ENUMERATION_GUARD) -> RegularPartitionTable:
    values = tuple(enumerate_pk(k, n, guard) for n in range(max_n + 1))
    return RegularPartitionTable(k, max_n, values, Method.ENUMERATION)


def unrestricted_p(n: int, cache: Optional[RegularPartitionTable] = None) -> int:
    """Ordinary partition number p(n), read off a k-regular table with k > n.

    No part of a partition of ``n`` can be a multiple of ``k`` once ``k > n``.
    A supplied ``cache`` is used when it covers ``n`` and has ``k > n``.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if cache is not None and cache.k > n and cache.max_n >= n:
        return cache[n]
    return compute_table_pentagonal(max(2, n + 1), n)[n]


def unrestricted_table(max_n: int) -> RegularPartitionTable:
    """Table of p(0..max_n) built as a k-regular table with k = max_n + 1."""
    return compute_table_pentagonal(max(2, max_n + 1), max_n)


_BUILDERS = {
    Method.PENTAGONAL: compute_table_pentagonal,
    Method.DP: compute_table_dp,
    Method.ENUMERATION: compute_table_enumeration,
}


def compute_table(k: int, max_n: int, method: Method = Method.PENTAGONAL) -> RegularPartitionTable:
    return _BUILDERS[Method(method)](k, max_n)


# -- cache files -------------------------------------------------------------

def cache_path(cache_dir: os.PathLike, k: int, max_n: int, method: Method = Method.PENTAGONAL) -> Path:
    return Path(cache_dir) / f"pk_k{k}_n{max_n}_{Method(method).value}.txt"


def write_table(table: RegularPartitionTable, path: os.PathLike) -> Path:
    """Write ``table`` in the textual cache format, atomically."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [f"pk-table {CACHE_VERSION} k={table.k} max_n={table.max_n} method={table.method.value}"]
    lines.extend(f"{n} {v}" for n, v in enumerate(table.values))
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write("\n".join(lines) + "\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def read_table(path: os.PathLike) -> RegularPartitionTable:
    with open(path) as fh:
        header = fh.readline().split()
        if len(header) != 5 or header[0] != "pk-table" or header[1] != CACHE_VERSION:
            raise ValueError(f"{path}: not a pk-table {CACHE_VERSION} file")
        fields = dict(item.split("=", 1) for item in header[2:])
        k, max_n = int(fields["k"]), int(fields["max_n"])
        method = Method(fields["method"])
        values = []
        for expected, line in enumerate(fh):
            idx, val = line.split()
            if int(idx) != expected:
                raise ValueError(f"{path}: index {idx} out of order")
            values.append(int(val))
    return RegularPartitionTable(k, max_n, tuple(values), method)


def _find_cached(cache_dir: Path, k: int, max_n: int, method: Method) -> Optional[RegularPartitionTable]:
    """Return the smallest cached table for (k, method) covering ``max_n``."""
    best: Optional[Tuple[int, Path]] = None
    for candidate in cache_dir.glob(f"pk_k{k}_n*_{method.value}.txt"):
        try:
            size = int(candidate.name.split("_n", 1)[1].split("_", 1)[0])
        except ValueError:
            continue
        if size >= max_n and (best is None or size < best[0]):
            best = (size, candidate)
    if best is None:
        return None
    return read_table(best[1])


def load_or_build(k: int, max_n: int, cache_dir: Optional[os.PathLike] = None,
                  method: Method = Method.PENTAGONAL) -> Tuple[RegularPartitionTable, bool]:
    """Return ``(table, cache_hit)``; tables are truncated to ``max_n`` on a hit."""
    method = Method(method)
    if cache_dir is not None:
        cached = _find_cached(Path(cache_dir), k, max_n, method)
        if cached is not None:
            if cached.max_n != max_n:
                cached = RegularPartitionTable(k, max_n, cached.values[: max_n + 1], method)
            return cached, True
    table = compute_table(k, max_n, method)
    if cache_dir is not None:
        write_table(table, cache_path(cache_dir, k, max_n, method))
    return table, False


def truncate(table: RegularPartitionTable, max_n: int) -> RegularPartitionTable:
    if max_n > table.max_n:
        raise ValueError("cannot extend a table by truncation")
    return RegularPartitionTable(table.k, max_n, table.values[: max_n + 1], table.method)


def from_sequence(values: Sequence[int], k: int = 2, method: Method = Method.ENUMERATION) -> RegularPartitionTable:
    """Wrap an arbitrary integer sequence as a table (synthetic inputs for tests and scans)."""
    return RegularPartitionTable(k, len(values) - 1, tuple(int(v) for v in values), Method(method))

"""Initial segments of the binary ordering and the edge function ``F``.

``F(k)`` is the number of cube edges inside the first ``k`` vertices of the
binary ordering.  Appending vertex ``k`` to the segment ``[0, k)`` adds one
edge per set bit of ``k`` (its neighbours below it are exactly ``k`` with one
set bit cleared), hence ``F(k + 1) - F(k) = popcount(k)``.  The table built
here uses that increment and is checked against direct edge counts of the
segments before it is handed out.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .cube import Family, _check_dimension, internal_edges
from .errors import InputError

DEFAULT_TABLE_SIZE = 1 << 20
ORACLE_DIMENSION = 12


def initial_segment(n: int, k: int) -> Family:
    """The ``k`` smallest subsets of ``[n]`` in binary order (codes ``0..k-1``)."""
    _check_dimension(n)
    if not 0 <= k <= 1 << n:
        raise InputError(f"segment size {k} outside [0, 2**{n}]")
    return Family(n, (1 << k) - 1)


def popcount_prefix(k: int) -> int:
    """``sum(popcount(i) for i in range(k))`` in O(log k) steps.

    Bit ``b`` is set in exactly ``2**b`` of every ``2**(b+1)`` consecutive
    integers, which gives the count per bit position.
    """
    if k < 0:
        raise InputError(f"F is defined for k >= 0, got {k}")
    total = 0
    b = 0
    while (1 << b) < k:
        period = 1 << (b + 1)
        full, rest = divmod(k, period)
        total += full * (1 << b) + max(0, rest - (1 << b))
        b += 1
    return total


@dataclass(frozen=True, eq=False)
class FTable:
    """``F(0) .. F(K)`` as a read-only int64 array."""

    values: np.ndarray

    @property
    def limit(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, k):
        return self.values[k]

    def F(self, k: int) -> int:
        if 0 <= k <= self.limit:
            return int(self.values[k])
        return popcount_prefix(k)


def build_table(limit: int = DEFAULT_TABLE_SIZE, validate: bool = True) -> FTable:
    """Tabulate ``F`` up to ``limit`` from the popcount increment.

    With ``validate`` every entry up to ``min(limit, 2**12)`` is compared to
    the edge count of the actual segment in Q_12, and the largest entry is
    compared to :func:`popcount_prefix`.
    """
    if limit < 0:
        raise InputError("table limit must be non-negative")
    if limit >= 1 << 40:
        raise InputError("table limit too large for exact int64 arithmetic")
    steps = np.bitwise_count(np.arange(limit, dtype=np.int64)).astype(np.int64)
    values = np.zeros(limit + 1, dtype=np.int64)
    np.cumsum(steps, out=values[1:])
    values.setflags(write=False)
    table = FTable(values)
    if validate:
        mismatches = oracle_mismatches(table, ORACLE_DIMENSION)
        if mismatches:
            raise AssertionError(f"F table disagrees with edge counts at k={mismatches[:5]}")
        if int(values[-1]) != popcount_prefix(limit):
            raise AssertionError("F table disagrees with the closed form at its last entry")
    return table


def oracle_mismatches(table: FTable, n: int) -> list[int]:
    """Values ``k <= min(2**n, table.limit)`` where the table differs from ``e(I_{n,k})``."""
    top = min(1 << n, table.limit)
    return [k for k in range(top + 1) if internal_edges(initial_segment(n, k)) != table.F(k)]


@lru_cache(maxsize=1)
def default_table() -> FTable:
    return build_table()


def F_value(k: int) -> int:
    """Edges inside the initial segment of size ``k``; independent of the ambient dimension."""
    if k < 0:
        raise InputError(f"F is defined for k >= 0, got {k}")
    return default_table().F(k)


def hart_gap(x: int, y: int) -> int:
    """``F(x + y) - F(x) - F(y)``, which is at least ``min(x, y)``."""
    if x < 0 or y < 0:
        raise InputError("hart_gap needs x, y >= 0")
    return F_value(x + y) - F_value(x) - F_value(y)


def lemma4_admissible(x: int, y: int, n: int) -> bool:
    half = 1 << (n - 1) if n >= 1 else 0
    return n >= 1 and x >= 0 and x + y <= 1 << n and half <= y <= half + x


def lemma4_margin(x: int, y: int, n: int) -> int:
    """``F(x+y) - F(y) - F(x) - y + 2**(n-1) - x``.

    Only defined when ``x + y <= 2**n`` and ``2**(n-1) <= y <= 2**(n-1) + x``;
    anything else raises :class:`InputError` rather than producing a
    meaningless number.
    """
    if not lemma4_admissible(x, y, n):
        raise InputError(f"(x={x}, y={y}, n={n}) outside the region where the margin is defined")
    return F_value(x + y) - F_value(y) - F_value(x) - y + (1 << (n - 1)) - x


def F_complement_identity(k: int, n: int) -> bool:
    """Check ``2F(k) - 2F(2**n - k) == (2k - 2**n) * n``."""
    if not 0 <= k <= 1 << n:
        raise InputError(f"k={k} outside [0, 2**{n}]")
    return 2 * F_value(k) - 2 * F_value((1 << n) - k) == (2 * k - (1 << n)) * n

"""Slow, obviously-correct reference implementations used as oracles.

Families are plain Python sets of frozensets here; nothing is bit-packed.
"""

import functools
import itertools

import pytest

from antipodal.cube import Family, decode_vertex, encode_vertex


def all_vertices(n):
    return [frozenset(c) for r in range(n + 1) for c in itertools.combinations(range(1, n + 1), r)]


def binary_less(x, y):
    diff = x ^ y
    return bool(diff) and max(diff) in y


def binary_sorted(n):
    def cmp(a, b):
        return -1 if binary_less(a, b) else (1 if binary_less(b, a) else 0)

    return sorted(all_vertices(n), key=functools.cmp_to_key(cmp))


def cube_edges(n):
    for x in all_vertices(n):
        for i in range(1, n + 1):
            if i not in x:
                yield x, x | {i}


def as_sets(A: Family):
    return set(A.sets())


def oracle_internal(n, S):
    return sum(1 for x, y in cube_edges(n) if x in S and y in S)


def oracle_boundary(n, S):
    return sum(1 for x, y in cube_edges(n) if (x in S) != (y in S))


def antipode(n, x):
    return frozenset(range(1, n + 1)) - x


def oracle_f(n, S):
    return 2 * oracle_internal(n, S) + len(S & {antipode(n, x) for x in S})


def oracle_F(k):
    n = max(1, (k - 1).bit_length()) if k > 1 else 1
    return oracle_internal(n, set(binary_sorted(n)[:k]))


def family_of(n, S):
    return Family.from_codes(n, (encode_vertex(x, n) for x in S))


@pytest.fixture
def rng():
    import random

    return random.Random(1234)





ACCEPTANCE_LINES = []


@pytest.fixture
def criterion():
    """Record one summary line per acceptance criterion for the terminal report."""

    def record(number, passed, detail):
        ACCEPTANCE_LINES.append(f"criterion {number:>2}: {'PASS' if passed else 'FAIL'}  {detail}")

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split(":")[0].split()[1])):
            terminalreporter.write_line(line)

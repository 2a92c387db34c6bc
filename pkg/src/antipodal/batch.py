"""Vectorised counts over many families at once.

A batch is a ``uint8`` matrix with one row per family and ``2**n`` columns,
column ``v`` holding membership of vertex ``v``.  The functions mirror the
scalar ones in :mod:`antipodal.cube` and are used by the sweeping checkers.
"""

from __future__ import annotations

import numpy as np

from .cube import Family


def from_ints(values, n: int) -> np.ndarray:
    """Rows for bitsets ``values`` (a 1-d array of non-negative ints below ``2**64``)."""
    values = np.asarray(values, dtype=np.uint64)
    shifts = np.arange(1 << n, dtype=np.uint64)
    return ((values[:, None] >> shifts[None, :]) & np.uint64(1)).astype(np.uint8)


def from_families(families) -> np.ndarray:
    families = list(families)
    n = families[0].n
    width = 1 << n
    out = np.zeros((len(families), width), dtype=np.uint8)
    for row, fam in enumerate(families):
        raw = fam.bits.to_bytes((width + 7) // 8, "little")
        out[row] = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")[:width]
    return out


def to_family(row: np.ndarray, n: int) -> Family:
    packed = np.packbits(row.astype(np.uint8), bitorder="little").tobytes()
    return Family(n, int.from_bytes(packed, "little"))


def sizes(M: np.ndarray) -> np.ndarray:
    return M.sum(axis=1, dtype=np.int64)


def _split(M: np.ndarray, n: int, d: int) -> np.ndarray:
    # axes: family, coordinates above d, coordinate d, coordinates below d
    return M.reshape(M.shape[0], 1 << (n - d - 1), 2, 1 << d)


def internal_edges(M: np.ndarray, n: int) -> np.ndarray:
    total = np.zeros(M.shape[0], dtype=np.int64)
    for d in range(n):
        S = _split(M, n, d)
        total += (S[:, :, 0, :] & S[:, :, 1, :]).sum(axis=(1, 2), dtype=np.int64)
    return total


def edge_boundary(M: np.ndarray, n: int) -> np.ndarray:
    return n * sizes(M) - 2 * internal_edges(M, n)


def antipodal_image(M: np.ndarray) -> np.ndarray:
    return M[:, ::-1]


def self_overlap(M: np.ndarray) -> np.ndarray:
    """``|A ∩ Ā|`` per row."""
    return (M & M[:, ::-1]).sum(axis=1, dtype=np.int64)


def potential_f(M: np.ndarray, n: int) -> np.ndarray:
    return 2 * internal_edges(M, n) + self_overlap(M)


def section_sizes(M: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    """``(|A_i^+|, |A_i^-|)`` as two ``(rows, n)`` arrays, column ``i - 1`` for coordinate ``i``."""
    upper = np.empty((M.shape[0], n), dtype=np.int64)
    lower = np.empty((M.shape[0], n), dtype=np.int64)
    for d in range(n):
        S = _split(M, n, d)
        lower[:, d] = S[:, :, 0, :].sum(axis=(1, 2), dtype=np.int64)
        upper[:, d] = S[:, :, 1, :].sum(axis=(1, 2), dtype=np.int64)
    return upper, lower


def random_of_sizes(rng: np.random.Generator, width: int, target: np.ndarray) -> np.ndarray:
    """One row per entry of ``target``: a uniform subset of ``range(width)`` of that size.

    Equivalent to including every column independently with probability 1/2
    and conditioning on the row total.
    """
    keys = rng.random((len(target), width))
    ranks = keys.argsort(axis=1).argsort(axis=1)
    return (ranks < np.asarray(target)[:, None]).astype(np.uint8)


def antipodal_from_pairs(L: np.ndarray) -> np.ndarray:
    """Full rows from pair-inclusion rows (column ``v`` is the pair ``{v, 2**n - 1 - v}``)."""
    return np.concatenate([L, L[:, ::-1]], axis=1)

"""Antipodal families: the extremal construction, enumeration and sampling.

The vertices of Q_n fall into ``2**(n-1)`` antipodal pairs ``{v, 2**n - 1 - v}``
and each pair is named by its smaller code ``v < 2**(n-1)``.  An antipodal
family is therefore the same thing as a set of pair representatives, i.e. a
bitset over the lower half of the cube, which is how they are enumerated.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .binary_order import initial_segment
from .cube import Family, _check_dimension, _translate_bits, antipodal_image, edge_boundary
from .errors import CapabilityError, InputError

EXHAUSTIVE_MAX_N = 5
EXHAUSTIVE_HARD_MAX_N = 6


@dataclass(frozen=True)
class PairIndex:
    n: int

    def __post_init__(self) -> None:
        _check_dimension(self.n)
        if self.n < 1:
            raise InputError("Q_0 has no antipodal pairs")

    def __len__(self) -> int:
        return 1 << (self.n - 1)

    def partner(self, v: int) -> int:
        return (1 << self.n) - 1 - v

    def representative(self, v: int) -> int:
        return min(v, self.partner(v))

    def family(self, pair_mask: int) -> Family:
        """The antipodal family made of the pairs whose bit is set in ``pair_mask``."""
        if not 0 <= pair_mask < 1 << len(self):
            raise InputError(f"pair mask {pair_mask} out of range for n={self.n}")
        return Family(self.n, pair_mask | _translate_bits(pair_mask, self.n, (1 << self.n) - 1))


@dataclass(frozen=True)
class ExtremalWitness:
    size: int
    family: Family
    boundary: int


def _check_even_size(n: int, m: int) -> None:
    _check_dimension(n)
    if m % 2:
        raise InputError(f"antipodal families have even size, got {m}")
    if not 0 <= m <= 1 << n:
        raise InputError(f"size {m} outside [0, 2**{n}]")


def extremal_family(n: int, m: int) -> Family:
    """``I_{n,m/2}`` together with its antipodal image: the first and last ``m/2`` codes."""
    _check_even_size(n, m)
    segment = initial_segment(n, m // 2)
    return segment | antipodal_image(segment)


def extremal_witness(n: int, m: int) -> ExtremalWitness:
    family = extremal_family(n, m)
    return ExtremalWitness(m, family, edge_boundary(family))


def theorem_rhs(n: int, m: int) -> int:
    """Least edge boundary of an antipodal family of size ``m`` in Q_n."""
    return edge_boundary(extremal_family(n, m))


def enumerate_antipodal(n: int, force: bool = False) -> Iterator[Family]:
    """Every antipodal family of Q_n, ordered by pair-inclusion mask.

    Exhaustive enumeration is allowed for ``n <= 5`` (65536 families);
    ``force`` lifts that to ``n = 6``.
    """
    limit = EXHAUSTIVE_HARD_MAX_N if force else EXHAUSTIVE_MAX_N
    if n > limit:
        raise CapabilityError(
            f"{1 << (1 << (n - 1))} antipodal families at n={n}; use sample_antipodal instead"
        )
    if n == 0:
        yield Family.empty(0)
        return
    pairs = PairIndex(n)
    for mask in range(1 << len(pairs)):
        yield pairs.family(mask)


def sample_antipodal(n: int, m: int, seed) -> Family:
    """A uniformly random antipodal family of size ``m``.

    ``m/2`` pairs are drawn without replacement by a PCG64 generator seeded
    with ``seed``; the same seed always gives the same family.
    """
    _check_even_size(n, m)
    if m == 0:
        return Family.empty(n)
    rng = np.random.default_rng(seed)
    chosen = rng.choice(1 << (n - 1), size=m // 2, replace=False)
    mask = 0
    for v in chosen.tolist():
        mask |= 1 << v
    return PairIndex(n).family(mask)


def nested_chain(n: int) -> list[Family]:
    """Extremal families of sizes ``0, 2, ..., 2**n``; each contains the previous one."""
    _check_dimension(n)
    return [extremal_family(n, m) for m in range(0, (1 << n) + 1, 2)]

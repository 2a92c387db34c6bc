"""Families of subsets of ``[n]`` stored as bitsets over the vertices of Q_n.

A vertex ``x`` of the cube is a subset of ``{1, ..., n}``; its code has bit
``i - 1`` set iff ``i`` is in ``x``.  Under this encoding the binary ordering
on subsets is ordinary integer order, so the initial segment of size ``k`` is
the interval of codes ``[0, k)``.

A family is a bitset of length ``2**n`` held in a Python ``int``: bit ``v`` is
set iff the vertex with code ``v`` belongs to the family.  Every operation is
a short sequence of whole-word shifts, masks and popcounts, one per cube
direction, so the cost grows with ``n`` rather than with ``2**n`` vertices.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from . import config
from .errors import InputError

__all__ = [
    "Family",
    "EdgeProfile",
    "encode_vertex",
    "decode_vertex",
    "internal_edges",
    "edge_boundary",
    "edge_boundary_direct",
    "antipodal_image",
    "complement_family",
    "section",
    "sections",
    "translate",
    "apply_automorphism",
    "potential_f",
    "family_counts",
    "is_antipodal",
    "edge_profile",
]


@lru_cache(maxsize=None)
def _low_mask(n: int, d: int) -> int:
    """Bitset of the vertices of Q_n whose coordinate ``d`` (0-based) is 0."""
    stride = 1 << d
    block = (1 << stride) - 1
    period = stride << 1
    reps = (1 << n) // period
    return block * (((1 << (period * reps)) - 1) // ((1 << period) - 1))


@lru_cache(maxsize=None)
def _full_mask(n: int) -> int:
    return (1 << (1 << n)) - 1


def _check_dimension(n: int) -> None:
    if not isinstance(n, int) or n < 0:
        raise InputError(f"dimension must be a non-negative integer, got {n!r}")
    cap = config.max_dimension()
    if n > cap:
        raise InputError(
            f"dimension {n} exceeds the cap of {cap} "
            f"(override with {config.MAX_DIMENSION_ENV})"
        )


@dataclass(frozen=True)
class Family:
    """An immutable family of subsets of ``[n]``."""

    n: int
    bits: int = 0

    def __post_init__(self) -> None:
        _check_dimension(self.n)
        if self.bits < 0 or self.bits >> (1 << self.n):
            raise InputError(f"bitset does not fit in 2**{self.n} vertices")

    @classmethod
    def empty(cls, n: int) -> Family:
        return cls(n, 0)

    @classmethod
    def full(cls, n: int) -> Family:
        _check_dimension(n)
        return cls(n, _full_mask(n))

    @classmethod
    def from_codes(cls, n: int, codes: Iterable[int]) -> Family:
        _check_dimension(n)
        bits = 0
        for v in codes:
            if not 0 <= v < 1 << n:
                raise InputError(f"vertex code {v} outside Q_{n}")
            bits |= 1 << v
        return cls(n, bits)

    @classmethod
    def from_sets(cls, n: int, members: Iterable[Iterable[int]]) -> Family:
        return cls.from_codes(n, (encode_vertex(x, n) for x in members))

    @property
    def size(self) -> int:
        return self.bits.bit_count()

    def __len__(self) -> int:
        return self.size

    def __contains__(self, code: object) -> bool:
        return isinstance(code, int) and 0 <= code < 1 << self.n and bool(self.bits >> code & 1)

    def codes(self) -> Iterator[int]:
        """Vertex codes in increasing (binary) order."""
        bits = self.bits
        while bits:
            low = bits & -bits
            yield low.bit_length() - 1
            bits ^= low

    def sets(self) -> list[frozenset[int]]:
        return [decode_vertex(v) for v in self.codes()]

    def __and__(self, other: Family) -> Family:
        _same_dimension(self, other)
        return Family(self.n, self.bits & other.bits)

    def __or__(self, other: Family) -> Family:
        _same_dimension(self, other)
        return Family(self.n, self.bits | other.bits)

    def issubset(self, other: Family) -> bool:
        _same_dimension(self, other)
        return self.bits & ~other.bits == 0

    def serialize(self) -> str:
        """Text form ``n=<n> hex=<digits>``.

        Digit ``j`` of the hex string holds vertices ``4j .. 4j+3`` with
        vertex ``4j`` in its least significant bit, so the string reads
        little-endian by vertex index.  There are ``max(1, 2**n // 4)``
        digits.
        """
        width = max(1, (1 << self.n) // 4)
        return f"n={self.n} hex={format(self.bits, f'0{width}x')[::-1]}"

    @classmethod
    def parse(cls, text: str) -> Family:
        m = _SERIAL_RE.fullmatch(text.strip())
        if m is None:
            raise InputError(f"not a family serialization: {text!r}")
        n = int(m.group(1))
        digits = m.group(2)
        _check_dimension(n)
        width = max(1, (1 << n) // 4)
        if len(digits) != width:
            raise InputError(f"expected {width} hex digits for n={n}, got {len(digits)}")
        bits = int(digits[::-1], 16)
        if bits >> (1 << n):
            raise InputError(f"serialization sets vertices beyond Q_{n}")
        return cls(n, bits)

    def __repr__(self) -> str:
        return f"Family({self.serialize()!r})"


_SERIAL_RE = re.compile(r"n=(\d+) hex=([0-9a-f]+)")


def _same_dimension(a: Family, b: Family) -> None:
    if a.n != b.n:
        raise InputError(f"dimension mismatch: {a.n} vs {b.n}")


def encode_vertex(elements: Iterable[int], n: int) -> int:
    """Code of the subset ``elements`` of ``[n]``."""
    code = 0
    for i in elements:
        if not 1 <= i <= n:
            raise InputError(f"element {i} not in [1, {n}]")
        code |= 1 << (i - 1)
    return code


def decode_vertex(code: int) -> frozenset[int]:
    return frozenset(i + 1 for i in range(code.bit_length()) if code >> i & 1)


def internal_edges(A: Family) -> int:
    """Number of cube edges with both endpoints in ``A``.

    Each edge in direction ``d`` is counted once, at its endpoint whose
    coordinate ``d`` is 1.
    """
    bits, n = A.bits, A.n
    total = 0
    for d in range(n):
        high = _full_mask(n) ^ _low_mask(n, d)
        total += (bits & (bits << (1 << d)) & high).bit_count()
    return total


def edge_boundary(A: Family) -> int:
    return A.n * A.size - 2 * internal_edges(A)


def edge_boundary_direct(A: Family) -> int:
    """Count boundary edges one direction at a time, without the handshake identity."""
    bits, n = A.bits, A.n
    return sum(((bits ^ (bits >> (1 << d))) & _low_mask(n, d)).bit_count() for d in range(n))


def _translate_bits(bits: int, n: int, t: int) -> int:
    for d in range(n):
        if t >> d & 1:
            s = 1 << d
            low = _low_mask(n, d)
            bits = ((bits & low) << s) | ((bits >> s) & low)
    return bits


def translate(A: Family, t: int) -> Family:
    """Image of ``A`` under ``x -> x XOR t``."""
    if not 0 <= t < 1 << A.n:
        raise InputError(f"translate {t} outside Q_{A.n}")
    return Family(A.n, _translate_bits(A.bits, A.n, t))


def antipodal_image(A: Family) -> Family:
    """``{[n] \\ x : x in A}``."""
    return Family(A.n, _translate_bits(A.bits, A.n, (1 << A.n) - 1))


def is_antipodal(A: Family) -> bool:
    return _translate_bits(A.bits, A.n, (1 << A.n) - 1) == A.bits


def complement_family(A: Family) -> Family:
    """All vertices of Q_n not in ``A``."""
    return Family(A.n, A.bits ^ _full_mask(A.n))


def _swap_coordinates(bits: int, n: int, a: int, b: int) -> int:
    """Exchange 0-based coordinates ``a < b`` in every vertex of the family."""
    delta = (1 << b) - (1 << a)
    move_up = (_full_mask(n) ^ _low_mask(n, a)) & _low_mask(n, b)
    keep = ~(move_up | (move_up << delta))
    return (bits & keep) | ((bits & move_up) << delta) | ((bits >> delta) & move_up)


def sections(A: Family, i: int) -> tuple[Family, Family]:
    """Return the upper and lower ``i``-sections ``(A_i^+, A_i^-)``.

    Both live in Q_{n-1}: elements ``j < i`` keep their label and elements
    ``j > i`` become ``j - 1``.
    """
    n = A.n
    if not 1 <= i <= n:
        raise InputError(f"coordinate {i} not in [1, {n}]")
    bits = A.bits
    # rotate coordinate i to the top; coordinates above it slide down by one
    for a in range(i - 1, n - 1):
        bits = _swap_coordinates(bits, n, a, a + 1)
    half = 1 << (n - 1)
    return Family(n - 1, bits >> half), Family(n - 1, bits & ((1 << half) - 1))


def section(A: Family, i: int, sign: str) -> Family:
    """The upper (``sign='+'``) or lower (``sign='-'``) ``i``-section of ``A``."""
    if sign not in ("+", "-"):
        raise InputError(f"sign must be '+' or '-', got {sign!r}")
    upper, lower = sections(A, i)
    return upper if sign == "+" else lower


def apply_automorphism(A: Family, perm: Sequence[int], translate_by: int = 0) -> Family:
    """Image of ``A`` under ``x -> perm(x) XOR translate_by``.

    ``perm[i - 1]`` is the image of element ``i``; ``perm`` must be a
    permutation of ``1..n``.
    """
    n = A.n
    if sorted(perm) != list(range(1, n + 1)):
        raise InputError(f"not a permutation of 1..{n}: {list(perm)!r}")
    if not 0 <= translate_by < 1 << n:
        raise InputError(f"translate {translate_by} outside Q_{n}")
    target = [0] * n
    for i, p in enumerate(perm):
        target[p - 1] = i
    bits = A.bits
    current = list(range(n))
    where = list(range(n))
    for pos in range(n):
        p = where[target[pos]]
        if p != pos:
            bits = _swap_coordinates(bits, n, pos, p)
            moved = current[pos]
            current[pos], current[p] = current[p], moved
            where[current[pos]], where[moved] = pos, p
    return Family(n, _translate_bits(bits, n, translate_by))


def potential_f(A: Family) -> int:
    """``2 e(A) + |A ∩ Ā|``."""
    overlap = (A.bits & _translate_bits(A.bits, A.n, (1 << A.n) - 1)).bit_count()
    return 2 * internal_edges(A) + overlap


def family_counts(A: Family, B: Family) -> dict[str, int]:
    """Sizes of the boolean combinations of ``A`` and ``B`` used by the checkers.

    Keys: ``and``, ``or``, ``a_not_b``, ``b_not_a``, ``a_and_bbar`` (``|A ∩ B̄|``),
    ``a_and_abar``, ``b_and_bbar``.
    """
    _same_dimension(A, B)
    n = A.n
    flip = (1 << n) - 1
    a, b = A.bits, B.bits
    bbar = _translate_bits(b, n, flip)
    return {
        "and": (a & b).bit_count(),
        "or": (a | b).bit_count(),
        "a_not_b": (a & ~b).bit_count(),
        "b_not_a": (b & ~a).bit_count(),
        "a_and_bbar": (a & bbar).bit_count(),
        "a_and_abar": (a & _translate_bits(a, n, flip)).bit_count(),
        "b_and_bbar": (b & bbar).bit_count(),
    }


@dataclass(frozen=True)
class EdgeProfile:
    n: int
    size: int
    internal: int
    boundary: int
    potential: int

    def __post_init__(self) -> None:
        if 2 * self.internal + self.boundary != self.n * self.size:
            raise InputError("profile violates 2e(A) + |∂A| = n|A|")


def edge_profile(A: Family) -> EdgeProfile:
    e = internal_edges(A)
    return EdgeProfile(A.n, A.size, e, edge_boundary_direct(A), potential_f(A))

"""Brute-force and sampled checkers for the inequalities, lemmas and identities.

Every checker returns a :class:`~antipodal.report.VerificationReport`.  Work
is cut into shards of fixed size (independent of the worker count); sampled
shards draw from a generator seeded with ``(seed, shard_index)``.  With
``workers > 1`` shards run in a process pool and are merged in shard order,
so the report is the same for any number of workers.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import batch
from .binary_order import F_value, default_table
from .config import DEFAULT_SEED, SAMPLE_SHARD_SIZE, SHARD_SIZE, VIOLATION_CAP
from .constructions import PairIndex, theorem_rhs
from .cube import (
    Family,
    complement_family,
    edge_boundary_direct,
    family_counts,
    internal_edges,
    is_antipodal,
    potential_f,
    sections,
)
from .errors import CapabilityError, InputError
from .report import VerificationReport, merge_all

THEOREM2_EXHAUSTIVE_MAX_N = 4
THEOREM2_LONG_MAX_N = 5
THEOREM1_EXHAUSTIVE_MAX_N = 5
THEOREM1_LONG_MAX_N = 6
LEMMA5_EXHAUSTIVE_MAX_N = 4
LEMMA6_EXHAUSTIVE_MAX_N = 3
UNRESTRICTED_MIN_MAX_N = 4

DEFAULT_SAMPLES = 100_000


def _run(fn, tasks, workers: int) -> list[VerificationReport]:
    if workers <= 1 or len(tasks) <= 1:
        return [fn(*task) for task in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, *zip(*tasks)))


def _shards(total: int, size: int) -> list[tuple[int, int]]:
    return [(start, min(start + size, total)) for start in range(0, total, size)]


def _sample_shards(budget: int) -> list[tuple[int, int]]:
    """``(shard_index, count)`` pairs covering ``budget`` samples."""
    return [(j, stop - start) for j, (start, stop) in enumerate(_shards(budget, SAMPLE_SHARD_SIZE))]


def _violations(M: np.ndarray, n: int, bad: np.ndarray, label: str) -> tuple[str, ...]:
    rows = np.flatnonzero(bad)
    found = sorted(f"{label} {batch.to_family(M[r], n).serialize()}" for r in rows)
    return tuple(found[:VIOLATION_CAP])


def _witnesses(sizes: np.ndarray, values: np.ndarray) -> dict[int, tuple[int, int]]:
    out = {}
    for s in np.unique(sizes).tolist():
        vals = values[sizes == s]
        low = int(vals.min())
        out[s] = (low, int((vals == low).sum()))
    return out


def _rng(seed: int, shard: int) -> np.random.Generator:
    return np.random.default_rng([seed, shard])


# -- Theorem 2: f(A) <= 2F(|A|), or the large-size form ---------------------------


def theorem2_bound(n: int, sizes: np.ndarray) -> np.ndarray:
    """``2F(|A|)`` when ``|A| <= 2**(n-1)``, else ``2F(|A|) + 2|A| - 2**n``."""
    F = default_table().values
    base = 2 * F[sizes]
    large = sizes > (1 << (n - 1))
    return base + np.where(large, 2 * sizes - (1 << n), 0)


def _theorem2_rows(M: np.ndarray, n: int, report: VerificationReport) -> VerificationReport:
    sizes = batch.sizes(M)
    slack = theorem2_bound(n, sizes) - batch.potential_f(M, n)
    bad = slack < 0
    return VerificationReport(
        report.statement, n, report.mode, seed=report.seed,
        instances=len(M),
        violation_count=int(bad.sum()),
        violations=_violations(M, n, bad, "f>bound"),
        witnesses=_witnesses(sizes, slack),
    )


def _theorem2_exhaustive_shard(n: int, start: int, stop: int) -> VerificationReport:
    M = batch.from_ints(np.arange(start, stop, dtype=np.uint64), n)
    return _theorem2_rows(M, n, VerificationReport("thm2", n, "exhaustive"))


def _theorem2_sampled_shard(n: int, seed: int, shard: int, count: int) -> VerificationReport:
    rng = _rng(seed, shard)
    target = rng.integers(0, (1 << n) + 1, size=count)
    M = batch.random_of_sizes(rng, 1 << n, target)
    return _theorem2_rows(M, n, VerificationReport("thm2", n, "sampled", seed=seed))


def check_theorem2(
    n: int,
    mode: str = "exhaustive",
    budget: int | None = None,
    seed: int = DEFAULT_SEED,
    workers: int = 1,
    allow_long: bool = False,
) -> VerificationReport:
    """Check ``f(A) <= 2F(|A|)`` (small ``|A|``) or ``f(A) <= 2F(|A|) + 2|A| - 2**n`` (large).

    Witnesses map each size to the least slack seen and how often it occurs;
    a least slack of 0 means the bound is attained at that size.
    """
    if n < 1:
        raise InputError("n must be at least 1")
    if mode == "exhaustive":
        cap = THEOREM2_LONG_MAX_N if allow_long else THEOREM2_EXHAUSTIVE_MAX_N
        if n > cap:
            raise CapabilityError(f"exhaustive Theorem 2 check at n={n} needs 2**{1 << n} families")
        total = 1 << (1 << n)
        todo = total if budget is None else min(budget, total)
        tasks = [(n, a, b) for a, b in _shards(todo, SHARD_SIZE)]
        reports = _run(_theorem2_exhaustive_shard, tasks, workers)
        base = VerificationReport("thm2", n, "exhaustive", complete=todo == total)
        return merge_all([base, *reports])
    if mode == "sampled":
        budget = DEFAULT_SAMPLES if budget is None else budget
        tasks = [(n, seed, j, c) for j, c in _sample_shards(budget)]
        reports = _run(_theorem2_sampled_shard, tasks, workers)
        return merge_all([VerificationReport("thm2", n, "sampled", seed=seed), *reports])
    raise InputError(f"unknown mode {mode!r}")


# -- Theorem 1: |∂A| >= |∂(I ∪ Ī)| for antipodal A ---------------------------------


def _rhs_table(n: int) -> np.ndarray:
    rhs = np.full((1 << n) + 1, -1, dtype=np.int64)
    for m in range(0, (1 << n) + 1, 2):
        rhs[m] = theorem_rhs(n, m)
    return rhs


def _theorem1_rows(L: np.ndarray, n: int, report: VerificationReport) -> VerificationReport:
    M = batch.antipodal_from_pairs(L)
    sizes = batch.sizes(M)
    boundary = batch.edge_boundary(M, n)
    bad = boundary < _rhs_table(n)[sizes]
    return VerificationReport(
        report.statement, n, report.mode, seed=report.seed,
        instances=len(M),
        violation_count=int(bad.sum()),
        violations=_violations(M, n, bad, "boundary<rhs"),
        witnesses=_witnesses(sizes, boundary),
    )


def _theorem1_exhaustive_shard(n: int, start: int, stop: int) -> VerificationReport:
    L = batch.from_ints(np.arange(start, stop, dtype=np.uint64), n - 1)
    return _theorem1_rows(L, n, VerificationReport("thm1", n, "exhaustive"))


def _theorem1_sampled_shard(n: int, seed: int, shard: int, count: int) -> VerificationReport:
    rng = _rng(seed, shard)
    pairs = 1 << (n - 1)
    L = batch.random_of_sizes(rng, pairs, rng.integers(0, pairs + 1, size=count))
    return _theorem1_rows(L, n, VerificationReport("thm1", n, "sampled", seed=seed))


def check_theorem1(
    n: int,
    mode: str = "exhaustive",
    budget: int | None = None,
    seed: int = DEFAULT_SEED,
    workers: int = 1,
    allow_long: bool = False,
) -> VerificationReport:
    """Check the antipodal edge-isoperimetric inequality.

    Exhaustive runs also confirm tightness: for every even size the least
    boundary found must equal :func:`theorem_rhs`.  Sampled runs draw the
    number of pairs uniformly from ``0..2**(n-1)`` and then a uniform set of
    that many pairs.
    """
    if n < 1:
        raise InputError("n must be at least 1")
    if mode == "exhaustive":
        cap = THEOREM1_LONG_MAX_N if allow_long else THEOREM1_EXHAUSTIVE_MAX_N
        if n > cap:
            raise CapabilityError(
                f"exhaustive Theorem 1 check at n={n} needs 2**{1 << (n - 1)} families"
            )
        total = 1 << (1 << (n - 1))
        todo = total if budget is None else min(budget, total)
        tasks = [(n, a, b) for a, b in _shards(todo, SHARD_SIZE)]
        reports = _run(_theorem1_exhaustive_shard, tasks, workers)
        merged = merge_all([VerificationReport("thm1", n, "exhaustive", complete=todo == total), *reports])
        if merged.complete:
            merged = merged.merge(_tightness(n, merged))
        return merged
    if mode == "sampled":
        budget = DEFAULT_SAMPLES if budget is None else budget
        tasks = [(n, seed, j, c) for j, c in _sample_shards(budget)]
        reports = _run(_theorem1_sampled_shard, tasks, workers)
        return merge_all([VerificationReport("thm1", n, "sampled", seed=seed), *reports])
    raise InputError(f"unknown mode {mode!r}")


def _tightness(n: int, report: VerificationReport) -> VerificationReport:
    loose = []
    for m in range(0, (1 << n) + 1, 2):
        rhs = theorem_rhs(n, m)
        found = report.witnesses.get(m, (None, 0))[0]
        if found != rhs:
            loose.append(f"tightness m={m} min={found} rhs={rhs}")
    return VerificationReport(
        "thm1", n, "exhaustive",
        violation_count=len(loose), violations=tuple(loose[:VIOLATION_CAP]),
        notes={"tight_sizes": (1 << (n - 1)) + 1 - len(loose)},
    )


# -- Lemmas ------------------------------------------------------------------------


def check_lemma3(limit: int = 1 << 12) -> VerificationReport:
    """``F(x+y) - F(x) - F(y) >= min(x, y)`` for all ``0 <= x, y <= limit``.

    Also requires equality whenever ``y`` is a power of two and ``x <= y``.
    Equality pairs outside that case are counted in the notes, not flagged.
    """
    F = default_table().values
    if 2 * limit > len(F) - 1:
        raise CapabilityError(f"F table too short for limit {limit}")
    y = np.arange(limit + 1, dtype=np.int64)
    y_pow2 = (y > 0) & ((y & (y - 1)) == 0)
    instances = violations = equal_total = equal_extra = 0
    found: list[str] = []
    for x in range(limit + 1):
        gap = F[x + y] - F[x] - F[y]
        low = np.minimum(x, y)
        stated = y_pow2 & (x <= y)
        below = gap < low
        not_equal = stated & (gap != low)
        bad = below | not_equal
        equal = gap == low
        instances += limit + 1
        violations += int(bad.sum())
        equal_total += int(equal.sum())
        equal_extra += int((equal & ~stated).sum())
        for yy in np.flatnonzero(bad)[: VIOLATION_CAP - len(found)].tolist():
            found.append(f"x={x} y={yy} gap={int(gap[yy])}")
    return VerificationReport(
        "lemma3", None, "exhaustive",
        instances=instances, violation_count=violations, violations=tuple(sorted(found)),
        notes={"equality_pairs": equal_total, "equality_outside_stated_case": equal_extra},
    )


def check_lemma4(max_n: int = 12) -> VerificationReport:
    """Margin ``F(x+y) - F(y) - F(x) - y + 2**(n-1) - x >= 0`` over the whole admissible region."""
    F = default_table().values
    if (1 << max_n) > len(F) - 1:
        raise CapabilityError(f"F table too short for n={max_n}")
    instances = violations = 0
    found: list[str] = []
    for n in range(1, max_n + 1):
        half = 1 << (n - 1)
        for y in range(half, (1 << n) + 1):
            x = np.arange(y - half, (1 << n) - y + 1, dtype=np.int64)
            if not len(x):
                continue
            margin = F[x + y] - F[y] - F[x] - y + half - x
            bad = margin < 0
            instances += len(x)
            violations += int(bad.sum())
            for r in np.flatnonzero(bad)[: VIOLATION_CAP - len(found)].tolist():
                found.append(f"n={n} x={int(x[r])} y={y} margin={int(margin[r])}")
    return VerificationReport(
        "lemma4", max_n, "exhaustive",
        instances=instances, violation_count=violations, violations=tuple(sorted(found)),
    )


def _lemma5_rows(M: np.ndarray, n: int, report: VerificationReport) -> VerificationReport:
    upper, lower = batch.section_sizes(M, n)
    diff = np.abs(upper - lower)
    bound = 1 << (n - 2)
    bad = np.zeros(len(M), dtype=bool)
    for i, j in itertools.combinations(range(n), 2):
        bad |= np.minimum(diff[:, i], diff[:, j]) > bound
    return VerificationReport(
        report.statement, n, report.mode, seed=report.seed,
        instances=len(M), violation_count=int(bad.sum()),
        violations=_violations(M, n, bad, "unbalanced"),
    )


def _lemma5_exhaustive_shard(n: int, start: int, stop: int) -> VerificationReport:
    M = batch.from_ints(np.arange(start, stop, dtype=np.uint64), n)
    return _lemma5_rows(M, n, VerificationReport("lemma5", n, "exhaustive"))


def _lemma5_sampled_shard(n: int, seed: int, shard: int, count: int) -> VerificationReport:
    rng = _rng(seed, shard)
    M = batch.random_of_sizes(rng, 1 << n, rng.integers(0, (1 << n) + 1, size=count))
    return _lemma5_rows(M, n, VerificationReport("lemma5", n, "sampled", seed=seed))


def check_lemma5(
    n: int, samples: int = 10_000, seed: int = DEFAULT_SEED, exhaustive: bool | None = None,
    workers: int = 1,
) -> VerificationReport:
    """Some coordinate of every pair has ``||A_i^+| - |A_i^-|| <= 2**(n-2)``.

    Exhaustive over all families by default when ``n <= 4``, sampled otherwise.
    """
    if n < 2:
        raise InputError("Lemma 5 needs n >= 2")
    if exhaustive is None:
        exhaustive = n <= LEMMA5_EXHAUSTIVE_MAX_N
    if exhaustive:
        if n > LEMMA5_EXHAUSTIVE_MAX_N:
            raise CapabilityError(f"exhaustive Lemma 5 check limited to n <= {LEMMA5_EXHAUSTIVE_MAX_N}")
        tasks = [(n, a, b) for a, b in _shards(1 << (1 << n), SHARD_SIZE)]
        return merge_all(
            [VerificationReport("lemma5", n, "exhaustive"), *_run(_lemma5_exhaustive_shard, tasks, workers)]
        )
    tasks = [(n, seed, j, c) for j, c in _sample_shards(samples)]
    return merge_all(
        [VerificationReport("lemma5", n, "sampled", seed=seed), *_run(_lemma5_sampled_shard, tasks, workers)]
    )


def lemma6_slack(c: int, d: int, cd: int, cdbar: int, cc: int, dd: int) -> int:
    """``|C∩C̄| + |D∩D̄| + 2min(|C|,|D|) - 2|C∩D| - 2|C∩D̄|``."""
    return cc + dd + 2 * min(c, d) - 2 * cd - 2 * cdbar


def _lemma6_sampled_shard(n: int, seed: int, shard: int, count: int) -> VerificationReport:
    rng = _rng(seed, shard)
    width = 1 << n
    C = batch.random_of_sizes(rng, width, rng.integers(0, width + 1, size=count))
    D = batch.random_of_sizes(rng, width, rng.integers(0, width + 1, size=count))
    c, d = batch.sizes(C), batch.sizes(D)
    cd = (C & D).sum(axis=1, dtype=np.int64)
    cdbar = (C & D[:, ::-1]).sum(axis=1, dtype=np.int64)
    slack = batch.self_overlap(C) + batch.self_overlap(D) + 2 * np.minimum(c, d) - 2 * cd - 2 * cdbar
    bad = slack < 0
    found = sorted(
        f"C={batch.to_family(C[r], n).serialize()} D={batch.to_family(D[r], n).serialize()}"
        for r in np.flatnonzero(bad)
    )
    return VerificationReport(
        "lemma6", n, "sampled", seed=seed,
        instances=count, violation_count=int(bad.sum()), violations=tuple(found[:VIOLATION_CAP]),
    )


def check_lemma6(
    n: int, samples: int = 10_000, seed: int = DEFAULT_SEED, exhaustive: bool | None = None,
    workers: int = 1,
) -> VerificationReport:
    """``2|C∩D| + 2|C∩D̄| <= |C∩C̄| + |D∩D̄| + 2min(|C|,|D|)`` for pairs of families.

    Exhaustive over all ordered pairs when ``n <= 3``.
    """
    if n < 0:
        raise InputError("n must be non-negative")
    if exhaustive is None:
        exhaustive = n <= LEMMA6_EXHAUSTIVE_MAX_N
    if not exhaustive:
        tasks = [(n, seed, j, c) for j, c in _sample_shards(samples)]
        return merge_all(
            [VerificationReport("lemma6", n, "sampled", seed=seed), *_run(_lemma6_sampled_shard, tasks, workers)]
        )
    if n > LEMMA6_EXHAUSTIVE_MAX_N:
        raise CapabilityError(f"exhaustive Lemma 6 check limited to n <= {LEMMA6_EXHAUSTIVE_MAX_N}")
    M = batch.from_ints(np.arange(1 << (1 << n), dtype=np.uint64), n)
    Mi = M.astype(np.int64)
    size = batch.sizes(M)
    overlap = batch.self_overlap(M)
    cd = Mi @ Mi.T
    cdbar = Mi @ Mi[:, ::-1].T
    slack = (
        overlap[:, None] + overlap[None, :] + 2 * np.minimum(size[:, None], size[None, :])
        - 2 * cd - 2 * cdbar
    )
    bad = np.argwhere(slack < 0)
    found = sorted(
        f"C={batch.to_family(M[a], n).serialize()} D={batch.to_family(M[b], n).serialize()}"
        for a, b in bad[:VIOLATION_CAP]
    )
    return VerificationReport(
        "lemma6", n, "exhaustive",
        instances=int(slack.size), violation_count=len(bad), violations=tuple(found),
        notes={"tight_pairs": int((slack == 0).sum())},
    )


# -- identities --------------------------------------------------------------------


def random_family(rng: np.random.Generator, n: int, size: int | None = None) -> Family:
    """Uniform family of the given size (size itself uniform on ``0..2**n`` if omitted)."""
    width = 1 << n
    if size is None:
        size = int(rng.integers(0, width + 1))
    row = np.zeros(width, dtype=np.uint8)
    row[rng.choice(width, size=size, replace=False)] = 1
    return batch.to_family(row, n)


def identity_residuals(A: Family, i: int) -> dict[str, int]:
    """Residuals of the exact identities for ``A``, sectioning at coordinate ``i``.

    ``handshake``: ``2e(A) + |∂A| - n|A|`` with the boundary counted directly.
    ``complement``: ``f(A^c) - f(A) - 2(n+1)(2**(n-1) - |A|)``.
    ``sections``: ``f(A) - 2e(A+) - 2e(A-) - 2|A+ ∩ A-| - 2|A+ ∩ Ā-|``.
    """
    n = A.n
    size = A.size
    f = potential_f(A)
    upper, lower = sections(A, i)
    counts = family_counts(upper, lower)
    return {
        "handshake": 2 * internal_edges(A) + edge_boundary_direct(A) - n * size,
        "complement": potential_f(complement_family(A)) - f - (n + 1) * ((1 << n) - 2 * size),
        "sections": f - 2 * internal_edges(upper) - 2 * internal_edges(lower)
        - 2 * counts["and"] - 2 * counts["a_and_bbar"],
    }


def check_identities(n: int, samples: int = 10_000, seed: int = DEFAULT_SEED) -> VerificationReport:
    """Evaluate the exact identities on random families; any nonzero residual is a violation.

    Besides the three family identities, checks ``2F(k) - 2F(2**n - k) =
    (2k - 2**n) n`` for every ``k <= 2**n`` and, on a random antipodal family
    per sample, that ``e(A) = f(A_n^+)``.
    """
    if n < 1:
        raise InputError("n must be at least 1")
    rng = _rng(seed, 0)
    found: list[str] = []
    per_identity = {"handshake": 0, "complement": 0, "sections": 0, "F_complement": 0, "antipodal_section": 0}
    bad = 0
    pairs = PairIndex(n)
    for _ in range(samples):
        A = random_family(rng, n)
        i = int(rng.integers(1, n + 1))
        for name, value in identity_residuals(A, i).items():
            per_identity[name] += 1
            if value:
                bad += 1
                found.append(f"{name} i={i} {A.serialize()} residual={value}")
        S = pairs.family(random_family(rng, n - 1).bits)
        per_identity["antipodal_section"] += 1
        upper, _ = sections(S, n)
        if not is_antipodal(S) or internal_edges(S) != potential_f(upper):
            bad += 1
            found.append(f"antipodal_section {S.serialize()}")
    for k in range((1 << n) + 1):
        per_identity["F_complement"] += 1
        if 2 * F_value(k) - 2 * F_value((1 << n) - k) != (2 * k - (1 << n)) * n:
            bad += 1
            found.append(f"F_complement k={k}")
    return VerificationReport(
        "identities", n, "sampled", seed=seed,
        instances=sum(per_identity.values()), violation_count=bad,
        violations=tuple(sorted(found)[:VIOLATION_CAP]), notes=per_identity,
    )


# -- exhaustive minimisation -------------------------------------------------------


def minimize_boundary(
    n: int, m: int, antipodal_only: bool, max_witnesses: int = 8
) -> tuple[int, list[Family]]:
    """Least ``|∂A|`` over families (or antipodal families) of size ``m``, with witnesses."""
    if not 0 <= m <= 1 << n:
        raise InputError(f"size {m} outside [0, 2**{n}]")
    if antipodal_only:
        if n > THEOREM1_EXHAUSTIVE_MAX_N or n < 1:
            raise CapabilityError(f"antipodal minimisation limited to 1 <= n <= {THEOREM1_EXHAUSTIVE_MAX_N}")
        if m % 2:
            raise CapabilityError("no antipodal family has odd size")
        L = batch.from_ints(np.arange(1 << (1 << (n - 1)), dtype=np.uint64), n - 1)
        L = L[batch.sizes(L) == m // 2]
        M = batch.antipodal_from_pairs(L)
    else:
        if n > UNRESTRICTED_MIN_MAX_N:
            raise CapabilityError(f"unrestricted minimisation limited to n <= {UNRESTRICTED_MIN_MAX_N}")
        M = batch.from_ints(np.arange(1 << (1 << n), dtype=np.uint64), n)
        M = M[batch.sizes(M) == m]
    boundary = batch.edge_boundary(M, n)
    low = int(boundary.min())
    rows = np.flatnonzero(boundary == low)[:max_witnesses]
    return low, [batch.to_family(M[r], n) for r in rows]

import numpy as np
import pytest

from antipodal import batch, checks
from antipodal.binary_order import F_value, FTable
from antipodal.checks import (
    check_identities,
    check_lemma3,
    check_lemma4,
    check_lemma5,
    check_lemma6,
    check_theorem1,
    check_theorem2,
    identity_residuals,
    lemma6_slack,
    minimize_boundary,
)
from antipodal.constructions import PairIndex, theorem_rhs
from antipodal.cube import Family, antipodal_image, edge_boundary, family_counts, potential_f
from antipodal.errors import CapabilityError, InputError
from antipodal.report import VerificationReport, merge_all

from conftest import as_sets, oracle_boundary, oracle_f, oracle_F


def test_batch_matches_scalar():
    rng = np.random.default_rng(3)
    for n in range(1, 8):
        M = rng.integers(0, 2, size=(40, 1 << n), dtype=np.uint8)
        fams = [batch.to_family(row, n) for row in M]
        assert np.array_equal(batch.from_families(fams), M)
        assert batch.potential_f(M, n).tolist() == [potential_f(A) for A in fams]
        assert batch.edge_boundary(M, n).tolist() == [edge_boundary(A) for A in fams]
        up, lo = batch.section_sizes(M, n)
        from antipodal.cube import sections

        for r, A in enumerate(fams):
            for i in range(1, n + 1):
                u, l = sections(A, i)
                assert (up[r, i - 1], lo[r, i - 1]) == (u.size, l.size)
    vals = np.arange(256, dtype=np.uint64)
    assert [batch.to_family(r, 3).bits for r in batch.from_ints(vals, 3)] == list(range(256))


def test_random_of_sizes_hits_target():
    rng = np.random.default_rng(0)
    target = rng.integers(0, 33, size=100)
    assert np.array_equal(batch.random_of_sizes(rng, 32, target).sum(axis=1), target)


# -- Theorem 2 -----------------------------------------------------------------


def test_theorem2_small_exhaustive():
    r = check_theorem2(2)
    assert (r.instances, r.violation_count, r.complete) == (16, 0, True)


def test_theorem2_matches_set_oracle_n3():
    n = 3
    least = {}
    for bits in range(256):
        S = as_sets(Family(n, bits))
        size = len(S)
        bound = 2 * oracle_F(size) + (2 * size - 8 if size > 4 else 0)
        slack = bound - oracle_f(n, S)
        assert slack >= 0
        low, cnt = least.get(size, (None, 0))
        if low is None or slack < low:
            least[size] = (slack, 1)
        elif slack == low:
            least[size] = (low, cnt + 1)
    assert check_theorem2(n).witnesses == least


def test_theorem2_subcubes_are_tight():
    for n in range(2, 9):
        for k in range(n):
            S = Family.from_codes(n, range(1 << k))
            assert potential_f(S) == k * (1 << k) == 2 * F_value(1 << k)


def test_theorem2_n4():
    r = check_theorem2(4)
    assert r.instances == 65536 and r.passed and r.complete
    # every size attains its bound
    assert all(v[0] == 0 for v in r.witnesses.values())


def test_theorem2_budget_and_capability():
    r = check_theorem2(4, budget=1000)
    assert r.instances == 1000 and not r.complete
    with pytest.raises(CapabilityError):
        check_theorem2(5)
    with pytest.raises(InputError):
        check_theorem2(3, mode="bogus")


def test_theorem2_detects_broken_bound(monkeypatch):
    real = checks.default_table()
    shrunk = FTable(np.maximum(real.values - 1, 0))
    monkeypatch.setattr(checks, "default_table", lambda: shrunk)
    r = check_theorem2(3)
    assert not r.passed
    assert 0 < len(r.violations) <= 16
    assert list(r.violations) == sorted(r.violations)


# -- Theorem 1 -----------------------------------------------------------------


def _oracle_antipodal_minima(n):
    best = {}
    P = PairIndex(n)
    for mask in range(1 << len(P)):
        A = P.family(mask)
        b = oracle_boundary(n, as_sets(A))
        best[A.size] = min(best.get(A.size, b), b)
    return best


def test_theorem1_n3():
    r = check_theorem1(3)
    assert r.instances == 16 and r.passed
    assert r.witnesses[4][0] == 8 == theorem_rhs(3, 4)
    assert {m: w[0] for m, w in r.witnesses.items()} == _oracle_antipodal_minima(3)
    assert r.witnesses[8] == (0, 1)


def test_theorem1_n5_tight_everywhere():
    r = check_theorem1(5)
    assert r.instances == 65536 and r.passed
    assert r.notes["tight_sizes"] == 17
    assert sorted(r.witnesses) == list(range(0, 33, 2))


def test_theorem1_detects_loose_rhs(monkeypatch):
    monkeypatch.setattr(checks, "theorem_rhs", lambda n, m: theorem_rhs(n, m) + 1)
    r = check_theorem1(3)
    assert not r.passed
    assert any(v.startswith("boundary<rhs") for v in r.violations)
    # each minimiser now undercuts the bound, and no size is tight
    minimisers = sum(count for _, count in r.witnesses.values())
    assert r.violation_count == minimisers + 5


def test_theorem2_report_predicts_theorem1():
    # A ↦ A_n^+ is a bijection from antipodal families of Q_5 onto all families of Q_4
    # with e(A) = f(A_5^+), so the least boundary per size follows from Theorem 2 slacks.
    t2 = check_theorem2(4)
    t1 = check_theorem1(5)
    for m in range(0, 33, 2):
        h = m // 2
        bound = 2 * F_value(h) + (2 * h - 16 if h > 8 else 0)
        max_e = bound - t2.witnesses[h][0]
        assert t1.witnesses[m][0] == 5 * m - 2 * max_e
        assert t1.witnesses[m][1] == t2.witnesses[h][1]


def test_sampled_runs_are_replayable_and_worker_independent():
    a = check_theorem1(7, mode="sampled", budget=20_000, seed=5)
    b = check_theorem1(7, mode="sampled", budget=20_000, seed=5, workers=2)
    c = check_theorem1(7, mode="sampled", budget=20_000, seed=6)
    assert a.to_text() == b.to_text()
    assert a.to_text() != c.to_text()
    assert a.passed and a.mode == "sampled" and a.seed == 5
    d = check_theorem2(5, mode="sampled", budget=20_000, seed=5, workers=3)
    assert d.to_text() == check_theorem2(5, mode="sampled", budget=20_000, seed=5).to_text()


def test_exhaustive_worker_independent():
    assert check_theorem1(5, workers=2).to_text() == check_theorem1(5).to_text()


# -- lemmas ----------------------------------------------------------------------


def test_lemma3_small():
    r = check_lemma3(64)
    assert r.instances == 65 * 65 and r.passed
    assert r.notes["equality_pairs"] >= r.notes["equality_outside_stated_case"] > 0


def test_lemma4():
    r = check_lemma4(6)
    brute = sum(
        1
        for n in range(1, 7)
        for y in range(1 << (n - 1), (1 << n) + 1)
        for x in range((1 << n) - y + 1)
        if y <= (1 << (n - 1)) + x
    )
    assert r.instances == brute and r.passed


def test_lemma5_examples():
    for n in range(2, 7):
        half_cube = Family.from_codes(n, range(1 << (n - 1)))
        M = batch.from_families([half_cube, Family.empty(n)])
        up, lo = batch.section_sizes(M, n)
        diff = abs(up - lo)
        assert diff[0, n - 1] == 1 << (n - 1)
        assert all(diff[0, :n - 1] == 0)
        assert not diff[1].any()
    r = check_lemma5(3)
    assert (r.instances, r.mode, r.violation_count) == (256, "exhaustive", 0)
    assert check_lemma5(4).instances == 65536
    s = check_lemma5(8, samples=2000, seed=3)
    assert s.mode == "sampled" and s.passed
    with pytest.raises(InputError):
        check_lemma5(1)
    with pytest.raises(CapabilityError):
        check_lemma5(5, exhaustive=True)


def test_lemma6_examples():
    for n in range(1, 6):
        P = PairIndex(n)
        C = P.family((1 << len(P)) - 1 >> 1)
        c = family_counts(C, C)
        s = lemma6_slack(C.size, C.size, c["and"], c["a_and_bbar"], c["a_and_abar"], c["b_and_bbar"])
        # LHS 4|C|, RHS |C| + |C| + 2|C|
        assert s == 0
        D = Family(n, 0b1 << n - 1 if n else 1)
        c = family_counts(Family.empty(n), D)
        assert lemma6_slack(0, D.size, c["and"], c["a_and_bbar"], 0, c["b_and_bbar"]) >= 0
    r = check_lemma6(3)
    assert (r.instances, r.violation_count) == (65536, 0)
    assert check_lemma6(6, samples=3000, seed=2).passed


# -- identities --------------------------------------------------------------------


def test_identity_residuals_zero():
    rng = np.random.default_rng(2)
    for _ in range(300):
        A = checks.random_family(rng, 6)
        for i in range(1, 7):
            assert set(identity_residuals(A, i).values()) == {0}


def test_check_identities():
    r = check_identities(6, samples=500, seed=9)
    assert r.passed
    assert r.notes["F_complement"] == 65
    assert r.notes["sections"] == 500


def test_identities_on_full_cube_and_half():
    n = 5
    assert identity_residuals(Family.full(n), 3)["handshake"] == 0
    half = Family.from_codes(n, range(16))
    from antipodal.cube import complement_family

    assert potential_f(complement_family(half)) == potential_f(half)


# -- minimisation ----------------------------------------------------------------


def test_minimize_boundary():
    low, wit = minimize_boundary(3, 4, antipodal_only=False)
    assert low == 4 == edge_boundary(Family.from_codes(3, range(4)))
    assert all(edge_boundary(w) == 4 and w.size == 4 for w in wit)
    low, wit = minimize_boundary(3, 4, antipodal_only=True)
    assert low == 8
    assert minimize_boundary(4, 0, False)[0] == 0 == minimize_boundary(5, 0, True)[0]
    with pytest.raises(CapabilityError):
        minimize_boundary(5, 4, False)
    with pytest.raises(CapabilityError):
        minimize_boundary(6, 4, True)


def test_harper_baseline_small():
    # initial segments minimise the boundary among all families of their size
    for n in range(1, 5):
        for m in range((1 << n) + 1):
            low, _ = minimize_boundary(n, m, False)
            assert low == n * m - 2 * F_value(m)


# -- reports -----------------------------------------------------------------------


def test_report_merge_is_associative():
    parts = [
        VerificationReport("x", 3, "sampled", instances=i, violation_count=i % 2,
                           violations=tuple(f"v{j}" for j in range(i, i + 7)),
                           witnesses={i % 3: (i % 4, 1)}, seed=1)
        for i in range(6)
    ]
    left = merge_all(parts)
    right = parts[0].merge(parts[1].merge(parts[2].merge(merge_all(parts[3:]))))
    assert left.to_text() == right.to_text()
    assert len(left.violations) == 12 and left.instances == 15


def test_report_text_roundtrip_and_csv():
    r = check_theorem1(4)
    assert VerificationReport.from_text(r.to_text()).to_text() == r.to_text()
    lines = r.to_csv().splitlines()
    assert lines[0] == "statement,n,mode,instances,violations,complete,passed,seed"
    assert lines[1] == "thm1,4,exhaustive,256,0,true,true,"


def test_merge_rejects_mismatch():
    with pytest.raises(ValueError):
        VerificationReport("a", 1, "sampled").merge(VerificationReport("b", 1, "sampled"))

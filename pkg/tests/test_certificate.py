import copy
import random

import pytest
from hypothesis import given, settings, strategies as st

from antipodal.binary_order import F_value
from antipodal.certificate import (
    BASE,
    CASE1,
    CASE2,
    COMPLEMENT,
    Certificate,
    _choose_coordinate,
    trace_induction,
    verify_certificate,
)
from antipodal.constructions import extremal_family, nested_chain
from antipodal.cube import Family, antipodal_image, potential_f
from antipodal.errors import InputError


def random_family(r, n, max_size=None):
    N = 1 << n
    size = r.randint(0, N if max_size is None else max_size)
    return Family.from_codes(n, r.sample(range(N), size))


def test_base_leaf():
    A = Family.from_codes(1, [0])
    cert = trace_induction(A)
    assert cert.root.case == BASE
    assert (cert.root.f, cert.root.bound) == (0, 0)
    assert verify_certificate(cert, A)


def test_root_bound_for_union_of_subcubes():
    for n in range(2, 9):
        for k in range(1, n):
            S = Family.from_codes(n, range(1 << (k - 1)))
            A = S | antipodal_image(S)
            cert = trace_induction(A)
            assert cert.root.f == k * (1 << k)
            assert cert.root.bound == 2 * F_value(1 << k)
            assert verify_certificate(cert, A)
            assert all(s.value >= 0 for node in cert.root.walk() for s in node.slacks)


def test_tree_shape():
    r = random.Random(0)
    for _ in range(100):
        n = r.randint(1, 7)
        A = random_family(r, n)
        cert = trace_induction(A)
        for node in cert.root.walk():
            if node.case == BASE:
                assert node.n == 1 and not node.children
            elif node.case == COMPLEMENT:
                assert node.form == "large" and len(node.children) == 1
                assert node.children[0].n == node.n
            else:
                assert node.case in (CASE1, CASE2) and node.n >= 2
                assert [c.n for c in node.children] == [node.n - 1] * 2
                assert node.children[0].size <= node.children[1].size
        assert (cert.root.case == COMPLEMENT) == (A.size > 1 << (n - 1))


def test_case_dichotomy_exhaustive():
    for n in range(2, 5):
        for bits in range(1 << (1 << n)):
            A = Family(n, bits)
            if A.size <= 1 << (n - 1):
                case, i = _choose_coordinate(A)
                assert case in (CASE1, CASE2) and 1 <= i <= n


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 6), st.data())
def test_tracer_output_always_verifies(n, data):
    A = Family(n, data.draw(st.integers(0, (1 << (1 << n)) - 1)))
    cert = trace_induction(A)
    assert cert.root.f == potential_f(A)
    verdict = verify_certificate(cert, A)
    assert verdict, verdict.failures


def test_nested_chain_certificates():
    for n in range(1, 7):
        for A in nested_chain(n):
            assert verify_certificate(trace_induction(A), A)


def test_corrupting_any_slack_is_detected():
    A = extremal_family(5, 10)
    cert = trace_induction(A)
    nodes = list(cert.root.walk())
    total = 0
    for idx, node in enumerate(nodes):
        for j in range(len(node.slacks)):
            bad = copy.deepcopy(cert)
            target = list(bad.root.walk())[idx].slacks[j]
            target.value = -1
            verdict = verify_certificate(bad, A)
            assert not verdict
            assert any(target.name in f for f in verdict.failures)
            total += 1
    assert total > 10


def test_corrupting_other_fields_is_detected():
    r = random.Random(4)
    A = random_family(r, 6, max_size=32)
    cert = trace_induction(A)
    internal = [n for n in cert.root.walk() if n.case in (CASE1, CASE2)]
    for mutate in (
        lambda c: setattr(c.root, "f", c.root.f + 1),
        lambda c: setattr(c.root, "bound", c.root.bound + 2),
        lambda c: setattr(c.root, "swapped", not c.root.swapped),
        lambda c: setattr(c.root, "coord", c.root.coord % 6 + 1),
        lambda c: c.root.children.pop(),
        lambda c: setattr(c.root, "case", "CASE3"),
        lambda c: c.root.slacks[0].operands.update(x=99),
    ):
        bad = copy.deepcopy(cert)
        mutate(bad)
        assert not verify_certificate(bad, A)
    assert internal


def test_locus_names_path():
    A = extremal_family(4, 6)
    cert = trace_induction(A)
    cert.root.children[1].slacks[-1].value = -1
    failures = verify_certificate(cert, A).failures
    assert failures and all(f.startswith("root/1") for f in failures)


def test_binding_to_family():
    A = extremal_family(4, 4)
    B = extremal_family(4, 6)
    assert not verify_certificate(trace_induction(A), B)
    # an isomorphic family with identical counts is still rejected
    C = Family.from_codes(4, [2, 3, 12, 13])
    assert not verify_certificate(trace_induction(A), C)


def test_large_family_goes_through_complement():
    A = Family.full(3)
    cert = trace_induction(A)
    assert cert.root.case == COMPLEMENT
    assert cert.root.bound == 2 * F_value(8) + 16 - 8
    assert verify_certificate(cert, A)


def test_serialization_roundtrip_bytes():
    r = random.Random(2)
    for _ in range(30):
        A = random_family(r, r.randint(1, 6))
        text = trace_induction(A).to_text()
        assert Certificate.from_text(text).to_text() == text


def test_malformed_certificate():
    with pytest.raises(InputError):
        Certificate.from_text("{not json")
    with pytest.raises(InputError):
        Certificate.from_text('{"family": "n=1 hex=1"}')


def test_dimension_zero_rejected():
    with pytest.raises(InputError):
        trace_induction(Family.empty(0))

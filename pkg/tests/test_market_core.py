import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from envyfree import (
    Assignment,
    audit_envy_free,
    default_tol,
    is_inverse_monge,
    materialize_matrix,
    social_welfare,
    sorted_view,
    validate_instance,
    valuation,
)
from envyfree.market_core import (
    EmptyInstance,
    IndexOutOfRange,
    LengthMismatch,
    NonFiniteValue,
    NonPositiveValue,
    NonSquareMatrix,
    Outcome,
    build_outcome,
)

from conftest import int_instances, real_instances

A = validate_instance([3, 1], [2, 1])
B = validate_instance([4, 2, 1], [3, 2, 1])


def test_validate_accepts_well_formed():
    assert A.n == 2
    assert A.budgets == (3.0, 1.0)


@pytest.mark.parametrize("budgets, qualities, exc", [
    ([3, 0], [2, 1], NonPositiveValue),
    ([3, 1], [2, -1], NonPositiveValue),
    ([3, 1], [2], LengthMismatch),
    ([], [], EmptyInstance),
    ([3, math.nan], [2, 1], NonFiniteValue),
    ([3, 1], [math.inf, 1], NonFiniteValue),
])
def test_validate_rejects(budgets, qualities, exc):
    with pytest.raises(exc):
        validate_instance(budgets, qualities)


def test_valuation():
    assert valuation(A, 0, 1) == 3
    assert valuation(A, 1, 0) == 2
    assert valuation(B, 0, 0) == 12
    with pytest.raises(IndexOutOfRange):
        valuation(A, 2, 0)


@pytest.mark.parametrize("budgets, qualities, buyers, items", [
    ([1, 3], [1, 2], (1, 0), (1, 0)),
    ([2, 2], [5, 7], (0, 1), (1, 0)),
    ([4, 2, 1], [3, 2, 1], (0, 1, 2), (0, 1, 2)),
    ([5, 5, 5], [1, 1, 1], (0, 1, 2), (0, 1, 2)),
])
def test_sorted_view(budgets, qualities, buyers, items):
    view = sorted_view(validate_instance(budgets, qualities))
    assert view.buyer_order == buyers
    assert view.item_order == items


@pytest.mark.parametrize("budgets, qualities, expected", [
    ([3, 1], [2, 1], [[6, 3], [2, 1]]),
    ([1, 3], [1, 2], [[6, 3], [2, 1]]),
    ([4, 2, 1], [3, 2, 1], [[12, 8, 4], [6, 4, 2], [3, 2, 1]]),
])
def test_materialize_matrix(budgets, qualities, expected):
    inst = validate_instance(budgets, qualities)
    np.testing.assert_array_equal(materialize_matrix(inst, sorted_view(inst)), expected)


def test_is_inverse_monge():
    assert is_inverse_monge([[6, 3], [2, 1]])
    assert not is_inverse_monge([[1, 3], [2, 1]])
    assert is_inverse_monge([[5]])
    with pytest.raises(NonSquareMatrix):
        is_inverse_monge([[1, 2, 3], [4, 5, 6]])


def _all_pairs_monge(M, tol=0.0):
    n = len(M)
    return all(M[i][k] + M[j][l] >= M[i][l] + M[j][k] - tol
               for i in range(n) for j in range(i + 1, n)
               for k in range(n) for l in range(k + 1, n))


@given(st.integers(2, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-20, 20), min_size=n, max_size=n),
                       min_size=n, max_size=n)))
def test_adjacent_check_agrees_with_all_pairs(M):
    assert is_inverse_monge(M) == _all_pairs_monge(M)


@given(int_instances(max_n=12, max_value=10**6))
def test_sorted_integer_matrix_is_inverse_monge_exactly(inst):
    assert is_inverse_monge(materialize_matrix(inst, sorted_view(inst)), tol=0.0)


@given(real_instances(max_n=12))
def test_sorted_real_matrix_is_inverse_monge_within_tol(inst):
    M = materialize_matrix(inst, sorted_view(inst))
    assert is_inverse_monge(M, tol=1e-9 * np.abs(M).max())


@given(real_instances(max_n=10))
def test_sorted_view_is_sorted_and_stable(inst):
    view = sorted_view(inst)
    assert view == sorted_view(inst)
    for order, keys in ((view.buyer_order, inst.budgets), (view.item_order, inst.qualities)):
        assert sorted(order) == list(range(inst.n))
        for a, b in zip(order, order[1:]):
            assert keys[a] > keys[b] or (keys[a] == keys[b] and a < b)


def test_social_welfare():
    assert social_welfare(A, Assignment((0, 1))) == 7
    assert social_welfare(A, Assignment((1, 0))) == 5
    assert social_welfare(B, Assignment((0, 1, 2))) == 17


def test_audit_accepts_optimal_prices():
    rep = audit_envy_free(A, build_outcome(A, Assignment((0, 1)), [4, 1]))
    assert rep.passed
    assert rep.worst_violation == 0.0
    assert rep.violating_pairs == []


def test_audit_flags_envy():
    # buyer 0: 6 - 5 = 1 on its own item, 3 - 1 = 2 on item 1
    rep = audit_envy_free(A, build_outcome(A, Assignment((0, 1)), [5, 1]))
    assert not rep.envy_free
    assert rep.individually_rational
    assert rep.violating_pairs == [(0, 1)]
    assert rep.worst_violation == -1.0


def test_audit_flags_overpricing():
    rep = audit_envy_free(A, build_outcome(A, Assignment((0, 1)), [7, 1]))
    assert not rep.individually_rational
    assert rep.irrational_buyers == [0]


def test_audit_flags_imperfect_and_bad_revenue():
    out = Outcome(Assignment((0, 0)), (1.0, 1.0), 2.0, (0.0, 0.0))
    assert not audit_envy_free(A, out).perfect
    out = Outcome(Assignment((0, 1)), (4.0, 1.0), 6.0, (2.0, 0.0))
    assert not audit_envy_free(A, out).revenue_consistent


def test_audit_length_mismatch():
    out = Outcome(Assignment((0, 1, 2)), (1.0, 1.0, 1.0), 3.0, ())
    with pytest.raises(LengthMismatch):
        audit_envy_free(A, out)


def test_default_tol_scales_with_largest_valuation():
    assert default_tol(B) == pytest.approx(1e-9 * 13)


def test_outcome_surpluses():
    out = build_outcome(B, Assignment((0, 1, 2)), [7, 3, 1])
    assert out.revenue == 11
    assert out.surpluses == (5.0, 1.0, 0.0)

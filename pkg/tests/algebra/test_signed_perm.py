"""The hyperoctahedral group B_n."""

from math import factorial

import numpy as np
import pytest
from hypothesis import given, strategies as st

from algebra.signed_perm import (
    enumerate_signed_perms,
    has_negative_cycle,
    positive_cycle_count,
    signed_perm,
    signed_perm_group,
    sp_block_sum,
    sp_compose,
    sp_cycles,
    sp_identity,
    sp_inverse,
    sp_negate,
    sp_swap,
)
from core.errors import DimMismatch, ValidationError


def signed_perms(n):
    return st.sampled_from(enumerate_signed_perms(n))


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_group_order(n):
    assert len(enumerate_signed_perms(n)) == 2 ** n * factorial(n)
    assert signed_perm_group(n).order == 2 ** n * factorial(n)


def test_canonical_order_and_labels():
    elements = enumerate_signed_perms(1)
    assert [f.label for f in elements] == ['<+0>', '<-0>']
    assert enumerate_signed_perms(2)[0] == sp_identity(2)
    assert sp_swap(3, 0, 1).label == '<+1 +0 +2>'


def test_validated_constructor():
    assert signed_perm([1, 0], [1, -1]).dim == 2
    with pytest.raises(ValidationError):
        signed_perm([0, 0], [1, 1])
    with pytest.raises(ValidationError):
        signed_perm([0, 1], [1, 2])
    with pytest.raises(ValidationError):
        signed_perm([0, 1], [1])


def test_compose_rejects_mismatched_dims():
    with pytest.raises(DimMismatch):
        sp_compose(sp_identity(1), sp_identity(2))


@given(signed_perms(3), signed_perms(3))
def test_composition_matches_matrix_product(f, g):
    assert np.array_equal(sp_compose(f, g).int_matrix(), f.int_matrix() @ g.int_matrix())
    assert sp_compose(f, g).matrix() == f.matrix() @ g.matrix()


@given(signed_perms(3))
def test_inverse(f):
    assert sp_compose(f, sp_inverse(f)) == sp_identity(3)
    assert sp_compose(sp_inverse(f), f) == sp_identity(3)


@given(signed_perms(3), st.tuples(*[st.sampled_from((1, -1))] * 3))
def test_apply_is_matrix_action(f, v):
    assert f.apply(v) == tuple(int(x) for x in f.int_matrix() @ np.array(v))


@given(signed_perms(2), signed_perms(1))
def test_block_sum_is_block_diagonal(f, g):
    m = sp_block_sum(f, g).int_matrix()
    assert np.array_equal(m[:2, :2], f.int_matrix())
    assert np.array_equal(m[2:, 2:], g.int_matrix())
    assert not m[:2, 2:].any() and not m[2:, :2].any()


def test_group_table_agrees_with_composition():
    B = signed_perm_group(2)
    for a, f in enumerate(B.elements):
        assert B.compose(a, B.inverse(a)) == B.group.identity
        for b, g in enumerate(B.elements):
            assert B.elements[B.compose(a, b)] == sp_compose(f, g)


def test_cycle_signs():
    assert sp_cycles(sp_identity(3)) == [((0,), 1), ((1,), 1), ((2,), 1)]
    assert positive_cycle_count(sp_identity(3)) == 3
    assert has_negative_cycle(sp_negate(2, 1))
    # a transposition with one sign flipped is a single negative 2-cycle
    twisted = sp_compose(sp_negate(2, 0), sp_swap(2, 0, 1))
    assert positive_cycle_count(twisted) == 0
    assert has_negative_cycle(twisted)

"""Exact rational matrices and fixed-subspace dimensions."""

import pytest
from sympy import Rational

from algebra.groups import cyclic_group
from algebra.rational_matrix import RationalMatrix, averaging_projector, fixed_subspace_dim
from categories.site import character_rep, regular_rep, trivial_rep
from core.errors import DimMismatch, NotASubgroup


def test_rank_is_exact():
    m = RationalMatrix.from_rows([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    assert m.rank() == 2
    assert RationalMatrix.identity(3).rank() == 3
    assert RationalMatrix.zeros(0, 0).rank() == 0


def test_arithmetic():
    a = RationalMatrix.from_rows([[1, 2], [3, 4]])
    i = RationalMatrix.identity(2)
    assert a @ i == a
    assert a - a == RationalMatrix.zeros(2, 2)
    assert (a + a) == a.scale(2)
    assert a.scale(Rational(1, 2)).tolist()[0][0] == Rational(1, 2)
    with pytest.raises(DimMismatch):
        a @ RationalMatrix.identity(3)
    with pytest.raises(DimMismatch):
        a + RationalMatrix.identity(3)


def test_averaging_projector_is_idempotent():
    C2 = cyclic_group(2)
    reg = regular_rep(C2)
    p = averaging_projector(reg, C2.elements)
    assert p @ p == p
    assert p.tolist() == [[Rational(1, 2)] * 2] * 2


def test_fixed_subspace_dims():
    C2 = cyclic_group(2)
    sign = character_rep(C2, (1, -1), 'sign')
    assert fixed_subspace_dim(sign, C2.elements) == 0
    assert fixed_subspace_dim(sign, [C2.identity]) == 1
    assert fixed_subspace_dim(regular_rep(C2), C2.elements) == 1
    assert fixed_subspace_dim(trivial_rep(C2, 2), C2.elements) == 2
    C3 = cyclic_group(3)
    with pytest.raises(NotASubgroup):
        fixed_subspace_dim(regular_rep(C3), [C3.identity, 1])

"""Finite groups, homomorphisms and products."""

import pytest
from hypothesis import given, strategies as st

from algebra.groups import (
    all_homomorphisms,
    cyclic_group,
    cyclic_subgroup,
    generated_subgroup,
    group_from_permutations,
    group_from_table,
    group_product,
    hom_compose,
    hom_from_image,
    identity_hom,
    is_subgroup,
    require_subgroup,
    symmetric_group,
    trivial_group,
    trivial_hom,
)
from core.errors import NoIdentity, NoInverse, NotAHomomorphism, NotASubgroup, NotAssociative, ValidationError

S3 = symmetric_group(3)
C2 = cyclic_group(2)
C3 = cyclic_group(3)


def test_presets_have_expected_orders():
    assert trivial_group().order == 1
    assert C2.order == 2
    assert C3.order == 3
    assert S3.order == 6
    assert S3.labels[0] == '012'
    assert C3.labels == ('e', 'g', 'g2')


def test_non_associative_table_names_a_triple():
    # a Latin square with identity 0 that is not associative
    table = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    with pytest.raises(NotAssociative) as info:
        group_from_table(table, 'L5')
    a, b, c = info.value.context['triple']
    assert table[table[a][b]][c] != table[a][table[b][c]]


def test_missing_identity_and_inverse():
    with pytest.raises(NoIdentity):
        group_from_table([[0, 0], [0, 0]], 'zero')
    # {0, 1} with max: associative, identity 0, but 1 has no inverse
    with pytest.raises(NoInverse):
        group_from_table([[0, 1], [1, 1]], 'max')


def test_malformed_tables():
    with pytest.raises(ValidationError):
        group_from_table([], 'empty')
    with pytest.raises(ValidationError):
        group_from_table([[0, 1], [1]], 'ragged')
    with pytest.raises(ValidationError):
        group_from_table([[0, 2], [2, 0]], 'range')


def test_index_of_unknown_label():
    assert C3.index_of('g2') == 2
    with pytest.raises(KeyError):
        C3.index_of('h')


@given(st.integers(0, 5), st.integers(0, 5), st.integers(0, 5))
def test_s3_is_associative_with_inverses(a, b, c):
    assert S3.mul(S3.mul(a, b), c) == S3.mul(a, S3.mul(b, c))
    assert S3.mul(a, S3.inv(a)) == S3.identity


def test_element_orders_and_powers():
    assert sorted(S3.element_order(g) for g in S3.elements) == [1, 2, 2, 2, 3, 3]
    g = C3.index_of('g')
    assert C3.power(g, 3) == C3.identity
    assert set(generated_subgroup(S3, S3.generators())) == set(S3.elements)


def test_subgroups():
    rotation = next(g for g in S3.elements if S3.element_order(g) == 3)
    assert len(cyclic_subgroup(S3, rotation)) == 3
    assert is_subgroup(S3, cyclic_subgroup(S3, rotation))
    assert not is_subgroup(S3, [S3.identity, rotation])
    with pytest.raises(NotASubgroup):
        require_subgroup(S3, [S3.identity, rotation])


def test_hom_validation():
    sign = [0 if S3.element_order(g) != 2 else 1 for g in S3.elements]
    alpha = hom_from_image(S3, C2, sign, 'sign')
    assert alpha(S3.identity) == C2.identity
    with pytest.raises(NotAHomomorphism):
        hom_from_image(C3, C2, [0, 1, 1], 'broken')
    with pytest.raises(NotAHomomorphism):
        hom_from_image(C2, C2, [1, 0], 'no-identity')


@pytest.mark.parametrize("source,target,count", [
    (C2, C2, 2),
    (C2, S3, 4),
    (C3, S3, 3),
    (S3, C2, 2),
    (C3, C2, 1),
    (S3, S3, 6 + 1 + 3),
])
def test_all_homomorphisms_counts(source, target, count):
    homs = all_homomorphisms(source, target)
    assert len(homs) == count
    assert len({h.image for h in homs}) == count


def test_hom_composition_with_identity():
    for alpha in all_homomorphisms(C2, S3):
        assert hom_compose(identity_hom(S3), alpha).image == alpha.image
        assert hom_compose(alpha, identity_hom(C2)).image == alpha.image


def test_trivial_hom_is_terminal():
    e = trivial_group()
    iota = trivial_hom(S3, e)
    assert set(iota.image) == {e.identity}
    for alpha in all_homomorphisms(C2, S3):
        assert hom_compose(iota, alpha).image == trivial_hom(C2, e).image


def test_permutations_must_be_closed():
    assert group_from_permutations([(0, 1, 2), (1, 2, 0), (2, 0, 1)], 'Z3').order == 3
    with pytest.raises(ValidationError):
        group_from_permutations([(0, 1, 2), (1, 2, 0)], 'open')


def test_group_product():
    prod = group_product(C2, C2)
    assert prod.group.order == 4
    assert prod.group.label(prod.pair(1, 0)) == '(g,e)'
    assert prod.diagonal is not None
    for g in C2.elements:
        d = prod.diagonal(g)
        assert prod.left(d) == g and prod.right(d) == g
    assert group_product(C2, C3).diagonal is None

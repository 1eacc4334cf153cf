"""Finite pointed G-sets, smash products and map spaces."""

import pytest

from algebra.groups import all_homomorphisms, cyclic_group, trivial_group
from categories import gspaces
from categories.gspaces import (
    GSetCatalog,
    check_top_fibration,
    check_top_structure,
    compose_maps,
    equivariant_maps,
    find_isomorphism,
    gset_from_generators,
    identity_map,
    is_equivariant,
    is_isomorphism,
    map_space,
    one_point_set,
    orbits,
    restrict_gset,
    smash,
    smash_associator,
    smash_maps,
    smash_left_unitor,
    smash_right_unitor,
    stabilizer,
    trivial_gset,
    two_point_set,
    validate_gset,
    validate_map,
)
from core.errors import ExtentMismatch, GSetValidationError, MapValidationError

C2 = cyclic_group(2)
G = C2.index_of('g')


def swap_set(labels=('*', 'a', 'b')):
    """C2 swapping the two non-base points."""
    return gset_from_generators(C2, list(labels), 0, {G: [0, 2, 1]})


def test_validate_gset_rejections():
    with pytest.raises(GSetValidationError):
        validate_gset(C2, ['*', 'a'], 0, [[0, 1], [1, 0]])
    with pytest.raises(GSetValidationError):
        validate_gset(C2, ['*', 'a', 'a'], 0, [[0, 1, 2], [0, 2, 1]])
    with pytest.raises(GSetValidationError):
        validate_gset(C2, ['*', 'a', 'b'], 0, [[0, 1, 2], [0, 1, 1]])
    with pytest.raises(GSetValidationError):
        validate_gset(C2, ['*', 'a', 'b'], 0, [[0, 2, 1], [0, 1, 2]])


def test_gset_from_generators_closes_the_table():
    X = swap_set()
    assert X.action == ((0, 1, 2), (0, 2, 1))
    assert X.index_of('b') == 2
    assert orbits(X) == [(0,), (1, 2)]
    assert stabilizer(X, 1) == (C2.identity,)


def test_smash_labels_and_action():
    X = swap_set()
    XX = smash(X, X)
    assert XX.elements == ('*', 'a^a', 'a^b', 'b^a', 'b^b')
    assert XX.act(G, XX.index_of('a^b')) == XX.index_of('b^a')
    with pytest.raises(ExtentMismatch):
        smash(X, one_point_set(trivial_group()))


def test_unitors_and_associator_are_isomorphisms():
    X = swap_set()
    S0 = two_point_set(C2)
    assert is_isomorphism(smash_left_unitor(X))
    assert is_isomorphism(smash_right_unitor(X))
    assert is_isomorphism(smash_associator(X, S0, X))
    assert len(smash(one_point_set(C2), X)) == 1


def test_maps():
    X = swap_set()
    with pytest.raises(MapValidationError):
        validate_map(X, X, [1, 1, 2])
    with pytest.raises(MapValidationError):
        validate_map(X, X, [0, 1])
    flip = validate_map(X, X, [0, 2, 1])
    assert is_equivariant(flip)
    assert compose_maps(flip, flip) == identity_map(X)
    assert not is_equivariant(validate_map(X, X, [0, 1, 1]))


def test_smash_of_maps():
    X = swap_set()
    XX = smash(X, X)
    flip = validate_map(X, X, [0, 2, 1])
    assert smash_maps(identity_map(X), identity_map(X)) == identity_map(XX)
    f = smash_maps(flip, identity_map(X))
    assert is_isomorphism(f)
    assert f(XX.index_of('a^b')) == XX.index_of('b^b')
    assert compose_maps(f, f) == identity_map(XX)


def test_find_isomorphism():
    X = swap_set()
    Y = swap_set(('*', 'u', 'v'))
    f = find_isomorphism(X, Y)
    assert f is not None and is_isomorphism(f)
    trivial = gset_from_generators(C2, ['*', 'u', 'v'], 0, {G: [0, 1, 2]})
    assert find_isomorphism(X, trivial) is None


def test_map_space_and_equivariant_maps():
    X = swap_set()
    ms = map_space(X, X)
    assert len(ms) == 9
    flip = validate_map(X, X, [0, 2, 1])
    assert ms.map_at(ms.index_of(flip)) == flip
    # equivariant based maps of {*, a, b}: collapse, identity, swap
    images = sorted(f.map for f in equivariant_maps(X, X))
    assert images == [(0, 0, 0), (0, 1, 2), (0, 2, 1)]


def test_restriction_along_trivial_hom():
    e = trivial_group()
    alpha = all_homomorphisms(e, C2)[0]
    restricted = restrict_gset(alpha, swap_set())
    assert restricted.is_trivial and restricted.group == e


def small_catalog():
    e = trivial_group()
    groups = (e, C2)
    homs = tuple(a for s in groups for t in groups for a in all_homomorphisms(s, t))
    sets = {
        'e': (one_point_set(e), two_point_set(e)),
        'C2': (one_point_set(C2), two_point_set(C2), swap_set()),
    }
    return GSetCatalog(groups, homs, sets)


def test_top_checks_pass_on_small_catalog():
    catalog = small_catalog()
    fibration = check_top_fibration(catalog, max_size=3)
    structure = check_top_structure(catalog, max_size=3)
    assert fibration.passed, fibration.failures()
    assert structure.passed, structure.failures()
    assert structure.checks['top.smash-associator'].instances == 2 ** 3 + 3 ** 3


def test_fibration_naturality_sees_the_restricted_action(monkeypatch):
    # restriction that forgets the action: same tables of maps, wrong action
    monkeypatch.setattr(gspaces, 'restrict_gset',
                        lambda alpha, X: trivial_gset(alpha.source, X.elements, X.basepoint))
    report = check_top_fibration(small_catalog(), max_size=3)
    assert not report.checks['top.fibration-natural'].passed
    assert report.checks['top.fibration-natural'].witness['set'] == ['*', 'a', 'b']

"""Left Kan extension E, restriction R, the unit and counit, and the internal smash."""

import numpy as np
import pytest

from categories.functors import (
    GlobalSpace,
    IGSpaceFin,
    check_global,
    check_igspace,
    check_natural_map,
    constant_functor,
    identity_natural_map,
    natural_map_from_rule,
)
from categories.gspaces import gset_from_generators, one_point_set
from categories.kan import (
    check_counit,
    check_counit_naturality,
    check_ispace,
    check_ispace_map,
    check_triangles,
    check_unit,
    collapse_ispace_map,
    compose_ispace_maps,
    constant_ispace,
    counit_eps,
    extend_E,
    extend_global,
    extend_morphism,
    identity_ispace_map,
    internal_smash,
    kan_extension_at,
    kan_results,
    random_ispace,
    restrict_R,
    smash_unit_certificate,
    unit_eta,
)
from categories.spectra import constant_global, global_sphere, sphere_functor
from core.definitions import builtin_ispace
from core.errors import CatalogIncomplete, DimCapExceeded, ExtentMismatch, NonTrivialActionOnTrivialRep


@pytest.fixture(scope="module")
def S1():
    return builtin_ispace('sphere', 1)


@pytest.mark.parametrize("kind", ['sphere', 'point', 'constant', 'suspension'])
def test_builtin_ispaces_are_functors(kind):
    X = builtin_ispace(kind, 2)
    report = check_ispace(X)
    assert report.passed, report.failures()
    assert X.cap == 2


def test_value_beyond_cap(S1):
    with pytest.raises(DimCapExceeded):
        S1.value(2)


def test_sign_rep_oracle(S1, catalog1):
    """E S at the sign rep of C2: two non-base classes, swapped by g."""
    C2 = catalog1.group('C2')
    g = C2.index_of('g')
    result = kan_extension_at(S1, catalog1.rep('C2', 'sign'))
    assert len(result.value) == 3
    assert result.value.act(g, 1) == 2 and result.value.act(g, 2) == 1
    assert result.value.act(C2.identity, 1) == 1
    data = result.to_dict()
    assert data['basepoint'] == '*'
    assert data['rep'] == 'sign'
    assert len(data['classes']) == 3
    assert data['action']['g'] == [0, 2, 1]

    A = extend_E(S1, C2, catalog1)
    counit = counit_eps(A)
    k = A.index(catalog1.rep('C2', 'sign'))
    assert sorted(counit.eps.components[k].tolist()) == [0, 1, 2]


def test_trivial_rep_keeps_the_sphere(S1, catalog1):
    C2 = catalog1.group('C2')
    result = kan_extension_at(S1, catalog1.trivial(C2, 1))
    assert len(result.value) == 3
    assert result.value.is_trivial


def test_extension_beyond_cap(S1, catalog2):
    with pytest.raises(DimCapExceeded):
        kan_results(S1, catalog2.group('C2'), catalog2)


def test_extension_is_an_igspace(S1, catalog1):
    for group in catalog1.groups:
        assert check_igspace(extend_E(S1, group, catalog1)).passed


def test_global_extension(S1, catalog1):
    report = check_global(extend_global(S1, catalog1))
    assert report.passed, report.failures()


def test_global_extension_needs_trivial_extent(catalog1):
    C2 = catalog1.group('C2')
    X = constant_ispace(C2, gset_from_generators(C2, ['*', 'a', 'b'], 0, {1: [0, 2, 1]}), 1)
    with pytest.raises(ExtentMismatch):
        extend_global(X, catalog1)


@pytest.mark.parametrize("kind", ['sphere', 'point', 'suspension'])
def test_unit_is_a_bijection(kind):
    report = check_unit(builtin_ispace(kind, 2))
    assert report.passed, report.failures()
    assert report.checks['unit.bijection'].instances == 3


@pytest.mark.parametrize("seed", range(5))
def test_unit_on_random_ispaces(seed):
    X = random_ispace(np.random.default_rng([seed, 7]), dim_cap=2)
    assert check_ispace(X).passed
    assert check_unit(X).passed


def test_ispace_maps(S1):
    collapse = collapse_ispace_map(S1)
    assert check_ispace_map(collapse).passed
    assert check_ispace_map(compose_ispace_maps(collapse, identity_ispace_map(S1))).passed
    eta = unit_eta(S1)
    assert [len(c) for c in eta.components] == [2, 3]


def test_counit_on_a_single_group(catalog1):
    C2 = catalog1.group('C2')
    A = sphere_functor(C2, catalog1.reps_of(C2))
    report = check_counit(A)
    assert report.passed, report.failures()
    for name in ('counit.well-defined', 'counit.eps-nu', 'counit.nu-eps', 'counit.natural'):
        assert report.checks[name].instances > 0


def test_counit_on_global_spaces(catalog1):
    report = check_counit(global_sphere(catalog1))
    assert report.passed, report.failures()
    assert 'counit.phi-square' in report.checks


def test_counit_naturality(catalog1):
    C2 = catalog1.group('C2')
    A = sphere_functor(C2, catalog1.reps_of(C2))
    collapse = natural_map_from_rule(A, A, lambda v: np.zeros(len(A.value(v)), dtype=np.int64), 'collapse')
    assert check_counit_naturality(identity_natural_map(A)).passed
    assert check_counit_naturality(collapse).passed


def test_extend_morphism(S1, catalog1):
    C2 = catalog1.group('C2')
    f = extend_morphism(collapse_ispace_map(S1), C2, catalog1)
    assert check_natural_map(f).passed
    assert all(len(v) == 1 for v in f.target.values)


def test_triangles(S1, catalog1):
    assert check_triangles(S1, catalog1).passed
    C2 = catalog1.group('C2')
    report = check_triangles(sphere_functor(C2, catalog1.reps_of(C2)))
    assert report.passed, report.failures()
    assert set(report.checks) == {'triangle.left', 'triangle.right'}


def test_restriction_of_the_global_sphere(S1, catalog1):
    X = restrict_R(global_sphere(catalog1))
    assert [v.elements for v in X.values] == [v.elements for v in S1.values]
    assert all(np.array_equal(a, b) for a, b in zip(X.morphisms, S1.morphisms))


def test_restriction_rejects_non_trivial_action(catalog1):
    A = constant_global(['*', 'a', 'b'], catalog1)
    C2 = catalog1.group('C2')
    comp = A.component(C2)
    swap = gset_from_generators(C2, ['*', 'a', 'b'], 0, {C2.index_of('g'): [0, 2, 1]})
    values = (swap,) + comp.values[1:]
    components = dict(A.components)
    components['C2'] = IGSpaceFin(C2, comp.reps, values, comp.morphisms, comp.name)
    with pytest.raises(NonTrivialActionOnTrivialRep):
        restrict_R(GlobalSpace(catalog1, components, A.phi, A.name))


def test_smash_unit_certificate(catalog1):
    C2 = catalog1.group('C2')
    S = sphere_functor(C2, catalog1.reps_of(C2))
    report = smash_unit_certificate(S)
    assert report.passed, report.failures()
    assert report.checks['smash.unit-bijection'].instances == len(S.reps)


def test_internal_smash_rejects_bad_input(catalog1):
    C2, C3 = catalog1.group('C2'), catalog1.group('C3')
    S2 = sphere_functor(C2, catalog1.reps_of(C2))
    S3 = sphere_functor(C3, catalog1.reps_of(C3))
    with pytest.raises(ExtentMismatch):
        internal_smash(S2, S3)
    with pytest.raises(DimCapExceeded):
        internal_smash(S2, S2, dim_cap=2)
    smashed = internal_smash(S2, S2)
    assert smashed.name == 'S^S'
    assert check_igspace(smashed).passed


def test_point_smashed_with_the_sphere_is_a_point(catalog1):
    C2 = catalog1.group('C2')
    reps = catalog1.reps_of(C2)
    pt = constant_functor(C2, reps, one_point_set(C2), 'pt')
    S = sphere_functor(C2, reps)
    for smashed in (internal_smash(pt, S), internal_smash(S, pt)):
        assert [len(X) for X in smashed.values] == [1] * len(smashed.reps)


def test_sphere_smash_sphere_class_count(catalog2):
    C2 = catalog2.group('C2')
    S = sphere_functor(C2, catalog2.reps_of(C2))
    smashed = internal_smash(S, S)
    sizes = {v.label: len(X) for v, X in zip(smashed.reps, smashed.values)}
    assert sizes['R0'] == 2 and sizes['sign'] == 5 and sizes['reg'] == 17
    for v, X in zip(smashed.reps, smashed.values):
        assert len(X) == 4 ** v.dim + 1


def test_internal_smash_needs_every_split(catalog1):
    C2 = catalog1.group('C2')
    reps = [catalog1.rep('C2', 'R0'), catalog1.rep('C2', 'sign')]
    S = sphere_functor(C2, reps)
    with pytest.raises(CatalogIncomplete) as info:
        internal_smash(S, S)
    assert info.value.context['split'] == [0, 1]

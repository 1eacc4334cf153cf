"""Sphere monoidality, spectra, lax monoidal data and suspensions."""

import numpy as np
import pytest

from algebra.signed_perm import signed_perm, signed_perm_group, sp_compose, sp_identity
from categories import spectra
from categories.gspaces import compose_maps, identity_map, is_equivariant, trivial_gset
from categories.site import trivial_rep
from categories.spectra import (
    SpectrumStructure,
    check_lax,
    check_spectrum,
    check_sphere_fixed_points,
    check_sphere_monoidal,
    check_sphere_restriction,
    sphere,
    sphere_fixed_point_law,
    sphere_functor,
    sphere_lax_data,
    sphere_map,
    sphere_multiplication,
    sphere_smash_iso,
    sphere_spectrum,
    spectrum_from_lax,
    suspension,
    suspension_lax_data,
    suspension_spectrum,
    validate_pointed_monoid,
)
from core.errors import DimCapExceeded, DimMismatch, LaxCoherenceError, ValidationError
from core.report import Report

MONOID = ['*', '1', 'a']
# a.a = *
MONOID_TABLE = [[0, 0, 0], [0, 1, 2], [0, 2, 0]]

# (a.a).b = a but a.(a.b) = b
BROKEN = ['*', '1', 'a', 'b']
BROKEN_TABLE = [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 3, 2], [0, 3, 2, 2]]


def same_sigma(left, right):
    return left.keys() == right.keys() and all(np.array_equal(left[k], right[k]) for k in left)


def test_sphere_is_monoidal(catalog2):
    C2 = catalog2.group('C2')
    report = check_sphere_monoidal(sphere_functor(C2, catalog2.reps_of(C2)))
    assert report.passed, report.failures()
    for name in ('sphere.concat-bijection', 'sphere.concat-associative',
                 'sphere.concat-right-unit', 'sphere.concat-left-unit'):
        assert name in report.checks


def test_sphere_fixed_point_law(catalog2):
    sign = catalog2.rep('C2', 'sign')
    reg = catalog2.rep('C2', 'reg')
    assert sphere_fixed_point_law(sign, 1) == (0, 0)
    assert sphere_fixed_point_law(reg, 1) == (2, 2)
    assert sphere_fixed_point_law(catalog2.rep('C2', 'R2'), 1) == (4, 4)
    assert check_sphere_fixed_points(catalog2).passed


def test_sphere_restriction(catalog2):
    assert check_sphere_restriction(catalog2).passed


def test_sphere_map(catalog1):
    sign = catalog1.rep('C2', 'sign')
    minus = signed_perm((0,), (-1,))
    assert sphere_map(minus, sign, sign).map == (0, 2, 1)
    assert is_equivariant(sphere_map(minus, sign, sign))
    assert not is_equivariant(sphere_map(minus, catalog1.rep('C2', 'R1'), sign))
    R2 = trivial_rep(catalog1.group('C2'), 2)
    with pytest.raises(DimMismatch):
        sphere_map(minus, sign, R2)
    assert sphere_map(sp_identity(2), R2, R2) == identity_map(sphere(R2))
    B2 = signed_perm_group(2).elements
    for f in B2:
        for g in B2:
            assert compose_maps(sphere_map(f, R2, R2), sphere_map(g, R2, R2)) == \
                sphere_map(sp_compose(f, g), R2, R2)


def test_sphere_smash_iso(catalog2):
    sign = catalog2.rep('C2', 'sign')
    f = sphere_smash_iso(sign, sign)
    assert len(f.source) == 5
    assert sorted(f.map) == list(range(5))
    with pytest.raises(DimCapExceeded):
        sphere_smash_iso(catalog2.rep('C2', 'reg'), sign, dim_cap=2)


def test_sphere_spectrum(catalog1):
    report = check_spectrum(sphere_spectrum(catalog1))
    assert report.passed, report.failures()
    assert 'spectrum.associative' in report.checks
    assert 'spectrum.phi-compatible' in report.checks


def shift_sigma(spec, catalog):
    """Swap two rows of σ at (C2, sign, R0)."""
    labels = [r.label for r in catalog.reps_of(catalog.group('C2'))]
    key = ('C2', labels.index('sign'), labels.index('R0'))
    table = np.array(spec.sigma[key])
    table[1], table[2] = table[2], table[1]
    sigma = dict(spec.sigma)
    sigma[key] = table
    return SpectrumStructure(spec.base, sigma, spec.name)


def test_shifted_sigma_fails(catalog1):
    report = check_spectrum(shift_sigma(sphere_spectrum(catalog1), catalog1))
    assert not report.passed
    assert report.failures()[0].witness is not None


def test_missing_group_does_not_hide_later_failures(catalog1):
    spec = shift_sigma(sphere_spectrum(catalog1), catalog1)
    sigma = {key: table for key, table in spec.sigma.items() if key[0] != 'e'}
    report = check_spectrum(SpectrumStructure(spec.base, sigma, 'S'))
    failed = {r.name for r in report.failures()}
    assert 'spectrum.sigma.coverage' in failed
    assert failed - {'spectrum.sigma.coverage'}
    assert 'spectrum.phi-compatible' in report.checks


def test_spectrum_from_sphere_lax_data(catalog1):
    lax = sphere_lax_data(catalog1)
    assert check_lax(lax).passed
    derived = spectrum_from_lax(lax)
    assert same_sigma(derived.sigma, sphere_spectrum(catalog1).sigma)


def test_suspension_spectrum(catalog1):
    spec = suspension_spectrum(MONOID, catalog1)
    report = check_spectrum(spec)
    assert report.passed, report.failures()
    assert spec.base.name == 'Sigma3'


def test_suspension_lax_agrees_with_spectrum(catalog1):
    base = suspension(MONOID, catalog1)
    lax = suspension_lax_data(MONOID, MONOID_TABLE, 1, catalog1, base=base)
    derived = spectrum_from_lax(lax)
    assert same_sigma(derived.sigma, suspension_spectrum(MONOID, catalog1, base=base).sigma)


def test_non_associative_lax_data(catalog1):
    lax = suspension_lax_data(BROKEN, BROKEN_TABLE, 1, catalog1)
    with pytest.raises(LaxCoherenceError) as info:
        spectrum_from_lax(lax)
    assert 'lax.mult-associative' in info.value.context['failed']
    assert not info.value.report.passed
    assert info.value.to_dict()['error'] == 'LaxCoherenceError'


def test_derived_sigma_is_checked_as_a_spectrum(catalog1):
    report = Report('lax')
    spectrum_from_lax(sphere_lax_data(catalog1), report)
    assert report.passed, report.failures()
    assert 'lax.mult-associative' in report.checks
    assert report.checks['spectrum.associative'].instances > 0
    assert 'spectrum.phi-compatible' in report.checks


def test_derived_sigma_that_is_not_a_spectrum_raises(catalog1, monkeypatch):
    build = spectra.spectrum_from_rule
    monkeypatch.setattr(spectra, 'spectrum_from_rule',
                        lambda base, rule, name='': shift_sigma(build(base, rule, name), catalog1))
    report = Report('lax')
    with pytest.raises(LaxCoherenceError) as info:
        spectrum_from_lax(sphere_lax_data(catalog1), report)
    failed = info.value.context['failed']
    assert failed and all(name.startswith('spectrum.') for name in failed)
    assert not report.passed
    assert report.checks['lax.mult-associative'].passed


def test_validate_pointed_monoid(catalog1):
    e = catalog1.trivial_group()
    X = trivial_gset(e, MONOID, 0)
    validate_pointed_monoid(X, MONOID_TABLE, 1)
    with pytest.raises(ValidationError):
        validate_pointed_monoid(X, MONOID_TABLE, 2)
    with pytest.raises(ValidationError):
        validate_pointed_monoid(X, [[0, 0, 0], [0, 1, 2], [1, 2, 0]], 1)
    with pytest.raises(ValidationError):
        validate_pointed_monoid(X, [[0, 0], [0, 1]], 1)
    with pytest.raises(ValidationError):
        suspension_lax_data(MONOID, MONOID_TABLE, 2, catalog1)


def test_sphere_multiplication(catalog1):
    C2 = catalog1.group('C2')
    mult, report = sphere_multiplication(C2, catalog1.reps_of(C2))
    assert report.passed, report.failures()
    assert 'smash.sphere-mult-surjective' in report.checks
    assert 'smash.sphere-mult-dim0-bijective' in report.checks
    assert len(sphere(catalog1.rep('C2', 'sign'))) == 3

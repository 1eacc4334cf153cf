"""
Suites for sphere actions: spectrum axioms, lax monoidal data and the
fixed points of representation spheres.
"""

from typing import Sequence

import numpy as np

from categories.spectra import (
    SpectrumStructure,
    check_lax,
    check_spectrum,
    check_sphere_fixed_points,
    check_sphere_monoidal,
    sphere_lax_data,
    sphere_spectrum,
    spectrum_from_lax,
    suspension_lax_data,
    suspension_spectrum,
)
from core.report import Report
from suites.base_suite import SUSPENSION_SETS, BaseSuite, SuiteContext

# Pointed monoids (elements, multiplication table, unit) whose suspensions
# carry lax data: S⁰, and S⁰ with an idempotent added.
POINTED_MONOIDS = (
    (('*', '1'), ((0, 0), (0, 1)), 1),
    (('*', '1', 'a'), ((0, 0, 0), (0, 1, 2), (0, 2, 2)), 1),
)


def same_sigma(first: SpectrumStructure, second: SpectrumStructure, report: Report, name: str):
    """Table-for-table equality of two structure maps on the same base."""
    with report.check(name) as c:
        c.expect(set(first.sigma) == set(second.sigma),
                 lambda: {'only_first': sorted(map(list, set(first.sigma) - set(second.sigma)))[:1],
                          'only_second': sorted(map(list, set(second.sigma) - set(first.sigma)))[:1]})
        for key in sorted(set(first.sigma) & set(second.sigma)):
            c.expect(np.array_equal(first.sigma[key], second.sigma[key]),
                     {'spectrum': first.name, 'group': key[0], 'left': key[1], 'right': key[2]})


class SpectrumSuite(BaseSuite):
    """
    The sphere and the suspensions are spectra; the sphere is strong
    monoidal; σ built from lax data agrees with the direct σ.
    """

    name = 'spectrum'

    def check_monoid(self, context: SuiteContext, report: Report, elements: Sequence[str],
                     table, unit: int):
        lax = suspension_lax_data(elements, table, unit, context.catalog)
        check_lax(lax, report)
        with report.check('spectrum.suspension-from-lax') as c:
            derived = spectrum_from_lax(lax)
            direct = suspension_spectrum(elements, context.catalog, base=lax.base)
            c.count()
            same_sigma(derived, direct, report, 'spectrum.suspension-from-lax-sigma')

    def check(self, context: SuiteContext, report: Report):
        cat = context.catalog
        spaces = context.global_spaces()
        sphere = sphere_spectrum(cat)
        check_spectrum(sphere, report)
        for g in cat.groups:
            check_sphere_monoidal(spaces['S'].component(g), report)

        lax = sphere_lax_data(cat)
        with report.check('spectrum.from-lax') as c:
            derived = spectrum_from_lax(lax, report)
            c.count()
            same_sigma(derived, sphere, report, 'spectrum.from-lax-sigma')

        for X0 in SUSPENSION_SETS:
            check_spectrum(suspension_spectrum(X0, cat, base=spaces[f"Sigma{len(X0)}"]), report)
        for elements, table, unit in POINTED_MONOIDS:
            self.check_monoid(context, report, elements, table, unit)


class SphereFixedPointSuite(BaseSuite):
    name = 'sphere-fixed-points'

    def check(self, context: SuiteContext, report: Report):
        check_sphere_fixed_points(context.catalog, report)

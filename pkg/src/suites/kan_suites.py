"""
Suites for the extension/restriction adjunction and the internal smash.
"""

from typing import Iterator

import numpy as np

from categories.kan import (
    ISpaceFin,
    check_counit,
    check_counit_naturality,
    check_ispace,
    check_triangles,
    check_unit,
    counit_eps,
    extend_global,
    kan_extension_at,
    random_ispace,
    restrict_R,
    smash_unit_certificate,
)
from categories.spectra import sphere, sphere_functor, sphere_multiplication, suspension_inclusion
from core.report import Report
from suites.base_suite import SUSPENSION_SETS, BaseSuite, SuiteContext

RANDOM_MAX_SIZE = 6


def random_instances(context: SuiteContext, salt: int) -> Iterator[ISpaceFin]:
    """instance_count seeded I-spaces up to the catalog's dim_cap."""
    rng = context.rng(salt)
    for i in range(context.instance_count):
        yield random_ispace(rng, context.catalog.dim_cap, max_size=RANDOM_MAX_SIZE, name=f"random{i}")


class AdjunctionSuite(BaseSuite):
    """
    η: X -> R E X and ε: E R A -> A are isomorphisms on the shipped spaces,
    on the configured I-spaces and on seeded random I-spaces.
    """

    name = 'adjunction'

    def check_sphere_oracle(self, context: SuiteContext, report: Report):
        """E R S over C2 at the sign rep: two classes swapped by g, and ε onto S(sign)."""
        cat = context.catalog
        try:
            C2 = cat.group('C2')
            sign = cat.rep('C2', 'sign')
        except KeyError:
            self.logger.debug("Catalog has no C2 sign rep; sphere oracle skipped")
            return
        S = sphere_functor(C2, cat.reps_of(C2))
        value = kan_extension_at(restrict_R(S), sign).value
        g = next(x for x in C2.elements if x != C2.identity)
        non_base = value.non_base()
        swapped = len(non_base) == 2 and value.act(g, non_base[0]) == non_base[1]
        report.record('adjunction.sphere-oracle', swapped,
                      {'classes': list(value.elements), 'action': [list(r) for r in value.action]})
        eps = counit_eps(S).eps.component(sign)
        target = sphere(sign)
        report.record('adjunction.sphere-oracle-counit',
                      np.array_equal(np.sort(eps), np.arange(len(target))),
                      {'eps': [int(x) for x in eps], 'target': list(target.elements)})

    def check(self, context: SuiteContext, report: Report):
        self.check_sphere_oracle(context, report)
        spaces = context.global_spaces()
        for name, space in spaces.items():
            check_unit(restrict_R(space), report)
            check_counit(space, report)
            self.logger.debug(f"Unit and counit checked on {name}")
        for X0 in SUSPENSION_SETS:
            f = suspension_inclusion(X0, 1, context.catalog, source=spaces['S'],
                                     target=spaces[f"Sigma{len(X0)}"])
            check_counit_naturality(f, report)
        for X in context.functors:
            check_unit(X, report)
            check_counit(extend_global(X, context.catalog), report)
        for X in random_instances(context, salt=1):
            check_ispace(X, report, prefix='adjunction.random')
            check_unit(X, report)
            check_counit(extend_global(X, context.catalog), report)


class TriangleSuite(BaseSuite):
    """Both triangle identities, at I-spaces and at global spaces."""

    name = 'triangles'

    def check(self, context: SuiteContext, report: Report):
        for space in context.global_spaces().values():
            check_triangles(space, report=report)
        for X in context.functors:
            check_triangles(X, context.catalog, report)
        for X in random_instances(context, salt=2):
            check_triangles(X, context.catalog, report)


class SmashSuite(BaseSuite):
    """
    The unit law U∧A ≅ A for the sphere over every group, and the sphere
    multiplication S∧S -> S.
    """

    name = 'smash'

    def check(self, context: SuiteContext, report: Report):
        cat = context.catalog
        for g in cat.groups:
            reps = cat.reps_of(g)
            S = sphere_functor(g, reps)
            smash_unit_certificate(S, report=report)
            sphere_multiplication(g, reps, report=report)
            self.logger.debug(f"Smash checks over {g.name} done")

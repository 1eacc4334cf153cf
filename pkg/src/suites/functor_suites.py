"""
Suites over I_G-spaces and global spaces.
"""

from categories.functors import check_global, check_global_map, check_igspace
from categories.kan import check_ispace
from categories.spectra import suspension_inclusion
from core.report import Report
from suites.base_suite import SUSPENSION_SETS, BaseSuite, SuiteContext


class FunctorSuite(BaseSuite):
    """
    Functor laws and G-continuity of every component of the shipped spaces,
    and the functor laws of the I-spaces named in the configuration.
    """

    name = 'functor'

    def check(self, context: SuiteContext, report: Report):
        for name, space in context.global_spaces().items():
            for g in context.catalog.groups:
                check_igspace(space.component(g), report, prefix='functor')
            self.logger.debug(f"Checked components of {name}")
        for X in context.functors:
            check_ispace(X, report, prefix='functor.ispace')


class GlobalSuite(BaseSuite):
    """φ coherence of the shipped global spaces and of the suspension inclusions."""

    name = 'global'

    def check(self, context: SuiteContext, report: Report):
        spaces = context.global_spaces()
        for space in spaces.values():
            check_global(space, report, components=False)
        sphere = spaces['S']
        for X0 in SUSPENSION_SETS:
            target = spaces[f"Sigma{len(X0)}"]
            for point in range(1, len(X0)):
                f = suspension_inclusion(X0, point, context.catalog, source=sphere, target=target)
                check_global_map(f, sphere, target, report, prefix='global-map')

"""
Suites over the site itself: the indexed category of representations, its
fibration form, the Grothendieck round trip and the Top_G fibration.
"""

from categories.gspaces import GSetCatalog, check_top_fibration, check_top_structure, one_point_set, two_point_set
from categories.site import check_grothendieck, check_restriction_object, check_site_axioms
from core.report import Report
from suites.base_suite import BaseSuite, SuiteContext


class SiteAxiomSuite(BaseSuite):
    """Enriched-category axioms of every I_G and the indexed-category laws."""

    name = 'site-axioms'

    def check(self, context: SuiteContext, report: Report):
        check_site_axioms(context.catalog, report)


class FibrationSuite(BaseSuite):
    name = 'fibration'

    def check(self, context: SuiteContext, report: Report):
        check_restriction_object(context.catalog, report)


class GrothendieckSuite(BaseSuite):
    name = 'grothendieck'

    def check(self, context: SuiteContext, report: Report):
        check_grothendieck(context.catalog, report)


class TopFibrationSuite(BaseSuite):
    """
    F(Z, α*X) = (α×1)*F(Z, X) and the closed monoidal structure of Top_G on
    the shipped G-sets; without a G-set file, S⁰ and the point over every
    catalog group.
    """

    name = 'top-fibration'

    def gset_catalog(self, context: SuiteContext) -> GSetCatalog:
        if context.gsets is not None:
            return context.gsets
        cat = context.catalog
        sets = {g.name: (one_point_set(g), two_point_set(g)) for g in cat.groups}
        return GSetCatalog(cat.groups, cat.homs, sets)

    def check(self, context: SuiteContext, report: Report):
        gcat = self.gset_catalog(context)
        limit = context.gset_size_limit
        self.logger.debug(f"Top fibration over {len(gcat.groups)} groups, size limit {limit}")
        check_top_fibration(gcat, report, max_size=limit)
        check_top_structure(gcat, report, max_size=min(limit, 3))

"""
Suite names and the classes that implement them.
"""

from typing import Dict, List, Type

from core.errors import ConfigurationError
from suites.base_suite import BaseSuite
from suites.functor_suites import FunctorSuite, GlobalSuite
from suites.kan_suites import AdjunctionSuite, SmashSuite, TriangleSuite
from suites.site_suites import FibrationSuite, GrothendieckSuite, SiteAxiomSuite, TopFibrationSuite
from suites.spectrum_suites import SphereFixedPointSuite, SpectrumSuite

SUITES: Dict[str, Type[BaseSuite]] = {
    cls.name: cls for cls in (
        SiteAxiomSuite,
        FibrationSuite,
        TopFibrationSuite,
        GrothendieckSuite,
        FunctorSuite,
        GlobalSuite,
        AdjunctionSuite,
        TriangleSuite,
        SpectrumSuite,
        SphereFixedPointSuite,
        SmashSuite,
    )
}


def get_suite(name: str) -> BaseSuite:
    """
    Raises:
        ConfigurationError: no suite has that name
    """
    try:
        return SUITES[name]()
    except KeyError:
        raise ConfigurationError(f"Unknown suite: {name}", context={'suite': name})


def list_suites() -> List[str]:
    return list(SUITES)

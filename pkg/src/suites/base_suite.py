"""
Base suite class for the equicat verification engine.
Provides common functionality and the interface every verification suite implements.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from categories.functors import GlobalSpace
from categories.gspaces import GSetCatalog
from categories.kan import ISpaceFin
from categories.site import SiteCatalog
from categories.spectra import constant_global, global_sphere, suspension
from core.errors import EquicatError
from core.report import Report
from utils.config_manager import get_config
from utils.logging_config import get_suite_logger

# Pointed sets whose suspensions the functor-level suites exercise.
SUSPENSION_SETS = (('*', 'a'), ('*', 'a', 'b'), ('*', 'a', 'b', 'c'))


@dataclass
class SuiteContext:
    """Inputs shared by every suite of one run."""

    catalog: SiteCatalog
    seed: int = 0
    instance_count: int = 50
    gsets: Optional[GSetCatalog] = None
    functors: List[ISpaceFin] = field(default_factory=list)
    gset_size_limit: int = 5
    _spaces: Dict[str, GlobalSpace] = field(default_factory=dict, repr=False)

    def rng(self, salt: int = 0) -> np.random.Generator:
        """A generator that depends only on the seed and the caller's salt."""
        return np.random.default_rng([self.seed, salt])

    def global_spaces(self) -> Dict[str, GlobalSpace]:
        """The sphere, the constant S⁰ and the suspensions, built once per run."""
        if not self._spaces:
            cat = self.catalog
            self._spaces['S'] = global_sphere(cat)
            self._spaces['const'] = constant_global(('*', 'a'), cat)
            for X0 in SUSPENSION_SETS:
                space = suspension(X0, cat)
                self._spaces[space.name] = space
        return self._spaces


class BaseSuite(ABC):
    """
    Abstract base class for all verification suites.
    A suite fills a Report with named checks; it never raises for a failed check.
    """

    name: str = ''

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        """
        Initialize the suite.

        Args:
            config: Suite-specific configuration (optional), defaults to
                suites.<name> from the global configuration
        """
        self.config_manager = get_config()
        self.suite_config = config or self.config_manager.get(f"suites.{self.name}", {}) or {}
        self.logger = get_suite_logger(self.name)

    @abstractmethod
    def check(self, context: SuiteContext, report: Report):
        """Record this suite's checks into report. Must be implemented by subclasses."""

    def run(self, context: SuiteContext) -> Report:
        """
        Run the suite on the given context.

        Returns:
            Report titled with the suite name and carrying the run's seed
        """
        self.logger = get_suite_logger(self.name, context.seed)
        report = Report(self.name, seed=context.seed)
        self.logger.debug(f"Starting suite {self.name}")
        try:
            self.check(context, report)
        except EquicatError as e:
            report.record(f"{self.name}.aborted", False, self.process_error(e))
        summary = report.summary()
        self.logger.info(f"Suite {self.name} finished: {summary}")
        return report

    def process_error(self, error: EquicatError, context: str = "") -> Dict[str, Any]:
        """
        Log an error that stopped the suite and turn it into a witness.

        Args:
            error: Exception that occurred
            context: Additional context about the error

        Returns:
            Witness dictionary
        """
        error_msg = f"Error in {self.name}"
        if context:
            error_msg += f" ({context})"
        error_msg += f": {error.message}"
        self.logger.error(error_msg)
        return {'suite': self.name, **error.to_dict()}

    def __str__(self) -> str:
        return f"{self.__class__.__name__}(name={self.name})"

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(name={self.name}, config={self.suite_config})"

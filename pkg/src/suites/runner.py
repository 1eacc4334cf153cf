"""
Suite runner: loads the configured inputs, runs the selected suites and the
fault fixtures, and assembles one report.
"""

from pathlib import Path
from typing import Optional

from categories.site import SiteCatalog
from core.definitions import load_gsets, load_ispace, parse_catalog
from core.report import Report
from suites.base_suite import SuiteContext
from suites.fixtures import record_fixture, run_fixture
from suites.registry import get_suite
from utils.config_manager import SuiteConfig
from utils.logging_config import get_system_logger
from utils.serialization import read_json

logger = get_system_logger('runner')


def load_suite_catalog(path: str, dim_cap: Optional[int] = None) -> SiteCatalog:
    """The catalog file, with its dim_cap replaced when the configuration sets one."""
    doc = read_json(path)
    if dim_cap is not None and isinstance(doc, dict):
        doc = dict(doc, dim_cap=dim_cap)
    return parse_catalog(doc, str(path))


def build_context(config: SuiteConfig) -> SuiteContext:
    """
    Raises:
        InputError: an input file is missing or malformed
        ValidationError: an input definition is not a legal object
    """
    catalog = load_suite_catalog(config.catalog, config.dim_cap)
    gsets = None
    if config.gsets and Path(config.gsets).exists():
        gsets = load_gsets(config.gsets, catalog)
    elif config.gsets:
        logger.warning(f"G-set file {config.gsets} not found; using S⁰ and the point")
    functors = [load_ispace(p, catalog.dim_cap) for p in config.functors]
    return SuiteContext(catalog=catalog, seed=config.seed, instance_count=config.instance_count,
                        gsets=gsets, functors=functors, gset_size_limit=config.gset_size_limit)


def run_suites(config: SuiteConfig, include_timing: bool = False) -> Report:
    """
    Run every selected suite and fault fixture.

    Suite checks are merged under `<suite>/`; each fixture contributes one
    `fault.<name>` entry.  Entries are sorted by name when rendered, so the
    order of execution does not affect the output.
    """
    report = Report('equicat suite', seed=config.seed, include_timing=include_timing)
    report.metadata = {
        'catalog': config.catalog,
        'dim_cap': config.dim_cap,
        'suites': list(config.suites),
        'instance_count': config.instance_count,
        'faults': [Path(p).name for p in config.faults],
    }
    if not config.suites and not config.faults:
        logger.info("No suites selected")
        return report

    context = build_context(config)
    for name in config.suites:
        suite = get_suite(name)
        report.merge(suite.run(context), prefix=f"{name}/")
    for path in config.faults:
        entry, outcome = run_fixture(path, context.catalog)
        record_fixture(entry, outcome, report)
    logger.info(f"Suite run finished: {report.summary()}")
    return report

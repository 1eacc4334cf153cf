"""Suite runs assembled by the runner."""

import pytest

from core.errors import ConfigurationError, InputError
from suites.fixtures import FAULT_NAMES
from suites.runner import load_suite_catalog, run_suites
from utils.config_manager import SuiteConfig


@pytest.fixture
def catalog_path(repo_root):
    return str(repo_root / 'data' / 'input' / 'catalog.json')


def test_dim_cap_override(catalog_path):
    assert load_suite_catalog(catalog_path).dim_cap == 3
    assert load_suite_catalog(catalog_path, 1).dim_cap == 1


def test_no_suites_selected(catalog_path):
    report = run_suites(SuiteConfig(catalog=catalog_path, suites=[]))
    assert report.summary()['checks'] == 0
    assert report.passed
    assert report.metadata['suites'] == []


def test_checks_are_prefixed_by_suite(catalog_path):
    config = SuiteConfig(catalog=catalog_path, suites=['sphere-fixed-points', 'grothendieck'],
                         seed=4, dim_cap=1, gsets=None)
    report = run_suites(config)
    assert report.passed, report.failures()
    assert 'sphere-fixed-points/sphere.fixed-point-law' in report.checks
    assert all(name.split('/')[0] in config.suites for name in report.checks)
    assert report.seed == 4
    assert report.metadata['dim_cap'] == 1


def test_runs_are_byte_identical(catalog_path, repo_root):
    config = SuiteConfig(catalog=catalog_path, suites=['adjunction', 'triangles'], seed=9,
                         instance_count=2, dim_cap=1,
                         gsets=str(repo_root / 'data' / 'input' / 'gsets.json'))
    first = run_suites(config).render_json()
    second = run_suites(config).render_json()
    assert first == second


def test_fault_run_reports_every_fault(catalog_path, repo_root):
    fixtures = repo_root / 'data' / 'input' / 'fixtures'
    config = SuiteConfig(catalog=catalog_path, suites=[], dim_cap=2,
                         faults=[str(fixtures / f"{name}.json") for name in FAULT_NAMES])
    report = run_suites(config)
    assert sorted(report.checks) == sorted(f"fault.{name}" for name in FAULT_NAMES)
    assert report.summary()['failed'] == len(FAULT_NAMES)
    assert all(r.witness['check'] for r in report.checks.values())


def test_unknown_suite(catalog_path):
    with pytest.raises(ConfigurationError):
        run_suites(SuiteConfig(catalog=catalog_path, suites=['nope'], dim_cap=1))


def test_missing_functor_file(catalog_path, tmp_path):
    config = SuiteConfig(catalog=catalog_path, suites=['functor'], dim_cap=1,
                         functors=[str(tmp_path / 'missing.json')])
    with pytest.raises(InputError):
        run_suites(config)

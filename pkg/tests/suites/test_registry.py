"""Suite registry and per-suite runs on a small catalog."""

import pytest

from core.definitions import builtin_ispace
from core.errors import ConfigurationError, StructureError
from suites.base_suite import BaseSuite, SuiteContext
from suites.registry import get_suite, list_suites
from utils.config_manager import SUITE_NAMES


def test_registry_matches_config_names():
    assert list_suites() == list(SUITE_NAMES)


def test_unknown_suite():
    with pytest.raises(ConfigurationError) as info:
        get_suite('no-such-suite')
    assert info.value.context == {'suite': 'no-such-suite'}


@pytest.fixture(scope='module')
def small_context(catalog1):
    return SuiteContext(catalog=catalog1, seed=11, instance_count=2,
                        functors=[builtin_ispace('sphere', 1), builtin_ispace('point', 1)])


@pytest.mark.parametrize('name', SUITE_NAMES)
def test_suite_passes(name, small_context):
    report = get_suite(name).run(small_context)
    assert report.title == name
    assert report.seed == 11
    assert report.checks
    assert report.passed, report.failures()


def test_context_rng_depends_on_seed_and_salt(catalog1):
    a = SuiteContext(catalog=catalog1, seed=3)
    b = SuiteContext(catalog=catalog1, seed=3)
    assert a.rng(1).integers(0, 1000, 5).tolist() == b.rng(1).integers(0, 1000, 5).tolist()
    assert a.rng(1).integers(0, 1000, 5).tolist() != a.rng(2).integers(0, 1000, 5).tolist()


def test_global_spaces_built_once(catalog1):
    context = SuiteContext(catalog=catalog1)
    spaces = context.global_spaces()
    assert sorted(spaces) == ['S', 'Sigma2', 'Sigma3', 'Sigma4', 'const']
    assert context.global_spaces()['S'] is spaces['S']


class Aborting(BaseSuite):
    name = 'aborting'

    def check(self, context, report):
        report.record('aborting.first', True)
        raise StructureError("catalog too small", context={'dim_cap': 1})


def test_engine_error_aborts_suite(catalog1):
    report = Aborting().run(SuiteContext(catalog=catalog1))
    assert report.checks['aborting.first'].passed
    aborted = report.checks['aborting.aborted']
    assert not aborted.passed
    assert aborted.witness['suite'] == 'aborting'
    assert aborted.witness['error'] == 'StructureError'

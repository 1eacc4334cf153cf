"""Every shipped fault fixture must be caught with a witness."""

import json

import pytest

from core.errors import SchemaError
from core.report import Report
from suites.fixtures import FAULT_NAMES, record_fixture, run_fixture, validate_fixture

# a check each fixture must fail (by prefix)
EXPECTED = {
    'broken-rho': 'fault.catalog',
    'non-equivariant-phi': 'global.phi',
    'corrupted-morphism': 'functor.composition',
    'non-associative-mu': 'fault.spectrum-from-lax',
    'shifted-sigma': 'spectrum',
    'non-equivariant-global-map': 'global-map.equivariant',
}


@pytest.fixture(scope='module')
def fixture_dir(repo_root):
    return repo_root / 'data' / 'input' / 'fixtures'


def test_every_fault_has_a_fixture(fixture_dir):
    shipped = {json.loads(p.read_text(encoding='utf-8')).get('fault')
               for p in fixture_dir.glob('*.json')}
    assert set(FAULT_NAMES) <= shipped


@pytest.mark.parametrize('fault', FAULT_NAMES)
def test_fault_is_detected(fault, fixture_dir, catalog2):
    name, outcome = run_fixture(fixture_dir / f"{fault}.json", catalog2)
    assert name == f"fault.{fault}"
    assert not outcome.passed
    failures = outcome.failures()
    assert failures[0].witness
    assert any(f.name.startswith(EXPECTED[fault]) for f in failures)

    report = Report()
    record_fixture(name, outcome, report)
    entry = report.checks[name]
    assert not entry.passed
    assert entry.witness['check'] == failures[0].name
    assert entry.witness['witness'] == failures[0].witness


def test_validate_fixture_errors():
    with pytest.raises(SchemaError) as info:
        validate_fixture({'fault': 'flipped-bits'})
    assert info.value.pointer == '/fault'
    with pytest.raises(SchemaError):
        validate_fixture([1])
    with pytest.raises(SchemaError):
        validate_fixture({'fault': 'shifted-sigma', 'group': 'C2'})
    assert validate_fixture({'fault': 'broken-rho', 'catalog': 'x.json'}) == 'broken-rho'


def test_bad_coordinates_are_schema_errors(tmp_path, catalog2):
    path = tmp_path / 'shifted.json'
    path.write_text(json.dumps({'fault': 'shifted-sigma', 'group': 'C2', 'left': 'sign',
                                'right': 'no-such-rep', 'swap': [1, 2]}), encoding='utf-8')
    with pytest.raises(SchemaError) as info:
        run_fixture(path, catalog2)
    assert info.value.pointer == '/right'

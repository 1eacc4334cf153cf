"""The equicat command line: validate, suite and kan, and their exit codes."""

import json

import pytest
import yaml

from main import EXIT_FAILED, EXIT_INPUT, EXIT_OK, main


@pytest.fixture(autouse=True)
def isolated(tmp_path, monkeypatch):
    """Logs under tmp_path; the working directory is tmp_path so default paths resolve nowhere."""
    monkeypatch.setenv('LOG_DIR', str(tmp_path / 'log'))
    monkeypatch.chdir(tmp_path)


@pytest.fixture
def inputs(repo_root):
    return repo_root / 'data' / 'input'


@pytest.fixture
def small_catalog(tmp_path):
    path = tmp_path / 'catalog1.json'
    path.write_text(json.dumps({'dim_cap': 1, 'standard': True}), encoding='utf-8')
    return str(path)


def write_config(tmp_path, catalog_path, **sections):
    config = {
        'catalog': {'path': str(catalog_path), 'dim_cap': 1},
        'suites': {'enabled': [], 'seed': 0, 'instance_count': 2},
        'inputs': {'gsets': None, 'functors': [], 'faults': []},
        'reports': {'dir': str(tmp_path / 'reports'), 'format': 'json'},
        'logging': {'level': 'WARNING', 'log_dir': str(tmp_path / 'log')},
    }
    for key, value in sections.items():
        config[key].update(value)
    path = tmp_path / 'suite.yaml'
    path.write_text(yaml.safe_dump(config), encoding='utf-8')
    return str(path)


# --- validate -------------------------------------------------------------

def test_validate_definitions(inputs, capsys):
    paths = [str(inputs / 'catalog.json'), str(inputs / 'gsets.json'),
             str(inputs / 'functors' / 'orientation.json'),
             str(inputs / 'fixtures' / 'shifted-sigma.json')]
    assert main(['--log-level', 'WARNING', 'validate', *paths]) == EXIT_OK
    results = json.loads(capsys.readouterr().out)
    assert [r['status'] for r in results] == ['success'] * 4
    assert [r['definition']['kind'] for r in results] == ['catalog', 'gsets', 'ispace', 'fault']


def test_validate_malformed_json(tmp_path, capsys):
    path = tmp_path / 'broken.json'
    path.write_text('{"dim_cap": 2,', encoding='utf-8')
    assert main(['validate', str(path)]) == EXIT_INPUT
    result = json.loads(capsys.readouterr().out)[0]
    assert result['status'] == 'error'
    assert result['error']['error'] == 'SchemaError'


def test_validate_unknown_document(tmp_path):
    path = tmp_path / 'other.json'
    path.write_text('{"hello": "world"}', encoding='utf-8')
    assert main(['validate', str(path)]) == EXIT_INPUT


def test_validate_invalid_group(tmp_path, capsys):
    path = tmp_path / 'catalog.json'
    path.write_text(json.dumps({'dim_cap': 1, 'groups': [{'name': 'C2', 'table': [[0, 1], [0, 1]]}]}),
                    encoding='utf-8')
    assert main(['validate', str(path)]) == EXIT_FAILED
    result = json.loads(capsys.readouterr().out)[0]
    assert result['error']['error'] == 'NoIdentity'


def test_validate_worst_code_wins(tmp_path, inputs):
    bad = tmp_path / 'bad.json'
    bad.write_text('[', encoding='utf-8')
    assert main(['validate', str(inputs / 'catalog.json'), str(bad)]) == EXIT_INPUT


# --- suite ----------------------------------------------------------------

def test_suite_writes_report(tmp_path, small_catalog):
    config = write_config(tmp_path, small_catalog, suites={'enabled': ['sphere-fixed-points', 'fibration']})
    output = tmp_path / 'out' / 'report.json'
    assert main(['suite', '--config', config, '--seed', '5', '--output', str(output), '--save']) == EXIT_OK
    report = json.loads(output.read_text(encoding='utf-8'))
    assert report['status'] == 'pass'
    assert report['seed'] == 5
    assert list((tmp_path / 'reports').glob('*.json'))


def test_suite_text_format_is_deterministic(tmp_path, small_catalog, capsys):
    config = write_config(tmp_path, small_catalog, suites={'enabled': ['grothendieck']})
    assert main(['suite', '--config', config, '--format', 'text']) == EXIT_OK
    first = capsys.readouterr().out
    assert main(['suite', '--config', config, '--format', 'text']) == EXIT_OK
    assert capsys.readouterr().out == first
    assert first.startswith('equicat suite (seed=0)')


def test_suite_with_faults_fails(tmp_path, inputs, capsys):
    faults = [str(inputs / 'fixtures' / 'corrupted-morphism.json')]
    config = write_config(tmp_path, inputs / 'catalog.json', catalog={'dim_cap': 2},
                          inputs={'faults': faults})
    assert main(['suite', '--config', config]) == EXIT_FAILED
    report = json.loads(capsys.readouterr().out)
    assert report['checks'][0]['name'] == 'fault.corrupted-morphism'
    assert report['checks'][0]['witness']['check'].startswith('functor.')


def test_suite_bad_config(tmp_path, small_catalog):
    config = write_config(tmp_path, small_catalog, suites={'enabled': ['nope']})
    assert main(['suite', '--config', config]) == EXIT_INPUT
    assert main(['suite', '--config', str(tmp_path / 'missing.yaml')]) == EXIT_INPUT


# --- kan ------------------------------------------------------------------

def test_kan_sign_sphere(small_catalog, inputs, capsys):
    code = main(['kan', '--catalog', small_catalog, '--functor', str(inputs / 'functors' / 'sphere.json'),
                 '--group', 'C2'])
    assert code == EXIT_OK
    out = json.loads(capsys.readouterr().out)
    assert out['kind'] == 'kan'
    sign = next(r for r in out['results'] if r['rep'] == 'sign')
    assert len(sign['classes']) == 3
    assert sign['action']['g'] == [0, 2, 1]
    assert out['bundle']['kind'] == 'igspace'


def test_kan_output_file(tmp_path, small_catalog, inputs):
    output = tmp_path / 'kan.json'
    assert main(['kan', '--catalog', small_catalog, '--functor', str(inputs / 'functors' / 'point.json'),
                 '--group', 'e', '--output', str(output)]) == EXIT_OK
    assert json.loads(output.read_text(encoding='utf-8'))['kind'] == 'kan'


def test_kan_smash(small_catalog, inputs, capsys):
    sphere = str(inputs / 'functors' / 'sphere.json')
    assert main(['kan', '--catalog', small_catalog, '--group', 'C2', '--smash', sphere, sphere]) == EXIT_OK
    out = json.loads(capsys.readouterr().out)
    assert out['kind'] == 'smash'
    assert out['bundle']['name'] == 'ES^ES'
    assert out['certificate']['status'] == 'pass'


def test_kan_errors(tmp_path, small_catalog, inputs):
    sphere = str(inputs / 'functors' / 'sphere.json')
    assert main(['kan', '--catalog', small_catalog, '--functor', sphere, '--group', 'C7']) == EXIT_INPUT

    bad = tmp_path / 'bad-catalog.json'
    bad.write_text(json.dumps({'dim_cap': 1, 'groups': [{'name': 'C2', 'table': [[0, 1], [0, 1]]}]}),
                   encoding='utf-8')
    assert main(['kan', '--catalog', str(bad), '--functor', sphere, '--group', 'C2']) == EXIT_FAILED

    with pytest.raises(SystemExit):
        main(['kan', '--catalog', small_catalog, '--group', 'C2'])

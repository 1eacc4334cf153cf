"""Configuration loading, validation and suite settings."""

import json

import pytest
import yaml

from core.errors import ConfigurationError
from utils.config_manager import SUITE_NAMES, ConfigManager, get_config, init_config


def test_defaults():
    config = ConfigManager()
    assert config.get('suites.enabled') == list(SUITE_NAMES)
    assert config.get('suites.seed') == 0
    assert config.get('reports.format') == 'text'
    assert config.get('no.such.key', 'fallback') == 'fallback'


def test_yaml_file_is_merged(tmp_path):
    path = tmp_path / 'suite.yaml'
    path.write_text(yaml.safe_dump({'suites': {'seed': 7}, 'reports': {'format': 'json'}}), encoding='utf-8')
    config = ConfigManager(str(path))
    assert config.get('suites.seed') == 7
    assert config.get('suites.instance_count') == 50
    assert config.get('reports.format') == 'json'
    assert config.get('reports.dir') == './data/output/reports'


def test_json_file(tmp_path):
    path = tmp_path / 'suite.json'
    path.write_text(json.dumps({'catalog': {'dim_cap': 2}}), encoding='utf-8')
    assert ConfigManager(str(path)).get('catalog.dim_cap') == 2


@pytest.mark.parametrize('text', ['[1, 2]', 'suites: [unclosed'])
def test_bad_files(tmp_path, text):
    path = tmp_path / 'bad.yaml'
    path.write_text(text, encoding='utf-8')
    with pytest.raises(ConfigurationError):
        ConfigManager(str(path))


def test_missing_file(tmp_path):
    with pytest.raises(ConfigurationError) as info:
        ConfigManager(str(tmp_path / 'missing.yaml'))
    assert 'missing.yaml' in info.value.context['path']


def test_set_nested():
    config = ConfigManager()
    config.set('suites.seed', 12)
    config.set('extra.section.value', 'x')
    assert config.get('suites.seed') == 12
    assert config.get('extra.section.value') == 'x'
    with pytest.raises(ConfigurationError):
        config.set('suites.seed.deeper', 1)


def test_validate_config(tmp_path):
    catalog = tmp_path / 'catalog.json'
    catalog.write_text('{"dim_cap": 1, "standard": true}', encoding='utf-8')
    config = ConfigManager()
    config.set('catalog.path', str(catalog))
    assert config.validate_config() == []

    config.set('suites.enabled', ['site-axioms', 'bogus'])
    config.set('suites.instance_count', 0)
    config.set('suites.seed', -1)
    config.set('catalog.dim_cap', 9)
    errors = config.validate_config()
    assert len(errors) == 4
    assert any('bogus' in e for e in errors)
    with pytest.raises(ConfigurationError) as info:
        config.suite_config()
    assert info.value.context['errors'] == errors


def test_suite_config(repo_root):
    config = ConfigManager(str(repo_root / 'config' / 'fault-suite.yaml'))
    config.set('catalog.path', str(repo_root / 'data' / 'input' / 'catalog.json'))
    suite = config.suite_config()
    assert suite.suites == []
    assert suite.dim_cap == 2
    assert suite.gsets is None
    assert len(suite.faults) == 6


def test_shipped_configs_load(repo_root):
    for name in ('suite.yaml', 'fault-suite.yaml'):
        config = ConfigManager(str(repo_root / 'config' / name))
        enabled = config.get('suites.enabled')
        assert set(enabled) <= set(SUITE_NAMES)


def test_section_getters():
    config = ConfigManager()
    assert config.get_catalog_config()['dim_cap'] == config.get('catalog.dim_cap')
    assert config.get_suite_config()['seed'] == 0
    assert config.get_report_config()['format'] == 'text'
    assert config.get_logging_config() == config.get('logging', {})
    assert config.get_data_config() == config.get('data', {})


def test_save_round_trip(tmp_path):
    config = ConfigManager()
    config.set('suites.seed', 3)
    path = tmp_path / 'saved.yaml'
    config.save_config(str(path))
    assert ConfigManager(str(path)).get('suites.seed') == 3


def test_global_instance():
    first = init_config()
    assert get_config() is first
    assert init_config() is not first

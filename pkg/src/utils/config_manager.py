"""
Configuration management for the equicat verification engine.
Handles environment variables, configuration files, and suite settings.
"""

import os
import json
import yaml
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Any, List, Optional
from dotenv import load_dotenv, find_dotenv

from core.errors import ConfigurationError

SUITE_NAMES = (
    'site-axioms',
    'fibration',
    'top-fibration',
    'grothendieck',
    'functor',
    'global',
    'adjunction',
    'triangles',
    'spectrum',
    'sphere-fixed-points',
    'smash',
)


@dataclass
class SuiteConfig:
    """Everything a suite run needs, resolved from a ConfigManager."""

    catalog: str
    suites: List[str]
    seed: int = 0
    instance_count: int = 50
    dim_cap: Optional[int] = None
    gsets: Optional[str] = None
    functors: List[str] = field(default_factory=list)
    faults: List[str] = field(default_factory=list)
    gset_size_limit: int = 5


class ConfigManager:
    """Centralized configuration management."""

    def __init__(self, config_file: Optional[str] = None):
        """
        Initialize configuration manager.

        Args:
            config_file: Path to configuration file (JSON or YAML)
        """
        # Load environment variables
        self._load_env()
        self._config_file = Path(config_file) if config_file else None

        # Default configuration
        self._config = {
            'catalog': {
                'path': './data/input/catalog.json',
                'dim_cap': None,
            },
            'suites': {
                'enabled': list(SUITE_NAMES),
                'seed': 0,
                'instance_count': 50,
                'gset_size_limit': 5,
            },
            'inputs': {
                'gsets': './data/input/gsets.json',
                'functors': [],
                'faults': [],
            },
            'data': {
                'input_dir': os.getenv('INPUT_DIR', './data/input'),
                'output_dir': os.getenv('OUTPUT_DIR', './data/output'),
            },
            'reports': {
                'dir': './data/output/reports',
                'include_timing': False,
                'format': 'text',
            },
            'logging': {
                'level': os.getenv('LOG_LEVEL', 'INFO'),
                'log_dir': os.getenv('LOG_DIR', './log'),
                'enable_json': os.getenv('ENABLE_JSON_LOGGING', 'true').lower() == 'true'
            },
        }

        # Load configuration file if provided
        if config_file:
            self._load_config_file(config_file)

    def _load_env(self):
        """Load environment variables from .env file."""
        env_file = find_dotenv(usecwd=True)
        if env_file:
            load_dotenv(env_file)

    def _load_config_file(self, config_file: str):
        """Load configuration from JSON or YAML file."""
        config_path = Path(config_file)

        if not config_path.exists():
            raise ConfigurationError(f"Configuration file not found: {config_file}",
                                     context={'path': str(config_file)})

        try:
            with open(config_path, 'r', encoding='utf-8') as f:
                if config_path.suffix.lower() in ['.yml', '.yaml']:
                    file_config = yaml.safe_load(f)
                else:
                    file_config = json.load(f)
        except (yaml.YAMLError, json.JSONDecodeError, OSError) as e:
            raise ConfigurationError(f"Error loading configuration file {config_file}: {e}",
                                     context={'path': str(config_file)})

        if file_config is None:
            return
        if not isinstance(file_config, dict):
            raise ConfigurationError(
                f"Configuration file must contain a dictionary, got {type(file_config).__name__}",
                context={'path': str(config_file)})
        self._deep_merge(self._config, file_config)

    def _deep_merge(self, base_dict: Dict, update_dict: Dict):
        """Recursively merge two dictionaries."""
        for key, value in update_dict.items():
            if key in base_dict and isinstance(base_dict[key], dict) and isinstance(value, dict):
                self._deep_merge(base_dict[key], value)
            else:
                base_dict[key] = value

    def get(self, key_path: str, default: Any = None) -> Any:
        """
        Get configuration value using dot notation.

        Args:
            key_path: Dot-separated path to configuration value (e.g., 'suites.seed')
            default: Default value if key not found

        Returns:
            Configuration value or default
        """
        keys = key_path.split('.')
        value = self._config

        try:
            for key in keys:
                value = value[key]
            return value
        except (KeyError, TypeError):
            return default

    def set(self, key_path: str, value: Any):
        """
        Set configuration value using dot notation.

        Args:
            key_path: Dot-separated path to configuration value
            value: Value to set
        """
        keys = key_path.split('.')
        config = self._config

        # Navigate to the parent dictionary
        for key in keys[:-1]:
            if key not in config:
                config[key] = {}
            if isinstance(config[key], dict):
                config = config[key]
            else:
                raise ConfigurationError(f"Cannot set nested key {key_path}: {key} is not a dictionary",
                                         context={'key': key_path})

        # Set the value
        config[keys[-1]] = value

    def get_catalog_config(self) -> Dict[str, Any]:
        return self.get('catalog', {})

    def get_suite_config(self) -> Dict[str, Any]:
        return self.get('suites', {})

    def get_data_config(self) -> Dict[str, Any]:
        """Get data directories configuration."""
        return self.get('data', {})

    def get_report_config(self) -> Dict[str, Any]:
        return self.get('reports', {})

    def get_logging_config(self) -> Dict[str, Any]:
        """Get logging configuration."""
        return self.get('logging', {})

    def validate_config(self) -> List[str]:
        """
        Validate configuration and return list of errors.

        Returns:
            List of validation error messages
        """
        errors = []

        suites = self.get('suites.enabled', [])
        if not isinstance(suites, list):
            errors.append("suites.enabled must be a list")
            suites = []
        for name in suites:
            if name not in SUITE_NAMES:
                errors.append(f"Unknown suite: {name}")

        count = self.get('suites.instance_count')
        if not isinstance(count, int) or isinstance(count, bool) or count <= 0:
            errors.append(f"suites.instance_count must be a positive integer, got {count!r}")

        seed = self.get('suites.seed')
        if not isinstance(seed, int) or isinstance(seed, bool) or seed < 0:
            errors.append(f"suites.seed must be a non-negative integer, got {seed!r}")

        catalog_path = self.get('catalog.path')
        if not catalog_path:
            errors.append("catalog.path is required")
        elif not Path(catalog_path).exists():
            errors.append(f"Catalog file does not exist: {catalog_path}")

        dim_cap = self.get('catalog.dim_cap')
        if dim_cap is not None and (not isinstance(dim_cap, int) or not 0 <= dim_cap <= 4):
            errors.append(f"catalog.dim_cap must be between 0 and 4, got {dim_cap!r}")

        return errors

    def suite_config(self) -> SuiteConfig:
        """
        Materialise the suite settings.

        Raises:
            ConfigurationError: validate_config reported problems
        """
        errors = self.validate_config()
        if errors:
            raise ConfigurationError("; ".join(errors), context={'errors': errors})
        return SuiteConfig(
            catalog=self.get('catalog.path'),
            suites=list(self.get('suites.enabled', [])),
            seed=self.get('suites.seed', 0),
            instance_count=self.get('suites.instance_count', 50),
            dim_cap=self.get('catalog.dim_cap'),
            gsets=self.get('inputs.gsets'),
            functors=list(self.get('inputs.functors', []) or []),
            faults=list(self.get('inputs.faults', []) or []),
            gset_size_limit=self.get('suites.gset_size_limit', 5),
        )

    def save_config(self, file_path: str):
        """Save current configuration to file."""
        config_path = Path(file_path)

        with open(config_path, 'w', encoding='utf-8') as f:
            if config_path.suffix.lower() in ['.yml', '.yaml']:
                yaml.dump(self._config, f, default_flow_style=False)
            else:
                json.dump(self._config, f, indent=2)


# Global configuration instance
_config_manager = None


def get_config(config_file: Optional[str] = None) -> ConfigManager:
    """
    Get the global configuration manager instance.

    Args:
        config_file: Path to configuration file (used only on first call)

    Returns:
        ConfigManager instance
    """
    global _config_manager

    if _config_manager is None:
        _config_manager = ConfigManager(config_file)

    return _config_manager


def init_config(config_file: Optional[str] = None) -> ConfigManager:
    """
    Initialize the global configuration manager.

    Args:
        config_file: Path to configuration file

    Returns:
        ConfigManager instance
    """
    global _config_manager
    _config_manager = ConfigManager(config_file)
    return _config_manager

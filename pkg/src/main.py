"""
Main entry point for the equicat verification engine.
Provides the command line interface: validate, suite and kan.

Exit codes: 0 when everything passes, 1 when a check or validation fails,
2 when an input cannot be read or does not match its schema.
"""

import argparse
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from categories.functors import check_igspace
from categories.kan import check_ispace, extend_E, internal_smash, kan_results, smash_unit_certificate
from categories.site import SiteCatalog, standard_catalog
from core.definitions import (
    detect_kind,
    encode_igspace,
    encode_kan_results,
    load_catalog,
    load_ispace,
    parse_catalog,
    parse_gsets,
    parse_igspace,
    parse_ispace,
)
from core.errors import ConfigurationError, EquicatError, InputError, SchemaError, StructureError, ValidationError
from core.report import Report
from core.report_store import ReportStore
from suites.fixtures import validate_fixture
from suites.runner import run_suites
from utils.config_manager import ConfigManager, init_config
from utils.logging_config import get_system_logger, setup_logging
from utils.serialization import dumps, read_json, tool_error, tool_success, write_json

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2


def setup_system(config_file: Optional[str] = None, log_level: Optional[str] = None) -> ConfigManager:
    """
    Initialize configuration and logging.

    Raises:
        ConfigurationError: the configuration file cannot be loaded
    """
    config = init_config(config_file)
    setup_logging(
        log_dir=config.get('logging.log_dir', './log'),
        level=log_level or config.get('logging.level', 'INFO')
    )
    logger = get_system_logger('main')
    logger.info("System initialization completed")
    return config


# --- validate -------------------------------------------------------------

def _catalog_for(config: ConfigManager, explicit: Optional[str]) -> SiteCatalog:
    path = explicit or config.get('catalog.path')
    if path and Path(path).exists():
        return load_catalog(path)
    return standard_catalog()


def validate_file(path: str, config: ConfigManager, catalog_path: Optional[str] = None) -> Tuple[int, Dict[str, Any]]:
    """
    Parse one definition file and run the checks its kind has.

    Returns:
        (exit code for this file, status dictionary)
    """
    try:
        doc = read_json(path)
        kind = detect_kind(doc)
        report = Report(f"validate {Path(path).name}")
        if kind == 'catalog':
            catalog = parse_catalog(doc, path)
            summary = {'groups': len(catalog.groups), 'homs': len(catalog.homs),
                       'reps': sum(1 for _ in catalog.all_reps())}
        elif kind == 'gsets':
            gsets = parse_gsets(doc, _catalog_for(config, catalog_path), path)
            summary = {'gsets': len(gsets.all_sets())}
        elif kind == 'ispace':
            X = parse_ispace(doc, path)
            check_ispace(X, report)
            summary = {'name': X.name, 'dim_cap': X.cap}
        elif kind == 'igspace':
            A = parse_igspace(doc, _catalog_for(config, catalog_path), path)
            check_igspace(A, report)
            summary = {'name': A.name, 'group': A.group.name, 'reps': len(A.reps)}
        elif kind == 'fault':
            summary = {'fault': validate_fixture(doc, path)}
        else:
            raise SchemaError("unrecognised definition: expected a catalog, gsets, ispace, igspace or fault",
                              context={'path': path})
    except InputError as e:
        return EXIT_INPUT, tool_error(e.message, path=path, error=e.to_dict())
    except (ValidationError, StructureError) as e:
        return EXIT_FAILED, tool_error(e.message, path=path, error=e.to_dict())

    if not report.passed:
        failed = report.failures()[0]
        return EXIT_FAILED, tool_error(f"check {failed.name} failed", path=path,
                                       check=failed.name, witness=failed.witness)
    return EXIT_OK, tool_success('definition', {'path': path, 'kind': kind, **summary})


def cmd_validate(args, config: ConfigManager) -> int:
    logger = get_system_logger('validate')
    code = EXIT_OK
    results: List[Dict[str, Any]] = []
    for path in args.paths:
        file_code, result = validate_file(path, config, args.catalog)
        logger.info(f"{path}: {result['status']}")
        results.append(result)
        code = max(code, file_code)
    sys.stdout.write(dumps(results))
    return code


# --- suite ----------------------------------------------------------------

def cmd_suite(args, config: ConfigManager) -> int:
    logger = get_system_logger('suite')
    if args.seed is not None:
        config.set('suites.seed', args.seed)
    suite_config = config.suite_config()
    report = run_suites(suite_config, include_timing=bool(config.get('reports.include_timing', False)))

    fmt = args.format or config.get('reports.format', 'text')
    rendered = report.render_json() if fmt == 'json' else report.render_text()
    if args.output:
        output = Path(args.output)
        output.parent.mkdir(parents=True, exist_ok=True)
        output.write_text(rendered, encoding='utf-8')
        logger.info(f"Report written to {output}")
    else:
        sys.stdout.write(rendered)
    if args.save:
        ReportStore(config.get('reports.dir')).save(report)

    summary = report.summary()
    logger.info(f"{summary['passed']}/{summary['checks']} checks passed")
    return EXIT_OK if report.passed else EXIT_FAILED


# --- kan ------------------------------------------------------------------

def cmd_kan(args, config: ConfigManager) -> int:
    logger = get_system_logger('kan')
    catalog = load_catalog(args.catalog)
    try:
        group = catalog.group(args.group)
    except KeyError:
        raise ConfigurationError(f"Catalog {args.catalog} has no group {args.group!r}",
                                 context={'group': args.group})

    if args.smash:
        left, right = (load_ispace(p, catalog.dim_cap) for p in args.smash)
        A, B = extend_E(left, group, catalog), extend_E(right, group, catalog)
        smashed = internal_smash(A, B)
        certificate = Report(f"smash {A.name}^{B.name}")
        smash_unit_certificate(A, report=certificate)
        smash_unit_certificate(B, report=certificate)
        result = {'kind': 'smash', 'bundle': encode_igspace(smashed), 'certificate': certificate.to_dict()}
        passed = certificate.passed
    else:
        X = load_ispace(args.functor, catalog.dim_cap)
        result = encode_kan_results(kan_results(X, group, catalog))
        result['bundle'] = encode_igspace(extend_E(X, group, catalog))
        passed = True

    if args.output:
        write_json(args.output, result)
        logger.info(f"Kan output written to {args.output}")
    else:
        sys.stdout.write(dumps(result))
    return EXIT_OK if passed else EXIT_FAILED


# --- entry point ----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='equicat',
        description="Finite-model verification engine for global equivariant categories",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  %(prog)s validate data/input/catalog.json            # Parse and check definitions
  %(prog)s suite --config config/suite.yaml --seed 7   # Run the verification suites
  %(prog)s kan --catalog data/input/catalog.json --functor data/input/functors/sphere.json --group C2
        """
    )
    parser.add_argument('--config', help='Configuration file path')
    parser.add_argument('--log-level', help='Logging level (DEBUG, INFO, WARNING, ERROR)')
    sub = parser.add_subparsers(dest='command', required=True)

    validate = sub.add_parser('validate', help='Parse and validate definition files')
    validate.add_argument('paths', nargs='+', help='Definition files')
    validate.add_argument('--catalog', help='Catalog for G-set and I_G-space files')

    suite = sub.add_parser('suite', help='Run verification suites')
    suite.add_argument('--config', dest='suite_config', help='Suite configuration file')
    suite.add_argument('--format', choices=['text', 'json'], help='Report format')
    suite.add_argument('--seed', type=int, help='Seed for randomized instances')
    suite.add_argument('--output', help='Write the report to this file instead of stdout')
    suite.add_argument('--save', action='store_true', help='Also store the JSON report under reports.dir')

    kan = sub.add_parser('kan', help='Compute a Kan extension or an internal smash')
    kan.add_argument('--catalog', required=True, help='Catalog file')
    kan.add_argument('--functor', help='I-space file to extend')
    kan.add_argument('--group', required=True, help='Catalog group to extend over')
    kan.add_argument('--smash', nargs=2, metavar=('A', 'B'), help='Smash the extensions of two I-space files')
    kan.add_argument('--output', help='Write the result to this file instead of stdout')
    return parser


COMMANDS = {
    'validate': cmd_validate,
    'suite': cmd_suite,
    'kan': cmd_kan,
}


def main(argv: Optional[List[str]] = None) -> int:
    """Run one command and return its exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == 'kan' and not (args.functor or args.smash):
        parser.error("kan requires --functor or --smash A B")

    config_file = getattr(args, 'suite_config', None) or args.config
    try:
        config = setup_system(config_file, args.log_level)
    except InputError as e:
        sys.stderr.write(f"error: {e.message}\n")
        return EXIT_INPUT

    logger = get_system_logger('main')
    try:
        return COMMANDS[args.command](args, config)
    except InputError as e:
        logger.error(f"Input error: {e.message}")
        sys.stderr.write(dumps(tool_error(e.message, error=e.to_dict())))
        return EXIT_INPUT
    except StructureError as e:
        logger.error(f"{e.error_code}: {e.message}")
        sys.stderr.write(dumps(tool_error(e.message, error=e.to_dict(),
                                          guidance="extend the catalog or lower dim_cap")))
        return EXIT_INPUT
    except EquicatError as e:
        logger.error(f"Validation error: {e.message}")
        sys.stderr.write(dumps(tool_error(e.message, error=e.to_dict())))
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())

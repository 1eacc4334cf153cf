"""
JSON helpers shared by reports, definitions and the command line.
"""

import json
from dataclasses import asdict, is_dataclass
from pathlib import Path
from typing import Any, Dict, Union

import numpy as np

from core.errors import InputError, SchemaError


def tool_success(key: str, result: Any) -> Dict[str, Any]:
    """Convenience function to return a success result."""
    return {
        'status': 'success',
        key: result
    }


def tool_error(message: str, **extra: Any) -> Dict[str, Any]:
    """Convenience function to return an error result."""
    return {
        'status': 'error',
        'error_message': message,
        **extra
    }


def to_jsonable(value: Any) -> Any:
    """Convert numpy scalars/arrays, tuples, sets and dataclasses to plain JSON values."""
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return [to_jsonable(v) for v in sorted(value)]
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    if is_dataclass(value) and not isinstance(value, type):
        return to_jsonable(asdict(value))
    return value


def dumps(value: Any) -> str:
    """Deterministic JSON text (sorted keys, two-space indent, trailing newline)."""
    return json.dumps(to_jsonable(value), indent=2, sort_keys=True) + '\n'


def read_json(path: Union[str, Path]) -> Any:
    """
    Load a JSON document.

    Raises:
        InputError: the file does not exist or cannot be read
        SchemaError: the text is not valid JSON (pointer is the root)
    """
    path = Path(path)
    if not path.exists():
        raise InputError(f"File not found: {path}", context={'path': str(path)})
    try:
        with open(path, 'r', encoding='utf-8') as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise SchemaError(f"{path}: malformed JSON at line {e.lineno} column {e.colno}: {e.msg}",
                          context={'path': str(path)})
    except OSError as e:
        raise InputError(f"Cannot read {path}: {e}", context={'path': str(path)})


def write_json(path: Union[str, Path], value: Any):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', encoding='utf-8') as f:
        f.write(dumps(value))

"""
Verification reports for the equicat engine.

A Report aggregates named checks; each check counts the instances it
examined and keeps the first failing witness.  Serialized reports are
sorted by check name and carry no timestamps, so two runs over the same
inputs and seed produce identical bytes.
"""

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Any, Callable, Dict, Iterator, List, Optional, Union

from core.errors import EquicatError
from utils.logging_config import get_system_logger
from utils.serialization import to_jsonable

PASS = 'pass'
FAIL = 'fail'

Witness = Union[Dict[str, Any], Callable[[], Dict[str, Any]], None]


@dataclass
class CheckResult:
    """Outcome of one named check."""

    name: str
    status: str = PASS
    instances: int = 0
    failures: int = 0
    witness: Optional[Dict[str, Any]] = None
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self, include_timing: bool = False) -> Dict[str, Any]:
        data = {
            'name': self.name,
            'status': self.status,
            'instances': self.instances,
            'failures': self.failures,
        }
        if self.witness is not None:
            data['witness'] = self.witness
        if include_timing:
            data['elapsed'] = round(self.elapsed, 6)
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'CheckResult':
        return cls(
            name=data['name'],
            status=data.get('status', PASS),
            instances=data.get('instances', 0),
            failures=data.get('failures', 0),
            witness=data.get('witness'),
            elapsed=data.get('elapsed', 0.0),
        )


class CheckRecorder:
    """Handed out by `Report.check`; records instances of a single check."""

    def __init__(self, result: CheckResult, report: 'Report'):
        self.result = result
        self.report = report

    def expect(self, condition: bool, witness: Witness = None) -> bool:
        """
        Record one instance of the check.

        Args:
            condition: True if the instance satisfies the property
            witness: Dict (or zero-argument callable building one) describing
                the offending data; only evaluated for the first failure

        Returns:
            The condition, so callers can branch on it
        """
        self.result.instances += 1
        if condition:
            return True
        self.result.failures += 1
        self.result.status = FAIL
        if self.result.witness is None:
            data = witness() if callable(witness) else witness
            self.result.witness = to_jsonable(data if data is not None else {})
            self.report.logger.warning(
                f"Check {self.result.name} failed: {json.dumps(self.result.witness, sort_keys=True)}")
        return False

    def fail(self, witness: Witness = None) -> bool:
        return self.expect(False, witness)

    def count(self, n: int = 1):
        """Record n passing instances at once (vectorised checks)."""
        self.result.instances += n


class Report:
    """Collection of check results with a title and the seed that produced it."""

    def __init__(self, title: str = 'equicat', seed: Optional[int] = None,
                 include_timing: bool = False):
        self.title = title
        self.seed = seed
        self.include_timing = include_timing
        self.checks: Dict[str, CheckResult] = {}
        self.metadata: Dict[str, Any] = {}
        self.logger = get_system_logger('report')

    @contextmanager
    def check(self, name: str) -> Iterator[CheckRecorder]:
        """
        Context manager for one named check.

        Engine errors raised inside the block become a failing instance whose
        witness is the error's structured form; other exceptions propagate.
        """
        result = self.checks.get(name)
        if result is None:
            result = self.checks[name] = CheckResult(name)
        recorder = CheckRecorder(result, self)
        self.logger.debug(f"Check {name} started")
        start = time.perf_counter()
        try:
            yield recorder
        except EquicatError as e:
            recorder.fail(e.to_dict())
        finally:
            result.elapsed += time.perf_counter() - start

    def record(self, name: str, condition: bool, witness: Witness = None) -> bool:
        with self.check(name) as c:
            return c.expect(condition, witness)

    def merge(self, other: 'Report', prefix: str = '') -> 'Report':
        """Fold another report's checks into this one."""
        for name, result in other.checks.items():
            key = f"{prefix}{name}"
            mine = self.checks.get(key)
            if mine is None:
                self.checks[key] = CheckResult(key, result.status, result.instances,
                                               result.failures, result.witness, result.elapsed)
                continue
            mine.instances += result.instances
            mine.failures += result.failures
            mine.elapsed += result.elapsed
            if not result.passed:
                mine.status = FAIL
                if mine.witness is None:
                    mine.witness = result.witness
        return self

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.checks.values())

    def failures(self) -> List[CheckResult]:
        return [r for r in self.sorted_checks() if not r.passed]

    def sorted_checks(self) -> List[CheckResult]:
        return [self.checks[k] for k in sorted(self.checks)]

    def summary(self) -> Dict[str, int]:
        results = list(self.checks.values())
        return {
            'checks': len(results),
            'passed': sum(1 for r in results if r.passed),
            'failed': sum(1 for r in results if not r.passed),
            'instances': sum(r.instances for r in results),
        }

    def to_dict(self) -> Dict[str, Any]:
        return {
            'title': self.title,
            'seed': self.seed,
            'status': PASS if self.passed else FAIL,
            'summary': self.summary(),
            'metadata': to_jsonable(self.metadata),
            'checks': [r.to_dict(self.include_timing) for r in self.sorted_checks()],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'Report':
        report = cls(data.get('title', 'equicat'), data.get('seed'))
        report.metadata = data.get('metadata', {})
        for entry in data.get('checks', []):
            result = CheckResult.from_dict(entry)
            report.checks[result.name] = result
        return report

    def render_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + '\n'

    def render_text(self) -> str:
        summary = self.summary()
        lines = [
            f"{self.title} (seed={self.seed})",
            '=' * 60,
        ]
        width = max((len(name) for name in self.checks), default=0)
        for result in self.sorted_checks():
            mark = 'PASS' if result.passed else 'FAIL'
            line = f"{mark}  {result.name.ljust(width)}  {result.instances:>8} instances"
            if self.include_timing:
                line += f"  {result.elapsed:.3f}s"
            lines.append(line)
            if not result.passed:
                lines.append(f"      {result.failures} failing; witness: "
                             f"{json.dumps(result.witness, sort_keys=True)}")
        lines.append('=' * 60)
        lines.append(f"{summary['checks']} checks, {summary['passed']} passed, "
                     f"{summary['failed']} failed, {summary['instances']} instances")
        return '\n'.join(lines) + '\n'

    def __repr__(self) -> str:
        s = self.summary()
        return f"Report({self.title!r}, checks={s['checks']}, failed={s['failed']})"

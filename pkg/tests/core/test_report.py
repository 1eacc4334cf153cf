"""Report aggregation, witnesses and deterministic rendering."""

import json

import numpy as np
import pytest

from core.errors import DimMismatch
from core.report import FAIL, PASS, Report


def test_check_counts_instances_and_keeps_first_witness():
    report = Report('t')
    with report.check('law') as c:
        c.expect(True)
        c.expect(False, {'i': np.int64(1)})
        c.expect(False, {'i': 2})
        c.count(3)
    result = report.checks['law']
    assert result.status == FAIL
    assert result.instances == 6
    assert result.failures == 2
    assert result.witness == {'i': 1}
    assert not report.passed


def test_witness_callable_only_built_on_failure():
    calls = []

    def witness():
        calls.append(1)
        return {'x': 0}

    report = Report()
    report.record('ok', True, witness)
    assert calls == []
    report.record('bad', False, witness)
    assert calls == [1]


def test_engine_errors_become_failures():
    report = Report()
    with report.check('sum') as c:
        c.count()
        raise DimMismatch("dims differ", context={'left': 1, 'right': 2})
    result = report.checks['sum']
    assert not result.passed
    assert result.witness['error'] == 'DimMismatch'
    assert result.witness['context'] == {'left': 1, 'right': 2}


def test_other_exceptions_propagate():
    report = Report()
    with pytest.raises(ZeroDivisionError):
        with report.check('boom'):
            1 / 0
    assert report.checks['boom'].passed


def test_merge_with_prefix():
    a = Report('a')
    a.record('x', True)
    b = Report('b')
    b.record('x', False, {'k': 1})
    b.record('y', True)
    a.merge(b, prefix='site/')
    assert sorted(a.checks) == ['site/x', 'site/y', 'x']
    a.merge(b)
    assert a.checks['x'].status == FAIL
    assert a.checks['x'].instances == 2
    assert a.checks['x'].witness == {'k': 1}


def test_summary_and_failures_sorted():
    report = Report()
    report.record('b', False)
    report.record('a', False)
    report.record('c', True)
    assert [r.name for r in report.failures()] == ['a', 'b']
    assert report.summary() == {'checks': 3, 'passed': 1, 'failed': 2, 'instances': 3}


def test_render_json_is_deterministic():
    def build(order):
        report = Report('suite', seed=7)
        for name in order:
            report.record(name, name != 'b', {'name': name})
        return report

    one = build(['a', 'b', 'c']).render_json()
    two = build(['c', 'b', 'a']).render_json()
    assert one == two
    assert one.endswith('\n')
    data = json.loads(one)
    assert data['status'] == FAIL
    assert data['seed'] == 7
    assert [c['name'] for c in data['checks']] == ['a', 'b', 'c']
    assert 'elapsed' not in data['checks'][0]


def test_timing_only_when_requested():
    report = Report(include_timing=True)
    report.record('a', True)
    assert 'elapsed' in report.to_dict()['checks'][0]


def test_from_dict_round_trip():
    report = Report('r', seed=3)
    report.metadata = {'dim_cap': 2}
    report.record('a', False, {'w': [1, 2]})
    back = Report.from_dict(json.loads(report.render_json()))
    assert back.render_json() == report.render_json()


def test_render_text():
    report = Report('suite', seed=1)
    report.record('site.identity', True)
    report.record('site.associative', False, {'g': 'e'})
    text = report.render_text()
    assert text.splitlines()[0] == 'suite (seed=1)'
    assert 'PASS  site.identity' in text
    assert 'FAIL  site.associative' in text
    assert '"g": "e"' in text
    assert text.rstrip().endswith('2 checks, 1 passed, 1 failed, 2 instances')
    assert Report().to_dict()['status'] == PASS

"""Saving and loading reports."""

import pytest

from core.errors import InputError
from core.report import Report
from core.report_store import ReportStore, report_slug


def test_slug():
    assert report_slug('equicat suite') == 'equicat-suite'
    assert report_slug('fault broken/rho') == 'fault-broken-rho'
    assert report_slug('///') == 'report'


def test_save_and_load(tmp_path):
    store = ReportStore(str(tmp_path / 'reports'))
    report = Report('equicat suite', seed=5)
    report.record('a', True)
    report.record('b', False, {'x': 1})
    path = store.save(report)
    assert path.name == 'equicat-suite-seed5.json'
    loaded = store.load(str(path))
    assert loaded.render_json() == report.render_json()
    assert store.list_reports() == [path]

    first = path.read_bytes()
    store.save(report)
    assert path.read_bytes() == first


def test_statistics_skip_foreign_files(tmp_path):
    store = ReportStore(str(tmp_path))
    passing = Report('ok')
    passing.record('a', True)
    store.save(passing)
    (tmp_path / 'other.json').write_text('{"not": "a report"}', encoding='utf-8')
    stats = store.get_statistics()
    assert stats['reports'] == 1
    assert stats['passing'] == 1
    assert stats['checks'] == 1


def test_load_rejects_non_reports(tmp_path):
    path = tmp_path / 'x.json'
    path.write_text('[1, 2]', encoding='utf-8')
    with pytest.raises(InputError):
        ReportStore(str(tmp_path)).load(str(path))

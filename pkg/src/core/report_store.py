"""
Persistence of verification reports.
Stores rendered reports under the output directory and reads them back.
"""

import re
from pathlib import Path
from typing import Any, Dict, List, Optional

from core.errors import InputError
from core.report import Report
from utils.config_manager import get_config
from utils.logging_config import get_system_logger
from utils.serialization import read_json


def report_slug(title: str) -> str:
    """File-name form of a report title."""
    return re.sub(r'[^A-Za-z0-9._-]+', '-', title).strip('-').lower() or 'report'


class ReportStore:
    """Reads and writes reports as JSON files, one per (title, seed)."""

    def __init__(self, storage_dir: Optional[str] = None):
        """
        Initialize the report store.

        Args:
            storage_dir: Directory for report files; defaults to reports.dir
                from the configuration
        """
        self.logger = get_system_logger('report_store')
        self.config = get_config()

        if storage_dir:
            self.storage_dir = Path(storage_dir)
        else:
            self.storage_dir = Path(self.config.get('reports.dir', './data/output/reports'))

        self.storage_dir.mkdir(parents=True, exist_ok=True)
        self.logger.info(f"Report store initialized with storage: {self.storage_dir}")

    def path_for(self, report: Report) -> Path:
        name = report_slug(report.title)
        if report.seed is not None:
            name += f"-seed{report.seed}"
        return self.storage_dir / f"{name}.json"

    def save(self, report: Report, path: Optional[str] = None) -> Path:
        """
        Write the report; the same report always produces the same bytes.

        Args:
            report: Report to persist
            path: Explicit destination, otherwise derived from title and seed

        Returns:
            Path of the written file
        """
        target = Path(path) if path else self.path_for(report)
        target.parent.mkdir(parents=True, exist_ok=True)
        with open(target, 'w', encoding='utf-8') as f:
            f.write(report.render_json())
        self.logger.info(f"Saved report {report.title!r} to {target}")
        return target

    def load(self, path: str) -> Report:
        """
        Raises:
            InputError: the file is missing or is not a report
        """
        data = read_json(path)
        if not isinstance(data, dict) or 'checks' not in data:
            raise InputError(f"{path} is not a report", context={'path': str(path)})
        return Report.from_dict(data)

    def list_reports(self) -> List[Path]:
        return sorted(self.storage_dir.glob('*.json'))

    def load_all(self) -> List[Report]:
        reports = []
        for report_file in self.list_reports():
            try:
                reports.append(self.load(str(report_file)))
            except InputError as e:
                self.logger.warning(f"Failed to load report from {report_file}: {e.message}")
        return reports

    def get_statistics(self) -> Dict[str, Any]:
        """Totals over the stored reports."""
        reports = self.load_all()
        return {
            'reports': len(reports),
            'passing': sum(1 for r in reports if r.passed),
            'failing': sum(1 for r in reports if not r.passed),
            'checks': sum(r.summary()['checks'] for r in reports),
            'storage_directory': str(self.storage_dir),
        }

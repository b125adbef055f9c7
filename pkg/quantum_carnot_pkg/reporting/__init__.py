"""
Report writers for the quantum Carnot tools.
"""

import logging
from typing import Any, Dict, Optional

from quantum_carnot_pkg.reporting.csv_report import CsvReportGenerator
from quantum_carnot_pkg.reporting.html_report import HtmlReportGenerator
from quantum_carnot_pkg.reporting.json_report import JsonReportGenerator

REPORT_FORMATS = ("json", "csv", "html")


def generate_report(report_format: str, report_data: Dict[str, Any], output_path: str,
                    system_info: Optional[Dict[str, Any]] = None,
                    logger: Optional[logging.Logger] = None) -> str:
    """
    Write a report in the given format.

    Args:
        report_format: 'json', 'csv' or 'html'
        report_data: Data to include; CSV needs "columns" and "rows", HTML needs "kind"
        output_path: Path to save the report
        system_info: Host information (JSON and HTML reports only)
        logger: Logger handed to the generator

    Returns:
        Path to the saved report

    Raises:
        ValueError: unknown format
        OSError: the path cannot be written
    """
    report_format = report_format.lower()

    if report_format == 'json':
        data = dict(report_data)
        if system_info:
            data["system_info"] = system_info
        return JsonReportGenerator(logger=logger).generate_report(data, output_path)
    if report_format == 'csv':
        return CsvReportGenerator(logger=logger).generate_report(report_data, output_path)
    if report_format == 'html':
        return HtmlReportGenerator(logger=logger).generate_report(report_data, output_path, system_info)

    raise ValueError(f"Unknown report format '{report_format}', expected one of {REPORT_FORMATS}")

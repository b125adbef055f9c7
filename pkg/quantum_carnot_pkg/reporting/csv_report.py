"""
CSV output for stroke samples and lambda sweeps.

Floats are written with repr so every value round-trips exactly, and nothing
time-dependent is written, so identical inputs give byte-identical files.
"""

import csv
import logging
from typing import Any, Dict, Iterable, List, Optional, Sequence, TextIO

import numpy as np


def _cell(value: Any) -> str:
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    return str(value)


class CsvReportGenerator:
    """
    Writes a header and rows as CSV.
    """

    def __init__(self, logger: Optional[logging.Logger] = None):
        self.logger = logger or logging.getLogger(__name__)

    def format_rows(self, columns: Sequence[str], rows: Iterable[Sequence[Any]]) -> List[List[str]]:
        formatted = []
        for row in rows:
            if len(row) != len(columns):
                raise ValueError(f"Row has {len(row)} cells, header has {len(columns)}")
            formatted.append([_cell(value) for value in row])
        return formatted

    def write(self, report_data: Dict[str, Any], stream: TextIO) -> int:
        """Write ``report_data["columns"]`` and ``report_data["rows"]`` to an open text stream."""
        columns = list(report_data["columns"])
        rows = self.format_rows(columns, report_data["rows"])
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(columns)
        writer.writerows(rows)
        return len(rows)

    def generate_report(self, report_data: Dict[str, Any], output_path: str) -> str:
        """
        Write the table to ``output_path``.

        Returns:
            Path to the saved file
        """
        with open(output_path, 'w', newline='') as f:
            count = self.write(report_data, f)
        self.logger.info(f"Wrote {count} rows to {output_path}")
        return output_path

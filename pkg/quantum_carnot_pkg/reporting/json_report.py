"""
JSON output for solves, cycle reports and verification runs.
"""

import json
import logging
import math
from typing import Any, Dict, Optional

import numpy as np


def to_jsonable(data: Any) -> Any:
    """
    Recursively convert data for strict JSON: numpy values become Python
    values and non-finite floats become None.
    """
    if isinstance(data, dict):
        return {str(k): to_jsonable(v) for k, v in data.items()}
    if isinstance(data, (list, tuple)):
        return [to_jsonable(item) for item in data]
    if isinstance(data, np.ndarray):
        return [to_jsonable(item) for item in data.tolist()]
    if isinstance(data, (bool, np.bool_)):
        return bool(data)
    if isinstance(data, (int, np.integer)):
        return int(data)
    if isinstance(data, (float, np.floating)):
        value = float(data)
        return value if math.isfinite(value) else None
    if data is None or isinstance(data, str):
        return data
    return str(data)


def dumps(data: Any, indent: Optional[int] = 2) -> str:
    """Serialize with full float precision; NaN and infinities are written as null."""
    return json.dumps(to_jsonable(data), indent=indent, allow_nan=False)


class JsonReportGenerator:
    """
    Writes report data as a JSON document.
    """

    def __init__(self, logger: Optional[logging.Logger] = None):
        self.logger = logger or logging.getLogger(__name__)

    def generate_report(self, report_data: Dict[str, Any], output_path: Optional[str] = None) -> str:
        """
        Generate a JSON report.

        Args:
            report_data: Data to include in the report
            output_path: Path to save the report (if None, returns the report as a string)

        Returns:
            Path to the saved report, or the report as a string if output_path is None
        """
        json_str = dumps(report_data)

        if output_path:
            with open(output_path, 'w') as f:
                f.write(json_str)
                f.write("\n")
            self.logger.info(f"JSON report saved to {output_path}")
            return output_path

        return json_str

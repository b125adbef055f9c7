"""
HTML reports for cycles and verification runs, rendered with jinja2.
"""

import html
import logging
from typing import Any, Dict, Optional

import jinja2

from quantum_carnot_pkg.reporting.html_template import (
    CYCLE_TEMPLATE,
    FALLBACK_HTML_TEMPLATE,
    VERIFICATION_TEMPLATE,
)
from quantum_carnot_pkg.reporting.json_report import dumps, to_jsonable

TEMPLATES = {
    "cycle": CYCLE_TEMPLATE,
    "verification": VERIFICATION_TEMPLATE,
}


class HtmlReportGenerator:
    """
    Generates HTML reports; ``report_data["kind"]`` selects the template.
    """

    def __init__(self, logger: Optional[logging.Logger] = None):
        self.logger = logger or logging.getLogger(__name__)
        self.env = jinja2.Environment(autoescape=True, undefined=jinja2.ChainableUndefined)

    def render(self, report_data: Dict[str, Any], system_info: Optional[Dict[str, Any]] = None) -> str:
        kind = report_data.get("kind")
        if kind not in TEMPLATES:
            raise ValueError(f"No HTML template for report kind '{kind}'")
        template = self.env.from_string(TEMPLATES[kind])
        return template.render(report_data=to_jsonable(report_data),
                               system_info=to_jsonable(system_info or {}))

    def generate_report(self, report_data: Dict[str, Any], output_path: str,
                        system_info: Optional[Dict[str, Any]] = None) -> str:
        """
        Generate an HTML report.

        A template error falls back to a page holding the raw JSON.

        Returns:
            Path to the saved report
        """
        try:
            html_content = self.render(report_data, system_info)
        except jinja2.TemplateError as e:
            self.logger.error(f"Template rendering error: {e}")
            html_content = FALLBACK_HTML_TEMPLATE.format(json_data=html.escape(dumps(report_data)))

        with open(output_path, 'w') as f:
            f.write(html_content)
        self.logger.info(f"HTML report saved to {output_path}")
        return output_path

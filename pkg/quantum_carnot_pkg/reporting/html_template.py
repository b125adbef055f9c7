"""HTML templates for cycle and verification reports."""

_STYLE = """
    <style>
        body { font-family: Georgia, serif; margin: 2em auto; max-width: 72em; color: #222; }
        h1 { border-bottom: 2px solid #345; padding-bottom: 0.3em; }
        table { border-collapse: collapse; margin: 1em 0; }
        th, td { border: 1px solid #bbb; padding: 0.25em 0.6em; font-family: Menlo, monospace; font-size: 0.9em; }
        th { background: #345; color: #fff; text-align: left; }
        .status-success { color: #1a7f37; font-weight: bold; }
        .status-failed { color: #b3261e; font-weight: bold; }
        .system-info { margin-top: 2em; font-size: 0.85em; color: #555; }
    </style>
"""

CYCLE_TEMPLATE = """<!DOCTYPE html>
<html lang="en">
<head>
    <meta charset="UTF-8">
    <title>Quantum Carnot Cycle Report</title>
""" + _STYLE + """
</head>
<body>
    <main>
        <header>
            <h1>Quantum Carnot Cycle Report</h1>
            <p>{{ report_data.model }} spectrum,
               V1={{ report_data.report.v1 }}, V2={{ report_data.report.v2 }}, V3={{ report_data.report.v3 }}</p>
        </header>

        <h2>Summary</h2>
        <table>
            <thead><tr><th>Quantity</th><th>Value</th></tr></thead>
            <tbody>
                {% for key, value in report_data.summary.items() %}
                <tr><td>{{ key }}</td><td>{{ value }}</td></tr>
                {% endfor %}
                <tr>
                    <td>reversible</td>
                    <td class="{% if report_data.report.reversible %}status-success{% else %}status-failed{% endif %}">
                        {{ "Yes" if report_data.report.reversible else "No" }}
                    </td>
                </tr>
            </tbody>
        </table>

        <h2>Stroke samples</h2>
        <table>
            <thead>
                <tr>{% for column in report_data.columns %}<th>{{ column }}</th>{% endfor %}</tr>
            </thead>
            <tbody>
                {% for row in report_data.rows %}
                <tr>{% for cell in row %}<td>{{ cell }}</td>{% endfor %}</tr>
                {% endfor %}
            </tbody>
        </table>
    </main>
</body>
</html>
"""

VERIFICATION_TEMPLATE = """<!DOCTYPE html>
<html lang="en">
<head>
    <meta charset="UTF-8">
    <title>Quantum Carnot Verification Report</title>
""" + _STYLE + """
</head>
<body>
    <main>
        <header>
            <h1>Quantum Carnot Verification Report</h1>
            <p>Level: {{ report_data.level }}
               {% if system_info.timestamp %}&middot; generated on {{ system_info.timestamp }}{% endif %}</p>
            <p class="{% if report_data.passed %}status-success{% else %}status-failed{% endif %}">
                {{ "All checks passed" if report_data.passed else "Failed: " ~ report_data.failed_checks|join(", ") }}
            </p>
        </header>

        <table>
            <thead>
                <tr><th>Check</th><th>Status</th><th>Worst</th><th>Tolerance</th><th>Time (s)</th><th>Detail</th></tr>
            </thead>
            <tbody>
                {% for check in report_data.checks %}
                <tr>
                    <td>{{ check.name }}</td>
                    <td class="{% if check.passed %}status-success{% else %}status-failed{% endif %}">
                        {{ "Passed" if check.passed else "Failed" }}
                    </td>
                    <td>{{ check.worst }}</td>
                    <td>{{ check.tolerance }}</td>
                    <td>{{ check.elapsed_time|round(3) }}</td>
                    <td>{{ check.detail }}</td>
                </tr>
                {% endfor %}
            </tbody>
        </table>

        {% if system_info %}
        <div class="system-info">
            <h2>System Information</h2>
            <p>{{ system_info.platform }} {{ system_info.architecture }}, Python {{ system_info.python_version }},
               numpy {{ system_info.numpy_version }}, scipy {{ system_info.scipy_version }}</p>
            {% if system_info.cpu_info %}
            <p>CPU: {{ system_info.cpu_info.brand }} ({{ system_info.cpu_info.physical_count }} cores,
               {{ system_info.cpu_info.count }} threads)</p>
            {% endif %}
        </div>
        {% endif %}
    </main>
</body>
</html>
"""

FALLBACK_HTML_TEMPLATE = """<!DOCTYPE html>
<html>
<head><title>Quantum Carnot Report</title></head>
<body>
<h1>Quantum Carnot Report</h1>
<pre>{json_data}</pre>
</body>
</html>
"""

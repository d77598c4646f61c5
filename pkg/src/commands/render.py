"""Report output: JSON with exact [num, den] pairs, or plain text."""

import json
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Optional

import click

from src.models.report import OutputFormat, Report
from src.utils.helpers import fraction_pair


def to_jsonable(value: Any) -> Any:
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        return fraction_pair(value)
    if isinstance(value, float):
        raise TypeError("floats are not allowed in reports")
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    return str(value)


def report_payload(report: Report) -> Dict[str, Any]:
    """Top-level document: the fixed report fields followed by the verb's data."""
    payload = {
        "command": report.command,
        "system": report.system,
        "checks": [check.model_dump(by_alias=True) for check in report.checks],
        "timing_ms": report.timing_ms,
    }
    for key, value in report.data.items():
        payload.setdefault(key, value)
    return to_jsonable(payload)


def render_json(report: Report) -> str:
    return json.dumps(report_payload(report), indent=2, sort_keys=True) + "\n"


def _text_value(value: Any) -> str:
    if isinstance(value, list) and len(value) == 2 and all(isinstance(v, int) and not isinstance(v, bool) for v in value):
        num, den = value
        return str(num) if den == 1 else f"{num}/{den}"
    return json.dumps(value, sort_keys=True)


def render_text(report: Report) -> str:
    payload = report_payload(report)
    lines = [f"command: {report.command}"]
    if report.system:
        lines.append(f"system: {report.system}")
    for check in report.checks:
        status = "PASS" if check.passed else "FAIL"
        line = f"  [{status}] {check.name}"
        if check.detail:
            line += f" - {check.detail}"
        if check.witness is not None:
            line += f" (witness: {json.dumps(to_jsonable(check.witness), sort_keys=True)})"
        lines.append(line)
    for key in sorted(report.data):
        value = payload[key]
        if isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{key}:")
            lines.extend(f"  {json.dumps(row, sort_keys=True)}" for row in value)
        else:
            lines.append(f"{key}: {_text_value(value)}")
    if payload["timing_ms"] is not None:
        lines.append(f"timing_ms: {_text_value(payload['timing_ms'])}")
    return "\n".join(lines) + "\n"


def render(report: Report, output_format: OutputFormat) -> str:
    if OutputFormat(output_format) == OutputFormat.JSON:
        return render_json(report)
    return render_text(report)


def write_report(text: str, output: Optional[Path]) -> None:
    if output is None:
        click.echo(text, nl=False)
    else:
        Path(output).write_text(text)

"""JSON serialization of proof reports.

Integers that may not survive a round trip through an IEEE double
(|x| >= 2^53) are written as decimal strings.
"""

from __future__ import annotations

import json
from typing import Any

from . import __version__
from .proofcheck import ProofReport, ProofStep

TOOL = "qrlab"
_SAFE = 1 << 53


def json_int(x: int | None):
    if x is None:
        return None
    x = int(x)
    return str(x) if abs(x) >= _SAFE else x


def step_to_dict(step: ProofStep) -> dict[str, Any]:
    d: dict[str, Any] = {
        "step_id": step.step_id.value,
        "params": {k: json_int(v) if isinstance(v, int) else v for k, v in step.params.items()},
        "lhs": json_int(step.lhs),
        "rhs": json_int(step.rhs),
    }
    if step.modulus is not None:
        d["modulus"] = json_int(step.modulus)
    d["passed"] = step.passed
    if step.skipped is not None:
        d["skipped"] = step.skipped
    return d


def report_to_dict(report: ProofReport) -> dict[str, Any]:
    return {
        "tool": TOOL,
        "version": __version__,
        "params": report.params,
        "steps": [step_to_dict(s) for s in report.steps],
        "summary": report.summary,
    }


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=True) + "\n"


def report_to_json(report: ProofReport) -> str:
    return dumps(report_to_dict(report))

"""Flat check records shared by every verification suite."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Sequence

__all__ = ["CheckRecord", "write_report", "render_tsv", "summarize"]


@dataclass(frozen=True)
class CheckRecord:
    suite: str
    check_id: str
    params: dict[str, Any] = field(default_factory=dict)
    lhs: float | None = None
    rhs: float | None = None
    ratio: float | None = None
    passed: bool = True
    notes: str = ""

    def row(self) -> dict[str, Any]:
        d = asdict(self)
        d["params"] = json.dumps(self.params, sort_keys=True)
        return d


def _clean(x: Any) -> Any:
    if isinstance(x, float) and not math.isfinite(x):
        return repr(x)
    if isinstance(x, dict):
        return {k: _clean(v) for k, v in sorted(x.items())}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    return x


def write_report(records: Sequence[CheckRecord], path: str | Path) -> None:
    doc = {
        "records": [_clean(asdict(r)) for r in records],
        "summary": summarize(records),
    }
    Path(path).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def render_tsv(records: Sequence[CheckRecord]) -> str:
    cols = ["suite", "check_id", "params", "lhs", "rhs", "ratio", "passed", "notes"]
    lines = ["\t".join(cols)]
    for r in records:
        row = r.row()
        lines.append("\t".join(str(row[c]) for c in cols))
    return "\n".join(lines) + "\n"


def summarize(records: Sequence[CheckRecord]) -> dict[str, Any]:
    return {
        "checks": len(records),
        "failed": sum(not r.passed for r in records),
        "passed": all(r.passed for r in records),
    }

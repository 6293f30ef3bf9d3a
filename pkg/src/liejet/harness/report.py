"""Property records, reports and their JSON / text rendering (schema v1)."""
from __future__ import annotations

import json
import math
import sys
from dataclasses import dataclass, field
from typing import TextIO

__all__ = ["PREMISE_VIOLATED", "Record", "Report", "SCHEMA", "emit_report", "render_table"]

SCHEMA = "liejet-report/1"
PREMISE_VIOLATED = "premise-violated"
STATUSES = ("pass", "fail", "skip")


def _clean(x):
    """Make diagnostics JSON-safe and deterministic (non-finite floats become strings)."""
    if isinstance(x, dict):
        return {str(k): _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, complex):
        return [_clean(x.real), _clean(x.imag)]
    try:
        v = float(x)
    except (TypeError, ValueError):
        return str(x)
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return v


@dataclass
class Record:
    """One property verdict.

    ``residual`` is a finite number or :data:`PREMISE_VIOLATED`;
    ``diagnostics`` holds rate fits, step tables and sample counts.
    """

    name: str
    anchor: str
    status: str
    residual: float | str
    tolerance: float
    diagnostics: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"bad status {self.status!r}")

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "anchor": self.anchor,
            "status": self.status,
            "residual": _clean(self.residual),
            "tolerance": _clean(self.tolerance),
            "diagnostics": _clean(self.diagnostics),
        }


@dataclass
class Report:
    suite: str
    seed: int
    config: dict = field(default_factory=dict)
    records: list[Record] = field(default_factory=list)
    wall_time: float = 0.0

    def summary(self) -> dict:
        counts = {s: 0 for s in STATUSES}
        for r in self.records:
            counts[r.status] += 1
        counts["total"] = len(self.records)
        return counts

    @property
    def failed(self) -> bool:
        return any(r.status == "fail" for r in self.records)

    @property
    def exit_code(self) -> int:
        return 1 if self.failed else 0

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "suite": self.suite,
            "seed": self.seed,
            "config": _clean(self.config),
            "records": [r.to_json() for r in sorted(self.records, key=lambda r: r.name)],
            "summary": self.summary(),
            "wall_time": round(self.wall_time, 3),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"


def _fmt(x) -> str:
    if isinstance(x, str):
        return x
    return f"{x:.3g}"


def render_table(r: Report) -> str:
    rows = [(rec.status.upper(), rec.name, _fmt(rec.residual), _fmt(rec.tolerance), rec.anchor)
            for rec in sorted(r.records, key=lambda x: x.name)]
    head = ("STATUS", "PROPERTY", "RESIDUAL", "TOL", "ANCHOR")
    widths = [max(len(h), *(len(row[i]) for row in rows)) if rows else len(h)
              for i, h in enumerate(head)]
    line = lambda cells: "  ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip()
    out = [line(head), line(["-" * w for w in widths])]
    out += [line(row) for row in rows]
    s = r.summary()
    out.append(f"{s['pass']} passed, {s['fail']} failed, {s['skip']} skipped "
               f"of {s['total']} ({r.wall_time:.1f} s)")
    return "\n".join(out) + "\n"


def emit_report(r: Report, path: str | None = None, stream: TextIO | None = None) -> None:
    """Write the JSON report to ``path`` (if given) and the table to ``stream``."""
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(r.dumps())
    (stream or sys.stdout).write(render_table(r))

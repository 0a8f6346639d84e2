"""Run reports, deterministic CSV/JSON emission, and figure rendering.

CSV layout: '#'-prefixed metadata lines, then a header row, then data rows
in scientific notation with '.' decimal separators.  The data section holds
no time-dependent fields, so reruns with the same spec and version are
byte-identical; wall-clock timing lives only in the JSON report.
"""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .verification import CheckResult

TOOL_VERSION = "0.1.0"


def fmt(x) -> str:
    if isinstance(x, float):
        return format(x, ".16e")
    return str(x)


@dataclass
class RunReport:
    experiment: str
    parameters: dict
    checks: list = field(default_factory=list)
    summary: dict = field(default_factory=dict)
    tool_version: str = TOOL_VERSION
    wall_clock_s: float = 0.0

    def add_checks(self, results: Iterable[CheckResult]):
        for r in results:
            self.checks.append(
                {
                    "name": r.name,
                    "value": r.value,
                    "tolerance": r.tolerance,
                    "passed": r.passed,
                    "expected_fail": r.expected_fail,
                    "note": r.note,
                }
            )

    @property
    def all_passed(self) -> bool:
        return all(c["passed"] or c["expected_fail"] for c in self.checks)

    def print_lines(self):
        for c in self.checks:
            status = "PASS" if c["passed"] else ("FAIL(expected)" if c["expected_fail"] else "FAIL")
            note = f" ({c['note']})" if c["note"] else ""
            print(f"[{status}] {c['name']}: value={c['value']:.6g} tolerance={c['tolerance']:.6g}{note}")

    def write_json(self, path):
        payload = asdict(self)
        Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


class Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0
        return False


def write_csv(
    path,
    columns: Sequence[str],
    rows: Iterable[Sequence],
    metadata: Optional[dict] = None,
):
    lines = []
    for k, v in (metadata or {}).items():
        lines.append(f"# {k} = {v}")
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(fmt(v) for v in row))
    Path(path).write_text("\n".join(lines) + "\n")


def render_plot(
    path,
    x,
    curves: dict,
    xlabel: str,
    ylabel: str,
    title: str = "",
):
    """Save a line plot next to the delimited output (Agg backend)."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(7.0, 4.4))
    for label, y in curves.items():
        ax.plot(x, y, lw=1.0, label=label)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    if title:
        ax.set_title(title, fontsize=10)
    ax.grid(True, alpha=0.3)
    ax.legend(loc="best", fontsize=9)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)

"""Run reports: deterministic key/value text, JSON, and optional figures.

The text form is one ``key: value`` line per entry, in a fixed order, so
repeated runs are byte-identical and golden files diff cleanly.  Wall time
is recorded on the report object but only rendered on request.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

from .values import TruthValue3


@dataclass
class RunReport:
    command: str
    input_digest: str
    fields: list[tuple[str, str]] = field(default_factory=list)
    entailment_calls: int | None = None
    wall_time_ms: float | None = None
    # Optional datasets for figure rendering.
    literal_names: list[str] = field(default_factory=list)
    literal_rows: list[list[TruthValue3]] = field(default_factory=list)
    pair_sizes: list[tuple[int, int]] = field(default_factory=list)
    world_count: int | None = None

    def add(self, key: str, value: object) -> None:
        self.fields.append((key, str(value)))


def input_digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def render_kv(report: RunReport, include_timing: bool = False) -> str:
    lines = [f"command: {report.command}",
             f"input-sha256: {report.input_digest}"]
    lines += [f"{key}: {value}" for key, value in report.fields]
    if report.entailment_calls is not None:
        lines.append(f"entailment-calls: {report.entailment_calls}")
    if include_timing and report.wall_time_ms is not None:
        lines.append(f"wall-time-ms: {report.wall_time_ms:.3f}")
    return "\n".join(lines) + "\n"


def render_json(report: RunReport, include_timing: bool = False) -> str:
    doc: dict = {"command": report.command, "input_sha256": report.input_digest}
    for key, value in report.fields:
        doc.setdefault("fields", []).append({"key": key, "value": value})
    if report.entailment_calls is not None:
        doc["entailment_calls"] = report.entailment_calls
    if include_timing and report.wall_time_ms is not None:
        doc["wall_time_ms"] = report.wall_time_ms
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


_VALUE_LEVEL = {TruthValue3.FALSE: 0, TruthValue3.UNKNOWN: 1, TruthValue3.TRUE: 2}


def render_figures(report: RunReport, outdir: str | Path) -> list[Path]:
    """Render the report's datasets as PNG files next to the text output."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    from matplotlib.colors import ListedColormap

    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    stem = f"{report.command}-{report.input_digest[:12]}"
    written: list[Path] = []

    if report.literal_names and report.literal_rows:
        grid = [[_VALUE_LEVEL[row[i]] for row in report.literal_rows]
                for i in range(len(report.literal_names))]
        fig, ax = plt.subplots(
            figsize=(1.6 + 0.7 * len(report.literal_rows),
                     1.2 + 0.45 * len(report.literal_names)))
        cmap = ListedColormap(["#c0392b", "#bdbdbd", "#27ae60"])
        ax.imshow(grid, cmap=cmap, vmin=0, vmax=2, aspect="auto")
        ax.set_xticks(range(len(report.literal_rows)))
        ax.set_xlabel("iteration")
        ax.set_yticks(range(len(report.literal_names)))
        ax.set_yticklabels(report.literal_names, fontsize=8)
        ax.set_title("belief literal values per iteration", fontsize=10)
        for i, row_vals in enumerate(grid):
            for j, level in enumerate(row_vals):
                ax.text(j, i, "fut"[level], ha="center", va="center", fontsize=8)
        fig.tight_layout()
        path = outdir / f"{stem}-literals.png"
        fig.savefig(path, dpi=150)
        plt.close(fig)
        written.append(path)

    if report.pair_sizes and report.world_count is not None:
        steps = range(len(report.pair_sizes))
        upper = [p for p, _ in report.pair_sizes]
        lower = [s for _, s in report.pair_sizes]
        fig, ax = plt.subplots(figsize=(4.2, 2.8))
        ax.step(steps, upper, where="post", label="|P| possible", color="#2980b9")
        ax.step(steps, lower, where="post", label="|S| known", color="#e67e22")
        ax.set_xlabel("iteration")
        ax.set_ylabel("worlds")
        ax.set_ylim(-0.5, report.world_count + 0.5)
        ax.set_xticks(list(steps))
        ax.legend(fontsize=8)
        ax.set_title("belief pair components", fontsize=10)
        fig.tight_layout()
        path = outdir / f"{stem}-trace.png"
        fig.savefig(path, dpi=150)
        plt.close(fig)
        written.append(path)

    return written

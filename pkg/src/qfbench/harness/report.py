"""Plot-ready campaign reports (CSV or JSON lines).

Both formats carry the same header (effective config) and the same rows, one
per ``(state_index, statistic, mode)``, ordered by state index, then
statistic name, then mode.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
from pathlib import Path
from typing import Iterable

from .campaign import ResultRecord
from .config import MODES, ExperimentConfig

COLUMNS = (
    "campaign_id",
    "state_index",
    "statistic",
    "mode",
    "value",
    "stderr",
    "ci_low",
    "ci_high",
    "compatible_target",
    "verdict",
    "seed",
    "shots",
)


def campaign_id(config: ExperimentConfig) -> str:
    blob = json.dumps(config.provenance(), sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()[:12]


def _num(x: float):
    return x if math.isfinite(x) else None


def report_rows(records: Iterable[ResultRecord], config: ExperimentConfig) -> list[dict]:
    cid = campaign_id(config)
    rows = []
    for rec in sorted(records, key=lambda r: r.state_index):
        entries = []
        for mode, ests in rec.estimates.items():
            for name, est in ests.items():
                entries.append((name, MODES.index(mode), mode, est))
        for name, _, mode, est in sorted(entries, key=lambda e: (e[0], e[1])):
            rows.append({
                "campaign_id": cid,
                "state_index": rec.state_index,
                "statistic": name,
                "mode": mode,
                "value": _num(est.value),
                "stderr": _num(est.stderr),
                "ci_low": _num(est.ci_low),
                "ci_high": _num(est.ci_high),
                "compatible_target": rec.compatible[mode][name],
                "verdict": rec.verdicts[mode][name],
                "seed": config.seed,
                "shots": config.shots,
            })
    return rows


def _csv_cell(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def render_report(records, config: ExperimentConfig, fmt: str | None = None) -> str:
    fmt = fmt or config.format
    rows = report_rows(records, config)
    header = {"campaign_id": campaign_id(config), "config": config.provenance()}
    if fmt == "csv":
        buf = io.StringIO()
        buf.write("# " + json.dumps(header, sort_keys=True) + "\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(COLUMNS)
        for row in rows:
            w.writerow([_csv_cell(row[c]) for c in COLUMNS])
        return buf.getvalue()
    if fmt == "json-lines":
        lines = [json.dumps({"header": header}, sort_keys=True)]
        lines += [json.dumps(row) for row in rows]
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown report format {fmt!r}")


def emit_report(records, config: ExperimentConfig, path: str | Path, fmt: str | None = None) -> Path:
    """Write the report; raises ``OSError`` if ``path`` is not writable."""
    records = list(records)
    if not records:
        raise ValueError("no records to report")
    path = Path(path)
    path.write_text(render_report(records, config, fmt))
    return path


def read_report(path: str | Path) -> tuple[dict, list[dict]]:
    """Parse either report format back into ``(header, rows)`` with typed cells."""
    text = Path(path).read_text()
    if text.startswith("# "):
        first, rest = text.split("\n", 1)
        header = json.loads(first[2:])
        rows = []
        for raw in csv.DictReader(io.StringIO(rest)):
            row = dict(raw)
            for key in ("value", "stderr", "ci_low", "ci_high"):
                row[key] = float(row[key]) if row[key] else None
            for key in ("state_index", "seed", "shots"):
                row[key] = int(row[key])
            row["compatible_target"] = row["compatible_target"] == "true"
            rows.append(row)
        return header, rows
    lines = [json.loads(line) for line in text.splitlines() if line]
    return lines[0]["header"], lines[1:]

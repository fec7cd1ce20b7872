"""
Report files. JSON is written with sorted keys and CSV with fixed columns,
so a rerun with the same configuration reproduces the files byte for byte.
"""

import csv
import json
import logging
from collections.abc import Iterable, Sequence
from pathlib import Path
from typing import Any

from ..models.base import BaseMsscModel
from ..models.traces import OfflineTrace, StepReport, TraceRow

logger = logging.getLogger(__name__)

TRACE_COLUMNS = ["schema", "side", "step", "access", "reorder", "ell", "fetched_count", "cumulative"]


def alg_rows(reports: Iterable[StepReport]) -> list[TraceRow]:
    rows = []
    total = 0
    for report in reports:
        total += report.cost
        rows.append(
            TraceRow(
                side="ALG",
                step=report.step,
                access=report.access,
                reorder=report.reorder,
                ell=report.ell,
                fetched_count=report.fetched_count,
                cumulative=total,
                fetched=report.fetched,
                budget_increments=report.budget_increments,
                budgets=report.budgets or None,
            )
        )
    return rows


def off_rows(trace: OfflineTrace) -> list[TraceRow]:
    """OFF rows; a nonzero setup cost becomes a step-0 row."""
    rows = []
    total = trace.setup_cost
    if trace.setup_cost:
        rows.append(TraceRow(side="OFF", step=0, access=0, reorder=trace.setup_cost, cumulative=total))
    for step in trace.steps:
        total += step.cost
        rows.append(
            TraceRow(
                side="OFF",
                step=step.step,
                access=step.access,
                reorder=step.reorder,
                fetched_count=0 if step.moved is None else 1,
                cumulative=total,
            )
        )
    return rows


def dump_json(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def write_json(path: Path, payload: BaseMsscModel | Sequence[BaseMsscModel] | dict) -> Path:
    if isinstance(payload, BaseMsscModel):
        data = payload.model_dump_report()
    elif isinstance(payload, dict):
        data = payload
    else:
        data = [item.model_dump_report() for item in payload]
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dump_json(data), encoding="utf-8")
    logger.info(f"Wrote {path}")
    return path


def _cell(value: Any) -> Any:
    if value is None:
        return ""
    if isinstance(value, (list, dict)):
        return json.dumps(value, sort_keys=True)
    return value


def write_csv(
    path: Path, rows: Sequence[BaseMsscModel], columns: Sequence[str] | None = None
) -> Path:
    """Write models as CSV rows; columns default to the first row's fields."""
    records = [row.model_dump(mode="json", by_alias=True) for row in rows]
    if columns is None:
        columns = list(records[0]) if records else ["schema"]
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as f:
        writer = csv.DictWriter(f, fieldnames=list(columns), extrasaction="ignore", lineterminator="\n")
        writer.writeheader()
        for record in records:
            writer.writerow({key: _cell(record.get(key)) for key in columns})
    logger.info(f"Wrote {path}")
    return path


def write_rows(
    out: Path, name: str, fmt: str, rows: Sequence[BaseMsscModel], columns: Sequence[str] | None = None
) -> Path:
    """Write rows to out/name.csv or out/name.json."""
    if fmt == "csv":
        return write_csv(out / f"{name}.csv", rows, columns)
    return write_json(out / f"{name}.json", list(rows))

"""Tabular views of reports for CSV emission."""

import polars as pl

from hilbertlab.models import NormResult, Report

REPORT_SCHEMA = {
    "experiment": pl.Utf8,
    "section": pl.Utf8,
    "name": pl.Utf8,
    "level": pl.Int64,
    "value": pl.Float64,
    "status": pl.Utf8,
    "tolerance": pl.Float64,
    "converged": pl.Boolean,
    "detail": pl.Utf8,
}


def _rows(report: Report) -> list[dict]:
    rows = []
    for target in report.targets:
        rows.append({
            "experiment": report.id,
            "section": "target",
            "name": target.name,
            "value": target.value,
            "status": target.provenance.value,
            "tolerance": target.tolerance,
        })
    for computed in report.computed:
        rows.append({
            "experiment": report.id,
            "section": "computed",
            "name": computed.name,
            "value": computed.value,
            "converged": computed.converged,
        })
        rows.extend(
            {
                "experiment": report.id,
                "section": "trace",
                "name": computed.name,
                "level": level,
                "value": value,
            }
            for level, value in enumerate(computed.trace)
        )
    for verdict in report.verdicts:
        rows.append({
            "experiment": report.id,
            "section": "verdict",
            "name": verdict.name,
            "status": verdict.status.value,
            "detail": verdict.detail,
        })
    return rows


def reports_frame(reports: list[Report]) -> pl.DataFrame:
    """Long-format table: one row per target, computed value, trace point and verdict.

    Trace rows carry their position in ``level`` so the table is plot-ready.
    """
    rows = [row for report in reports for row in _rows(report)]
    return pl.DataFrame(rows, schema=REPORT_SCHEMA)


def norm_frame(result: NormResult) -> pl.DataFrame:
    """The running-sup trace of a norm estimate."""
    return pl.DataFrame(
        {
            "space": [result.space] * len(result.trace),
            "level": list(range(len(result.trace))),
            "value": result.trace,
        },
        schema={"space": pl.Utf8, "level": pl.Int64, "value": pl.Float64},
    )

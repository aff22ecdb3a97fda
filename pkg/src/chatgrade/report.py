"""Aggregate score rows into per-metric means and per-item series.

The report can be serialized as CSV (one row per record plus a mean
row), JSON (a fixed three-key schema), or a self-contained SVG with one
line series per metric and one bar per metric mean. All three emitters
are deterministic: identical reports serialize byte-identically.
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass
from typing import BinaryIO, Sequence

from .dataset import ScoreRow
from .scoring import METRICS

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AggregateReport:
    """Per-metric means plus the per-item series behind them."""

    count: int
    means: dict[str, float]
    series: dict[str, tuple[tuple[str, float], ...]]


def aggregate(rows: Sequence[ScoreRow],
              metrics: Sequence[str] | None = None) -> AggregateReport:
    """Arithmetic means per metric; series preserve input order.

    Means use exact summation, so they are invariant under row
    permutation. Empty input is an error rather than a zero report.
    """
    if not rows:
        raise ValueError("cannot aggregate an empty score list")
    if metrics is None:
        present = set(rows[0].values)
        metrics = tuple(m for m in METRICS if m in present)
    else:
        metrics = tuple(metrics)
    for row in rows:
        missing = [m for m in metrics if m not in row.values]
        if missing:
            raise ValueError(
                f"row {row.id!r} is missing metrics: {', '.join(missing)}")
    count = len(rows)
    means = {m: math.fsum(row.values[m] for row in rows) / count
             for m in metrics}
    series = {m: tuple((row.id, row.values[m]) for row in rows)
              for m in metrics}
    if "rougeL" in means and "meteor" in means:
        relation = ("above" if means["rougeL"] > means["meteor"]
                    else "below" if means["rougeL"] < means["meteor"]
                    else "equal to")
        logger.info("mean rougeL %.6f is %s mean meteor %.6f",
                    means["rougeL"], relation, means["meteor"])
    return AggregateReport(count=count, means=means, series=series)


def _emit_json(report: AggregateReport) -> bytes:
    payload = {
        "count": report.count,
        "means": report.means,
        "series": {m: [[item_id, value] for item_id, value in pairs]
                   for m, pairs in report.series.items()},
    }
    return (json.dumps(payload, indent=2) + "\n").encode("utf-8")


def _emit_csv(report: AggregateReport) -> bytes:
    import csv
    import io

    metrics = tuple(report.series)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(("id",) + metrics)
    for i in range(report.count):
        row_id = report.series[metrics[0]][i][0] if metrics else str(i)
        writer.writerow([row_id] + ["%.6f" % report.series[m][i][1]
                                    for m in metrics])
    writer.writerow(["mean"] + ["%.6f" % report.means[m] for m in metrics])
    return buffer.getvalue().encode("utf-8")


_PALETTE = ("#4269d0", "#efb118", "#ff725c", "#6cc5b0",
            "#3ca951", "#ff8ab7", "#a463f2")

# series panel geometry (x span shared with the bar panel)
_LEFT, _RIGHT = 60.0, 800.0
_SERIES_TOP, _SERIES_BOTTOM = 40.0, 280.0
_BAR_TOP, _BAR_BOTTOM = 360.0, 580.0


def _series_points(pairs: Sequence[tuple[str, float]]) -> str:
    n = len(pairs)
    span = _RIGHT - _LEFT
    coords = []
    for i, (_, value) in enumerate(pairs):
        x = _LEFT + span / 2 if n == 1 else _LEFT + span * i / (n - 1)
        y = _SERIES_BOTTOM - (_SERIES_BOTTOM - _SERIES_TOP) * value
        coords.append("%.2f,%.2f" % (x, y))
    return " ".join(coords)


def _emit_svg(report: AggregateReport) -> bytes:
    metrics = tuple(report.series)
    parts = [
        '<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 840 620" '
        'width="840" height="620">',
        "<style>"
        ".series{fill:none;stroke-width:1.5}"
        ".bar{stroke:none}"
        ".axis{stroke:#666;stroke-width:1}"
        ".label{font:12px sans-serif;fill:#333}"
        ".tick{font:10px sans-serif;fill:#666}"
        "</style>",
        '<text class="label" x="60" y="24">Score per response</text>',
        '<text class="label" x="60" y="344">Mean score per metric</text>',
    ]
    # axes and ticks for both panels
    for top, bottom in ((_SERIES_TOP, _SERIES_BOTTOM), (_BAR_TOP, _BAR_BOTTOM)):
        parts.append('<line class="axis" x1="%.2f" y1="%.2f" x2="%.2f" y2="%.2f"/>'
                     % (_LEFT, top, _LEFT, bottom))
        parts.append('<line class="axis" x1="%.2f" y1="%.2f" x2="%.2f" y2="%.2f"/>'
                     % (_LEFT, bottom, _RIGHT, bottom))
        for fraction in (0.0, 0.5, 1.0):
            y = bottom - (bottom - top) * fraction
            parts.append('<text class="tick" x="%.2f" y="%.2f" '
                         'text-anchor="end">%.1f</text>'
                         % (_LEFT - 6, y + 3, fraction))
    for k, metric in enumerate(metrics):
        color = _PALETTE[k % len(_PALETTE)]
        parts.append('<polyline class="series" stroke="%s" points="%s"/>'
                     % (color, _series_points(report.series[metric])))
        parts.append('<text class="tick" x="%.2f" y="%.2f" fill="%s">%s</text>'
                     % (_RIGHT + 4, _SERIES_TOP + 12 * k + 8, color, metric))
    band = (_RIGHT - _LEFT) / max(len(metrics), 1)
    for k, metric in enumerate(metrics):
        color = _PALETTE[k % len(_PALETTE)]
        mean = report.means[metric]
        height = (_BAR_BOTTOM - _BAR_TOP) * mean
        x = _LEFT + band * k + band * 0.2
        parts.append('<rect class="bar" fill="%s" x="%.2f" y="%.2f" '
                     'width="%.2f" height="%.2f"/>'
                     % (color, x, _BAR_BOTTOM - height, band * 0.6, height))
        parts.append('<text class="tick" x="%.2f" y="%.2f" '
                     'text-anchor="middle">%s</text>'
                     % (x + band * 0.3, _BAR_BOTTOM + 14, metric))
        parts.append('<text class="tick" x="%.2f" y="%.2f" '
                     'text-anchor="middle">%.3f</text>'
                     % (x + band * 0.3, _BAR_BOTTOM - height - 4, mean))
    parts.append("</svg>")
    return ("\n".join(parts) + "\n").encode("utf-8")


def emit_report(report: AggregateReport, format: str, sink: BinaryIO) -> None:
    """Serialize the report as csv, json, or svg."""
    if format == "json":
        sink.write(_emit_json(report))
    elif format == "csv":
        sink.write(_emit_csv(report))
    elif format == "svg":
        sink.write(_emit_svg(report))
    else:
        raise ValueError(f"unknown report format: {format!r}")

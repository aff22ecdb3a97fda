"""Read evaluation records and write per-record score rows.

Streams are byte-oriented; text is decoded as UTF-8 here so encoding
problems surface as DatasetError instead of propagating garbage. CSV
follows RFC-4180 quoting with a header row; JSONL carries one object
per line.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import BinaryIO, Sequence

from .scoring import METRICS

RECORD_FIELDS = ("id", "prompt", "reference", "response")


class DatasetError(ValueError):
    """Malformed input: bad encoding, bad quoting, or missing columns."""


@dataclass(frozen=True)
class EvalRecord:
    """One (prompt, reference, response) triple.

    response may be empty for records awaiting generation; that is legal
    at parse time and an error at score time. error is a transient
    generation-failure marker and is never serialized.
    """

    id: str
    prompt: str
    reference: str
    response: str = ""
    error: str = ""


@dataclass(frozen=True)
class ScoreRow:
    """A record id plus its metric values, keyed by canonical name."""

    id: str
    values: dict[str, float] = field(default_factory=dict)


def _decode(data: bytes, what: str) -> str:
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise DatasetError(f"{what} is not valid UTF-8: {exc}") from None


def _check_record(record: EvalRecord, where: str) -> EvalRecord:
    if not record.prompt:
        raise DatasetError(f"{where}: empty prompt")
    if not record.reference:
        raise DatasetError(f"{where}: empty reference")
    return record


def _check_unique_ids(records: Sequence[EvalRecord]) -> None:
    seen: set[str] = set()
    for record in records:
        if record.id in seen:
            raise DatasetError(f"duplicate record id {record.id!r}")
        seen.add(record.id)


def _read_records_csv(text: str) -> list[EvalRecord]:
    reader = csv.reader(io.StringIO(text, newline=""), strict=True)
    try:
        try:
            header = next(reader)
        except StopIteration:
            raise DatasetError("empty input: missing CSV header") from None
        columns = {name: i for i, name in enumerate(header)}
        for required in ("prompt", "reference"):
            if required not in columns:
                raise DatasetError(f"missing required column {required!r}")
        records = []
        for ordinal, row in enumerate(reader):
            if len(row) != len(header):
                raise DatasetError(
                    f"line {reader.line_num}: expected {len(header)} fields, "
                    f"got {len(row)}")

            def cell(name: str, default: str = "") -> str:
                index = columns.get(name)
                return row[index] if index is not None else default

            record = EvalRecord(id=cell("id") or str(ordinal),
                                prompt=cell("prompt"),
                                reference=cell("reference"),
                                response=cell("response"))
            records.append(_check_record(record, f"line {reader.line_num}"))
    except csv.Error as exc:
        raise DatasetError(f"line {reader.line_num}: {exc}") from None
    return records


def _read_records_jsonl(text: str) -> list[EvalRecord]:
    records = []
    ordinal = 0
    for line_num, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise DatasetError(f"line {line_num}: {exc}") from None
        if not isinstance(obj, dict):
            raise DatasetError(f"line {line_num}: expected a JSON object")
        for required in ("prompt", "reference"):
            if required not in obj:
                raise DatasetError(
                    f"line {line_num}: missing required key {required!r}")
        record = EvalRecord(id=str(obj.get("id", ordinal)),
                            prompt=str(obj["prompt"]),
                            reference=str(obj["reference"]),
                            response=str(obj.get("response", "")))
        records.append(_check_record(record, f"line {line_num}"))
        ordinal += 1
    return records


def read_records(source: BinaryIO, format: str = "csv") -> list[EvalRecord]:
    """Parse evaluation records from a byte stream, in file order.

    Records without an id get their row ordinal (0-based); ids must be
    unique either way.
    """
    text = _decode(source.read(), "input")
    if format == "csv":
        records = _read_records_csv(text)
    elif format == "jsonl":
        records = _read_records_jsonl(text)
    else:
        raise ValueError(f"unknown record format: {format!r}")
    _check_unique_ids(records)
    return records


def write_records(records: Sequence[EvalRecord], sink: BinaryIO,
                  format: str = "csv") -> None:
    """Write records so read_records can round-trip them."""
    if format == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(RECORD_FIELDS)
        for record in records:
            writer.writerow([record.id, record.prompt,
                             record.reference, record.response])
        sink.write(buffer.getvalue().encode("utf-8"))
    elif format == "jsonl":
        lines = []
        for record in records:
            lines.append(json.dumps(
                {"id": record.id, "prompt": record.prompt,
                 "reference": record.reference, "response": record.response},
                ensure_ascii=False, sort_keys=True))
        sink.write(("\n".join(lines) + "\n" if lines else "").encode("utf-8"))
    else:
        raise ValueError(f"unknown record format: {format!r}")


def write_scores(rows: Sequence[ScoreRow], sink: BinaryIO,
                 format: str = "csv",
                 metrics: Sequence[str] = METRICS) -> None:
    """Serialize score rows, six decimal places, input order preserved."""
    metrics = tuple(metrics)
    if format == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(("id",) + metrics)
        for row in rows:
            writer.writerow([row.id] + ["%.6f" % row.values[m] for m in metrics])
        sink.write(buffer.getvalue().encode("utf-8"))
    elif format == "json":
        payload = [
            {"id": row.id, **{m: round(row.values[m], 6) for m in metrics}}
            for row in rows
        ]
        sink.write((json.dumps(payload, indent=2) + "\n").encode("utf-8"))
    else:
        raise ValueError(f"unknown score format: {format!r}")


def read_scores(source: BinaryIO,
                format: str = "csv") -> tuple[list[ScoreRow], tuple[str, ...]]:
    """Read score rows back; returns (rows, metric names present)."""
    text = _decode(source.read(), "scores input")
    if format == "csv":
        reader = csv.reader(io.StringIO(text, newline=""), strict=True)
        try:
            try:
                header = next(reader)
            except StopIteration:
                raise DatasetError("empty input: missing CSV header") from None
            if not header or header[0] != "id":
                raise DatasetError("score CSV must start with an 'id' column")
            metrics = tuple(header[1:])
            unknown = sorted(set(metrics) - set(METRICS))
            if unknown:
                raise DatasetError(f"unknown metric columns: {', '.join(unknown)}")
            rows = []
            for row in reader:
                if len(row) != len(header):
                    raise DatasetError(
                        f"line {reader.line_num}: expected {len(header)} "
                        f"fields, got {len(row)}")
                try:
                    values = {m: float(v) for m, v in zip(metrics, row[1:])}
                except ValueError as exc:
                    raise DatasetError(f"line {reader.line_num}: {exc}") from None
                rows.append(ScoreRow(id=row[0], values=values))
        except csv.Error as exc:
            raise DatasetError(f"line {reader.line_num}: {exc}") from None
        return rows, metrics
    if format == "json":
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DatasetError(f"bad JSON scores: {exc}") from None
        if not isinstance(payload, list):
            raise DatasetError("score JSON must be an array of objects")
        rows = []
        metrics_seen: tuple[str, ...] = ()
        for i, obj in enumerate(payload):
            if not isinstance(obj, dict) or "id" not in obj:
                raise DatasetError(f"entry {i}: expected an object with an id")
            values = {m: float(obj[m]) for m in METRICS if m in obj}
            metrics_seen = metrics_seen or tuple(values)
            rows.append(ScoreRow(id=str(obj["id"]), values=values))
        return rows, metrics_seen
    raise ValueError(f"unknown score format: {format!r}")

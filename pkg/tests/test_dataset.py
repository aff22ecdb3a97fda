import io
import json
import random

import pytest

from chatgrade import (METRICS, DatasetError, EvalRecord, ScoreRow,
                       read_records, read_scores, write_records, write_scores)


def _read_csv(text: str):
    return read_records(io.BytesIO(text.encode("utf-8")), "csv")


def test_sample_file(samples_dir):
    with open(samples_dir / "quora5.csv", "rb") as f:
        records = read_records(f, "csv")
    assert len(records) == 5
    assert records[0].id == "0"
    assert records[0].prompt == "What sport should I try out?"
    assert all(r.response for r in records)


def test_header_only_is_empty_list():
    assert _read_csv("prompt,reference,response\n") == []


def test_ordinal_ids_assigned_when_absent():
    records = _read_csv("prompt,reference\np1,r1\np2,r2\n")
    assert [r.id for r in records] == ["0", "1"]
    assert records[1].response == ""


def test_id_column_respected():
    records = _read_csv("id,prompt,reference\nq7,p,r\n")
    assert records[0].id == "q7"


def test_quoted_comma_preserved():
    records = _read_csv('prompt,reference,response\np,"a, b, c",resp\n')
    assert records[0].reference == "a, b, c"


def test_missing_required_column():
    with pytest.raises(DatasetError, match="reference"):
        _read_csv("prompt,response\np,r\n")


def test_ragged_row_rejected_with_line_number():
    with pytest.raises(DatasetError, match="line 3"):
        _read_csv("prompt,reference\na,b\nonly-one-field\n")


def test_bad_quoting_rejected():
    with pytest.raises(DatasetError):
        _read_csv('prompt,reference\n"unclosed,b\nnext,row\n')


def test_non_utf8_rejected():
    with pytest.raises(DatasetError, match="UTF-8"):
        read_records(io.BytesIO(b"prompt,reference\n\xff\xfe,x\n"), "csv")


def test_duplicate_ids_rejected():
    with pytest.raises(DatasetError, match="duplicate"):
        _read_csv("id,prompt,reference\nk,p,r\nk,p2,r2\n")


def test_empty_prompt_or_reference_rejected():
    with pytest.raises(DatasetError, match="prompt"):
        _read_csv("prompt,reference\n,x\n")
    with pytest.raises(DatasetError, match="reference"):
        _read_csv("prompt,reference\nx,\n")


def test_jsonl_read():
    lines = [
        json.dumps({"prompt": "p0", "reference": "r0"}),
        json.dumps({"id": "named", "prompt": "p1", "reference": "r1",
                    "response": "out"}),
    ]
    records = read_records(
        io.BytesIO("\n".join(lines).encode("utf-8")), "jsonl")
    assert records[0].id == "0"
    assert records[0].response == ""
    assert records[1].id == "named"
    assert records[1].response == "out"


def test_jsonl_blank_lines_skipped():
    data = b'\n{"prompt": "p", "reference": "r"}\n\n'
    assert len(read_records(io.BytesIO(data), "jsonl")) == 1


def test_jsonl_errors():
    with pytest.raises(DatasetError, match="line 1"):
        read_records(io.BytesIO(b"not json\n"), "jsonl")
    with pytest.raises(DatasetError, match="object"):
        read_records(io.BytesIO(b"[1, 2]\n"), "jsonl")
    with pytest.raises(DatasetError, match="reference"):
        read_records(io.BytesIO(b'{"prompt": "p"}\n'), "jsonl")


def test_unknown_format_rejected():
    with pytest.raises(ValueError):
        read_records(io.BytesIO(b""), "xml")


def _random_text(rng: random.Random) -> str:
    alphabet = 'abc ,"\n\'é世 -;'
    return "".join(rng.choice(alphabet) for _ in range(rng.randint(1, 30)))


def test_round_trip_preserves_fields_exactly():
    rng = random.Random(89)
    for format in ("csv", "jsonl"):
        records = [
            EvalRecord(id=str(i), prompt=_random_text(rng) or "p",
                       reference=_random_text(rng) or "r",
                       response=_random_text(rng))
            for i in range(20)
        ]
        # blank-only fields would be rejected on read; force content
        records = [r for r in records if r.prompt.strip() and r.reference.strip()]
        sink = io.BytesIO()
        write_records(records, sink, format)
        back = read_records(io.BytesIO(sink.getvalue()), format)
        assert back == records


def test_write_scores_csv_exact_layout():
    rows = [
        ScoreRow(id="0", values={m: 1.0 for m in METRICS}),
        ScoreRow(id="1", values={m: 0.5 for m in METRICS}),
    ]
    sink = io.BytesIO()
    write_scores(rows, sink, "csv")
    lines = sink.getvalue().decode("utf-8").splitlines()
    assert lines[0] == "id,bleu,meteor,rouge1,rouge2,rougeL,rougeS,rougeW"
    assert lines[1] == "0," + ",".join(["1.000000"] * 7)
    assert lines[2] == "1," + ",".join(["0.500000"] * 7)
    assert len(lines) == 3


def test_write_scores_empty_gives_header_only():
    sink = io.BytesIO()
    write_scores([], sink, "csv")
    assert sink.getvalue() == b"id,bleu,meteor,rouge1,rouge2,rougeL,rougeS,rougeW\n"


def test_write_scores_subset_columns():
    rows = [ScoreRow(id="a", values={"bleu": 0.25, "rougeL": 0.75})]
    sink = io.BytesIO()
    write_scores(rows, sink, "csv", metrics=("bleu", "rougeL"))
    assert sink.getvalue() == b"id,bleu,rougeL\na,0.250000,0.750000\n"


def test_scores_round_trip_csv():
    rows = [ScoreRow(id=str(i), values={m: i / 10 for m in METRICS})
            for i in range(3)]
    sink = io.BytesIO()
    write_scores(rows, sink, "csv")
    back, metrics = read_scores(io.BytesIO(sink.getvalue()), "csv")
    assert metrics == METRICS
    assert [r.id for r in back] == ["0", "1", "2"]
    assert back[1].values["meteor"] == 0.1


def test_scores_round_trip_json():
    rows = [ScoreRow(id="x", values={m: 0.125 for m in METRICS})]
    sink = io.BytesIO()
    write_scores(rows, sink, "json")
    payload = json.loads(sink.getvalue())
    assert payload == [{"id": "x", **{m: 0.125 for m in METRICS}}]
    back, metrics = read_scores(io.BytesIO(sink.getvalue()), "json")
    assert metrics == METRICS
    assert back[0].values == rows[0].values


def test_read_scores_rejects_foreign_columns():
    data = b"id,bleu,accuracy\n0,0.5,0.9\n"
    with pytest.raises(DatasetError, match="accuracy"):
        read_scores(io.BytesIO(data), "csv")


def test_read_scores_rejects_non_numeric():
    data = b"id,bleu\n0,not-a-number\n"
    with pytest.raises(DatasetError, match="line 2"):
        read_scores(io.BytesIO(data), "csv")

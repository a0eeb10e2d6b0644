from dataclasses import dataclass

import pandas as pd
import pytest

from src.utils.CsvHandler import CsvHandler


@dataclass(frozen=True)
class Row:
    name: str
    count: int
    score: float | None
    ok: bool


def test_check_csv_creates_header(tmp_path):
    path = tmp_path / "nested" / "1.csv"

    assert CsvHandler.check_csv(path, ["a", "b"])
    assert path.read_text(encoding="utf-8").strip() == "a,b"


def test_check_csv_adds_missing_columns(tmp_path):
    path = tmp_path / "1.csv"
    path.write_text("a,extra\n1,x\n", encoding="utf-8")

    CsvHandler.check_csv(path, ["a", "b"], fill_value=0)

    df = pd.read_csv(path)
    assert df.columns.tolist() == ["a", "b", "extra"]
    assert df["b"].tolist() == [0]


def test_rows_round_trip(tmp_path):
    path = tmp_path / "rows.csv"
    rows = [Row("001", 3, 1.5, True), Row("x", 0, None, False)]

    CsvHandler.save_rows_to_csv(path, [{**r.__dict__, "score": "" if r.score is None else r.score} for r in rows], Row)

    assert CsvHandler.read_records(path, Row) == rows


def test_save_to_csv_appends(tmp_path):
    path = tmp_path / "rows.csv"

    CsvHandler.save_to_csv(path, {"name": "a", "count": 1, "score": 2.0, "ok": True}, Row)
    CsvHandler.save_to_csv(path, {"name": "b", "count": 2, "score": 3.0, "ok": False}, Row)

    assert [r.name for r in CsvHandler.read_records(path, Row)] == ["a", "b"]


def test_save_rejects_missing_fields(tmp_path):
    with pytest.raises(ValueError):
        CsvHandler.save_to_csv(tmp_path / "rows.csv", {"name": "a"}, Row)


def test_delete_csv(tmp_path):
    path = tmp_path / "rows.csv"
    CsvHandler.check_csv(path, ["a"])

    assert CsvHandler.delete_csv(path)
    assert not path.exists()
    assert CsvHandler.delete_csv(path, not_exists_ok=True)
    assert not CsvHandler.delete_csv(path)

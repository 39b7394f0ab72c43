"""Tests for field, report and bench-table export."""

import json

import numpy as np
import pandas as pd
import pytest

from pydq_lyapunov.core.io import (
    export_field_csv,
    export_records_csv,
    export_records_json,
    export_report_json,
    field_frame,
    format_float,
    load_config,
    timings_path,
)


@pytest.fixture
def field_2d():
    x = np.array([0.0, 0.5, 1.0])
    y = np.array([0.0, 1.0])
    return np.arange(6, dtype=float).reshape(3, 2) / 3.0, (x, y)


class TestFieldFrame:
    def test_columns_and_order(self, field_2d):
        values, points = field_2d
        frame = field_frame(values, points)
        assert list(frame.columns) == ["x", "y", "value"]
        assert frame["x"].tolist() == [0.0, 0.0, 0.5, 0.5, 1.0, 1.0]
        assert frame["y"].tolist() == [0.0, 1.0] * 3
        assert frame["value"].tolist() == values.reshape(-1).tolist()

    def test_three_axes(self):
        pts = [np.array([0.0, 1.0])] * 3
        frame = field_frame(np.zeros((2, 2, 2)), pts)
        assert list(frame.columns) == ["x", "y", "z", "value"]
        assert len(frame) == 8

    def test_mismatch(self, field_2d):
        values, (x, _) = field_2d
        with pytest.raises(ValueError):
            field_frame(values, (x, x))
        with pytest.raises(ValueError):
            field_frame(values, (x,))


class TestFieldCsv:
    def test_round_trip_precision(self, field_2d, tmp_path):
        """Values survive a write/read cycle bit for bit."""
        values, points = field_2d
        path = tmp_path / "field.csv"
        export_field_csv(field_frame(values, points), path)
        back = pd.read_csv(path, float_precision="round_trip")
        assert back["value"].tolist() == values.reshape(-1).tolist()

    def test_header(self, field_2d, tmp_path):
        path = tmp_path / "field.csv"
        export_field_csv(field_frame(*field_2d), path)
        assert path.read_text().splitlines()[0] == "x,y,value"

    def test_format_float(self):
        assert format_float(0.1) == "0.1"
        assert float(format_float(1 / 3)) == 1 / 3


class TestRecords:
    def test_identical_tables_identical_bytes(self, tmp_path):
        df = pd.DataFrame({"N": [7, 9], "ratio": [0.349, 0.1234567890123]})
        export_records_csv(df, tmp_path / "a.csv")
        export_records_csv(df.copy(), tmp_path / "b.csv")
        assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()

    def test_json_rows(self, tmp_path):
        df = pd.DataFrame({"N": [7], "claimed": [np.nan], "count": pd.array([None], dtype="Int64")})
        path = tmp_path / "records.json"
        export_records_json(df, path)
        assert json.loads(path.read_text()) == [{"N": 7, "claimed": None, "count": None}]


class TestReportJson:
    def test_numpy_values(self, tmp_path):
        path = tmp_path / "report.json"
        export_report_json({"n": np.int64(3), "residual": np.float64(1e-15), "notes": ("a",)}, path)
        assert json.loads(path.read_text()) == {"n": 3, "notes": ["a"], "residual": 1e-15}


class TestPaths:
    def test_timings_path(self):
        assert timings_path("out/bench.csv").as_posix() == "out/bench.timings.json"

    def test_load_config(self, tmp_path):
        (tmp_path / "module.yaml").write_text("sizes: [7, 9]\n")
        assert load_config(str(tmp_path / "module.py")) == {"sizes": [7, 9]}

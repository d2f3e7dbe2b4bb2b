"""CSV and JSON result tables."""
import json

from cge.schemas import ScanRow
from cge.utils.output import format_number, render_csv, render_json, write_table, write_trace


def rows():
    return [
        ScanRow(a=1e-7, values={"P": -1.5}, errors={"P": 1e-9}, flags={"exceeds": True}),
        ScanRow(a=2e-7, error="did not converge", exit_code=3),
    ]


def test_format_number():
    assert format_number(1.0) == "1.00000000e+00"
    assert format_number(-2.5e-7, digits=3) == "-2.50e-07"
    assert format_number(None) == ""
    assert format_number(float("nan")) == ""


def test_csv_layout():
    text = render_csv(rows(), ["P", "P_err", "exceeds"])
    lines = text.splitlines()
    assert lines[0] == "a,P,P_err,exceeds,error"
    assert lines[1] == "1.00000000e-07,-1.50000000e+00,1.00000000e-09,1,"
    assert lines[2] == "2.00000000e-07,,,,did not converge"


def test_json_layout():
    data = json.loads(render_json(rows(), ["P", "P_err"], {"command": "ratio-scan"}))
    assert data["metadata"] == {"command": "ratio-scan"}
    assert data["rows"][0] == {"a": 1e-7, "P": -1.5, "P_err": 1e-9, "error": ""}
    assert data["rows"][1]["P"] is None


def test_write_table(tmp_path):
    path = tmp_path / "out.csv"
    text = write_table(rows(), ["P"], {}, path=str(path), digits=4, index="xi_eV")
    assert path.read_text() == text
    assert text.startswith("xi_eV,P,error\n1.000e-07,-1.500e+00,")


def test_write_trace(tmp_path):
    path = tmp_path / "trace.csv"
    write_trace(str(path), [{"a": 1e-6, "quantity": "P", "terms": [(0, -1.0), (1, -0.5)]}], digits=3)
    assert path.read_text().splitlines() == ["a,quantity,l,term", "1.00e-06,P,0,-1.00e+00", "1.00e-06,P,1,-5.00e-01"]

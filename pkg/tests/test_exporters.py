import json

from fc_poincare.core.polyring import Polynomial
from fc_poincare.core.trimatrix import identity
from fc_poincare.methods.recur import build_coeff_table
from fc_poincare.tools.exporters import (
    coeff_table_rows,
    matrix_rows,
    polynomial_json,
    resolve_output_path,
    rows_to_csv,
    write_output,
)


def test_rows_to_csv():
    assert rows_to_csv(["a", "b"], [[1, "x, y"], [2, "z"]]) == 'a,b\n1,"x, y"\n2,z\n'


def test_polynomial_json():
    assert json.loads(polynomial_json(Polynomial((1, 0, -1)))) == ["1", "0", "-1"]
    assert polynomial_json(Polynomial()) == '["0"]'


def test_coeff_table_views():
    table = build_coeff_table(3)
    b_rows = coeff_table_rows(table)
    B_rows = coeff_table_rows(table, view="B")
    assert b_rows[1] == [2, 1, "1 - q^2"]
    assert B_rows[1] == [2, 1, "1"]
    assert len(b_rows) == 6


def test_matrix_rows_include_diagonal():
    assert matrix_rows(identity(2)) == [[1, 1, "1"], [2, 1, "0"], [2, 2, "1"]]


def test_output_path_resolution(tmp_path, monkeypatch):
    monkeypatch.setenv("FCPOINCARE_OUTPUT_DIR", str(tmp_path))
    assert resolve_output_path("r.csv") == str(tmp_path / "r.csv")
    assert resolve_output_path("/abs/r.csv") == "/abs/r.csv"
    monkeypatch.delenv("FCPOINCARE_OUTPUT_DIR")
    assert resolve_output_path("r.csv") == "r.csv"


def test_write_output(tmp_path, capsys):
    target = tmp_path / "nested" / "out.txt"
    assert write_output("hello\n", str(target)) == str(target)
    assert target.read_text() == "hello\n"
    assert write_output("to stdout", None) is None
    assert capsys.readouterr().out == "to stdout\n"

# Copyright (c) 2024 The torsionlab Developers.
# Distributed under the terms of the MIT License.
# SPDX-License-Identifier: MIT
"""
Test the CSV and JSON output and the status printing.
"""
import csv
import io
import json

import numpy as np
import pytest
import rich.console

from ..exporting import format_number, to_builtin, to_csv, to_json
from ..printing import format_value, make_console, print_dict, print_rows


def capture_console():
    "Console that writes to a string buffer"
    return rich.console.Console(file=io.StringIO(), width=120, highlight=False)


def test_format_number():
    "Integers stay integers and floats keep every bit"
    assert format_number(3) == "3"
    assert format_number(np.int64(-12)) == "-12"
    assert format_number(True) == "1"
    assert float(format_number(0.1)) == 0.1
    assert float(format_number(np.float64(1 / 3))) == 1 / 3
    assert format_number(2.0) == "2"


def test_to_builtin():
    "Nested numpy values become plain Python types"
    data = {
        "array": np.array([1.5, 2.5]),
        "nested": {"flag": np.bool_(True), "count": np.int32(4)},
        "list": [np.float32(0.5), (1, 2)],
        "bad": np.nan,
        "huge": -np.inf,
        "text": "SAT",
        "nothing": None,
    }
    assert to_builtin(data) == {
        "array": [1.5, 2.5],
        "nested": {"flag": True, "count": 4},
        "list": [0.5, [1, 2]],
        "bad": "nan",
        "huge": "-inf",
        "text": "SAT",
        "nothing": None,
    }
    assert type(to_builtin(np.int64(1))) is int
    assert type(to_builtin(np.float64(1))) is float


def test_to_csv():
    "A header line and one line per row, readable by the csv module"
    rows = np.array([[0, 0.1, 1 / 3], [1, -2.5, 1e-20]])
    text = to_csv(["t", "x", "y"], rows)
    lines = text.splitlines()
    assert lines[0] == "t,x,y"
    assert len(lines) == 3
    assert text.endswith("\n")
    table = list(csv.reader(io.StringIO(text)))
    np.testing.assert_array_equal(np.array(table[1:], dtype=float), rows)


def test_to_csv_rejects_ragged_rows():
    "Every row needs one value per column"
    with pytest.raises(ValueError, match="has 2 values"):
        to_csv(["a", "b", "c"], [[1, 2]])


def test_to_json():
    "Indented JSON keeps the key order and exact floats"
    data = {"verdict_bit": np.int64(1), "t_V": 7.2781, "final_r": np.array([0.1, 0.2])}
    text = to_json(data)
    assert text.endswith("\n")
    assert text.startswith('{\n  "verdict_bit": 1,')
    loaded = json.loads(text)
    assert list(loaded) == ["verdict_bit", "t_V", "final_r"]
    assert loaded["final_r"] == [0.1, 0.2]


def test_make_console():
    "Quiet unless verbose, always on stderr"
    console, style = make_console(verbose=False)
    assert console.quiet
    assert console.stderr
    assert style == "bold blue"
    console, style = make_console(verbose=True, style="red")
    assert not console.quiet
    assert style == "red"


def test_format_value():
    "Short versions of numbers, arrays, and multi-line strings"
    assert format_value(True) == "True"
    assert format_value(np.float64(1 / 3)) == "0.333333"
    assert format_value(7) == "7"
    assert format_value(np.array([0.5, 1.25])) == "[0.5 , 1.25]"
    assert format_value("one\n two") == "one two"
    assert format_value([]) == "[]"
    assert format_value(None) == "None"


def test_print_dict():
    "Keys are sorted and indented"
    console = capture_console()
    print_dict({"tol": 1e-10, "seed": 42}, console)
    assert console.file.getvalue() == "   seed: 42\n   tol: 1e-10\n"


def test_print_rows_long_table():
    "Only the first and last rows of long tables are shown"
    console = capture_console()
    rows = np.column_stack([np.arange(20), np.arange(20) ** 2])
    print_rows(["n", "square"], rows, console, limit=2)
    output = console.file.getvalue()
    assert "⋮" in output
    assert "361" in output
    assert "100" not in output
    assert output.rstrip().endswith("20 rows")


def test_print_rows_short_table():
    "Short tables are printed in full"
    console = capture_console()
    print_rows(["a"], [[1], [2], [3]], console)
    output = console.file.getvalue()
    assert "⋮" not in output
    assert output.rstrip().endswith("3 rows")

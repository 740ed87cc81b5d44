# Copyright (c) 2024 The torsionlab Developers.
# Distributed under the terms of the MIT License.
# SPDX-License-Identifier: MIT
"""Serialize results as CSV or JSON with lossless floating point numbers."""
import csv
import io
import json
import math

import numpy as np


def format_number(value):
    """
    Print a number with enough digits to recover the exact binary64 value.

    Integers are printed as such and floats with 17 significant digits.
    """
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{float(value):.17g}"


def to_builtin(value):
    """
    Convert numpy scalars and arrays (also nested in dicts and lists) to plain
    Python types that :mod:`json` can handle.
    """
    if isinstance(value, dict):
        return {str(key): to_builtin(item) for key, item in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [to_builtin(item) for item in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if not math.isfinite(value):
            return str(value)
        return value
    return value


def to_csv(header, rows):
    """
    Format a table as CSV text.

    Parameters
    ----------
    header : list of str
        Column names (first line of the output).
    rows : iterable
        Sequences of numbers, one per line.

    Returns
    -------
    text : str
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        if len(row) != len(header):
            raise ValueError(
                f"Row {list(row)} has {len(row)} values but the header has "
                f"{len(header)} columns."
            )
        writer.writerow([format_number(value) for value in row])
    return buffer.getvalue()


def to_json(data):
    """
    Format a dictionary as indented JSON text (keys in insertion order).

    Floats use the shortest representation that round trips exactly.
    """
    return json.dumps(to_builtin(data), indent=2) + "\n"

# Copyright (c) 2024 The torsionlab Developers.
# Distributed under the terms of the MIT License.
# SPDX-License-Identifier: MIT
"""Utilities for printing things with the Rich Console."""
import numpy as np
import rich.console
import rich.table


def make_console(verbose, style="bold blue"):
    """
    Start up the :class:`rich.console.Console` instance we'll use.

    Parameters
    ----------
    verbose : bool
        Whether or not to print status messages to stderr.
    style : str
        Style used for the status lines.

    Returns
    -------
    console : :class:`rich.console.Console`
    style : str
    """
    console = rich.console.Console(stderr=True, quiet=not verbose, highlight=False)
    return console, style


def format_value(value):
    """Short human readable version of numbers and arrays for status lines."""
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value))
    if isinstance(value, (float, np.floating)):
        return f"{value:.6g}"
    if isinstance(value, (np.ndarray, list, tuple)) and np.size(value) > 0:
        array = np.asarray(value)
        if np.issubdtype(array.dtype, np.number):
            return np.array2string(array, precision=6, separator=", ")
    if isinstance(value, str):
        return " ".join(part.strip() for part in value.split("\n"))
    return str(value)


def print_dict(dictionary, console):
    """
    Print the key/value pairs of a dictionary one per line.

    Parameters
    ----------
    dictionary : dict
        The dict.
    console : rich.console.Console
        The console used for printing.
    """
    for key in sorted(dictionary):
        console.print(f"   {key}: {format_value(dictionary[key])}", highlight=False)


def print_rows(header, rows, console, limit=5):
    """
    Print the first and last few rows of a table of numbers.

    Parameters
    ----------
    header : list of str
        Column names.
    rows : array
        The table, one row per sample.
    console : rich.console.Console
        The console used for printing.
    limit : int
        Number of rows shown at each end of the table.
    """
    rows = list(rows)
    table = rich.table.Table(*header, box=None, padding=(0, 3))
    if len(rows) > 2 * limit:
        shown = rows[:limit] + [None] + rows[-limit:]
    else:
        shown = rows
    for row in shown:
        if row is None:
            table.add_row(*["⋮"] * len(header))
        else:
            table.add_row(*[format_value(value) for value in row])
    console.print(table)
    console.print(f"   {len(rows)} rows")

# Copyright (c) 2024 The torsionlab Developers.
# Distributed under the terms of the MIT License.
# SPDX-License-Identifier: MIT
"""Load run configuration and CNF formulas from files."""
import json
from pathlib import Path

import yaml

from .satisfiability import CnfFormula, FormulaError

DEFAULTS = {
    "seed": 42,
    "tol": 1e-10,
    "output": "-",
}


def _read_data_file(path):
    """
    Read the contents of a data file in JSON or YAML format.

    Parameters
    ----------
    path : :class:`pathlib.Path`
        The path of the JSON or YAML data file.

    Returns
    -------
    data : dict
        The contents of the file as a dictionary.
    """
    path = Path(path)
    loader = {".yml": yaml.safe_load, ".yaml": yaml.safe_load, ".json": json.loads}
    if path.suffix not in loader:
        raise ValueError(
            f"Unsupported configuration file '{path}'. Use .yml, .yaml, or .json."
        )
    data = loader[path.suffix](path.read_text(encoding="utf-8"))
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ValueError(f"Configuration file '{path}' must contain a mapping.")
    return data


def load_config(fname):
    """
    Load configuration from a JSON or YAML file and append to the defaults.

    Top-level values apply to every subcommand. A mapping under the name of a
    subcommand (``fixed-points:``) applies only to that subcommand.

    Parameters
    ----------
    fname : str or :class:`pathlib.Path`
        The name or path of the configuration file (has to be in JSON or YAML
        format).

    Returns
    -------
    config : dict
        A dictionary with the default configuration and variables loaded from
        the file.
    """
    config = dict(DEFAULTS)
    config.update(_read_data_file(fname))
    config["config_file"] = str(fname)
    return config


def command_defaults(config, commands):
    """
    Split a configuration into one dictionary of option defaults per command.

    Parameters
    ----------
    config : dict
        Output of :func:`torsionlab.parsing.load_config`.
    commands : dict
        Mapping of command names to the names of the options they accept.

    Returns
    -------
    default_map : dict
        Suitable for ``click.Context.default_map``.
    """
    shared = {key: value for key, value in config.items() if key not in commands}
    default_map = {}
    for name, options in commands.items():
        values = {key: value for key, value in shared.items() if key in options}
        section = {
            key.replace("-", "_"): value
            for key, value in (config.get(name) or {}).items()
        }
        unknown = set(section) - set(options)
        if unknown:
            raise ValueError(
                f"Unknown options for '{name}' in configuration: {sorted(unknown)}"
            )
        values.update(section)
        default_map[name] = values
    return default_map


def parse_dimacs(text):
    """
    Parse a formula in DIMACS CNF format.

    Comment lines (``c``) are ignored, clauses may span lines and end with 0,
    repeated literals in a clause are dropped, and a ``%`` line ends the input.

    Parameters
    ----------
    text : str
        The contents of the DIMACS file.

    Returns
    -------
    formula : :class:`torsionlab.satisfiability.CnfFormula`
    """
    n_vars, n_clauses = None, None
    clauses = []
    current = []
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            parts = line.split()
            if n_vars is not None or len(parts) != 4 or parts[1] != "cnf":
                raise FormulaError(f"Invalid problem line {number}: '{line}'")
            try:
                n_vars, n_clauses = int(parts[2]), int(parts[3])
            except ValueError:
                raise FormulaError(f"Invalid problem line {number}: '{line}'")
            continue
        if n_vars is None:
            raise FormulaError(f"Clause on line {number} comes before the header.")
        try:
            literals = [int(token) for token in line.split()]
        except ValueError:
            raise FormulaError(f"Invalid literal on line {number}: '{line}'")
        for literal in literals:
            if literal == 0:
                if not current:
                    raise FormulaError(f"Empty clause on line {number}.")
                clauses.append(tuple(dict.fromkeys(current)))
                current = []
            else:
                current.append(literal)
    if n_vars is None:
        raise FormulaError("Missing 'p cnf' problem line.")
    if current:
        raise FormulaError(f"Last clause {current} is not terminated by 0.")
    if len(clauses) != n_clauses:
        raise FormulaError(
            f"Header declares {n_clauses} clauses but {len(clauses)} were found."
        )
    return CnfFormula(n_vars, tuple(clauses))


def format_dimacs(formula, comment=None):
    """
    Write a formula in DIMACS CNF format.

    Parameters
    ----------
    formula : :class:`torsionlab.satisfiability.CnfFormula`
        The formula.
    comment : str or None
        Optional text placed on ``c`` lines before the header.

    Returns
    -------
    text : str
    """
    lines = []
    if comment:
        lines.extend(f"c {line}" for line in comment.splitlines())
    lines.append(f"p cnf {formula.n_vars} {len(formula.clauses)}")
    lines.extend(" ".join(str(i) for i in clause) + " 0" for clause in formula.clauses)
    return "\n".join(lines) + "\n"


def load_dimacs(path):
    """Read a DIMACS CNF file (see :func:`torsionlab.parsing.parse_dimacs`)."""
    return parse_dimacs(Path(path).read_text(encoding="utf-8"))

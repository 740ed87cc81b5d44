# Copyright (c) 2024 The torsionlab Developers.
# Distributed under the terms of the MIT License.
# SPDX-License-Identifier: MIT
"""The Click command line interface ("main" function)."""
import contextlib
import sys

import click
import numpy as np

from . import _api
from ._version import __version__
from .exporting import to_csv, to_json
from .parsing import DEFAULTS, command_defaults, load_config
from .printing import make_console
from .utils import THREADS_VARIABLE

CONTEXT_SETTINGS = {"help_option_names": ["-h", "--help"]}
EXIT_SATISFIABLE = 10
EXIT_UNSATISFIABLE = 20


class NumberList(click.ParamType):
    """Comma separated list of numbers, like ``128,256,512``."""

    name = "list"

    def __init__(self, kind):
        self.kind = kind

    def convert(self, value, param, ctx):
        if isinstance(value, (list, tuple)):
            return [self.kind(item) for item in value]
        try:
            return [self.kind(item) for item in str(value).split(",") if item.strip()]
        except ValueError:
            self.fail(f"Invalid list of numbers '{value}'.", param, ctx)


def seed_option(function):
    """Add the --seed option."""
    return click.option(
        "--seed",
        default=DEFAULTS["seed"],
        show_default=True,
        type=int,
        help="Seed of the random number generator",
    )(function)


def tol_option(function):
    """Add the --tol option."""
    return click.option(
        "--tol",
        default=DEFAULTS["tol"],
        show_default=True,
        type=click.FloatRange(1e-13, 1e-6),
        help="Local error tolerance of the ODE integrator",
    )(function)


def output_option(function):
    """Add the --output option."""
    return click.option(
        "--output",
        "-o",
        default=DEFAULTS["output"],
        show_default=True,
        help="File to write the results to ('-' means standard output)",
    )(function)


@contextlib.contextmanager
def report_errors(console, verbose):
    """Print any exception nicely and exit with status 1."""
    try:
        yield
    except Exception:
        console_error, style_error = make_console(verbose=True, style="bold red")
        console.print()
        console.rule(":fire: Error messages start here :fire:", style=style_error)
        console.print_exception(suppress=[click])
        console.rule(":fire: Error messages above :fire:", style=style_error)
        console.print()
        console_error.print(
            ":pensive: Oh no! Something went wrong while running the model.",
            style=style_error,
        )
        if not verbose:
            console_error.print(
                ":bulb: "
                "You may want to run torsionlab again with verbosity turned on "
                "('--verbose') to get more information about what happened."
            )
        console.print()
        console.print("A few things to check:", style="bold")
        console.print("  1. The error messages above for clues.")
        console.print("  2. The command line options and the configuration file.")
        console.print("  3. Tolerances and time spans of the integration.")
        console.print()
        sys.exit(1)


def _start(ctx, title):
    """Print the opening rule of a command and return the console."""
    console, style = ctx.obj["console"], ctx.obj["style"]
    console.rule(f":atom_symbol: [green]{title}[/] :atom_symbol:", style=style)
    return console, style


def _write(text, output, console, style):
    """Write the machine readable results to a file or standard output."""
    with click.open_file(output, "w", encoding="utf-8") as stream:
        stream.write(text)
    if output != "-":
        console.print(f":floppy_disk: Results written to '{output}'.", style=style)


def _done(console, style):
    console.rule(":tada: [green]Done![/] :tada:", style=style)


@click.group(context_settings=CONTEXT_SETTINGS)
@click.option(
    "--config",
    "-c",
    default=None,
    type=click.Path(exists=True, dir_okay=False),
    help="YAML or JSON file with default values for the command options",
)
@click.option(
    "--threads",
    default=None,
    type=click.IntRange(min=1),
    envvar=THREADS_VARIABLE,
    help=f"Maximum number of worker threads [env var: {THREADS_VARIABLE}]",
)
@click.option(
    "--verbose/--quiet",
    "-v/-q",
    default=True,
    show_default=True,
    help="Print information during execution / Don't print",
)
@click.version_option(version=__version__)
@click.pass_context
def main(ctx, config, threads, verbose):
    """
    torsionlab: Nonlinear qubits from torsion.

    Simulates the mean-field dynamics of two-mode condensates, where a
    state-dependent twist lets a single qubit discriminate nonorthogonal
    states. Results go to standard output (or --output) and status messages
    to standard error.
    """
    console, style = make_console(verbose)
    ctx.obj = {
        "console": console,
        "style": style,
        "threads": threads,
        "verbose": verbose,
    }
    if config is not None:
        with report_errors(console, verbose):
            options = {
                name: [param.name for param in command.params]
                for name, command in main.commands.items()
            }
            ctx.default_map = command_defaults(load_config(config), options)


@main.command(context_settings=CONTEXT_SETTINGS)
@click.option(
    "--theta",
    default=2.0**-6,
    show_default=True,
    type=click.FloatRange(0, np.pi, min_open=True),
    help="Angle between the two candidate Bloch vectors (0 < theta ≤ π)",
)
@click.option(
    "--g",
    default=1.0,
    show_default=True,
    type=click.FloatRange(0, min_open=True),
    help="Torsion strength (the gate uses B_x = g/2)",
)
@click.option(
    "--input",
    "which",
    default="a",
    show_default=True,
    type=click.Choice(["a", "b"]),
    help="Which of the two candidate states is provided",
)
@click.option(
    "--perturbation",
    default=0.0,
    show_default=True,
    type=click.FloatRange(0),
    help="Size of a random kick applied to the input state",
)
@seed_option
@tol_option
@output_option
@click.pass_context
def viviani(ctx, theta, g, which, perturbation, seed, tol, output):
    """
    Discriminate two pure states with the torsion gate.

    With B_x = g/2 both inputs ride Viviani's curve and are pushed to
    opposite poles, so the sign of z names the input. Prints a JSON report.
    """
    console, style = _start(ctx, "Viviani state discrimination")
    with report_errors(console, ctx.obj["verbose"]):
        report = _api.viviani(
            theta,
            g,
            which,
            perturbation,
            seed=seed,
            tol=tol,
            console=console,
            style=style,
        )
        _write(to_json(report), output, console, style)
    _done(console, style)


@main.command(context_settings=CONTEXT_SETTINGS)
@click.option(
    "--model",
    default="torsion",
    show_default=True,
    type=click.Choice(["torsion", "dissipative"]),
    help="Torsion Bloch equations or the dissipative basin model",
)
@click.option(
    "--r0",
    nargs=3,
    default=(1.0, 0.0, 0.0),
    show_default=True,
    type=float,
    help="Initial Bloch vector X Y Z",
)
@click.option("--t-end", default=10.0, show_default=True, type=float, help="Final time")
@click.option("--g", default=1.0, show_default=True, type=float, help="Torsion")
@click.option("--bx", default=0.5, show_default=True, type=float, help="Field B_x")
@click.option("--bz", default=0.0, show_default=True, type=float, help="Field B_z")
@click.option(
    "--gamma",
    default=0.5,
    show_default=True,
    type=click.FloatRange(0),
    help="Depolarization rate (dissipative model)",
)
@click.option(
    "--m",
    default=1.0,
    show_default=True,
    type=click.FloatRange(0),
    help="Strength of the positive non-CP process (dissipative model)",
)
@click.option(
    "--samples",
    "n_samples",
    default=201,
    show_default=True,
    type=click.IntRange(min=2),
    help="Number of output times",
)
@tol_option
@output_option
@click.pass_context
def flow(ctx, model, r0, t_end, g, bx, bz, gamma, m, n_samples, tol, output):
    """
    Integrate a Bloch vector and write the trajectory as CSV.

    The torsion model conserves the energy and the length of the Bloch
    vector. The dissipative model flows into its fixed points. Columns are
    t,x,y,z,E,r2.
    """
    console, style = _start(ctx, "Bloch vector flow")
    with report_errors(console, ctx.obj["verbose"]):
        header, rows = _api.flow(
            model,
            r0,
            t_end,
            g,
            bx=bx,
            bz=bz,
            gamma=gamma,
            m=m,
            n_samples=n_samples,
            tol=tol,
            console=console,
            style=style,
        )
        _write(to_csv(header, rows), output, console, style)
    _done(console, style)


@main.command("fixed-points", context_settings=CONTEXT_SETTINGS)
@click.option(
    "--gamma",
    default=0.5,
    show_default=True,
    type=click.FloatRange(0),
    help="Depolarization rate",
)
@click.option(
    "--m",
    default=1.0,
    show_default=True,
    type=click.FloatRange(0, min_open=True),
    help="Strength of the positive non-CP process",
)
@click.option(
    "--g",
    default=0.8,
    show_default=True,
    type=click.FloatRange(0, min_open=True),
    help="Torsion strength",
)
@click.option(
    "--samples",
    default=0,
    show_default=True,
    type=click.IntRange(min=0),
    help="Random initial states whose basins are classified",
)
@click.option(
    "--radius",
    default=0.15,
    show_default=True,
    type=click.FloatRange(0, 1),
    help="Radius of the ball the random initial states are drawn from",
)
@click.option(
    "--t-end",
    default=50.0,
    show_default=True,
    type=click.FloatRange(0, min_open=True),
    help="Integration time of the positivity check",
)
@seed_option
@output_option
@click.pass_context
def fixed_points(ctx, gamma, m, g, samples, radius, t_end, seed, output):
    """
    Fixed points and basins of the dissipative torsion model.

    For m > gamma the origin is a saddle and two stable points appear. They
    fit in the Bloch ball once g reaches g_min. Prints a JSON report.
    """
    console, style = _start(ctx, "Dissipative fixed points")
    with report_errors(console, ctx.obj["verbose"]):
        report = _api.fixed_points(
            gamma,
            m,
            g,
            samples=samples,
            radius=radius,
            t_end=t_end,
            seed=seed,
            threads=ctx.obj["threads"],
            console=console,
            style=style,
        )
        _write(to_json(report), output, console, style)
    _done(console, style)


@main.command(context_settings=CONTEXT_SETTINGS)
@click.option(
    "--n",
    "n_atoms",
    default=200,
    show_default=True,
    type=click.IntRange(min=2),
    help="Number of atoms",
)
@click.option(
    "--chi", default=1e-3, show_default=True, type=float, help="Twisting strength"
)
@click.option("--t", default=10.0, show_default=True, type=float, help="Time")
@click.option(
    "--n-phi",
    default=32,
    show_default=True,
    type=click.IntRange(min=1),
    help="Number of angles in [0, π)",
)
@output_option
@click.pass_context
def squeeze(ctx, n_atoms, chi, t, n_phi, output):
    """
    One-axis twisting of a coherent spin state.

    Compares the large-N and finite-N formulas for Var(J_phi) with exact
    Dicke-basis moments. Columns are phi,var_formula,var_finite,var_exact.
    """
    console, style = _start(ctx, "Spin squeezing")
    with report_errors(console, ctx.obj["verbose"]):
        header, rows = _api.squeeze(
            n_atoms, chi, t, n_phi=n_phi, console=console, style=style
        )
        _write(to_csv(header, rows), output, console, style)
    _done(console, style)


@main.command(context_settings=CONTEXT_SETTINGS)
@click.option(
    "--n",
    "n_values",
    default="128,256,512,1024,2048",
    show_default=True,
    type=NumberList(int),
    help="Comma separated atom numbers",
)
@click.option("--g", default=1.0, show_default=True, type=float, help="Torsion")
@click.option(
    "--t",
    "times",
    default="1",
    show_default=True,
    type=NumberList(float),
    help="Comma separated evolution times",
)
@click.option(
    "--theta",
    default=np.pi / 3,
    show_default=True,
    type=click.FloatRange(0, np.pi),
    help="Polar angle of the initial coherent state",
)
@click.option(
    "--phi",
    default=np.pi / 5,
    show_default=True,
    type=float,
    help="Azimuthal angle of the initial coherent state",
)
@output_option
@click.pass_context
def converge(ctx, n_values, g, times, theta, phi, output):
    """
    Convergence of N interacting atoms to the nonlinear qubit.

    With interaction 2g/N the exact collective spin approaches the torsion
    flow as 1/N. Columns are N,t,epsilon.
    """
    console, style = _start(ctx, "Mean-field convergence")
    with report_errors(console, ctx.obj["verbose"]):
        header, rows = _api.converge(
            n_values,
            g,
            times,
            theta=theta,
            phi=phi,
            threads=ctx.obj["threads"],
            console=console,
            style=style,
        )
        _write(to_csv(header, rows), output, console, style)
    _done(console, style)


@main.command(context_settings=CONTEXT_SETTINGS)
@click.option(
    "--dimacs",
    required=True,
    type=click.Path(exists=True, dir_okay=False),
    help="Formula in DIMACS CNF format (at most 3 literals per clause)",
)
@click.option(
    "--g",
    default=1.0,
    show_default=True,
    type=click.FloatRange(0, min_open=True),
    help="Torsion strength of the gate",
)
@click.option(
    "--mode",
    default="circuit",
    show_default=True,
    type=click.Choice(["circuit", "analytic"]),
    help="Simulate the oracle circuit or use the closed-form ancilla",
)
@tol_option
@output_option
@click.pass_context
def sat(ctx, dimacs, g, mode, tol, output):
    """
    Decide 3SAT by discriminating the postselected oracle ancilla.

    The ancilla differs from |0> only if some assignment satisfies the
    formula. Exits with 10 if satisfiable and 20 if not.
    """
    console, style = _start(ctx, "3SAT through state discrimination")
    with report_errors(console, ctx.obj["verbose"]):
        report = _api.sat(
            dimacs,
            g,
            mode=mode,
            tol=tol,
            threads=ctx.obj["threads"],
            console=console,
            style=style,
        )
        _write(to_json(report.to_dict()), output, console, style)
    _done(console, style)
    sys.exit(EXIT_SATISFIABLE if report.verdict == "SAT" else EXIT_UNSATISFIABLE)


@main.command(context_settings=CONTEXT_SETTINGS)
@click.option(
    "--samples",
    default=100_000,
    show_default=True,
    type=click.IntRange(min=1),
    help="Random symmetric three-qubit states",
)
@click.option(
    "--tangle-samples",
    default=1000,
    show_default=True,
    type=click.IntRange(min=0),
    help="Random symmetric states per N for the pairwise tangle bound",
)
@click.option(
    "--max-atoms",
    default=12,
    show_default=True,
    type=click.IntRange(3, 12),
    help="Largest N of the pairwise tangle bound",
)
@seed_option
@output_option
@click.pass_context
def monogamy(ctx, samples, tangle_samples, max_atoms, seed, output):
    """
    Monogamy of entanglement in symmetric states.

    Checks that the tangles one qubit shares with the others are bounded by
    its local mixedness, and that pairs share at most 1/(N - 1). Prints a
    JSON summary.
    """
    console, style = _start(ctx, "Entanglement monogamy")
    with report_errors(console, ctx.obj["verbose"]):
        report = _api.monogamy(
            samples,
            seed=seed,
            tangle_atoms=(3, max_atoms),
            tangle_samples=tangle_samples,
            console=console,
            style=style,
        )
        _write(to_json(report), output, console, style)
    _done(console, style)


@main.command(context_settings=CONTEXT_SETTINGS)
@click.option(
    "--trials",
    default=10_000,
    show_default=True,
    type=click.IntRange(min=1),
    help="Random (channel, state pair) trials",
)
@click.option(
    "--theta",
    default=2.0**-6,
    show_default=True,
    type=click.FloatRange(0, np.pi, min_open=True),
    help="Angle between the Viviani inputs of the torsion witness",
)
@click.option(
    "--g",
    default=1.0,
    show_default=True,
    type=click.FloatRange(0, min_open=True),
    help="Torsion strength of the witness",
)
@seed_option
@output_option
@click.pass_context
def monotonicity(ctx, trials, theta, g, seed, output):
    """
    Trace distance under linear channels and under torsion.

    Random linear channels never increase the distance between two states,
    while the torsion flow pulls a close pair apart. Prints a JSON summary.
    """
    console, style = _start(ctx, "Trace distance monotonicity")
    with report_errors(console, ctx.obj["verbose"]):
        report = _api.monotonicity(
            trials, seed=seed, theta=theta, g=g, console=console, style=style
        )
        _write(to_json(report), output, console, style)
    _done(console, style)

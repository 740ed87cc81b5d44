# Copyright (c) 2024 The torsionlab Developers.
# Distributed under the terms of the MIT License.
# SPDX-License-Identifier: MIT
"""Pipelines behind each command: run a model and collect a report."""
import collections

import numpy as np

from .channels import expansivity_witness, monotonicity_sweep
from .dissipation import (
    DissipativeParams,
    basin_sweep,
    fixed_points as find_fixed_points,
    flow as dissipative_flow,
    positivity_sweep,
    sample_ball,
)
from .manybody import (
    convergence_sweep,
    dicke_coherent,
    evolve_ku,
    fit_error_bound,
    monogamy_sweep,
    optimal_squeezing,
    spin_moments,
    tangle_sweep,
    var_jphi,
)
from .parsing import load_dimacs
from .printing import make_console, print_dict, print_rows
from .qubits import density_from_bloch
from .satisfiability import solve_sat_via_qsd
from .torsion import (
    TorsionParams,
    integrate,
    viviani_gate,
    viviani_inputs,
    viviani_time,
)
from .utils import capture_run_info, make_rng, spawn_rngs

TRAJECTORY_HEADER = ["t", "x", "y", "z", "E", "r2"]
SQUEEZE_HEADER = ["phi", "var_formula", "var_finite", "var_exact"]
CONVERGE_HEADER = ["N", "t", "epsilon"]


def _start(console, style, title, parameters, seed=None):
    """Make a quiet console if needed and print the run parameters."""
    if console is None:
        console, style = make_console(verbose=False)
    console.print(":package: Captured information about the run:", style=style)
    print_dict(capture_run_info(seed), console)
    console.print(f":gear:  {title}:", style=style)
    print_dict(parameters, console)
    return console, style


def viviani(
    theta, g, which="a", perturbation=0.0, seed=42, tol=1e-10, console=None, style=""
):
    """
    Run the Viviani discrimination gate on one of the two candidate inputs.

    Parameters
    ----------
    theta : float
        Angle between the two candidate Bloch vectors.
    g : float
        Torsion strength (the gate uses B_x = g/2).
    which : str
        Which input is provided: ``"a"`` or ``"b"``.
    perturbation : float
        Size of a random displacement applied to the input before it is
        projected back onto the Bloch sphere.
    seed : int
        Seed for the perturbation direction.
    tol : float
        Integrator tolerance.
    console : rich.console.Console
        Console used to print status messaged. If None, no messages are
        printed.
    style : str
        Style string used to format console status messages.

    Returns
    -------
    report : dict
    """
    if which not in ("a", "b"):
        raise ValueError(f"Input must be 'a' or 'b' but got '{which}'.")
    if perturbation < 0:
        raise ValueError(f"Perturbation must be nonnegative but got {perturbation}.")
    parameters = {"theta": theta, "g": g, "input": which, "perturbation": perturbation}
    console, style = _start(console, style, "Viviani gate parameters", parameters, seed)

    inputs = viviani_inputs(theta)
    r_in = inputs.r_a if which == "a" else inputs.r_b
    if perturbation > 0:
        direction = make_rng(seed).standard_normal(3)
        r_in = r_in + perturbation * direction / np.linalg.norm(direction)
        r_in = r_in / np.linalg.norm(r_in)
    console.print(":dart: Input state:", style=style)
    print_dict({"r_in": r_in, "t_V": viviani_time(theta, g)}, console)

    console.print(":cyclone: Evolving under torsion until the gate time.", style=style)
    verdict = viviani_gate(r_in, theta, g, tol=tol)
    report = {
        "theta": float(theta),
        "input": which,
        "verdict_bit": verdict.bit,
        "t_V": verdict.t_gate,
        "final_r": verdict.final,
        "pole_distance": verdict.pole_distance,
        "on_curve": verdict.on_curve,
    }
    console.print(":checkered_flag: Verdict:", style=style)
    print_dict(report, console)
    return report


def flow(
    model,
    r0,
    t_end,
    g,
    bx=0.0,
    bz=0.0,
    gamma=0.0,
    m=0.0,
    n_samples=201,
    tol=1e-10,
    console=None,
    style="",
):
    """
    Integrate one initial Bloch vector under the torsion or dissipative model.

    Parameters
    ----------
    model : str
        ``"torsion"`` (uses g, bx, bz) or ``"dissipative"`` (uses gamma, m, g).
    r0 : array
        Initial Bloch vector.
    t_end : float
        Final time.
    g, bx, bz, gamma, m : float
        Model parameters.
    n_samples : int
        Number of output times.
    tol : float
        Integrator tolerance.
    console : rich.console.Console
        Console used to print status messaged. If None, no messages are
        printed.
    style : str
        Style string used to format console status messages.

    Returns
    -------
    header : list of str
        Column names.
    rows : array
        Rows of (t, x, y, z, E, r2).
    """
    if model == "torsion":
        parameters = {"model": model, "g": g, "bx": bx, "bz": bz}
    elif model == "dissipative":
        parameters = {"model": model, "g": g, "gamma": gamma, "m": m}
    else:
        raise ValueError(f"Unknown model '{model}'. Use 'torsion' or 'dissipative'.")
    parameters.update({"r0": r0, "t_end": t_end, "tol": tol})
    console, style = _start(console, style, "Flow parameters", parameters)

    console.print(":cyclone: Integrating the Bloch equations.", style=style)
    if model == "torsion":
        trajectory = integrate(
            r0, TorsionParams(g=g, bx=bx, bz=bz), t_end, tol=tol, n_samples=n_samples
        )
    else:
        trajectory = dissipative_flow(
            r0,
            DissipativeParams(gamma=gamma, m=m, g=g),
            t_end,
            tol=tol,
            n_samples=n_samples,
        )
    rows = trajectory.to_rows()
    console.print(":chart_with_upwards_trend: Trajectory:", style=style)
    print_rows(TRAJECTORY_HEADER, rows, console)
    return TRAJECTORY_HEADER, rows


def fixed_points(
    gamma,
    m,
    g,
    samples=0,
    radius=0.15,
    t_end=50.0,
    seed=42,
    threads=None,
    console=None,
    style="",
):
    """
    Fixed points of the dissipative model and, optionally, where random
    initial states end up.

    Parameters
    ----------
    gamma, m, g : float
        Model parameters.
    samples : int
        Number of random initial states drawn inside a ball of the given
        radius. If 0, only the fixed points are computed.
    radius : float
        Radius of the ball of initial states.
    t_end : float
        Integration time of the positivity check.
    seed : int
        Seed for the initial states.
    threads : int or None
        Number of workers.
    console : rich.console.Console
        Console used to print status messaged. If None, no messages are
        printed.
    style : str
        Style string used to format console status messages.

    Returns
    -------
    report : dict
    """
    params = DissipativeParams(gamma=gamma, m=m, g=g)
    parameters = {"gamma": gamma, "m": m, "g": g, "samples": samples, "radius": radius}
    console, style = _start(
        console, style, "Dissipative model parameters", parameters, seed
    )

    console.print(":round_pushpin: Fixed points and stability:", style=style)
    points = find_fixed_points(params)
    report = points.to_dict()
    print_dict(report, console)
    if samples > 0:
        console.print(
            f":game_die: Classifying the basins of {samples} random states:",
            style=style,
        )
        r0s = sample_ball(make_rng(seed), samples, radius)
        labels = basin_sweep(r0s, params, threads=threads)
        basins = dict(sorted(collections.Counter(labels).items()))
        print_dict(basins, console)
        console.print(
            ":shield:  Checking that states stay in the Bloch ball:", style=style
        )
        positivity = positivity_sweep(params, samples, radius, t_end, seed=seed)
        print_dict(positivity, console)
        report["basins"] = basins
        report["positivity"] = positivity
    return report


def squeeze(n_atoms, chi, t, n_phi=32, console=None, style=""):
    """
    Compare the closed forms of Var(J_φ) with the exact Dicke-basis moments.

    Parameters
    ----------
    n_atoms : int
        Number of atoms.
    chi : float
        Twisting strength.
    t : float
        Time.
    n_phi : int
        Number of angles between 0 and π.
    console : rich.console.Console
        Console used to print status messaged. If None, no messages are
        printed.
    style : str
        Style string used to format console status messages.

    Returns
    -------
    header : list of str
    rows : array
        Rows of (phi, var_formula, var_finite, var_exact).
    """
    if n_atoms < 2:
        raise ValueError(f"Need at least 2 atoms but got {n_atoms}.")
    parameters = {"n_atoms": n_atoms, "chi": chi, "t": t, "n_phi": n_phi}
    console, style = _start(console, style, "Squeezing parameters", parameters)

    console.print(":cyclone: Twisting a coherent state along x.", style=style)
    moments = spin_moments(evolve_ku(dicke_coherent(n_atoms, np.pi / 2, 0), chi, t))
    phi = np.linspace(0, np.pi, n_phi, endpoint=False)
    rows = np.column_stack(
        [
            phi,
            var_jphi(n_atoms, chi, t, phi),
            var_jphi(n_atoms, chi, t, phi, finite=True),
            moments.var_jphi(phi),
        ]
    )
    best = optimal_squeezing(n_atoms, chi, t)
    console.print(":compression: Most squeezed direction:", style=style)
    print_dict(
        {"phi": best.phi, "variance": best.variance, "ratio": best.ratio}, console
    )
    return SQUEEZE_HEADER, rows


def converge(
    n_values,
    g,
    times,
    theta=np.pi / 3,
    phi=np.pi / 5,
    threads=None,
    console=None,
    style="",
):
    """
    Error between the exact N-atom dynamics and the mean-field torsion limit.

    Parameters
    ----------
    n_values : list of int
        Atom numbers.
    g : float
        Torsion strength (χ = 2g/N).
    times : list of float
        Evolution times.
    theta, phi : float
        Angles of the initial coherent state.
    threads : int or None
        Number of workers.
    console : rich.console.Console
        Console used to print status messaged. If None, no messages are
        printed.
    style : str
        Style string used to format console status messages.

    Returns
    -------
    header : list of str
    rows : array
        Rows of (N, t, epsilon).
    """
    parameters = {
        "n_values": list(n_values),
        "g": g,
        "times": list(times),
        "theta": theta,
        "phi": phi,
    }
    console, style = _start(console, style, "Convergence parameters", parameters)

    console.print(":hourglass: Measuring the mean-field error:", style=style)
    rows = np.vstack(
        [
            convergence_sweep(n_values, g, t, theta, phi, threads=threads)
            for t in times
        ]
    )
    print_rows(CONVERGE_HEADER, rows, console)
    try:
        fit = fit_error_bound(rows)
    except ValueError as error:
        console.print(f"   Skipping the error-bound fit: {error}")
    else:
        console.print(":straight_ruler: Fitted error bound:", style=style)
        print_dict(
            {"c": fit.c, "t_ent": fit.t_ent, "residual": fit.residual}, console
        )
    return CONVERGE_HEADER, rows


def sat(dimacs, g, mode="circuit", tol=1e-10, threads=None, console=None, style=""):
    """
    Decide a CNF formula by state discrimination of the oracle ancilla.

    Parameters
    ----------
    dimacs : str or pathlib.Path
        Path to the DIMACS CNF file.
    g : float
        Torsion strength of the gate.
    mode : str
        ``"circuit"`` or ``"analytic"``.
    tol : float
        Integrator tolerance.
    threads : int or None
        Workers for the brute-force count.
    console : rich.console.Console
        Console used to print status messaged. If None, no messages are
        printed.
    style : str
        Style string used to format console status messages.

    Returns
    -------
    report : :class:`torsionlab.satisfiability.ReductionReport`
    """
    parameters = {"dimacs": str(dimacs), "g": g, "mode": mode}
    console, style = _start(console, style, "Reduction parameters", parameters)

    console.print(f":open_book: Reading formula from '{dimacs}'.", style=style)
    formula = load_dimacs(dimacs)
    print_dict(
        {"variables": formula.n_vars, "clauses": len(formula.clauses)}, console
    )
    console.print(":gear:  Preparing the ancilla and running the gate:", style=style)
    report = solve_sat_via_qsd(formula, g, mode=mode, tol=tol, threads=threads)
    print_dict(report.to_dict(), console)
    if not report.agrees:
        console.print(
            ":warning: The verdict disagrees with the brute-force count.",
            style="bold red",
        )
    return report


def monogamy(
    samples, seed=42, tangle_atoms=(3, 12), tangle_samples=1000, console=None, style=""
):
    """
    Monogamy of entanglement on random symmetric states.

    Parameters
    ----------
    samples : int
        Number of random symmetric three-qubit states.
    seed : int
        Seed of the random generators.
    tangle_atoms : tuple of int
        Smallest and largest N of the pairwise tangle bound check.
    tangle_samples : int
        Random symmetric states per N (0 skips the check).
    console : rich.console.Console
        Console used to print status messaged. If None, no messages are
        printed.
    style : str
        Style string used to format console status messages.

    Returns
    -------
    report : dict
    """
    parameters = {
        "samples": samples,
        "tangle_atoms": tangle_atoms,
        "tangle_samples": tangle_samples,
    }
    console, style = _start(console, style, "Monogamy parameters", parameters, seed)
    smallest, largest = tangle_atoms
    rngs = spawn_rngs(seed, 2 + largest - smallest)

    console.print(":link: Three-qubit monogamy inequality:", style=style)
    report = monogamy_sweep(samples, rngs[0])
    print_dict(report, console)
    if tangle_samples > 0:
        console.print(":link: Pairwise tangle bound 1/(N - 1):", style=style)
        report["tangle"] = []
        for n_atoms, rng in zip(range(smallest, largest + 1), rngs[1:]):
            summary = tangle_sweep(n_atoms, tangle_samples, rng)
            console.print(
                f"   N={n_atoms}: max tangle {summary['max_tangle']:.6g} "
                f"(bound {summary['bound']:.6g})"
            )
            report["tangle"].append(summary)
    return report


def monotonicity(
    trials, seed=42, theta=2.0**-6, g=1.0, tol=1e-10, console=None, style=""
):
    """
    Trace distance monotonicity for linear channels and its violation by torsion.

    Parameters
    ----------
    trials : int
        Number of random (channel, state pair) triples.
    seed : int
        Seed of the random generator.
    theta : float
        Angle between the Viviani inputs used for the torsion witness.
    g : float
        Torsion strength of the witness.
    tol : float
        Integrator tolerance.
    console : rich.console.Console
        Console used to print status messaged. If None, no messages are
        printed.
    style : str
        Style string used to format console status messages.

    Returns
    -------
    report : dict
    """
    parameters = {"trials": trials, "theta": theta, "g": g}
    console, style = _start(
        console, style, "Monotonicity parameters", parameters, seed
    )

    console.print(":game_die: Random linear channels:", style=style)
    report = monotonicity_sweep(trials, seed=seed)
    print_dict(report, console)

    console.print(":cyclone: Nonlinear torsion on the Viviani pair:", style=style)
    inputs = viviani_inputs(theta)
    t_gate = viviani_time(theta, g)
    d_initial, d_final = expansivity_witness(
        TorsionParams(g=g, bx=g / 2),
        density_from_bloch(inputs.r_a),
        density_from_bloch(inputs.r_b),
        t_gate,
        tol=tol,
    )
    report["expansivity"] = {
        "theta": float(theta),
        "t": t_gate,
        "d_initial": d_initial,
        "d_final": d_final,
    }
    print_dict(report["expansivity"], console)
    return report

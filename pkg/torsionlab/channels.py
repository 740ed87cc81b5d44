# Copyright (c) 2024 The torsionlab Developers.
# Distributed under the terms of the MIT License.
# SPDX-License-Identifier: MIT
"""
Linear qubit channels: master equations, Kraus maps, and the monotonicity of
the trace distance (which the nonlinear torsion flow violates).
"""
from dataclasses import dataclass

import numpy as np

from .dissipation import anticommutator_term, generator_from_master, sample_ball
from .qubits import (
    IDENTITY,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    bloch_from_density,
    check_hermitian,
    density_from_bloch,
    trace_norm,
)
from .torsion import integrate
from .utils import make_rng

EPS_TRACE_PRESERVING = 1e-10
MONOTONICITY_SLACK = 1e-12
MAX_KRAUS = 8


@dataclass(frozen=True)
class MasterEquation:
    """
    A linear time-local qubit master equation.

    dρ/dt = -i[H, ρ] + Σ ζ B ρ B† + {L₊, ρ} with L₊ = -½ Σ ζ B†B.
    """

    hamiltonian: np.ndarray
    jumps: tuple

    def __post_init__(self):
        hamiltonian = check_hermitian(self.hamiltonian)
        if hamiltonian.shape != (2, 2):
            raise ValueError(
                f"Expected a 2x2 Hamiltonian but got shape {hamiltonian.shape}."
            )
        object.__setattr__(self, "hamiltonian", hamiltonian)
        object.__setattr__(self, "jumps", tuple(self.jumps))

    @property
    def generator(self):
        """The equivalent :class:`torsionlab.dissipation.PauliGenerator`."""
        return generator_from_master(self.hamiltonian, self.jumps)


def master_rhs(rho, equation):
    """
    Time derivative of a density matrix under a master equation.

    Parameters
    ----------
    rho : array
        The 2x2 density matrix.
    equation : :class:`torsionlab.channels.MasterEquation`
        Hamiltonian and jump operators.

    Returns
    -------
    drho : array
        The traceless Hermitian 2x2 matrix dρ/dt.
    """
    rho = check_hermitian(rho)
    hamiltonian = equation.hamiltonian
    lplus = anticommutator_term(equation.jumps)
    drho = -1j * (hamiltonian @ rho - rho @ hamiltonian)
    for jump in equation.jumps:
        drho += jump.zeta * jump.operator @ rho @ jump.operator.conj().T
    drho += lplus @ rho + rho @ lplus
    return drho


@dataclass(frozen=True)
class KrausChannel:
    """Qubit channel ρ ↦ Σ K ρ K† given by its Kraus operators."""

    operators: tuple

    def __post_init__(self):
        operators = tuple(np.asarray(k, dtype=complex) for k in self.operators)
        if not operators:
            raise ValueError("A channel needs at least one Kraus operator.")
        for operator in operators:
            if operator.shape != (2, 2):
                raise ValueError(
                    f"Expected 2x2 Kraus operators but got shape {operator.shape}."
                )
        deviation = np.max(np.abs(completeness(operators) - IDENTITY))
        if deviation > EPS_TRACE_PRESERVING:
            raise ValueError(
                f"Channel is not trace preserving (max |Σ K†K - I| = {deviation:.3e})."
            )
        object.__setattr__(self, "operators", operators)


def completeness(operators):
    """The sum Σ K†K, equal to the identity for trace-preserving channels."""
    return sum(k.conj().T @ k for k in operators)


def apply_kraus(channel, rho):
    """
    Apply a channel to a density matrix.

    Parameters
    ----------
    channel : :class:`torsionlab.channels.KrausChannel`
        The channel.
    rho : array
        The 2x2 density matrix.

    Returns
    -------
    rho_out : array
        Σ K ρ K†.
    """
    rho = check_hermitian(rho)
    return sum(k @ rho @ k.conj().T for k in channel.operators)


def depolarizing(p):
    """
    Depolarizing channel ρ ↦ (1 - p) ρ + p I/2.

    Kraus operators √(1 - 3p/4) I and √(p/4) σ^μ. Bloch vectors shrink by
    the factor 1 - p.
    """
    if not 0 <= p <= 1:
        raise ValueError(f"Depolarizing strength must be in [0, 1] but got {p}.")
    weights = [np.sqrt(1 - 3 * p / 4)] + [np.sqrt(p / 4)] * 3
    paulis = [IDENTITY, SIGMA_X, SIGMA_Y, SIGMA_Z]
    return KrausChannel(tuple(w * sigma for w, sigma in zip(weights, paulis)))


def unitary_channel(unitary):
    """Channel ρ ↦ U ρ U† of a single 2x2 unitary."""
    return KrausChannel((np.asarray(unitary, dtype=complex),))


def random_cptp(seed, n_kraus):
    """
    Random trace-preserving channel with the given number of Kraus operators.

    A Haar-distributed isometry V (2n x 2) is cut into n blocks of 2x2.
    Since V†V = I the channel is trace preserving by construction.

    Parameters
    ----------
    seed : int or :class:`numpy.random.Generator`
        Seed (or an existing generator).
    n_kraus : int
        Number of Kraus operators, between 1 and 8. A single operator gives
        a random unitary.

    Returns
    -------
    channel : :class:`torsionlab.channels.KrausChannel`
    """
    if not 1 <= n_kraus <= MAX_KRAUS:
        raise ValueError(
            f"Number of Kraus operators must be in [1, {MAX_KRAUS}] but got {n_kraus}."
        )
    rng = seed if isinstance(seed, np.random.Generator) else make_rng(seed)
    ginibre = rng.standard_normal((2 * n_kraus, 2)) + 1j * rng.standard_normal(
        (2 * n_kraus, 2)
    )
    isometry, upper = np.linalg.qr(ginibre)
    # Fix the phases of the columns so the distribution is Haar
    diagonal = np.diagonal(upper)
    isometry = isometry * (diagonal / np.abs(diagonal))
    return KrausChannel(tuple(isometry[2 * i : 2 * i + 2] for i in range(n_kraus)))


def check_monotonicity(channel, rho_a, rho_b):
    """
    Compare trace distances before and after applying a channel.

    Parameters
    ----------
    channel : :class:`torsionlab.channels.KrausChannel`
        The channel.
    rho_a, rho_b : array
        Two density matrices.

    Returns
    -------
    d_before : float
        ‖ρa - ρb‖₁.
    d_after : float
        ‖φ(ρa) - φ(ρb)‖₁.
    ok : bool
        True if the distance did not grow (allowing 1e-12 of slack).
    """
    d_before = trace_norm(np.asarray(rho_a) - np.asarray(rho_b))
    d_after = trace_norm(apply_kraus(channel, rho_a) - apply_kraus(channel, rho_b))
    return d_before, d_after, bool(d_after <= d_before + MONOTONICITY_SLACK)


def monotonicity_sweep(trials, seed=42):
    """
    Check monotonicity on random channels and random pairs of states.

    Parameters
    ----------
    trials : int
        Number of (channel, state pair) triples.
    seed : int
        Seed of the random generator.

    Returns
    -------
    report : dict
        Number of trials, number of violations, and the largest value of
        ``d_after - d_before`` seen.
    """
    if trials < 1:
        raise ValueError(f"Number of trials must be positive but got {trials}.")
    rng = make_rng(seed)
    violations = 0
    max_excess = -np.inf
    for _ in range(trials):
        channel = random_cptp(rng, int(rng.integers(1, MAX_KRAUS + 1)))
        r_a, r_b = sample_ball(rng, 2)
        d_before, d_after, ok = check_monotonicity(
            channel, density_from_bloch(r_a), density_from_bloch(r_b)
        )
        violations += not ok
        max_excess = max(max_excess, d_after - d_before)
    return {
        "trials": int(trials),
        "violations": int(violations),
        "max_excess": float(max_excess),
    }


def distance_history(params, rho_a, rho_b, t_end, n_samples=201, tol=1e-10):
    """
    Trace distance between two states evolving under the torsion flow.

    Parameters
    ----------
    params : :class:`torsionlab.torsion.TorsionParams`
        The nonlinear model.
    rho_a, rho_b : array
        Initial density matrices.
    t_end : float
        Final time.
    n_samples : int
        Number of output times.
    tol : float
        Integrator tolerance.

    Returns
    -------
    times : array
    distances : array
        ‖ρa(t) - ρb(t)‖₁ at each time.
    """
    path_a = integrate(bloch_from_density(rho_a), params, t_end, tol, n_samples)
    path_b = integrate(bloch_from_density(rho_b), params, t_end, tol, n_samples)
    distances = np.array(
        [
            trace_norm(density_from_bloch(r_a) - density_from_bloch(r_b))
            for r_a, r_b in zip(path_a.bloch, path_b.bloch)
        ]
    )
    return path_a.times, distances


def expansivity_witness(params, rho_a, rho_b, t, tol=1e-10):
    """
    Trace distance at time 0 and at time t under the torsion flow.

    A linear channel can never make d(t) larger than d(0).

    Returns
    -------
    d_initial, d_final : float
    """
    _, distances = distance_history(params, rho_a, rho_b, t, n_samples=2, tol=tol)
    return float(distances[0]), float(distances[-1])

# Copyright (c) 2024 The torsionlab Developers.
# Distributed under the terms of the MIT License.
# SPDX-License-Identifier: MIT
"""
Qubit states, small dense linear algebra, and the two-mode parameter map.

Bloch vectors are numpy arrays of shape ``(3,)`` and density matrices are
complex arrays of shape ``(d, d)``. Everything here is a pure function.
"""
from dataclasses import dataclass

import numpy as np

# Single tuning point for the tolerances used throughout the package
EPS_HERM = 1e-12
EPS_STATE = 1e-9

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY = np.eye(2, dtype=complex)


def pauli_matrices():
    """
    Return the Pauli matrices.

    Returns
    -------
    sigmas : tuple of 3 arrays
        The matrices σ^x, σ^y, σ^z (in the σ^z eigenbasis ``|0⟩, |1⟩``).
    """
    return SIGMA_X, SIGMA_Y, SIGMA_Z


def _check_finite(array, name):
    """Raise a ValueError if the array has NaN or inf values."""
    if not np.all(np.isfinite(array)):
        raise ValueError(f"Non-finite values in {name}: {array}")


def check_hermitian(matrix, tol=EPS_HERM):
    """
    Make sure a matrix is square and Hermitian to within a tolerance.

    Parameters
    ----------
    matrix : array
        The matrix to check.
    tol : float
        Maximum absolute deviation allowed between M and M†.

    Returns
    -------
    matrix : array
        The input converted to a complex numpy array.
    """
    matrix = np.asarray(matrix, dtype=complex)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValueError(f"Expected a square matrix but got shape {matrix.shape}.")
    _check_finite(matrix, "matrix")
    deviation = np.max(np.abs(matrix - matrix.conj().T))
    if deviation > tol:
        raise ValueError(
            f"Matrix is not Hermitian (max |M - M†| = {deviation:.3e} > {tol})."
        )
    return matrix


def check_bloch(r, tol=EPS_STATE):
    """
    Validate a Bloch vector.

    Parameters
    ----------
    r : array
        The 3 Bloch coordinates (x, y, z).
    tol : float
        Allowed excess of the vector length over 1.

    Returns
    -------
    r : array
        The input as a float array of shape ``(3,)``.
    """
    r = np.asarray(r, dtype=float)
    if r.shape != (3,):
        raise ValueError(f"Bloch vectors need 3 components but got shape {r.shape}.")
    _check_finite(r, "Bloch vector")
    length = np.linalg.norm(r)
    if length > 1 + tol:
        raise ValueError(f"Bloch vector {r} is outside the Bloch ball: |r| = {length}")
    return r


def density_from_bloch(r):
    """
    Build the qubit density matrix ρ = (I + r·σ)/2.

    Parameters
    ----------
    r : array
        The Bloch vector, with length at most 1.

    Returns
    -------
    rho : array
        The 2x2 complex density matrix.
    """
    x, y, z = check_bloch(r)
    rho = 0.5 * np.array([[1 + z, x - 1j * y], [x + 1j * y, 1 - z]], dtype=complex)
    return rho


def bloch_from_density(rho):
    """
    Compute the Bloch vector r^μ = tr(ρσ^μ) of a qubit density matrix.

    Parameters
    ----------
    rho : array
        A 2x2 Hermitian matrix.

    Returns
    -------
    r : array
        The Bloch coordinates (x, y, z).
    """
    rho = check_hermitian(rho)
    if rho.shape != (2, 2):
        raise ValueError(f"Expected a 2x2 density matrix but got shape {rho.shape}.")
    r = np.array(
        [
            2 * rho[1, 0].real,
            2 * rho[1, 0].imag,
            (rho[0, 0] - rho[1, 1]).real,
        ]
    )
    return r


def state_from_bloch(r):
    """
    Pure state vector pointing along a unit Bloch vector.

    The global phase is fixed so that the amplitude on ``|0⟩`` is real and
    nonnegative.

    Parameters
    ----------
    r : array
        A Bloch vector of unit length.

    Returns
    -------
    psi : array
        The 2 complex amplitudes (ψ0, ψ1).
    """
    x, y, z = check_bloch(r)
    theta = np.arccos(np.clip(z / max(np.linalg.norm([x, y, z]), 1e-300), -1, 1))
    phi = np.arctan2(y, x)
    amplitudes = coherent_amplitudes(theta, phi)
    return np.array([amplitudes.psi0, amplitudes.psi1])


def bloch_from_state(psi):
    """
    Bloch vector of the pure state ``|ψ⟩⟨ψ|`` (the input is normalized first).

    Parameters
    ----------
    psi : array
        The 2 complex amplitudes.

    Returns
    -------
    r : array
        The Bloch coordinates (x, y, z).
    """
    psi = np.asarray(psi, dtype=complex)
    psi = psi / np.linalg.norm(psi)
    return bloch_from_density(np.outer(psi, psi.conj()))


def trace_norm(matrix):
    """
    Trace norm (Schatten 1-norm) of a Hermitian matrix.

    Parameters
    ----------
    matrix : array
        A square Hermitian matrix.

    Returns
    -------
    norm : float
        Sum of the absolute eigenvalues.
    """
    matrix = check_hermitian(matrix)
    return float(np.sum(np.abs(np.linalg.eigvalsh(matrix))))


def trace_distance(rho_a, rho_b):
    """
    Normalized trace distance ‖ρa − ρb‖₁ / 2 between two states.

    Parameters
    ----------
    rho_a, rho_b : array
        Density matrices of the same dimension.

    Returns
    -------
    distance : float
        Value between 0 (identical) and 1 (perfectly distinguishable).
    """
    return 0.5 * trace_norm(np.asarray(rho_a) - np.asarray(rho_b))


def optimal_measurement(matrix):
    """
    Projector onto the positive eigenspace of a Hermitian matrix.

    This is the maximizer E⋆ of tr(EX) over 0 ⪯ E ⪯ I. For traceless X
    (such as a difference of two states) ``2 tr(E⋆X)`` equals the trace norm.

    Parameters
    ----------
    matrix : array
        A square Hermitian matrix X.

    Returns
    -------
    projector : array
        The optimal measurement operator E⋆.
    """
    matrix = check_hermitian(matrix)
    values, vectors = np.linalg.eigh(matrix)
    positive = vectors[:, values > 0]
    return positive @ positive.conj().T


@dataclass(frozen=True)
class CoherentAmplitudes:
    """Single-particle amplitudes of a spin coherent state."""

    psi0: float
    psi1: complex

    @property
    def bloch(self):
        """The Bloch vector of the single-particle state."""
        return bloch_from_state([self.psi0, self.psi1])


def coherent_amplitudes(theta, phi):
    """
    Amplitudes ψ0 = cos(θ/2) and ψ1 = e^{iφ} sin(θ/2) of a coherent state.

    Parameters
    ----------
    theta : float
        Polar angle on the Bloch sphere in radians, between 0 and π.
    phi : float
        Azimuthal angle in radians.

    Returns
    -------
    amplitudes : :class:`torsionlab.qubits.CoherentAmplitudes`
        The normalized amplitudes with ψ0 real and nonnegative.
    """
    if not 0 <= theta <= np.pi:
        raise ValueError(f"Polar angle must be in [0, π] but got {theta}.")
    return CoherentAmplitudes(
        psi0=float(np.cos(theta / 2)),
        psi1=complex(np.exp(1j * phi) * np.sin(theta / 2)),
    )


def overlap_integrals(length_a, length_b):
    """
    Overlap integrals of two normalized 3D Gaussian modes.

    Parameters
    ----------
    length_a, length_b : float
        Oscillator lengths of the two modes.

    Returns
    -------
    single : float
        ∫ fa fb d³r.
    double : float
        ∫ fa² fb² d³r.
    """
    squares = length_a**2 + length_b**2
    single = (2 * length_a * length_b / squares) ** 1.5
    double = (1 / (np.pi * squares)) ** 1.5
    return single, double


@dataclass(frozen=True)
class EffectiveParams:
    """
    Parameters of the effective nonlinear qubit of a two-mode condensate.

    Frequencies in angular units with ħ = 1.
    """

    bx: float
    bz: float
    g: float
    lam: float
    gamma0: float
    gamma1: float
    gamma_prime: float
    chi: float


def effective_params(omega0, omega1, rabi, u00, u11, u01, mass, n_atoms):
    """
    Map two-component condensate parameters to the effective qubit model.

    Atoms are condensed into Gaussian ground states of isotropic traps with
    frequencies ``omega0`` and ``omega1``. Inputs are already in ħ = 1 units.

    Parameters
    ----------
    omega0, omega1 : float
        Trap frequencies of internal states 0 and 1.
    rabi : float
        Frequency Ω of the laser drive coupling the internal states.
    u00, u11, u01 : float
        Contact interaction strengths.
    mass : float
        Atomic mass.
    n_atoms : int
        Number of condensed atoms N.

    Returns
    -------
    params : :class:`torsionlab.qubits.EffectiveParams`
        The fields B_x, B_z, torsion g, and the two-mode couplings λ, γ0, γ1,
        γ′, χ.
    """
    inputs = {"omega0": omega0, "omega1": omega1, "mass": mass, "n_atoms": n_atoms}
    for name, value in inputs.items():
        if not value > 0:
            raise ValueError(f"Parameter '{name}' must be positive but got {value}.")
    length0 = np.sqrt(1 / (mass * omega0))
    length1 = np.sqrt(1 / (mass * omega1))
    gamma0 = u00 / (2 * (2 * np.pi * length0**2) ** 1.5)
    gamma1 = u11 / (2 * (2 * np.pi * length1**2) ** 1.5)
    single, double = overlap_integrals(length0, length1)
    gamma_prime = u01 * double
    lam = 0.5 * rabi * single
    k0, k1, k_prime = n_atoms * gamma0, n_atoms * gamma1, n_atoms * gamma_prime
    return EffectiveParams(
        bx=float(lam),
        bz=float((omega0 - omega1) / 4 + (k0 - k1) / 2),
        g=float((k0 + k1 - k_prime) / 2),
        lam=float(lam),
        gamma0=float(gamma0),
        gamma1=float(gamma1),
        gamma_prime=float(gamma_prime),
        chi=float(gamma0 + gamma1 - gamma_prime),
    )

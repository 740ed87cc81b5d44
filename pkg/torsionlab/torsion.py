# Copyright (c) 2024 The torsionlab Developers.
# Distributed under the terms of the MIT License.
# SPDX-License-Identifier: MIT
"""
Nonlinear torsion Bloch equations and the Viviani-curve discrimination gate.
"""
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .qubits import check_bloch

TOL_MIN = 1e-13
TOL_MAX = 1e-6
# Largest input angle for which the gate inputs ride the Viviani curve
VIVIANI_MAX_ANGLE = np.pi / 4
POLE_TOLERANCE = 1e-3
AMBIGUOUS_Z = 1e-6


class IntegrationError(RuntimeError):
    """Raised when the ODE solver fails before reaching the final time."""


class AmbiguousVerdictError(ValueError):
    """Raised when the gate output sits on the equator and has no verdict."""


@dataclass(frozen=True)
class TorsionParams:
    """
    Torsion strength and fields of the effective nonlinear qubit.

    The Hamiltonian is ``B_x σ^x + B_z σ^z + g z σ^z`` with z = tr(ρσ^z).
    """

    g: float
    bx: float
    bz: float = 0.0

    def __post_init__(self):
        for name in ("g", "bx", "bz"):
            if not np.isfinite(getattr(self, name)):
                raise ValueError(f"Torsion parameter '{name}' must be finite.")

    @classmethod
    def from_effective(cls, params):
        """Build from :class:`torsionlab.qubits.EffectiveParams`."""
        return cls(g=params.g, bx=params.bx, bz=params.bz)

    @property
    def viviani(self):
        """True if B_x = g/2 and B_z = 0 (the Viviani-curve regime)."""
        return bool(np.isclose(self.bx, self.g / 2) and self.bz == 0)


def torsion_rhs(r, params):
    """
    Time derivative of the Bloch vector under the torsion model.

    Parameters
    ----------
    r : array
        Bloch coordinates with the 3 components along the first axis. Extra
        axes are broadcast, so ``(3, n)`` arrays evaluate n states at once.
    params : :class:`torsionlab.torsion.TorsionParams`
        The model parameters.

    Returns
    -------
    drdt : array
        Same shape as ``r``.
    """
    x, y, z = r[0], r[1], r[2]
    frequency = 2 * (params.bz + params.g * z)
    return np.array(
        [
            -frequency * y,
            frequency * x - 2 * params.bx * z,
            2 * params.bx * y,
        ]
    )


def energy(r, params):
    """
    Conserved energy E = B_x x + B_z z + (g/2) z².

    Parameters
    ----------
    r : array
        Bloch coordinates along the first axis.
    params : :class:`torsionlab.torsion.TorsionParams`
        The model parameters.

    Returns
    -------
    energy : float or array
    """
    return params.bx * r[0] + params.bz * r[2] + 0.5 * params.g * r[2] ** 2


@dataclass(frozen=True)
class Trajectory:
    """
    Sampled solution of a Bloch equation.

    ``energy`` and ``norm2`` are recomputed from each sample.
    """

    times: np.ndarray
    bloch: np.ndarray
    energy: np.ndarray
    norm2: np.ndarray

    @classmethod
    def from_samples(cls, times, bloch, params):
        """Assemble a trajectory computing the diagnostics for each sample."""
        times = np.asarray(times, dtype=float)
        bloch = np.asarray(bloch, dtype=float)
        if np.any(np.diff(times) <= 0):
            raise ValueError("Trajectory times must be strictly increasing.")
        return cls(
            times=times,
            bloch=bloch,
            energy=energy(bloch.T, params),
            norm2=np.sum(bloch**2, axis=1),
        )

    @property
    def final(self):
        """The last sampled Bloch vector."""
        return self.bloch[-1]

    def to_rows(self):
        """Rows of (t, x, y, z, E, r2) for CSV output."""
        return np.column_stack([self.times, self.bloch, self.energy, self.norm2])


def _check_tol(tol):
    """Make sure the integrator tolerance is in the supported range."""
    if not TOL_MIN <= tol <= TOL_MAX:
        raise ValueError(
            f"Tolerance must be between {TOL_MIN} and {TOL_MAX} but got {tol}."
        )


def solve_bloch(rhs, r0, t_end, tol, times):
    """
    Integrate a Bloch equation with the Dormand-Prince RK4(5) pair.

    Parameters
    ----------
    rhs : callable
        Function ``rhs(r)`` returning dr/dt for ``r`` of shape ``(3, ...)``.
    r0 : array
        Initial state, shape ``(3, ...)``.
    t_end : float
        Final time.
    tol : float
        Relative and absolute local error tolerance.
    times : array
        Output times, sampled from the dense interpolant.

    Returns
    -------
    samples : array
        Shape ``(len(times),) + r0.shape``.
    """
    _check_tol(tol)
    r0 = np.asarray(r0, dtype=float)
    shape = r0.shape

    def fun(_, flat):
        return rhs(flat.reshape(shape)).ravel()

    solution = solve_ivp(
        fun,
        (0.0, t_end),
        r0.ravel(),
        method="RK45",
        rtol=tol,
        atol=tol,
        t_eval=times,
    )
    if not solution.success:
        reached = solution.t[-1] if solution.t.size else 0.0
        raise IntegrationError(
            f"Integration stopped at t = {reached} of {t_end}: {solution.message}"
        )
    return np.moveaxis(solution.y.reshape(shape + (len(times),)), -1, 0)


def _sample_times(t_end, n_samples):
    """Evenly spaced output times including 0 and t_end."""
    if not t_end > 0:
        raise ValueError(f"Final time must be positive but got {t_end}.")
    return np.linspace(0, t_end, n_samples)


def integrate(r0, params, t_end, tol=1e-10, n_samples=201, times=None):
    """
    Integrate the torsion Bloch equations from a single initial state.

    Parameters
    ----------
    r0 : array
        Initial Bloch vector.
    params : :class:`torsionlab.torsion.TorsionParams`
        The model parameters.
    t_end : float
        Final time.
    tol : float
        Local error tolerance, between 1e-13 and 1e-6.
    n_samples : int
        Number of evenly spaced output samples (ignored if ``times`` given).
    times : array or None
        Explicit output times from 0 to ``t_end``.

    Returns
    -------
    trajectory : :class:`torsionlab.torsion.Trajectory`
    """
    r0 = check_bloch(r0)
    if times is None:
        times = _sample_times(t_end, n_samples)
    samples = solve_bloch(lambda r: torsion_rhs(r, params), r0, t_end, tol, times)
    return Trajectory.from_samples(times, samples, params)


def integrate_ensemble(r0s, params, t_end, tol=1e-10, n_samples=201):
    """
    Integrate many initial states together as a single vectorised system.

    Parameters
    ----------
    r0s : array
        Initial Bloch vectors, shape ``(n, 3)``.
    params : :class:`torsionlab.torsion.TorsionParams`
        The model parameters.
    t_end : float
        Final time.
    tol : float
        Local error tolerance.
    n_samples : int
        Number of evenly spaced output samples.

    Returns
    -------
    times : array
        The output times.
    bloch : array
        Shape ``(n_samples, n, 3)``.
    """
    r0s = np.atleast_2d(np.asarray(r0s, dtype=float))
    times = _sample_times(t_end, n_samples)
    samples = solve_bloch(lambda r: torsion_rhs(r, params), r0s.T, t_end, tol, times)
    return times, np.swapaxes(samples, 1, 2)


def z_torsion_closed(r0, g, t):
    """
    Exact pure z-torsion solution: rotation about z by the angle 2 g z0 t.

    Parameters
    ----------
    r0 : array
        Initial Bloch vector.
    g : float
        Torsion strength.
    t : float or array
        Time(s).

    Returns
    -------
    r : array
        Shape ``(3,)`` or ``(len(t), 3)``.
    """
    x, y, z = np.asarray(r0, dtype=float)
    angle = 2 * g * z * np.asarray(t, dtype=float)
    return np.stack(
        [
            x * np.cos(angle) - y * np.sin(angle),
            x * np.sin(angle) + y * np.cos(angle),
            np.full_like(angle, z),
        ],
        axis=-1,
    )


@dataclass(frozen=True)
class VivianiInputs:
    """The pair of gate inputs separated by the angle ``theta``."""

    theta: float
    r_a: np.ndarray
    r_b: np.ndarray


def viviani_inputs(theta):
    """
    Place the two gate inputs symmetrically around the tangency point (1,0,0).

    Parameters
    ----------
    theta : float
        Angle between the two Bloch vectors, 0 < theta ≤ π.

    Returns
    -------
    inputs : :class:`torsionlab.torsion.VivianiInputs`
    """
    if not 0 < theta <= np.pi:
        raise ValueError(f"Input angle must be in (0, π] but got {theta}.")
    x = abs(np.cos(theta / 2))
    yz = np.sin(theta / 2) / np.sqrt(2)
    return VivianiInputs(
        theta=float(theta),
        r_a=np.array([x, yz, yz]),
        r_b=np.array([x, -yz, -yz]),
    )


def viviani_curve(xi):
    """
    Point (cos²ξ, cosξ sinξ, sinξ) of Viviani's curve.

    Parameters
    ----------
    xi : float or array
        Curve parameter.

    Returns
    -------
    r : array
        Shape ``(3,)`` or ``xi.shape + (3,)``.
    """
    xi = np.asarray(xi, dtype=float)
    return np.stack([np.cos(xi) ** 2, np.cos(xi) * np.sin(xi), np.sin(xi)], axis=-1)


def viviani_xi(xi0, bx, t):
    """
    Curve parameter ξ(t) = 2 arctan[tan(ξ0/2) e^{2 B_x t}].

    Parameters
    ----------
    xi0 : float
        Initial curve parameter, between -π/2 and π/2.
    bx : float
        Transverse field B_x (must equal g/2 for the motion to follow the curve).
    t : float or array
        Time(s).

    Returns
    -------
    xi : float or array
    """
    if not -np.pi / 2 <= xi0 <= np.pi / 2:
        raise ValueError(f"Initial curve parameter must be in [-π/2, π/2]: {xi0}")
    return 2 * np.arctan(np.tan(xi0 / 2) * np.exp(2 * bx * np.asarray(t)))


def viviani_time(theta, g):
    """
    Gate time t_V = (1/g) ln cot(θ/(4√2)) for the input angle θ.

    Parameters
    ----------
    theta : float
        Angle between the two inputs.
    g : float
        Torsion strength (positive).

    Returns
    -------
    t_gate : float
    """
    if not g > 0:
        raise ValueError(f"Torsion strength must be positive but got {g}.")
    if not theta > 0:
        raise ValueError(f"Input angle must be positive but got {theta}.")
    cotangent = 1 / np.tan(theta / (4 * np.sqrt(2)))
    if not cotangent > 1:
        raise ValueError(f"Input angle {theta} is too large for a positive gate time.")
    return float(np.log(cotangent) / g)


@dataclass(frozen=True)
class VivianiVerdict:
    """Outcome of running the Viviani gate on one input state."""

    bit: int
    t_gate: float
    final: np.ndarray
    pole_distance: float
    on_curve: bool


def viviani_gate(r_in, theta, g, tol=1e-10):
    """
    Evolve one input with B_x = g/2 for the gate time and read the sign of z.

    Parameters
    ----------
    r_in : array
        Bloch vector of the provided state (one of the pair from
        :func:`torsionlab.torsion.viviani_inputs`, possibly perturbed).
    theta : float
        Angle between the two candidate inputs the gate is designed for.
    g : float
        Torsion strength.
    tol : float
        Integrator tolerance.

    Returns
    -------
    verdict : :class:`torsionlab.torsion.VivianiVerdict`
        Bit 0 if the final z is positive (mapped to ``|0⟩``), 1 if negative.
    """
    if not 0 < theta <= np.pi:
        raise ValueError(f"Input angle must be in (0, π] but got {theta}.")
    t_gate = viviani_time(theta, g)
    params = TorsionParams(g=g, bx=g / 2)
    trajectory = integrate(r_in, params, t_gate, tol=tol, n_samples=2)
    final = trajectory.final
    if abs(final[2]) < AMBIGUOUS_Z:
        raise AmbiguousVerdictError(
            f"Final state {final} is on the separatrix (|z| < {AMBIGUOUS_Z})."
        )
    bit = 0 if final[2] > 0 else 1
    pole = np.array([0.0, 0.0, 1.0 if bit == 0 else -1.0])
    return VivianiVerdict(
        bit=bit,
        t_gate=t_gate,
        final=final,
        pole_distance=float(np.linalg.norm(final - pole)),
        on_curve=bool(theta <= VIVIANI_MAX_ANGLE),
    )


def discriminate_viviani(r_in, theta, g, tol=1e-10):
    """
    Single-input discrimination: return 0 for the ``a`` side and 1 for ``b``.

    See :func:`torsionlab.torsion.viviani_gate` for the parameters.
    """
    return viviani_gate(r_in, theta, g, tol=tol).bit

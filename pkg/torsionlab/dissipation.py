# Copyright (c) 2024 The torsionlab Developers.
# Distributed under the terms of the MIT License.
# SPDX-License-Identifier: MIT
"""
Dissipative torsion model: jump operators, Pauli-basis generator, fixed points
and the basins of attraction used for autonomous state discrimination.
"""
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .qubits import SIGMA_X, SIGMA_Y, SIGMA_Z, check_bloch, check_hermitian
from .torsion import Trajectory, TorsionParams, solve_bloch
from .utils import make_rng, parallel_map

# SU(3) generator coupling x and z, and the SO(3) generator of z rotations
LAMBDA_4 = np.array([[0, 0, 1], [0, 0, 0], [1, 0, 0]], dtype=float)
E_Z = np.array([[0, -1, 0], [1, 0, 0], [0, 0, 0]], dtype=float)

EPS_FIXED_POINT = 1e-6
ORIGIN_RADIUS = 1e-14


class UndecidedError(RuntimeError):
    """Raised when a state does not reach a fixed point within the time budget."""


@dataclass(frozen=True)
class JumpTerm:
    """A jump operator B and the sign ζ of its term in the master equation."""

    zeta: int
    operator: np.ndarray

    def __post_init__(self):
        if self.zeta not in (-1, 1):
            raise ValueError(f"Jump sign must be +1 or -1 but got {self.zeta}.")


@dataclass(frozen=True)
class DissipativeParams:
    """
    Depolarization rate γ, non-CP strength m, and torsion g.
    """

    gamma: float
    m: float
    g: float

    def __post_init__(self):
        if self.gamma < 0 or self.m < 0:
            raise ValueError(
                f"Parameters gamma and m must be nonnegative "
                f"but got gamma={self.gamma} and m={self.m}."
            )
        if not np.isfinite(self.g):
            raise ValueError(f"Torsion strength must be finite but got {self.g}.")

    @property
    def bistable(self):
        """True if the pair of stable fixed points exists (m > γ)."""
        return self.m > self.gamma

    @property
    def t_max(self):
        """Default time budget for reaching a fixed point."""
        rate = max(self.gamma, self.m - self.gamma)
        return 200 / rate if rate > 0 else 200.0


@dataclass(frozen=True)
class PauliGenerator:
    """The affine flow dr/dt = G r + C of a qubit master equation."""

    G: np.ndarray
    C: np.ndarray

    def __call__(self, r):
        return self.G @ r + self.C


def jump_table(gamma, m):
    """
    The seven jump operators of the dissipative torsion model.

    The first three are depolarizing. The other four implement a positive
    but not completely positive process (two of them have ζ = -1).

    Parameters
    ----------
    gamma : float
        Depolarization rate.
    m : float
        Strength of the non-CP process.

    Returns
    -------
    jumps : list of :class:`torsionlab.dissipation.JumpTerm`
    """
    if gamma < 0 or m < 0:
        raise ValueError(f"Rates must be nonnegative but got gamma={gamma}, m={m}.")
    depolarizing = np.sqrt(gamma) / 2
    mixing = np.sqrt(m / 8)
    jumps = [JumpTerm(1, depolarizing * sigma) for sigma in (SIGMA_X, SIGMA_Y, SIGMA_Z)]
    for zeta, sign_y, sign_z in [(1, 1, 1), (1, -1, 1), (-1, 1, -1), (-1, -1, -1)]:
        operator = mixing * (SIGMA_X + sign_y * SIGMA_Y + sign_z * SIGMA_Z)
        jumps.append(JumpTerm(zeta, operator))
    return jumps


def anticommutator_term(jumps):
    """
    The operator L₊ = -½ Σ ζ B†B that keeps the master equation trace preserving.
    """
    return -0.5 * sum(
        (jump.zeta * jump.operator.conj().T @ jump.operator for jump in jumps),
        np.zeros((2, 2), dtype=complex),
    )


def jump_matrix(jump):
    """
    Real 3x3 matrix ½ tr(σ^μ B σ^ν B†) of a single jump operator (without ζ).
    """
    sigmas = (SIGMA_X, SIGMA_Y, SIGMA_Z)
    operator = jump.operator
    return np.array(
        [
            [
                0.5 * np.trace(mu @ operator @ nu @ operator.conj().T).real
                for nu in sigmas
            ]
            for mu in sigmas
        ]
    )


def generator_from_master(hamiltonian, jumps):
    """
    Pauli-basis generator of a qubit master equation.

    Parameters
    ----------
    hamiltonian : array
        The 2x2 Hermitian Hamiltonian H.
    jumps : list of :class:`torsionlab.dissipation.JumpTerm`
        Jump operators and their signs.

    Returns
    -------
    generator : :class:`torsionlab.dissipation.PauliGenerator`
        G and C such that dr/dt = G r + C.
    """
    hamiltonian = check_hermitian(hamiltonian)
    if hamiltonian.shape != (2, 2):
        raise ValueError(f"Expected a 2x2 Hamiltonian but got {hamiltonian.shape}.")
    for jump in jumps:
        if np.shape(jump.operator) != (2, 2):
            raise ValueError(
                f"Expected 2x2 jump operators but got {np.shape(jump.operator)}."
            )
    sigmas = (SIGMA_X, SIGMA_Y, SIGMA_Z)
    field_ = np.array([np.trace(hamiltonian @ sigma).real for sigma in sigmas])
    # -ε^{μνλ} h^λ written as a cross-product matrix
    rotation = np.array(
        [
            [0, -field_[2], field_[1]],
            [field_[2], 0, -field_[0]],
            [-field_[1], field_[0], 0],
        ]
    )
    trace_lplus = np.trace(anticommutator_term(jumps)).real
    G = rotation + trace_lplus * np.eye(3)
    C = np.zeros(3)
    for jump in jumps:
        G += jump.zeta * jump_matrix(jump)
        commutator = (
            jump.operator @ jump.operator.conj().T
            - jump.operator.conj().T @ jump.operator
        )
        C += np.array(
            [0.5 * jump.zeta * np.trace(sigma @ commutator).real for sigma in sigmas]
        )
    return PauliGenerator(G=G, C=C)


def nonlinear_generator(r, params):
    """
    State-dependent generator G(r) = m λ₄ - γ I + 2 g z E_z.

    Assembled from the torsion Hamiltonian g z σ^z and the jump table.
    """
    hamiltonian = params.g * r[2] * SIGMA_Z
    return generator_from_master(hamiltonian, jump_table(params.gamma, params.m))


def dissipative_rhs(r, params):
    """
    Time derivative of the Bloch vector under the dissipative torsion model.

    Parameters
    ----------
    r : array
        Bloch coordinates along the first axis (extra axes are broadcast).
    params : :class:`torsionlab.dissipation.DissipativeParams`
        The model parameters.

    Returns
    -------
    drdt : array
        Same shape as ``r``.
    """
    x, y, z = r[0], r[1], r[2]
    gamma, m, g = params.gamma, params.m, params.g
    return np.array(
        [
            m * z - gamma * x - 2 * g * y * z,
            -gamma * y + 2 * g * x * z,
            m * x - gamma * z,
        ]
    )


def jacobian(r, params, step=1e-6):
    """
    Central-difference Jacobian of :func:`dissipative_rhs` at ``r``.
    """
    r = np.asarray(r, dtype=float)
    shifts = step * np.eye(3)
    columns = [
        (dissipative_rhs(r + shift, params) - dissipative_rhs(r - shift, params))
        / (2 * step)
        for shift in shifts
    ]
    return np.column_stack(columns)


def is_stable(r, params):
    """True if every Jacobian eigenvalue at ``r`` has a negative real part."""
    return bool(np.all(np.linalg.eigvals(jacobian(r, params)).real < 0))


@dataclass(frozen=True)
class FixedPointSet:
    """
    Fixed points of the dissipative torsion model.

    ``r_plus`` and ``r_minus`` are None unless m > γ. ``g_min`` is the
    smallest torsion keeping them inside the Bloch ball (None if m ≤ γ).
    """

    origin: np.ndarray
    origin_stable: bool
    delta: float
    g_min: float = None
    r_plus: np.ndarray = None
    r_minus: np.ndarray = None
    pair_stable: bool = False
    inside_ball: bool = False

    @property
    def attractors(self):
        """Dictionary of stable fixed points keyed by basin label."""
        points = {}
        if self.r_plus is not None and self.pair_stable:
            points["plus"] = self.r_plus
            points["minus"] = self.r_minus
        if self.origin_stable:
            points["origin"] = self.origin
        return points

    def to_dict(self):
        """Plain representation for JSON output."""

        def _vector(value):
            return None if value is None else [float(i) for i in value]

        return {
            "delta": float(self.delta),
            "g_min": None if self.g_min is None else float(self.g_min),
            "r_plus": _vector(self.r_plus),
            "r_minus": _vector(self.r_minus),
            "origin_stable": bool(self.origin_stable),
            "stable": bool(self.pair_stable),
            "inside_ball": bool(self.inside_ball),
        }


def fixed_points(params):
    """
    Fixed points, their stability, and the threshold torsion g_min.

    Parameters
    ----------
    params : :class:`torsionlab.dissipation.DissipativeParams`
        Needs g > 0 and m > 0.

    Returns
    -------
    points : :class:`torsionlab.dissipation.FixedPointSet`
    """
    gamma, m, g = params.gamma, params.m, params.g
    if not (g > 0 and m > 0):
        raise ValueError(f"Fixed points need g > 0 and m > 0 but got g={g}, m={m}.")
    delta = (m**2 - gamma**2) / m**2
    origin = np.zeros(3)
    origin_stable = is_stable(origin, params)
    if not params.bistable:
        return FixedPointSet(origin=origin, origin_stable=origin_stable, delta=delta)
    root = np.sqrt(delta)
    r_plus = np.array([gamma * root, m * delta, m * root]) / (2 * g)
    r_minus = np.array([-r_plus[0], r_plus[1], -r_plus[2]])
    g_min = np.sqrt((m**2 - gamma**2) / 2)
    return FixedPointSet(
        origin=origin,
        origin_stable=origin_stable,
        delta=delta,
        g_min=g_min,
        r_plus=r_plus,
        r_minus=r_minus,
        pair_stable=is_stable(r_plus, params) and is_stable(r_minus, params),
        inside_ball=bool(np.linalg.norm(r_plus) <= 1),
    )


def linearized_rates(params):
    """
    Growth rate m - γ of ξ₊ and decay rate -(m + γ) of ξ₋ near the origin.
    """
    return params.m - params.gamma, -(params.m + params.gamma)


def rotated_coordinates(r):
    """
    Coordinates ξ₊ = (z + x)/2 and ξ₋ = (z - x)/2 that diagonalize the linear flow.
    """
    r = np.asarray(r, dtype=float)
    return (r[..., 2] + r[..., 0]) / 2, (r[..., 2] - r[..., 0]) / 2


def _attractors(params):
    """Stable fixed points keyed by basin label, for any valid parameters."""
    if params.bistable and params.g > 0:
        return fixed_points(params).attractors
    origin = np.zeros(3)
    return {"origin": origin} if is_stable(origin, params) else {}


def classify_basin(r0, params, t_max=None, eps=EPS_FIXED_POINT):
    """
    Integrate until the state comes within ``eps`` of a stable fixed point.

    Parameters
    ----------
    r0 : array
        Initial Bloch vector.
    params : :class:`torsionlab.dissipation.DissipativeParams`
        The model parameters.
    t_max : float or None
        Time budget. Defaults to ``200/max(γ, m - γ)``.
    eps : float
        Distance to a fixed point that counts as arrival. The integration
        runs on to eps/2 so the final state is strictly inside.

    Returns
    -------
    label : str
        One of ``"plus"``, ``"minus"``, ``"origin"``, or ``"undecided"``.
        Without a stable fixed point (γ = m = 0, or g ≤ 0 with m > γ) every
        state off the origin is undecided.
    final : array
        The Bloch vector at the end of the integration.
    """
    r0 = check_bloch(r0)
    if params.bistable and np.linalg.norm(r0) < ORIGIN_RADIUS:
        return "origin", r0
    attractors = _attractors(params)
    if t_max is None:
        t_max = params.t_max
    labels = list(attractors)
    for label in labels:
        if np.linalg.norm(r0 - attractors[label]) <= eps:
            return label, r0
    events = []
    for label in labels:
        point = attractors[label]

        def arrival(_, r, point=point):
            return np.linalg.norm(r - point) - eps / 2

        arrival.terminal = True
        arrival.direction = -1
        events.append(arrival)
    solution = solve_ivp(
        lambda _, r: dissipative_rhs(r, params),
        (0, t_max),
        r0,
        method="RK45",
        rtol=1e-10,
        atol=1e-12,
        events=events,
    )
    final = solution.y[:, -1]
    for label, times in zip(labels, solution.t_events):
        if times.size:
            return label, final
    return "undecided", final


@dataclass(frozen=True)
class AutonomousVerdict:
    """Fixed point reached by the autonomous gate and the output state."""

    label: str
    final: np.ndarray


def autonomous_discriminate(r_in, params, t_max=None, eps=EPS_FIXED_POINT):
    """
    Discriminate by letting the dissipative flow carry the input to a fixed point.

    Parameters
    ----------
    r_in : array
        Bloch vector of the provided state.
    params : :class:`torsionlab.dissipation.DissipativeParams`
        Needs m > γ and g ≥ g_min.
    t_max : float or None
        Time budget.
    eps : float
        Arrival distance.

    Returns
    -------
    verdict : :class:`torsionlab.dissipation.AutonomousVerdict`
    """
    if not params.bistable:
        raise ValueError(
            f"Autonomous discrimination needs m > gamma "
            f"(m={params.m}, gamma={params.gamma})."
        )
    g_min = fixed_points(params).g_min
    if params.g < g_min:
        raise ValueError(
            f"Torsion g={params.g} is below g_min={g_min}: "
            "the fixed points lie outside the Bloch ball."
        )
    label, final = classify_basin(r_in, params, t_max=t_max, eps=eps)
    if label == "undecided":
        raise UndecidedError(
            f"Input {r_in} did not reach a fixed point within the time budget. "
            f"Last state was {final}."
        )
    return AutonomousVerdict(label=label, final=final)


def flow_ensemble(r0s, params, t_end, tol=1e-10, n_samples=201):
    """
    Integrate many initial states under the dissipative flow at once.

    Returns
    -------
    times : array
    bloch : array
        Shape ``(n_samples, n, 3)``.
    """
    r0s = np.atleast_2d(np.asarray(r0s, dtype=float))
    times = np.linspace(0, t_end, n_samples)
    samples = solve_bloch(
        lambda r: dissipative_rhs(r, params), r0s.T, t_end, tol, times
    )
    return times, np.swapaxes(samples, 1, 2)


def flow(r0, params, t_end, tol=1e-10, n_samples=201):
    """
    Trajectory of a single initial state under the dissipative flow.

    The energy column holds the torsion part (g/2) z² of the energy.
    """
    r0 = check_bloch(r0)
    times, bloch = flow_ensemble(r0, params, t_end, tol=tol, n_samples=n_samples)
    return Trajectory.from_samples(times, bloch[:, 0], TorsionParams(g=params.g, bx=0))


def sample_ball(rng, n, radius=1.0):
    """Points distributed uniformly inside a ball of the given radius."""
    directions = rng.standard_normal((n, 3))
    directions /= np.linalg.norm(directions, axis=1)[:, np.newaxis]
    radii = radius * rng.uniform(size=n) ** (1 / 3)
    return directions * radii[:, np.newaxis]


def positivity_sweep(params, n_samples, radius, t_end, seed=42, slack=1e-9):
    """
    Check empirically that random states stay inside the Bloch ball.

    Parameters
    ----------
    params : :class:`torsionlab.dissipation.DissipativeParams`
        The model parameters.
    n_samples : int
        Number of random initial states.
    radius : float
        Radius of the ball the initial states are drawn from.
    t_end : float
        Integration time.
    seed : int
        Seed of the random generator.
    slack : float
        Allowed excess of |r| over 1.

    Returns
    -------
    report : dict
        Number of samples, number of states that left the ball, and the
        largest Bloch vector length seen.
    """
    r0s = sample_ball(make_rng(seed), n_samples, radius)
    _, bloch = flow_ensemble(r0s, params, t_end, tol=1e-9, n_samples=401)
    lengths = np.linalg.norm(bloch, axis=2)
    return {
        "samples": int(n_samples),
        "violations": int(np.sum(np.any(lengths > 1 + slack, axis=0))),
        "max_norm": float(lengths.max()),
    }


def basin_sweep(r0s, params, t_max=None, threads=None):
    """
    Basin labels of many initial states (computed in parallel).
    """
    labels = parallel_map(
        lambda r0: classify_basin(r0, params, t_max=t_max)[0],
        list(np.atleast_2d(r0s)),
        threads=threads,
    )
    return labels

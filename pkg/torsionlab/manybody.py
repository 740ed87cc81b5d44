# Copyright (c) 2024 The torsionlab Developers.
# Distributed under the terms of the MIT License.
# SPDX-License-Identifier: MIT
"""
Exact symmetric-subspace dynamics of N two-level atoms under one-axis twisting,
convergence to the torsion mean-field limit, and pairwise entanglement.

Dicke amplitudes are indexed by k, the number of atoms in internal state 1, so
the J_z eigenvalue of basis state k is (N - 2k)/2.
"""
from dataclasses import dataclass

import numpy as np
from scipy.optimize import curve_fit
from scipy.special import gammaln, xlogy

from .qubits import SIGMA_Y, coherent_amplitudes
from .torsion import z_torsion_closed
from .utils import parallel_map

EPS_NORM = 1e-12
MAX_STATEVECTOR_ATOMS = 12
SIGMA_YY = np.kron(SIGMA_Y, SIGMA_Y).real.astype(complex)


def _log_binomial(n, k):
    """Natural log of the binomial coefficient C(n, k)."""
    return gammaln(n + 1) - gammaln(k + 1) - gammaln(n - k + 1)


@dataclass(frozen=True)
class DickeState:
    """
    Pure permutation-symmetric state of N qubits in the Dicke basis.

    ``amplitudes[k]`` is the coefficient of the Dicke state with k atoms in
    internal state 1.
    """

    amplitudes: np.ndarray

    def __post_init__(self):
        amplitudes = np.asarray(self.amplitudes, dtype=complex)
        if amplitudes.ndim != 1 or amplitudes.size < 2:
            raise ValueError(
                f"Dicke amplitudes need shape (N + 1,) with N ≥ 1: {amplitudes.shape}"
            )
        norm = np.sum(np.abs(amplitudes) ** 2)
        if abs(norm - 1) > EPS_NORM:
            raise ValueError(f"Dicke state is not normalized (norm² = {norm}).")
        object.__setattr__(self, "amplitudes", amplitudes)

    @property
    def n_atoms(self):
        """The number of atoms N."""
        return self.amplitudes.size - 1

    @property
    def m_values(self):
        """J_z eigenvalues (N - 2k)/2 of the basis states."""
        return (self.n_atoms - 2 * np.arange(self.n_atoms + 1)) / 2


def dicke_coherent(n_atoms, theta, phi):
    """
    Spin coherent state |ψ⟩^⊗N expanded in the Dicke basis.

    Binomial weights are computed in log-space so any N works.

    Parameters
    ----------
    n_atoms : int
        Number of atoms N ≥ 1.
    theta, phi : float
        Polar and azimuthal angles of the single-atom Bloch vector.

    Returns
    -------
    state : :class:`torsionlab.manybody.DickeState`
    """
    if n_atoms < 1:
        raise ValueError(f"Number of atoms must be at least 1 but got {n_atoms}.")
    single = coherent_amplitudes(theta, phi)
    k = np.arange(n_atoms + 1)
    log_magnitude = (
        0.5 * _log_binomial(n_atoms, k)
        + xlogy(n_atoms - k, abs(single.psi0))
        + xlogy(k, abs(single.psi1))
    )
    amplitudes = np.exp(log_magnitude + 1j * k * np.angle(single.psi1))
    amplitudes /= np.linalg.norm(amplitudes)
    return DickeState(amplitudes)


def random_dicke(n_atoms, rng):
    """
    Random symmetric state from complex Gaussian Dicke amplitudes.
    """
    amplitudes = rng.standard_normal(n_atoms + 1) + 1j * rng.standard_normal(
        n_atoms + 1
    )
    return DickeState(amplitudes / np.linalg.norm(amplitudes))


def evolve_ku(state, chi, t):
    """
    Evolve under the one-axis twisting Hamiltonian χ J_z².

    Parameters
    ----------
    state : :class:`torsionlab.manybody.DickeState`
        The initial state.
    chi : float
        Twisting strength.
    t : float
        Evolution time.

    Returns
    -------
    state : :class:`torsionlab.manybody.DickeState`
    """
    phases = np.exp(-1j * chi * t * state.m_values**2)
    return DickeState(state.amplitudes * phases)


def _ladder_elements(n_atoms):
    """Matrix elements ⟨k-1|J₊|k⟩ = sqrt(k (N - k + 1)) for k = 1..N."""
    k = np.arange(1, n_atoms + 1)
    return np.sqrt(k * (n_atoms - k + 1))


def _apply_spin(amplitudes, n_atoms):
    """The vectors J_x c, J_y c, J_z c."""
    elements = _ladder_elements(n_atoms)
    raised = np.zeros_like(amplitudes)
    raised[:-1] = elements * amplitudes[1:]
    lowered = np.zeros_like(amplitudes)
    lowered[1:] = elements * amplitudes[:-1]
    m_values = (n_atoms - 2 * np.arange(n_atoms + 1)) / 2
    return (
        (raised + lowered) / 2,
        (raised - lowered) / 2j,
        m_values * amplitudes,
    )


@dataclass(frozen=True)
class SpinMoments:
    """
    First and second moments of the collective spin.

    ``second[a, b]`` is the symmetrized moment ⟨{J_a, J_b}⟩/2.
    """

    n_atoms: int
    mean: np.ndarray
    jplus: complex
    second: np.ndarray

    def variance(self, direction):
        """Variance of the spin component along a unit vector."""
        direction = np.asarray(direction, dtype=float)
        spread = np.einsum("...a,ab,...b->...", direction, self.second, direction)
        return spread - np.einsum("...a,a->...", direction, self.mean) ** 2

    def var_jphi(self, phi):
        """Variance of J_φ = sin φ J_y + cos φ J_z."""
        phi = np.asarray(phi, dtype=float)
        direction = np.stack([np.zeros_like(phi), np.sin(phi), np.cos(phi)], axis=-1)
        return self.variance(direction)


def spin_moments(state):
    """
    Collective spin moments of a symmetric state.

    Parameters
    ----------
    state : :class:`torsionlab.manybody.DickeState`
        The state.

    Returns
    -------
    moments : :class:`torsionlab.manybody.SpinMoments`
    """
    amplitudes = state.amplitudes
    n_atoms = state.n_atoms
    jplus = np.vdot(amplitudes[:-1], _ladder_elements(n_atoms) * amplitudes[1:])
    vectors = _apply_spin(amplitudes, n_atoms)
    mean = np.array([np.vdot(amplitudes, v).real for v in vectors])
    second = np.array([[np.vdot(va, vb).real for vb in vectors] for va in vectors])
    return SpinMoments(n_atoms=n_atoms, mean=mean, jplus=complex(jplus), second=second)


def jplus_closed(n_atoms, chi, t, bloch):
    """
    Closed form ⟨J₊⟩ = (N/2)(x + iy)[cos χt + i z sin χt]^{N-1} after twisting.

    Parameters
    ----------
    n_atoms : int
        Number of atoms.
    chi : float
        Twisting strength.
    t : float
        Time.
    bloch : array
        Bloch vector (x, y, z) of the single-atom state the product started in.

    Returns
    -------
    jplus : complex
    """
    x, y, z = bloch
    base = np.cos(chi * t) + 1j * z * np.sin(chi * t)
    return complex(0.5 * n_atoms * (x + 1j * y) * base ** (n_atoms - 1))


def _cos_power(angle, power):
    """cos(angle)**power through logarithms, keeping the sign."""
    cosine = np.cos(angle)
    sign = np.where((cosine < 0) & (power % 2 == 1), -1.0, 1.0)
    with np.errstate(divide="ignore"):
        return sign * np.exp(power * np.log(np.abs(cosine)))


def _squeezing_terms(n_atoms, chi, t, pairs):
    """Coefficients of sin²φ and sin 2φ in Var(J_φ), scaled by ``pairs``."""
    power = n_atoms - 2
    sin_term = pairs / 8 * (1 - _cos_power(2 * chi * t, power))
    cross = pairs / 4 * _cos_power(chi * t, power) * np.sin(chi * t)
    return sin_term, cross


def var_jphi(n_atoms, chi, t, phi, finite=False):
    """
    Closed form of Var(J_φ) for a twisted coherent state along x.

    The large-N form scales the twisting terms by N². With ``finite=True``
    they are scaled by N(N - 1), which is exact for any N. The large-N value
    V exceeds the exact one by (V - N/4)/N, so its relative error reaches
    (1/ξ² - 1)/(N - 1) in the squeezed direction (ξ² = 4 Var/N).

    Parameters
    ----------
    n_atoms : int
        Number of atoms N.
    chi : float
        Twisting strength.
    t : float
        Time.
    phi : float or array
        Angle in the yz plane (φ = 0 is J_z).
    finite : bool
        Use the exact N(N - 1) scaling instead of N².

    Returns
    -------
    variance : float or array
    """
    phi = np.asarray(phi, dtype=float)
    pairs = n_atoms * (n_atoms - 1) if finite else n_atoms**2
    sin_term, cross = _squeezing_terms(n_atoms, chi, t, pairs)
    return n_atoms / 4 + sin_term * np.sin(phi) ** 2 + cross * np.sin(2 * phi)


def var_jphi_exact(n_atoms, chi, t, phi):
    """
    Var(J_φ) from the exact Dicke-basis moments (same setting as var_jphi).
    """
    state = evolve_ku(dicke_coherent(n_atoms, np.pi / 2, 0), chi, t)
    return spin_moments(state).var_jphi(phi)


@dataclass(frozen=True)
class Squeezing:
    """Minimum of Var(J_φ), where it happens, and the ratio 4 Var/N."""

    variance: float
    phi: float
    ratio: float


def optimal_squeezing(n_atoms, chi, t):
    """
    Most squeezed direction in the yz plane according to the closed form.

    Returns
    -------
    squeezing : :class:`torsionlab.manybody.Squeezing`
    """
    offset = n_atoms / 4
    sin_term, cross = _squeezing_terms(n_atoms, chi, t, n_atoms**2)
    # offset + sin_term sin²φ + cross sin 2φ = mean + amplitude cos(2φ - angle)
    mean = offset + sin_term / 2
    amplitude = np.hypot(sin_term / 2, cross)
    angle = np.arctan2(cross, -sin_term / 2)
    phi = np.mod((angle + np.pi) / 2, np.pi)
    variance = mean - amplitude
    return Squeezing(
        variance=float(variance), phi=float(phi), ratio=float(4 * variance / n_atoms)
    )


def mean_field_error(n_atoms, g, t, theta, phi):
    """
    Distance between the exact rescaled collective spin and the torsion limit.

    The twisting strength is χ = 2g/N. The exact Bloch vector is
    R = (2/N)⟨J⟩ and the mean-field one is the z-torsion rotation of the
    initial single-atom Bloch vector.

    Parameters
    ----------
    n_atoms : int
        Number of atoms, at least 2.
    g : float
        Torsion strength.
    t : float
        Time.
    theta, phi : float
        Angles of the initial coherent state.

    Returns
    -------
    epsilon : float
    """
    if n_atoms < 2:
        raise ValueError(f"Need at least 2 atoms but got {n_atoms}.")
    chi = 2 * g / n_atoms
    state = evolve_ku(dicke_coherent(n_atoms, theta, phi), chi, t)
    exact = 2 * spin_moments(state).mean / n_atoms
    initial = coherent_amplitudes(theta, phi).bloch
    limit = z_torsion_closed(initial, g, t)
    return float(np.linalg.norm(exact - limit))


def error_bound(n_atoms, t, c, t_ent):
    """Model-error bound c (e^{t/t_ent} - 1)/N."""
    return c * np.expm1(np.asarray(t) / t_ent) / np.asarray(n_atoms)


@dataclass(frozen=True)
class ErrorFit:
    """Least-squares fit of the model-error bound to measured errors."""

    samples: np.ndarray
    c: float
    t_ent: float
    residual: float


def fit_error_bound(samples):
    """
    Fit ε ≈ c (e^{t/t_ent} - 1)/N to (N, t, ε) samples.

    Parameters
    ----------
    samples : array
        Rows of (N, t, ε). Needs at least 6 rows, N spanning a decade, and
        at least 2 distinct times.

    Returns
    -------
    fit : :class:`torsionlab.manybody.ErrorFit`
    """
    samples = np.asarray(samples, dtype=float)
    if samples.ndim != 2 or samples.shape[1] != 3 or samples.shape[0] < 6:
        raise ValueError(f"Need at least 6 rows of (N, t, epsilon): {samples.shape}")
    n_atoms, times, errors = samples.T
    if np.any(errors < 0) or np.any(n_atoms <= 0) or np.any(times <= 0):
        raise ValueError("Samples need positive N and t and nonnegative errors.")
    if n_atoms.max() < 10 * n_atoms.min():
        raise ValueError("Samples must span at least a decade in N.")
    if np.unique(times).size < 2:
        raise ValueError("Samples need at least 2 distinct times.")

    def model(inputs, c, t_ent):
        return error_bound(inputs[0], inputs[1], c, t_ent)

    t_guess = times.max()
    shape = error_bound(n_atoms, times, 1, t_guess)
    c_guess = max(np.dot(shape, errors) / np.dot(shape, shape), 1e-12)
    (c, t_ent), _ = curve_fit(
        model,
        np.vstack([n_atoms, times]),
        errors,
        p0=[c_guess, t_guess],
        bounds=([0, 1e-9], [np.inf, np.inf]),
    )
    residual = np.sqrt(np.mean((model((n_atoms, times), c, t_ent) - errors) ** 2))
    return ErrorFit(samples=samples, c=float(c), t_ent=float(t_ent), residual=residual)


def convergence_sweep(n_values, g, t, theta, phi, threads=None):
    """
    Mean-field error for each atom number (computed in parallel).

    Returns
    -------
    rows : array
        Rows of (N, t, ε).
    """
    errors = parallel_map(
        lambda n_atoms: mean_field_error(n_atoms, g, t, theta, phi),
        n_values,
        threads=threads,
    )
    return np.column_stack(
        [np.asarray(n_values, dtype=float), np.full(len(errors), t), errors]
    )


def _popcounts(n_qubits):
    """Number of qubits in state 1 for every computational basis index."""
    indices = np.arange(2**n_qubits)
    return np.array([bin(i).count("1") for i in indices])


def dicke_to_statevector(state):
    """
    Full 2^N statevector of a symmetric state (N ≤ 12).

    The first qubit is the most significant bit of the basis index.
    """
    n_atoms = state.n_atoms
    if n_atoms > MAX_STATEVECTOR_ATOMS:
        raise ValueError(
            f"Full statevectors are limited to {MAX_STATEVECTOR_ATOMS} atoms "
            f"but got {n_atoms}."
        )
    ones = _popcounts(n_atoms)
    weights = np.exp(-0.5 * _log_binomial(n_atoms, ones))
    return state.amplitudes[ones] * weights


def _symmetric_factor(amplitudes, keep):
    """
    Factor B with ρ = B B† for the reduced state of ``keep`` qubits.

    Works on stacks of Dicke amplitudes (last axis is k).
    """
    n_atoms = amplitudes.shape[-1] - 1
    ones = _popcounts(keep)[:, np.newaxis]
    rest = np.arange(n_atoms - keep + 1)[np.newaxis, :]
    log_weights = _log_binomial(n_atoms - keep, rest) - _log_binomial(
        n_atoms, ones + rest
    )
    weights = np.exp(0.5 * log_weights)
    return amplitudes[..., ones + rest] * weights


def _compress(factor):
    """Square factor with the same F F† (R† from the QR of F†) when F is wide."""
    if factor.shape[-1] <= factor.shape[-2]:
        return factor
    upper = np.linalg.qr(np.swapaxes(factor.conj(), -1, -2), mode="r")
    return np.swapaxes(upper.conj(), -1, -2)


def _statevector_factor(statevector, keep):
    """Factor B with ρ = B B† for the first ``keep`` qubits of statevectors."""
    statevector = np.asarray(statevector, dtype=complex)
    matrix = statevector.reshape(statevector.shape[:-1] + (2**keep, -1))
    return _compress(matrix)


def _n_qubits(statevector):
    size = np.shape(statevector)[-1]
    n_qubits = int(round(np.log2(size)))
    if 2**n_qubits != size:
        raise ValueError(f"Statevector length {size} is not a power of 2.")
    return n_qubits


def reduced_density(state, keep):
    """
    Reduced density matrix of the first ``keep`` qubits (1 or 2).

    Parameters
    ----------
    state : :class:`torsionlab.manybody.DickeState` or array
        A symmetric state (closed-form path, any N) or a full statevector of
        at most 12 qubits.
    keep : int
        Number of qubits kept.

    Returns
    -------
    rho : array
        The ``2**keep`` square density matrix.
    """
    if keep not in (1, 2):
        raise ValueError(f"Can only keep 1 or 2 qubits but got {keep}.")
    if isinstance(state, DickeState):
        if keep > state.n_atoms:
            raise ValueError(f"Cannot keep {keep} qubits of {state.n_atoms}.")
        factor = _symmetric_factor(state.amplitudes, keep)
    else:
        n_qubits = _n_qubits(state)
        if n_qubits > MAX_STATEVECTOR_ATOMS or keep > n_qubits:
            raise ValueError(f"Cannot keep {keep} qubits of a {n_qubits} qubit state.")
        factor = _statevector_factor(state, keep)
    return factor @ factor.conj().T


@dataclass(frozen=True)
class Concurrence:
    """Concurrence C, tangle τ = C², and the λ values in decreasing order."""

    concurrence: float
    tangle: float
    lambdas: np.ndarray


def _concurrence_from_factor(factor):
    """
    Concurrence of ρ = F F† for stacks of 4 x r factors.

    The λ values are the singular values of F^T (σ^y ⊗ σ^y) F, which avoids
    square roots of tiny eigenvalues of ρρ̃.
    """
    factor = _compress(factor)
    spin_flipped = np.swapaxes(factor, -1, -2) @ SIGMA_YY @ factor
    values = np.linalg.svd(spin_flipped, compute_uv=False)
    lambdas = np.zeros(values.shape[:-1] + (4,))
    count = min(values.shape[-1], 4)
    lambdas[..., :count] = values[..., :count]
    delta = lambdas[..., 0] - lambdas[..., 1:].sum(axis=-1)
    concurrence = np.maximum(delta, 0)
    return concurrence, lambdas


def concurrence(rho):
    """
    Concurrence and tangle of a two-qubit density matrix.

    Parameters
    ----------
    rho : array
        The 4x4 density matrix.

    Returns
    -------
    result : :class:`torsionlab.manybody.Concurrence`

    Raises
    ------
    ValueError
        If ρ has an eigenvalue below -1e-10. For positive semidefinite ρ the
        matrix T = ρρ̃ is similar to √ρ ρ̃ √ρ and so has no negative
        eigenvalue either. Any ρ that gives T a negative eigenvalue is
        therefore rejected by this check.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"Expected a 4x4 density matrix but got {rho.shape}.")
    values, vectors = np.linalg.eigh((rho + rho.conj().T) / 2)
    if values.min() < -1e-10:
        raise ValueError(f"Density matrix has a negative eigenvalue {values.min()}.")
    factor = vectors * np.sqrt(np.clip(values, 0, None))
    value, lambdas = _concurrence_from_factor(factor)
    return Concurrence(
        concurrence=float(value), tangle=float(value**2), lambdas=lambdas
    )


@dataclass(frozen=True)
class SymmetricThreeQubit:
    """
    Amplitudes on |000⟩, |111⟩, |W⟩ (one qubit in 1) and |V⟩ (two in 1).
    """

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        norm = sum(abs(i) ** 2 for i in (self.a, self.b, self.c, self.d))
        if abs(norm - 1) > EPS_NORM:
            raise ValueError(f"Three-qubit state is not normalized (norm² = {norm}).")

    @property
    def dicke(self):
        """The same state as a Dicke state of 3 atoms."""
        return DickeState(np.array([self.a, self.c, self.d, self.b], dtype=complex))


def random_symmetric_three(rng, size=None):
    """
    Random symmetric three-qubit amplitudes (a, b, c, d).

    Returns a :class:`torsionlab.manybody.SymmetricThreeQubit` if ``size`` is
    None, otherwise an array of shape ``(size, 4)``.
    """
    shape = (4,) if size is None else (size, 4)
    amplitudes = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    amplitudes /= np.linalg.norm(amplitudes, axis=-1, keepdims=True)
    if size is None:
        return SymmetricThreeQubit(*amplitudes)
    return amplitudes


def _monogamy_terms(amplitudes):
    """
    Every quantity of the three-qubit monogamy identity for stacks of (a, b, c, d).
    """
    a, b, c, d = np.moveaxis(amplitudes, -1, 0)
    root3 = np.sqrt(3)
    ones, zeros = np.ones_like(a), np.zeros_like(a)
    # Basis order |00⟩, |01⟩, |10⟩, |11⟩ and |Ψ+⟩ = (|01⟩ + |10⟩)/√2
    bell = np.sqrt(2 / 3) / np.sqrt(2)

    def _state(on00, on11, on_bell):
        return np.stack([on00 * ones, on_bell * bell, on_bell * bell, on11 * ones], -1)

    vec_a = _state(a, d / root3, c)
    vec_b = _state(c / root3, b, d)
    vec_c = _state(d.conj() / root3, a.conj(), -c.conj())
    vec_d = _state(b.conj(), c.conj() / root3, -d.conj())

    def _overlap2(left, right):
        return np.abs(np.sum(left.conj() * right, axis=-1)) ** 2

    overlap_sum = (
        _overlap2(vec_a, vec_c)
        + _overlap2(vec_a, vec_d)
        + _overlap2(vec_b, vec_c)
        + _overlap2(vec_b, vec_d)
    )
    abs2 = {name: np.abs(value) ** 2 for name, value in zip("abcd", (a, b, c, d))}
    expanded = (
        2 * abs2["a"] * abs2["b"]
        + 4 / 3 * (abs2["a"] * abs2["d"] + abs2["b"] * abs2["c"])
        + 2 / 9 * abs2["c"] * abs2["d"]
        + 4 / 9 * (abs2["c"] ** 2 + abs2["d"] ** 2)
        - 4
        / 3
        * np.real(
            a * b * c.conj() * d.conj()
            + 2 / root3 * (a * c.conj() ** 2 * d + b * c * d.conj() ** 2)
        )
    )
    rho1_00 = abs2["a"] + 2 / 3 * abs2["c"] + 1 / 3 * abs2["d"]
    rho1_11 = abs2["b"] + 1 / 3 * abs2["c"] + 2 / 3 * abs2["d"]
    rho1_01 = a * c.conj() / root3 + 2 / 3 * c * d.conj() + b.conj() * d / root3
    factored = 2 * rho1_00 * rho1_11 - 2 * np.abs(rho1_01) ** 2
    dicke = np.stack([a, c, d, b], axis=-1)
    factor = _symmetric_factor(dicke, 2)
    rho12 = factor @ np.swapaxes(factor.conj(), -1, -2)
    flipped = SIGMA_YY @ rho12.conj() @ SIGMA_YY
    trace_t = np.real(np.trace(rho12 @ flipped, axis1=-2, axis2=-1))
    rho1 = np.trace(rho12.reshape(rho12.shape[:-2] + (2, 2, 2, 2)), axis1=-3, axis2=-1)
    det_rho1 = np.real(np.linalg.det(rho1))
    value, _ = _concurrence_from_factor(factor)
    return {
        "lhs": 2 * value**2,
        "rhs": 4 * det_rho1,
        "overlap_sum": overlap_sum,
        "expanded": expanded,
        "factored": factored,
        "trace_t": trace_t,
        "twice_det": 2 * det_rho1,
    }


def _identity_residual(terms):
    """Largest spread between the equal sides of the monogamy identity."""
    sides = np.stack(
        [
            terms[name]
            for name in ("overlap_sum", "expanded", "factored", "trace_t", "twice_det")
        ]
    )
    return sides.max(axis=0) - sides.min(axis=0)


@dataclass(frozen=True)
class MonogamyReport:
    """Both sides of τ12 + τ13 ≤ 4 det ρ1 and the identity residual."""

    lhs: float
    rhs: float
    identity_residual: float

    @property
    def holds(self):
        """True if the monogamy inequality holds to 1e-10."""
        return self.lhs <= self.rhs + 1e-10


def monogamy_check(state):
    """
    Check monogamy and the underlying algebraic identity for one state.

    Parameters
    ----------
    state : :class:`torsionlab.manybody.SymmetricThreeQubit`
        The normalized state.

    Returns
    -------
    report : :class:`torsionlab.manybody.MonogamyReport`
    """
    amplitudes = np.array([state.a, state.b, state.c, state.d], dtype=complex)
    terms = _monogamy_terms(amplitudes)
    return MonogamyReport(
        lhs=float(terms["lhs"]),
        rhs=float(terms["rhs"]),
        identity_residual=float(_identity_residual(terms)),
    )


def monogamy_sweep(n_samples, rng, batch=100_000):
    """
    Monogamy inequality and identity over random symmetric three-qubit states.

    Returns
    -------
    summary : dict
        Sample count, largest ``lhs - rhs``, and largest identity residual.
    """
    max_violation = -np.inf
    max_residual = 0.0
    done = 0
    while done < n_samples:
        size = min(batch, n_samples - done)
        terms = _monogamy_terms(random_symmetric_three(rng, size=size))
        max_violation = max(max_violation, float(np.max(terms["lhs"] - terms["rhs"])))
        max_residual = max(max_residual, float(np.max(_identity_residual(terms))))
        done += size
    return {
        "samples": int(n_samples),
        "max_violation": max_violation,
        "identity_max_residual": max_residual,
    }


def _check_tangle_atoms(n_atoms):
    if not 3 <= n_atoms <= MAX_STATEVECTOR_ATOMS:
        raise ValueError(
            f"Tangle checks need 3 to {MAX_STATEVECTOR_ATOMS} atoms but got {n_atoms}."
        )


def tangle_bound_check(state):
    """
    Pairwise tangle of a symmetric state and the bound 1/(N - 1).

    The pair density is built from the full statevector.

    Returns
    -------
    tangle : float
    bound : float
    """
    n_atoms = state.n_atoms
    _check_tangle_atoms(n_atoms)
    factor = _statevector_factor(dicke_to_statevector(state), 2)
    value, _ = _concurrence_from_factor(factor)
    return float(value**2), 1 / (n_atoms - 1)


def tangle_sweep(n_atoms, n_samples, rng):
    """
    Largest pairwise tangle over random symmetric states of N atoms.

    Returns
    -------
    summary : dict
    """
    _check_tangle_atoms(n_atoms)
    shape = (n_samples, n_atoms + 1)
    amplitudes = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    amplitudes /= np.linalg.norm(amplitudes, axis=1, keepdims=True)
    ones = _popcounts(n_atoms)
    statevectors = amplitudes[:, ones] * np.exp(-0.5 * _log_binomial(n_atoms, ones))
    value, _ = _concurrence_from_factor(_statevector_factor(statevectors, 2))
    bound = 1 / (n_atoms - 1)
    tangles = value**2
    return {
        "n_atoms": int(n_atoms),
        "samples": int(n_samples),
        "max_tangle": float(tangles.max()),
        "bound": bound,
        "max_excess": float(np.max(tangles - bound)),
    }

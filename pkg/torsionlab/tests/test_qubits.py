# Copyright (c) 2024 The torsionlab Developers.
# Distributed under the terms of the MIT License.
# SPDX-License-Identifier: MIT
"""
Test the qubit state conversions, norms, and the effective parameter map.
"""
import numpy as np
import numpy.testing as npt
import pytest
from scipy.integrate import quad

from ..qubits import (
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    bloch_from_density,
    bloch_from_state,
    check_bloch,
    check_hermitian,
    coherent_amplitudes,
    density_from_bloch,
    effective_params,
    optimal_measurement,
    overlap_integrals,
    state_from_bloch,
    trace_distance,
    trace_norm,
)
from ..utils import make_rng


def random_hermitian(rng, size):
    "Random complex Hermitian matrix"
    matrix = rng.standard_normal((size, size)) + 1j * rng.standard_normal((size, size))
    return (matrix + matrix.conj().T) / 2


def test_density_from_bloch_known_states():
    "Check the maximally mixed state, a pole, and the +x state"
    npt.assert_allclose(density_from_bloch([0, 0, 0]), np.eye(2) / 2)
    npt.assert_allclose(density_from_bloch([0, 0, 1]), np.diag([1, 0]))
    npt.assert_allclose(density_from_bloch([1, 0, 0]), [[0.5, 0.5], [0.5, 0.5]])


def test_density_from_bloch_matches_eigendecomposition():
    "A pure state density matrix has eigenvalues 0 and 1 along ±r"
    r = np.array([0.6, -0.0, 0.8])
    values, vectors = np.linalg.eigh(density_from_bloch(r))
    npt.assert_allclose(values, [0, 1], atol=1e-14)
    npt.assert_allclose(bloch_from_state(vectors[:, 1]), r, atol=1e-14)


def test_bloch_from_density_known_states():
    "Check I/2 and |1><1|"
    npt.assert_allclose(bloch_from_density(np.eye(2) / 2), [0, 0, 0])
    npt.assert_allclose(bloch_from_density(np.diag([0, 1])), [0, 0, -1])


def test_bloch_density_round_trip():
    "Converting to a density matrix and back is the identity inside the ball"
    rng = make_rng(0)
    directions = rng.standard_normal((1000, 3))
    directions /= np.linalg.norm(directions, axis=1)[:, np.newaxis]
    vectors = directions * rng.uniform(size=(1000, 1)) ** (1 / 3)
    for r in vectors:
        rho = density_from_bloch(r)
        npt.assert_allclose(np.trace(rho), 1, atol=1e-12)
        npt.assert_allclose(bloch_from_density(rho), r, atol=1e-12)


def test_bloch_from_density_matches_pauli_traces():
    "The components are tr(rho sigma)"
    rho = density_from_bloch([0.1, -0.3, 0.5])
    expected = [np.trace(rho @ sigma).real for sigma in (SIGMA_X, SIGMA_Y, SIGMA_Z)]
    npt.assert_allclose(bloch_from_density(rho), expected, atol=1e-15)


def test_check_bloch_rejects_invalid_vectors():
    "Outside the ball, wrong shape, or non-finite"
    with pytest.raises(ValueError, match="outside the Bloch ball"):
        check_bloch([1, 1, 0])
    with pytest.raises(ValueError, match="3 components"):
        check_bloch([1, 0])
    with pytest.raises(ValueError, match="Non-finite"):
        check_bloch([np.nan, 0, 0])
    with pytest.raises(ValueError, match="Non-finite"):
        density_from_bloch([np.inf, 0, 0])
    # Within the tolerance is fine
    check_bloch([1 + 1e-10, 0, 0])


def test_check_hermitian_rejects_non_hermitian():
    "An upper triangular matrix is not Hermitian"
    with pytest.raises(ValueError, match="not Hermitian"):
        check_hermitian([[1, 1], [0, 1]])
    with pytest.raises(ValueError, match="square"):
        check_hermitian(np.ones((2, 3)))
    with pytest.raises(ValueError, match="not Hermitian"):
        bloch_from_density([[1, 1], [0, 0]])


def test_state_from_bloch_fixes_the_phase():
    "The amplitude on |0> is real and nonnegative and the state points along r"
    rng = make_rng(1)
    for direction in rng.standard_normal((50, 3)):
        r = direction / np.linalg.norm(direction)
        psi = state_from_bloch(r)
        assert psi[0].imag == 0
        assert psi[0].real >= 0
        npt.assert_allclose(np.linalg.norm(psi), 1, atol=1e-14)
        npt.assert_allclose(bloch_from_state(psi), r, atol=1e-12)


def test_trace_norm_simple_cases():
    "Zero matrix and two antipodal pure states"
    assert trace_norm(np.zeros((3, 3))) == 0
    difference = density_from_bloch([0, 0, 1]) - density_from_bloch([0, 0, -1])
    npt.assert_allclose(trace_norm(difference), 2)
    npt.assert_allclose(trace_distance(np.diag([1, 0]), np.diag([0, 1])), 1)


def test_trace_norm_of_qubit_difference_is_bloch_distance():
    "For qubits the trace norm of a difference is |ra - rb|"
    rng = make_rng(2)
    for _ in range(20):
        r_a, r_b = rng.uniform(-0.5, 0.5, size=(2, 3))
        difference = density_from_bloch(r_a) - density_from_bloch(r_b)
        npt.assert_allclose(trace_norm(difference), np.linalg.norm(r_a - r_b))


@pytest.mark.parametrize("size", [2, 4, 8])
def test_trace_norm_variational_form(size):
    "The optimal measurement attains the trace norm of traceless matrices"
    rng = make_rng(size)
    for _ in range(20):
        matrix = random_hermitian(rng, size)
        matrix -= np.trace(matrix) / size * np.eye(size)
        projector = optimal_measurement(matrix)
        npt.assert_allclose(
            2 * np.trace(projector @ matrix).real, trace_norm(matrix), rtol=1e-10
        )
        # Projector eigenvalues are 0 or 1
        values = np.linalg.eigvalsh(projector)
        npt.assert_allclose(values * (1 - values), 0, atol=1e-12)


def test_optimal_measurement_beats_random_measurements():
    "No other 0 <= E <= I gives a larger tr(EX)"
    rng = make_rng(3)
    matrix = random_hermitian(rng, 4)
    best = np.trace(optimal_measurement(matrix) @ matrix).real
    for _ in range(200):
        vectors = np.linalg.qr(random_hermitian(rng, 4))[0]
        weights = rng.uniform(size=4)
        effect = vectors @ np.diag(weights) @ vectors.conj().T
        assert np.trace(effect @ matrix).real <= best + 1e-12


def test_coherent_amplitudes():
    "Known amplitudes and the Bloch vector of a coherent state"
    amplitudes = coherent_amplitudes(0, 1.234)
    npt.assert_allclose([amplitudes.psi0, abs(amplitudes.psi1)], [1, 0], atol=1e-15)
    amplitudes = coherent_amplitudes(np.pi / 2, 0)
    npt.assert_allclose([amplitudes.psi0, amplitudes.psi1], [2**-0.5, 2**-0.5])
    theta, phi = np.pi / 3, np.pi / 5
    expected = [
        np.sin(theta) * np.cos(phi),
        np.sin(theta) * np.sin(phi),
        np.cos(theta),
    ]
    npt.assert_allclose(coherent_amplitudes(theta, phi).bloch, expected, atol=1e-14)
    with pytest.raises(ValueError, match="Polar angle"):
        coherent_amplitudes(4, 0)


def test_overlap_integrals_match_quadrature():
    "Radial quadrature of normalized Gaussian modes"
    length_a, length_b = 1.0, 1.7

    def mode(r, length):
        return (np.pi * length**2) ** -0.75 * np.exp(-(r**2) / (2 * length**2))

    single = quad(
        lambda r: 4 * np.pi * r**2 * mode(r, length_a) * mode(r, length_b), 0, np.inf
    )[0]
    double = quad(
        lambda r: 4 * np.pi * r**2 * mode(r, length_a) ** 2 * mode(r, length_b) ** 2,
        0,
        np.inf,
    )[0]
    npt.assert_allclose(overlap_integrals(length_a, length_b), [single, double])
    npt.assert_allclose(overlap_integrals(1.3, 1.3)[0], 1)


def test_effective_params_symmetric_setting():
    "Equal traps and intra-species interactions give no longitudinal field"
    params = effective_params(1, 1, 0.2, 0.1, 0.1, 0.05, 1, 1000)
    assert params.bz == 0
    npt.assert_allclose(params.bx, 0.1)
    npt.assert_allclose(params.chi, params.gamma0 + params.gamma1 - params.gamma_prime)
    # Independent evaluation of the overlap integral for the torsion
    length = 1.0
    gamma = 0.1 / (2 * (2 * np.pi * length**2) ** 1.5)
    gamma_prime = 0.05 / (2 * np.pi * length**2) ** 1.5
    npt.assert_allclose(params.g, 1000 * (2 * gamma - gamma_prime) / 2)
    assert params.g > 0


def test_effective_params_torsion_vanishes():
    "Torsion cancels when the inter-species coupling matches the intra ones"
    params = effective_params(2, 2, 1, 0.3, 0.3, 0.3, 1.5, 500)
    npt.assert_allclose(params.g, 0, atol=1e-10)
    npt.assert_allclose(params.chi, 0, atol=1e-12)


def test_effective_params_rejects_unphysical_inputs():
    "Non-positive mass or frequencies"
    with pytest.raises(ValueError, match="mass"):
        effective_params(1, 1, 1, 0.1, 0.1, 0.1, 0, 10)
    with pytest.raises(ValueError, match="omega1"):
        effective_params(1, -1, 1, 0.1, 0.1, 0.1, 1, 10)

# Copyright (c) 2024 The torsionlab Developers.
# Distributed under the terms of the MIT License.
# SPDX-License-Identifier: MIT
"""
Test the Dicke-basis dynamics, squeezing, convergence, and entanglement checks.
"""
from functools import reduce

import numpy as np
import numpy.testing as npt
import pytest

from ..manybody import (
    DickeState,
    SymmetricThreeQubit,
    concurrence,
    convergence_sweep,
    dicke_coherent,
    dicke_to_statevector,
    error_bound,
    evolve_ku,
    fit_error_bound,
    jplus_closed,
    mean_field_error,
    monogamy_check,
    monogamy_sweep,
    optimal_squeezing,
    random_dicke,
    random_symmetric_three,
    reduced_density,
    spin_moments,
    tangle_bound_check,
    tangle_sweep,
    var_jphi,
    var_jphi_exact,
)
from ..qubits import SIGMA_X, SIGMA_Y, SIGMA_Z, coherent_amplitudes, density_from_bloch
from ..utils import make_rng


def collective_spin(n_atoms):
    "Full tensor-product J_x, J_y, J_z of N qubits"
    operators = []
    for sigma in (SIGMA_X, SIGMA_Y, SIGMA_Z):
        total = np.zeros((2**n_atoms, 2**n_atoms), dtype=complex)
        for site in range(n_atoms):
            factors = [sigma if i == site else np.eye(2) for i in range(n_atoms)]
            total += reduce(np.kron, factors)
        operators.append(total / 2)
    return operators


def test_dicke_coherent_small_cases():
    "A single qubit and the binomial expansion for two atoms"
    theta, phi = 1.1, 0.4
    npt.assert_allclose(
        dicke_coherent(1, theta, phi).amplitudes,
        [np.cos(theta / 2), np.exp(1j * phi) * np.sin(theta / 2)],
    )
    npt.assert_allclose(
        dicke_coherent(2, np.pi / 2, 0).amplitudes, [0.5, 2**-0.5, 0.5], atol=1e-15
    )
    npt.assert_allclose(dicke_coherent(5, 0, 0).amplitudes, np.eye(6)[0])
    with pytest.raises(ValueError, match="at least 1"):
        dicke_coherent(0, 1, 1)


def test_dicke_coherent_overlaps():
    "⟨F|F'⟩ = ⟨ψ|ψ'⟩^N for coherent states"
    rng = make_rng(10)
    for n_atoms in (3, 17, 50):
        (theta_a, theta_b), (phi_a, phi_b) = rng.uniform(0, np.pi, (2, 2))
        single_a = coherent_amplitudes(theta_a, phi_a)
        single_b = coherent_amplitudes(theta_b, phi_b)
        single = np.vdot(
            [single_a.psi0, single_a.psi1], [single_b.psi0, single_b.psi1]
        )
        overlap = np.vdot(
            dicke_coherent(n_atoms, theta_a, phi_a).amplitudes,
            dicke_coherent(n_atoms, theta_b, phi_b).amplitudes,
        )
        npt.assert_allclose(overlap, single**n_atoms, atol=1e-12)


def test_dicke_coherent_large_n():
    "Log-space weights keep very large states normalized"
    state = dicke_coherent(5000, np.pi / 3, 0.2)
    assert np.all(np.isfinite(state.amplitudes))
    npt.assert_allclose(np.linalg.norm(state.amplitudes), 1, atol=1e-12)
    moments = spin_moments(state)
    npt.assert_allclose(
        moments.mean, 2500 * coherent_amplitudes(np.pi / 3, 0.2).bloch, rtol=1e-9
    )


def test_dicke_state_validation():
    "Unnormalized or too short amplitudes"
    with pytest.raises(ValueError, match="not normalized"):
        DickeState(np.array([1, 1]))
    with pytest.raises(ValueError, match="shape"):
        DickeState(np.array([1]))
    state = random_dicke(20, make_rng(11))
    assert state.n_atoms == 20
    npt.assert_allclose(state.m_values[[0, -1]], [10, -10])


def test_evolve_ku_is_unitary():
    "Identity at zero time, norm and J_z preserved otherwise"
    state = random_dicke(30, make_rng(12))
    npt.assert_allclose(evolve_ku(state, 0.3, 0).amplitudes, state.amplitudes)
    evolved = evolve_ku(state, 0.3, 2.1)
    npt.assert_allclose(np.linalg.norm(evolved.amplitudes), 1, atol=1e-15)
    npt.assert_allclose(
        spin_moments(evolved).mean[2], spin_moments(state).mean[2], atol=1e-13
    )


def test_spin_moments_of_coherent_state():
    "Minimum uncertainty state along x"
    n_atoms = 40
    moments = spin_moments(dicke_coherent(n_atoms, np.pi / 2, 0))
    npt.assert_allclose(moments.mean, [n_atoms / 2, 0, 0], atol=1e-12)
    npt.assert_allclose(
        np.diag(moments.second), [n_atoms**2 / 4, n_atoms / 4, n_atoms / 4], atol=1e-10
    )
    npt.assert_allclose(moments.var_jphi([0, np.pi / 2]), n_atoms / 4, atol=1e-10)
    npt.assert_allclose(moments.jplus, moments.mean[0] + 1j * moments.mean[1])


@pytest.mark.parametrize("n_atoms", [2, 4, 6])
def test_spin_moments_match_statevector(n_atoms):
    "Dicke-basis moments agree with the full tensor-product simulation"
    state = evolve_ku(random_dicke(n_atoms, make_rng(n_atoms)), 0.7, 1.3)
    psi = dicke_to_statevector(state)
    npt.assert_allclose(np.linalg.norm(psi), 1, atol=1e-14)
    spins = collective_spin(n_atoms)
    mean = [np.vdot(psi, spin @ psi).real for spin in spins]
    second = [[np.vdot(a @ psi, b @ psi).real for b in spins] for a in spins]
    moments = spin_moments(state)
    npt.assert_allclose(moments.mean, mean, atol=1e-12)
    npt.assert_allclose(moments.second, second, atol=1e-12)
    jplus = np.vdot(psi, (spins[0] + 1j * spins[1]) @ psi)
    npt.assert_allclose(moments.jplus, jplus, atol=1e-12)


def test_jplus_closed_simple_cases():
    "Zero time and an equatorial initial state"
    n_atoms, chi = 50, 0.01
    bloch = np.array([0.6, 0, 0.8])
    npt.assert_allclose(jplus_closed(n_atoms, chi, 0, bloch), 25 * 0.6)
    npt.assert_allclose(
        jplus_closed(n_atoms, chi, 3, [1, 0, 0]), 25 * np.cos(chi * 3) ** 49
    )


@pytest.mark.parametrize(
    "n_atoms,t,theta,phi",
    [(400, 0.7, np.arccos(0.8), 0), (64, 1.0, 1.2, 0.3), (2048, 0.5, np.pi / 3, 2)],
)
def test_jplus_closed_matches_dicke(n_atoms, t, theta, phi):
    "Closed form ⟨J+⟩ equals the exact twisted coherent state"
    g = 1
    chi = 2 * g / n_atoms
    state = evolve_ku(dicke_coherent(n_atoms, theta, phi), chi, t)
    bloch = coherent_amplitudes(theta, phi).bloch
    npt.assert_allclose(
        spin_moments(state).jplus, jplus_closed(n_atoms, chi, t, bloch), rtol=1e-10
    )


def test_var_jphi_limits():
    "No squeezing at t = 0 and J_z never changes"
    phi = np.linspace(0, np.pi, 9)
    npt.assert_allclose(var_jphi(300, 0.01, 0, phi), 75)
    npt.assert_allclose(var_jphi(300, 0.01, 4.2, 0), 75)


CHI_T_GRID = [0.005, 0.01, 0.02, 0.03, 0.05, 0.1]


@pytest.mark.parametrize("chi_t", CHI_T_GRID)
def test_var_jphi_finite_matches_exact_moments(chi_t):
    "The N(N - 1) closed form reproduces the Dicke-basis variance"
    n_atoms, chi = 200, 1e-3
    phi = np.linspace(0, np.pi, 32, endpoint=False)
    finite = var_jphi(n_atoms, chi, chi_t / chi, phi, finite=True)
    exact = var_jphi_exact(n_atoms, chi, chi_t / chi, phi)
    npt.assert_allclose(finite, exact, rtol=1e-12)


@pytest.mark.parametrize("chi_t", CHI_T_GRID)
def test_var_jphi_large_n_error(chi_t):
    "The N² form is off by (V - N/4)/N, most in the squeezed direction"
    n_atoms, chi = 200, 1e-3
    phi = np.linspace(0, np.pi, 32, endpoint=False)
    large_n = var_jphi(n_atoms, chi, chi_t / chi, phi)
    exact = var_jphi_exact(n_atoms, chi, chi_t / chi, phi)
    npt.assert_allclose(
        large_n - exact, (large_n - n_atoms / 4) / n_atoms, rtol=1e-8, atol=1e-8
    )
    relative = np.abs(large_n - exact) / exact
    ratio = 4 * exact / n_atoms
    npt.assert_allclose(
        relative, np.abs(1 / ratio - 1) / (n_atoms - 1), rtol=1e-8, atol=1e-12
    )
    assert relative.max() < 0.3
    # Away from the squeezed direction the error is O(1/N)
    assert np.all(relative[ratio > 0.5] < 5 / n_atoms)


def test_var_jphi_large_n_error_exceeds_one_over_n():
    "Near the optimal twisting the N² form misses by more than 5/N"
    n_atoms, chi, t = 200, 1e-3, 30
    phi = np.linspace(0, np.pi, 32, endpoint=False)
    large_n = var_jphi(n_atoms, chi, t, phi)
    exact = var_jphi_exact(n_atoms, chi, t, phi)
    assert np.max(np.abs(large_n - exact) / exact) > 0.05


def test_optimal_squeezing():
    "The minimum over φ is attained and below the coherent state variance"
    n_atoms, chi, t = 200, 1e-3, 10
    squeezing = optimal_squeezing(n_atoms, chi, t)
    phi = np.linspace(0, np.pi, 2001)
    values = var_jphi(n_atoms, chi, t, phi)
    assert squeezing.variance <= values.min() + 1e-9
    npt.assert_allclose(var_jphi(n_atoms, chi, t, squeezing.phi), squeezing.variance)
    assert 0 <= squeezing.phi < np.pi
    assert 0 < squeezing.ratio < 1
    npt.assert_allclose(squeezing.ratio, 4 * squeezing.variance / n_atoms)


def test_mean_field_error_vanishes_at_zero_time():
    "Exact and mean-field states start together"
    assert mean_field_error(100, 1, 0, np.pi / 3, np.pi / 5) < 1e-12
    with pytest.raises(ValueError, match="at least 2"):
        mean_field_error(1, 1, 1, 1, 1)


def test_mean_field_error_scales_as_one_over_n():
    "Doubling N halves the error and the log-log slope is -1"
    n_values = [128, 256, 512, 1024, 2048]
    rows = convergence_sweep(n_values, 1, 1, np.pi / 3, np.pi / 5, threads=2)
    npt.assert_allclose(rows[:, 0], n_values)
    npt.assert_allclose(rows[:, 1], 1)
    errors = rows[:, 2]
    ratios = errors[1:] / errors[:-1]
    assert np.all((ratios >= 0.4) & (ratios <= 0.6))
    slope = np.polyfit(np.log(n_values), np.log(errors), 1)[0]
    assert slope == pytest.approx(-1, abs=0.05)


def test_fit_error_bound_recovers_constants():
    "Synthetic data from the bound gives back c and t_ent"
    n_atoms, times = np.meshgrid([100, 300, 1000, 3000], [0.5, 1, 2, 3])
    errors = error_bound(n_atoms, times, 0.3, 2.0)
    samples = np.column_stack([n_atoms.ravel(), times.ravel(), errors.ravel()])
    fit = fit_error_bound(samples)
    assert fit.c == pytest.approx(0.3, rel=0.01)
    assert fit.t_ent == pytest.approx(2.0, rel=0.01)
    assert fit.residual < 1e-6
    # Linear regime of the bound
    npt.assert_allclose(error_bound(1, 1e-4, 0.3, 2.0), 0.3 * 1e-4 / 2.0, rtol=1e-4)


def test_fit_error_bound_rejects_degenerate_samples():
    "Too few rows, a narrow range of N, or a single time"
    with pytest.raises(ValueError, match="6 rows"):
        fit_error_bound(np.ones((5, 3)))
    narrow = [[n, t, 0.1] for n in (100, 200, 400) for t in (1, 2)]
    with pytest.raises(ValueError, match="decade"):
        fit_error_bound(narrow)
    single_time = [[n, 1, 0.1] for n in (10, 30, 100, 300, 1000, 3000)]
    with pytest.raises(ValueError, match="distinct times"):
        fit_error_bound(single_time)


def test_concurrence_known_states():
    "Product, Bell, and W-pair states"
    product = np.zeros((4, 4))
    product[0, 0] = 1
    assert concurrence(product).concurrence == pytest.approx(0, abs=1e-12)
    bell = np.array([1, 0, 0, 1]) / np.sqrt(2)
    result = concurrence(np.outer(bell, bell))
    assert result.concurrence == pytest.approx(1)
    assert result.tangle == pytest.approx(1)
    assert np.all(np.diff(result.lambdas) <= 1e-12)
    psi_plus = np.array([0, 1, 1, 0]) / np.sqrt(2)
    w_pair = product / 3 + 2 / 3 * np.outer(psi_plus, psi_plus)
    assert concurrence(w_pair).tangle == pytest.approx(4 / 9)


def test_concurrence_rejects_invalid_matrices():
    "Wrong shape or negative eigenvalues"
    with pytest.raises(ValueError, match="4x4"):
        concurrence(np.eye(2))
    with pytest.raises(ValueError, match="negative eigenvalue"):
        concurrence(np.diag([1.5, -0.5, 0, 0]))
    # ρρ̃ = diag(-0.75, 0, 0, -0.75) for this matrix
    flip = np.kron(SIGMA_Y, SIGMA_Y)
    unphysical = np.diag([1.5, 0, 0, -0.5])
    spin_flipped = flip @ unphysical.conj() @ flip
    assert np.linalg.eigvals(unphysical @ spin_flipped).real.min() < -1e-10
    with pytest.raises(ValueError, match="negative eigenvalue"):
        concurrence(unphysical)


def test_reduced_density_product_and_ghz():
    "Coherent states reduce to pure states and GHZ-like states to diagonals"
    theta, phi = 0.9, 2.3
    rho = reduced_density(dicke_coherent(7, theta, phi), 1)
    npt.assert_allclose(
        rho, density_from_bloch(coherent_amplitudes(theta, phi).bloch), atol=1e-14
    )
    a, b = 0.6, 0.8j
    ghz = DickeState(np.array([a, 0, 0, b]))
    npt.assert_allclose(reduced_density(ghz, 1), np.diag([0.36, 0.64]), atol=1e-15)


@pytest.mark.parametrize("n_atoms", [2, 3, 7, 12])
def test_reduced_density_paths_agree(n_atoms):
    "Closed-form symmetric and full statevector partial traces"
    state = random_dicke(n_atoms, make_rng(20 + n_atoms))
    psi = dicke_to_statevector(state)
    for keep in (1, 2):
        npt.assert_allclose(
            reduced_density(state, keep), reduced_density(psi, keep), atol=1e-12
        )
        npt.assert_allclose(np.trace(reduced_density(state, keep)), 1, atol=1e-12)


def test_reduced_density_errors():
    "Unsupported numbers of kept qubits and oversized statevectors"
    with pytest.raises(ValueError, match="1 or 2"):
        reduced_density(random_dicke(4, make_rng(0)), 3)
    with pytest.raises(ValueError, match="Cannot keep"):
        reduced_density(DickeState(np.array([1, 0])), 2)
    with pytest.raises(ValueError, match="power of 2"):
        reduced_density(np.ones(6) / np.sqrt(6), 1)
    with pytest.raises(ValueError, match="limited to 12"):
        dicke_to_statevector(random_dicke(13, make_rng(0)))


def test_monogamy_known_states():
    "A product state and the saturating W state"
    report = monogamy_check(SymmetricThreeQubit(1, 0, 0, 0))
    assert report.lhs == pytest.approx(0, abs=1e-12)
    assert report.rhs == pytest.approx(0, abs=1e-12)
    w_state = monogamy_check(SymmetricThreeQubit(0, 0, 1, 0))
    assert w_state.lhs == pytest.approx(8 / 9)
    assert w_state.rhs == pytest.approx(8 / 9)
    assert w_state.holds
    assert w_state.identity_residual < 1e-12
    with pytest.raises(ValueError, match="not normalized"):
        SymmetricThreeQubit(1, 1, 0, 0)


def test_monogamy_matches_explicit_partial_traces():
    "Both sides agree with concurrence and determinants of reduced matrices"
    rng = make_rng(30)
    for _ in range(20):
        state = random_symmetric_three(rng)
        report = monogamy_check(state)
        rho12 = reduced_density(state.dicke, 2)
        rho1 = reduced_density(state.dicke, 1)
        npt.assert_allclose(report.lhs, 2 * concurrence(rho12).tangle, atol=1e-12)
        npt.assert_allclose(report.rhs, 4 * np.linalg.det(rho1).real, atol=1e-12)
        assert report.holds
        assert report.identity_residual < 1e-12


def test_monogamy_sweep():
    "Inequality and identity over many random states"
    summary = monogamy_sweep(100_000, make_rng(31), batch=30_000)
    assert summary["samples"] == 100_000
    assert summary["max_violation"] <= 1e-10
    assert summary["identity_max_residual"] <= 1e-12


def test_tangle_bound_w_state():
    "The W state has pairwise tangle 4/9 below the bound 1/2"
    tangle, bound = tangle_bound_check(DickeState(np.array([0, 1, 0, 0])))
    assert tangle == pytest.approx(4 / 9)
    assert bound == 0.5


def test_tangle_bound_of_twisted_state():
    "A slightly twisted coherent state is entangled within the bound"
    state = evolve_ku(dicke_coherent(8, np.pi / 2, 0), 0.1, 1)
    tangle, bound = tangle_bound_check(state)
    assert 0 < tangle <= bound + 1e-10


@pytest.mark.parametrize("n_atoms", [3, 6, 12])
def test_tangle_sweep(n_atoms):
    "Random symmetric states never exceed the pairwise tangle bound"
    summary = tangle_sweep(n_atoms, 300, make_rng(n_atoms))
    assert summary["n_atoms"] == n_atoms
    npt.assert_allclose(summary["bound"], 1 / (n_atoms - 1))
    assert summary["max_excess"] <= 1e-10
    assert 0 <= summary["max_tangle"] <= summary["bound"] + 1e-10


def test_tangle_atoms_out_of_range():
    "Only 3 to 12 atoms"
    with pytest.raises(ValueError, match="3 to 12"):
        tangle_sweep(2, 10, make_rng(0))
    with pytest.raises(ValueError, match="3 to 12"):
        tangle_bound_check(random_dicke(13, make_rng(0)))

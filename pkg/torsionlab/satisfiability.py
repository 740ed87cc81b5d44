# Copyright (c) 2024 The torsionlab Developers.
# Distributed under the terms of the MIT License.
# SPDX-License-Identifier: MIT
"""
Reduction of 3SAT to the discrimination of two nearly identical qubit states.

An oracle circuit over a uniform superposition, followed by postselection,
leaves an ancilla qubit in a state that depends on the formula only through
the number s of satisfying assignments. The state equals |0⟩ exactly when the
formula is unsatisfiable, so telling it apart from |0⟩ decides satisfiability.
"""
from dataclasses import dataclass

import numpy as np

from .qubits import bloch_from_state, state_from_bloch
from .torsion import viviani_gate, viviani_inputs
from .utils import parallel_map

MAX_VARIABLES = 24
MAX_CIRCUIT_VARIABLES = 14
MAX_CLAUSE_LENGTH = 3
COUNT_BLOCK = 2**16
HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)


class FormulaError(ValueError):
    """Raised for malformed or unsupported CNF formulas."""


@dataclass(frozen=True)
class CnfFormula:
    """
    A CNF formula with at most three literals per clause.

    Literals are nonzero integers: ``i`` is variable i and ``-i`` its negation.
    """

    n_vars: int
    clauses: tuple = ()

    def __post_init__(self):
        if not 1 <= self.n_vars <= MAX_VARIABLES:
            raise FormulaError(
                f"Number of variables must be between 1 and {MAX_VARIABLES} "
                f"but got {self.n_vars}."
            )
        clauses = tuple(tuple(clause) for clause in self.clauses)
        for clause in clauses:
            if not clause:
                raise FormulaError("Empty clauses are not allowed.")
            if len(clause) > MAX_CLAUSE_LENGTH:
                raise FormulaError(
                    f"Clause {clause} has more than {MAX_CLAUSE_LENGTH} literals."
                )
            for literal in clause:
                if literal == 0 or abs(literal) > self.n_vars:
                    raise FormulaError(
                        f"Literal {literal} in clause {clause} is out of range "
                        f"for {self.n_vars} variables."
                    )
        object.__setattr__(self, "clauses", clauses)

    def evaluate(self, bits):
        """
        Value of the formula for each row of an assignment matrix.

        Parameters
        ----------
        bits : array
            Boolean array of shape ``(n, n_vars)``. Column ``i - 1`` holds
            variable ``i``.

        Returns
        -------
        values : array
            Boolean array of shape ``(n,)``.
        """
        values = np.ones(bits.shape[0], dtype=bool)
        for clause in self.clauses:
            satisfied = np.zeros_like(values)
            for literal in clause:
                column = bits[:, abs(literal) - 1]
                satisfied |= column if literal > 0 else ~column
            values &= satisfied
        return values


def _assignment_bits(start, stop, n_vars):
    """Assignments start..stop-1 as rows of bits (bit i-1 is variable i)."""
    indices = np.arange(start, stop, dtype=np.int64)
    return ((indices[:, np.newaxis] >> np.arange(n_vars)) & 1).astype(bool)


def count_assignments(formula, threads=None):
    """
    Count satisfying assignments by brute force over all 2^k assignments.

    Parameters
    ----------
    formula : :class:`torsionlab.satisfiability.CnfFormula`
        The formula.
    threads : int or None
        Number of workers for the blocks of assignments.

    Returns
    -------
    count : int
    """
    total = 2**formula.n_vars

    def _count_block(start):
        stop = min(start + COUNT_BLOCK, total)
        bits = _assignment_bits(start, stop, formula.n_vars)
        return int(np.count_nonzero(formula.evaluate(bits)))

    return sum(parallel_map(_count_block, range(0, total, COUNT_BLOCK), threads))


def pad_formula(formula, k_min=4):
    """Add unused variables so the formula has at least ``k_min`` of them."""
    return CnfFormula(max(formula.n_vars, k_min), formula.clauses)


def random_formula(n_vars, n_clauses, rng):
    """
    Random formula with up to 3 distinct variables per clause and random signs.
    """
    width = min(MAX_CLAUSE_LENGTH, n_vars)
    clauses = []
    for _ in range(n_clauses):
        variables = rng.choice(n_vars, size=width, replace=False) + 1
        signs = rng.choice([-1, 1], size=width)
        clauses.append(tuple(int(i) for i in variables * signs))
    return CnfFormula(n_vars, tuple(clauses))


@dataclass(frozen=True)
class AncillaState:
    """
    Normalized ancilla amplitudes on |0⟩ and |1⟩ after postselection.

    ``probability`` is the chance that the postselection succeeded.
    """

    amplitudes: np.ndarray
    probability: float


def _check_count(n_vars, count):
    if not 0 <= count <= 2**n_vars:
        raise ValueError(
            f"Satisfying count must be between 0 and 2^{n_vars} but got {count}."
        )


def postselect_probability(n_vars, count):
    """
    Probability ((2^k - s)² + s²)/2^{2k} of postselecting the all-zero register.
    """
    _check_count(n_vars, count)
    size = 2**n_vars
    return ((size - count) ** 2 + count**2) / size**2


def out_state(n_vars, count):
    """
    Ancilla state ((2^k - s)|0⟩ + s|1⟩)/sqrt((2^k - s)² + s²).

    Parameters
    ----------
    n_vars : int
        Number of variables k.
    count : int
        Number of satisfying assignments s.

    Returns
    -------
    state : :class:`torsionlab.satisfiability.AncillaState`
    """
    _check_count(n_vars, count)
    unnormalized = np.array([2**n_vars - count, count], dtype=float)
    return AncillaState(
        amplitudes=unnormalized / np.linalg.norm(unnormalized),
        probability=postselect_probability(n_vars, count),
    )


def overlap_ab(n_vars, count):
    """
    Overlap ⟨out(0)|out(s)⟩ = (2^k - s)/sqrt((2^k - s)² + s²).
    """
    return float(out_state(n_vars, count).amplitudes[0])


def overlap_ab_asymptotic(n_vars, count):
    """Leading behavior 1 - (s²/2) 2^{-2k} of the overlap."""
    return 1 - 0.5 * count**2 * 4.0 ** (-n_vars)


def bloch_angle(n_vars, count):
    """Angle 2 arccos|⟨a|b⟩| between the Bloch vectors of out(0) and out(s)."""
    _check_count(n_vars, count)
    return float(2 * np.arctan2(count, 2**n_vars - count))


def _apply_hadamards(state, n_qubits):
    """Hadamard on each of the first ``n_qubits`` axes of a tensor state."""
    for axis in range(n_qubits):
        state = np.moveaxis(np.tensordot(HADAMARD, state, axes=([1], [axis])), 0, axis)
    return state


def statevector_circuit(formula):
    """
    Simulate the reduction circuit and postselect the first register on zero.

    The circuit applies H^⊗k to |0…0⟩|0⟩, the oracle |x⟩|y⟩ → |x⟩|y ⊕ f(x)⟩,
    and H^⊗k again.

    Parameters
    ----------
    formula : :class:`torsionlab.satisfiability.CnfFormula`
        Formula with at most 14 variables.

    Returns
    -------
    ancilla : :class:`torsionlab.satisfiability.AncillaState`
    """
    n_vars = formula.n_vars
    if n_vars > MAX_CIRCUIT_VARIABLES:
        raise FormulaError(
            f"Circuit simulation is limited to {MAX_CIRCUIT_VARIABLES} variables "
            f"but the formula has {n_vars}."
        )
    state = np.zeros((2,) * (n_vars + 1), dtype=complex)
    state[(0,) * (n_vars + 1)] = 1
    state = _apply_hadamards(state, n_vars)
    # Flattened index x has qubit 0 as its most significant bit
    flat = state.reshape(2**n_vars, 2)
    bits = _assignment_bits(0, 2**n_vars, n_vars)[:, ::-1]
    satisfied = formula.evaluate(bits)
    flat[satisfied] = flat[satisfied][:, ::-1]
    state = _apply_hadamards(flat.reshape((2,) * (n_vars + 1)), n_vars)
    ancilla = state[(0,) * n_vars]
    probability = float(np.sum(np.abs(ancilla) ** 2))
    return AncillaState(
        amplitudes=ancilla.real / np.sqrt(probability), probability=probability
    )


def _angle_from(reference, state):
    """Bloch angle between two normalized state vectors (accurate near 0)."""
    overlap = np.vdot(reference, state)
    orthogonal = np.linalg.norm(state - overlap * reference)
    return float(2 * np.arctan2(orthogonal, abs(overlap)))


def _phase_fixed(state, reference):
    """Multiply ``state`` by the phase that makes ⟨reference|state⟩ real ≥ 0."""
    overlap = np.vdot(reference, state)
    if abs(overlap) == 0:
        return state
    return state * np.exp(-1j * np.angle(overlap))


def orientation_unitary(source_a, source_b, target_a, target_b):
    """
    Unitary mapping one pair of pure states onto another with the same overlap.

    Works in the orthonormal frame of the bisectors (a + b) and (a - b) of each
    pair, after choosing phases that make the overlaps real and positive.

    Parameters
    ----------
    source_a, source_b : array
        The known pair of 2-component state vectors.
    target_a, target_b : array
        The pair to map onto.

    Returns
    -------
    unitary : array
        A 2x2 unitary U with U a ∝ a′ and U b ∝ b′.
    """

    def _frame(state_a, state_b):
        state_a = np.asarray(state_a, dtype=complex)
        state_a = state_a / np.linalg.norm(state_a)
        state_b = np.asarray(state_b, dtype=complex)
        state_b = _phase_fixed(state_b / np.linalg.norm(state_b), state_a)
        plus, minus = state_a + state_b, state_a - state_b
        if np.linalg.norm(minus) < 1e-15:
            raise ValueError("Cannot orient a pair of identical states.")
        return (
            plus / np.linalg.norm(plus),
            minus / np.linalg.norm(minus),
            np.vdot(state_a, state_b).real,
        )

    source_plus, source_minus, source_overlap = _frame(source_a, source_b)
    target_plus, target_minus, target_overlap = _frame(target_a, target_b)
    if abs(source_overlap - target_overlap) > 1e-9:
        raise ValueError(
            f"Pairs have different overlaps ({source_overlap} and {target_overlap})."
        )
    return np.outer(target_plus, source_plus.conj()) + np.outer(
        target_minus, source_minus.conj()
    )


@dataclass(frozen=True)
class ReductionReport:
    """Everything measured while deciding a formula through discrimination."""

    n_vars: int
    count: int
    probability: float
    theta: float
    overlap: float
    verdict: str
    bit: int
    t_gate: float
    final: np.ndarray
    pole_distance: float
    mode: str

    @property
    def agrees(self):
        """True if the verdict matches the brute-force count."""
        return (self.verdict == "SAT") == (self.count > 0)

    def to_dict(self):
        """Plain representation for JSON output."""
        return {
            "n_vars": self.n_vars,
            "s": self.count,
            "postselect_probability": self.probability,
            "theta_ab": self.theta,
            "overlap_ab": self.overlap,
            "verdict": self.verdict,
            "verdict_bit": self.bit,
            "t_V": self.t_gate,
            "final_r": [float(i) for i in self.final],
            "pole_distance": self.pole_distance,
            "mode": self.mode,
        }


def solve_sat_via_qsd(formula, g, mode="circuit", tol=1e-10, threads=None):
    """
    Decide satisfiability by discriminating the postselected ancilla from |0⟩.

    The known pair {out(0), out(s)} is rotated onto the Viviani gate inputs and
    only the prepared ancilla is fed through the gate. An unsatisfiable formula
    prepares out(0) itself, so the gate is then designed for {out(0), out(1)}.

    Parameters
    ----------
    formula : :class:`torsionlab.satisfiability.CnfFormula`
        The formula (padded to at least 4 variables).
    g : float
        Torsion strength of the gate.
    mode : str
        ``"circuit"`` simulates the oracle circuit (up to 14 variables).
        ``"analytic"`` builds the ancilla from the closed form.
    tol : float
        Integrator tolerance.
    threads : int or None
        Workers for the brute-force count.

    Returns
    -------
    report : :class:`torsionlab.satisfiability.ReductionReport`
    """
    if mode not in ("circuit", "analytic"):
        raise ValueError(f"Unknown mode '{mode}'. Use 'circuit' or 'analytic'.")
    formula = pad_formula(formula)
    n_vars = formula.n_vars
    count = count_assignments(formula, threads=threads)
    if mode == "circuit":
        ancilla = statevector_circuit(formula)
    else:
        ancilla = out_state(n_vars, count)
    prepared = ancilla.amplitudes.astype(complex)
    reference = out_state(n_vars, 0).amplitudes.astype(complex)
    partner = prepared
    if _angle_from(reference, prepared) < 1e-12:
        partner = out_state(n_vars, 1).amplitudes.astype(complex)
    theta = _angle_from(reference, partner)
    inputs = viviani_inputs(theta)
    unitary = orientation_unitary(
        reference, partner, state_from_bloch(inputs.r_a), state_from_bloch(inputs.r_b)
    )
    r_in = bloch_from_state(unitary @ prepared)
    gate = viviani_gate(r_in, theta, g, tol=tol)
    return ReductionReport(
        n_vars=n_vars,
        count=count,
        probability=ancilla.probability,
        theta=theta,
        overlap=float(abs(np.vdot(reference, prepared))),
        verdict="SAT" if gate.bit == 1 else "UNSAT",
        bit=gate.bit,
        t_gate=gate.t_gate,
        final=gate.final,
        pole_distance=gate.pole_distance,
        mode=mode,
    )

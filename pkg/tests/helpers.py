"""Shared test utilities: basis-state preparation and dense assembly."""

import math

import numpy as np

from tsp_qsearch import HoboLayout, StateVector, apply_gate, new_state
from tsp_qsearch.circuits import h, x


def prepare_main_basis(layout: HoboLayout, main_bits: str, marker_minus: bool = True) -> StateVector:
    """Full-width state: main register in `main_bits`, ancillas zero.

    With marker_minus the marker qubit is put into (|0> - |1>)/sqrt(2),
    the configuration every phase-kickback block expects.
    """
    state = new_state(layout.width)
    for qubit, ch in enumerate(main_bits):
        if ch == "1":
            apply_gate(state, x(qubit))
    if marker_minus:
        apply_gate(state, x(layout.marker))
        apply_gate(state, h(layout.marker))
    return state


def main_amplitudes(state: StateVector, layout: HoboLayout) -> np.ndarray:
    """Main-register amplitudes of a state of the form main x |0..0> x |->.

    Reads the marker=0 slice and scales by sqrt(2); valid only when the
    ancillas are exactly zero and the marker exactly |-> (the caller
    asserts that separately where it matters).
    """
    n_anc = layout.width - layout.main_qubits
    block = state.amplitudes.reshape(2**layout.main_qubits, 2**n_anc)
    return block[:, 0] * math.sqrt(2)


def off_workspace_mass(state: StateVector, layout: HoboLayout) -> float:
    """Largest amplitude magnitude outside the anc=0, marker in {0,1} slices."""
    n_anc = layout.width - layout.main_qubits
    block = np.abs(state.amplitudes.reshape(2**layout.main_qubits, 2**n_anc))
    mask = np.ones(2**n_anc, dtype=bool)
    mask[0] = False  # anc zero, marker 0
    mask[1] = False  # anc zero, marker 1
    return float(block[:, mask].max())


def gates_unitary(gates, width: int) -> np.ndarray:
    """Dense matrix of a gate sequence, assembled column by column."""
    dim = 2**width
    unitary = np.zeros((dim, dim), dtype=complex)
    for col in range(dim):
        state = StateVector(width, np.zeros(dim, dtype=complex))
        state.amplitudes[col] = 1.0
        for gate in gates:
            apply_gate(state, gate)
        unitary[:, col] = state.amplitudes
    return unitary


def align_global_phase(actual: np.ndarray, reference: np.ndarray) -> np.ndarray:
    """Rescale `actual` by a unit phase so it best matches `reference`."""
    flat_a, flat_r = actual.ravel(), reference.ravel()
    pivot = np.argmax(np.abs(flat_r))
    phase = flat_a[pivot] / flat_r[pivot]
    phase /= abs(phase)
    return actual / phase


def onehot_expansion(bits: str, n: int) -> np.ndarray:
    """n x n visit matrix of a bitstring: row = slot, column = city code."""
    k = max(1, (n - 1).bit_length())
    matrix = np.zeros((n, n))
    for slot in range(n):
        code = int(bits[slot * k : (slot + 1) * k], 2)
        if code < n:
            matrix[slot, code] = 1.0
    return matrix

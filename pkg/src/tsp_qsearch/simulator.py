"""Dense state-vector simulation of the gate set in `circuits`.

Amplitudes are stored as one complex128 array of length 2**width, in
C order with qubit 0 as the most significant bit of the array index, so
a printed basis index reads exactly like the layout's bitstring (visit
slot 1 leftmost).  Gates act in place through strided views; nothing is
ever promoted to a dense matrix.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .circuits import Circuit, Gate, GateKind
from .core import CapacityError, HoboLayout

# 2**22 complex128 amplitudes = 64 MiB; enough for the 4-city layout
# (width 15) with headroom, and still desk scale.
MAX_WIDTH = 22

_INV_SQRT2 = 1.0 / math.sqrt(2.0)


@dataclass
class StateVector:
    width: int
    amplitudes: np.ndarray

    def copy(self) -> StateVector:
        return StateVector(self.width, self.amplitudes.copy())

    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))


@dataclass
class Distribution:
    """Probabilities over main-register bitstrings."""

    probs: dict[str, float]


def new_state(width: int) -> StateVector:
    """The all-zeros basis state on `width` qubits."""
    if not 1 <= width <= MAX_WIDTH:
        raise CapacityError(f"width must be in 1..{MAX_WIDTH}, got {width}")
    amps = np.zeros(2**width, dtype=np.complex128)
    amps[0] = 1.0
    return StateVector(width, amps)


def _axis_index(width: int, assignments: dict[int, int]) -> tuple:
    index: list = [slice(None)] * width
    for qubit, value in assignments.items():
        index[qubit] = value
    return tuple(index)


def apply_gate(state: StateVector, gate: Gate) -> StateVector:
    """Apply one gate in place and return the state."""
    w = state.width
    if any(q >= w for q in gate.qubits()):
        raise ValueError(f"gate {gate} outside width {w}")
    view = state.amplitudes.reshape((2,) * w)
    kind = gate.kind

    if kind is GateKind.H:
        idx0 = _axis_index(w, {gate.target: 0})
        idx1 = _axis_index(w, {gate.target: 1})
        lo = view[idx0].copy()
        hi = view[idx1]
        view[idx0] = (lo + hi) * _INV_SQRT2
        view[idx1] = (lo - hi) * _INV_SQRT2
    elif kind in (GateKind.X, GateKind.CX, GateKind.MCX):
        on = {c: 1 for c in gate.controls}
        idx0 = _axis_index(w, {**on, gate.target: 0})
        idx1 = _axis_index(w, {**on, gate.target: 1})
        tmp = view[idx0].copy()
        view[idx0] = view[idx1]
        view[idx1] = tmp
    elif kind is GateKind.MCP:
        on = {c: 1 for c in gate.controls}
        idx = _axis_index(w, {**on, gate.target: 1})
        view[idx] *= cmath.exp(1j * gate.phase)
    else:  # pragma: no cover - enum is closed
        raise ValueError(f"unknown gate kind {kind}")
    return state


def run(circuit: Circuit, state: StateVector) -> StateVector:
    """Apply every gate in order, in place."""
    if circuit.layout.width != state.width:
        raise ValueError(
            f"circuit width {circuit.layout.width} != state width {state.width}"
        )
    for gate in circuit.gates:
        apply_gate(state, gate)
    assert abs(state.norm_sq() - 1.0) < 1e-10, "state norm drifted"
    return state


def main_distribution(state: StateVector, layout: HoboLayout) -> Distribution:
    """Marginal probabilities of the main register over all ancillas."""
    if state.width != layout.width:
        raise ValueError(f"state width {state.width} != layout width {layout.width}")
    n_main = layout.main_qubits
    probs = np.abs(state.amplitudes) ** 2
    marginal = probs.reshape(2**n_main, -1).sum(axis=1)
    return Distribution(
        {format(i, f"0{n_main}b"): float(p) for i, p in enumerate(marginal)}
    )


def sample(dist: Distribution, shots: int, seed: int) -> dict[str, int]:
    """Multinomial counts over the distribution, deterministic per seed."""
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    keys = list(dist.probs)
    pvals = np.asarray([dist.probs[k] for k in keys], dtype=float)
    pvals = pvals / pvals.sum()
    rng = np.random.default_rng(seed)
    counts = rng.multinomial(shots, pvals)
    return {k: int(c) for k, c in zip(keys, counts) if c > 0}


def success_probability(dist: Distribution, targets) -> float:
    """Total probability mass on the target bitstrings."""
    targets = set(targets)
    if not targets:
        raise ValueError("targets must be non-empty")
    return float(sum(dist.probs.get(t, 0.0) for t in targets))

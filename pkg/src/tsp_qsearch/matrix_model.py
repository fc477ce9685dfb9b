"""Operator-level reference model of the cost-phase search.

Instead of gates, this module evolves a vector over an explicit tour
basis with the diagonal cost operator and the reflection about the
uniform feasible superposition.  It is the cross-check oracle for the
circuit path and the workhorse for sizes whose circuits are out of
reach of the dense simulator (the 5-city search space is 120 tours but
41 qubits).

Two basis modes exist: `subspace` spans only the n! feasible tours;
`fullspace` spans all 2**(n*k) bitstrings and acts trivially off the
feasible set, which is what the circuit realizes.

Cost values map to oracle angles in one of two conventions.  By
default the stored value is the angle, matching the circuit's cost
oracle gate for gate.  With ``rescale_costs`` set, the cost range is
mapped affinely onto [0, 2*pi], so the two extreme tours pick up phase
+1 while typical mid-range tours pick up roughly -1; that relative
phase of ~pi is what makes the Gaussian-cost search behave like a
textbook two-target amplitude amplification, and is the convention of
the five-city reference experiment.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    CapacityError,
    PhaseAssignment,
    bits_per_city,
    enumerate_feasible,
    gen_gaussian_phases,
)
from .simulator import Distribution

SUBSPACE = "subspace"
FULLSPACE = "fullspace"

# Fullspace operators are dense 2**(n*k) matrices; past n=4 they serve
# no purpose the subspace model doesn't.
MAX_FULLSPACE_CITIES = 4


@dataclass(frozen=True)
class SearchSpace:
    mode: str
    basis: tuple[str, ...]
    phases: PhaseAssignment
    rescale_costs: bool = False


@dataclass(frozen=True)
class ProbabilitySeries:
    """Success probabilities of the extreme tours per iteration count."""

    times: tuple[int, ...]
    p_min: tuple[float, ...]
    p_max: tuple[float, ...]
    p_combined: tuple[float, ...]


def subspace(phases: PhaseAssignment, rescale_costs: bool = False) -> SearchSpace:
    return SearchSpace(SUBSPACE, enumerate_feasible(phases.n), phases, rescale_costs)


def fullspace(phases: PhaseAssignment, rescale_costs: bool = False) -> SearchSpace:
    if phases.n > MAX_FULLSPACE_CITIES:
        raise CapacityError(
            f"fullspace mode supports n <= {MAX_FULLSPACE_CITIES}, got {phases.n}"
        )
    n_bits = phases.n * bits_per_city(phases.n)
    basis = tuple(format(i, f"0{n_bits}b") for i in range(2**n_bits))
    return SearchSpace(FULLSPACE, basis, phases, rescale_costs)


def oracle_angles(space: SearchSpace) -> dict[str, float]:
    """Per-tour oracle angle under the space's cost convention."""
    phases = space.phases.phases
    if not space.rescale_costs:
        return dict(phases)
    lo, hi = min(phases.values()), max(phases.values())
    return {b: 2 * math.pi * (w - lo) / (hi - lo) for b, w in phases.items()}


def _feasible_amplitudes(space: SearchSpace) -> np.ndarray:
    """Unit vector uniform over the feasible tours of the basis."""
    feasible = set(enumerate_feasible(space.phases.n))
    psi = np.array([1.0 if b in feasible else 0.0 for b in space.basis], dtype=complex)
    return psi / np.linalg.norm(psi)


def build_cost_operator(space: SearchSpace) -> np.ndarray:
    """Diagonal of the cost operator: e^{i w} on tours, 1 elsewhere."""
    angles = oracle_angles(space)
    return np.array(
        [np.exp(1j * angles[b]) if b in angles else 1.0 + 0.0j for b in space.basis]
    )


def build_diffusion_operator(space: SearchSpace) -> np.ndarray:
    """Dense reflection 2|psi0><psi0| - I about the feasible superposition."""
    psi0 = _feasible_amplitudes(space)
    return 2.0 * np.outer(psi0, psi0.conj()) - np.eye(len(space.basis))


def evolve(space: SearchSpace, t_max: int) -> ProbabilitySeries:
    """Iterate diffusion(cost(state)) and record the extreme-tour mass.

    The diffusion step uses the rank-1 identity D v = 2 psi0 <psi0|v> - v
    rather than a dense matrix; `build_diffusion_operator` exposes the
    equivalent operator for cross-checks.
    """
    if t_max < 0:
        raise ValueError(f"t_max must be non-negative, got {t_max}")
    min_idx = space.basis.index(space.phases.min_key)
    max_idx = space.basis.index(space.phases.max_key)
    cost_diag = build_cost_operator(space)
    psi0 = _feasible_amplitudes(space)

    psi = psi0.copy()
    p_min, p_max = [], []
    for _ in range(t_max + 1):
        p_min.append(float(np.abs(psi[min_idx]) ** 2))
        p_max.append(float(np.abs(psi[max_idx]) ** 2))
        psi = cost_diag * psi
        psi = 2.0 * psi0 * np.vdot(psi0, psi) - psi
    return ProbabilitySeries(
        times=tuple(range(t_max + 1)),
        p_min=tuple(p_min),
        p_max=tuple(p_max),
        p_combined=tuple(a + b for a, b in zip(p_min, p_max)),
    )


def first_peak(series: ProbabilitySeries) -> int:
    """First t where p_combined is at least its neighbours' values."""
    p = series.p_combined
    for t in range(len(p)):
        left_ok = t == 0 or p[t] >= p[t - 1]
        right_ok = t == len(p) - 1 or p[t] >= p[t + 1]
        if left_ok and right_ok:
            return series.times[t]
    raise ValueError("empty series")


def state_at(space: SearchSpace, t: int) -> np.ndarray:
    """State vector over the basis after t search iterations."""
    cost_diag = build_cost_operator(space)
    psi0 = _feasible_amplitudes(space)
    psi = psi0.copy()
    for _ in range(t):
        psi = cost_diag * psi
        psi = 2.0 * psi0 * np.vdot(psi0, psi) - psi
    return psi


def appendix_experiment(
    mu: float, sigma: float, seed: int, t_max: int = 10
) -> tuple[ProbabilitySeries, Distribution]:
    """Five-city Gaussian-cost search: series plus the peak histogram.

    Generates a seeded Gaussian cost dataset over the 120 tours,
    evolves the subspace model under the rescaled-cost convention, and
    returns the probability series together with the full tour
    distribution at the first local maximum of the combined
    extreme-tour mass.  Histogram keys are ordered by ascending cost.
    """
    phases = gen_gaussian_phases(5, mu, sigma, seed)
    space = subspace(phases, rescale_costs=True)
    series = evolve(space, t_max)
    peak_t = first_peak(series)
    psi = state_at(space, peak_t)
    by_phase = sorted(space.basis, key=lambda b: phases.phases[b])
    index_of = {b: i for i, b in enumerate(space.basis)}
    probs = {b: float(np.abs(psi[index_of[b]]) ** 2) for b in by_phase}
    return series, Distribution(probs)


def series_to_csv(series: ProbabilitySeries) -> str:
    """CSV text with header t,p_min,p_max,p_combined."""
    lines = ["t,p_min,p_max,p_combined"]
    for t, lo, hi, both in zip(series.times, series.p_min, series.p_max, series.p_combined):
        lines.append(f"{t},{lo!r},{hi!r},{both!r}")
    return "\n".join(lines) + "\n"

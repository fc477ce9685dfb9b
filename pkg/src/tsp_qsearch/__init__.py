"""Two-stage Grover search for the traveling salesman problem.

The first stage amplifies the uniform superposition of all feasible
(permutation) tours under a binary per-city encoding; the second stage
amplifies the extreme-cost tours with a diagonal cost-phase oracle and
a diffusion built from the first stage's preparation circuit.  A dense
state-vector simulator executes the circuits, and an operator-level
reference model cross-checks them.
"""

from .core import (
    CapacityError,
    DatasetError,
    HoboLayout,
    PhaseAssignment,
    Schedule,
    Tour,
    TspInstance,
    bits_per_city,
    builtin_phases,
    constraint_penalties,
    decode_bitstring,
    encode_tour,
    enumerate_feasible,
    eval_tour_cost,
    gen_gaussian_phases,
    load_phases,
    optimal_q1,
    optimal_q2,
    phases_from_json,
    phases_to_json,
    save_phases,
)
from .circuits import (
    Circuit,
    CircuitMetrics,
    Gate,
    GateKind,
    build_cost_oracle_r2,
    build_d2,
    build_diffusion_d1,
    build_g1,
    build_oracle_r1,
    build_two_step,
    build_uniqueness_suboracle,
    build_validity_suboracle,
    circuit_to_text,
    invert_circuit,
    metrics,
)
from .simulator import (
    Distribution,
    StateVector,
    apply_gate,
    main_distribution,
    new_state,
    run,
    sample,
    success_probability,
)
from .matrix_model import (
    ProbabilitySeries,
    SearchSpace,
    appendix_experiment,
    build_cost_operator,
    build_diffusion_operator,
    evolve,
    first_peak,
    fullspace,
    oracle_angles,
    series_to_csv,
    state_at,
    subspace,
)

__all__ = [
    # core
    "CapacityError", "DatasetError", "HoboLayout", "PhaseAssignment",
    "Schedule", "Tour", "TspInstance", "bits_per_city", "builtin_phases",
    "constraint_penalties", "decode_bitstring", "encode_tour",
    "enumerate_feasible", "eval_tour_cost", "gen_gaussian_phases",
    "load_phases", "optimal_q1", "optimal_q2", "phases_from_json",
    "phases_to_json", "save_phases",
    # circuits
    "Circuit", "CircuitMetrics", "Gate", "GateKind",
    "build_cost_oracle_r2", "build_d2", "build_diffusion_d1", "build_g1",
    "build_oracle_r1", "build_two_step", "build_uniqueness_suboracle",
    "build_validity_suboracle", "circuit_to_text", "invert_circuit",
    "metrics",
    # simulator
    "Distribution", "StateVector", "apply_gate", "main_distribution",
    "new_state", "run", "sample", "success_probability",
    # matrix model
    "ProbabilitySeries", "SearchSpace", "appendix_experiment",
    "build_cost_operator", "build_diffusion_operator", "evolve",
    "first_peak", "fullspace", "oracle_angles", "series_to_csv",
    "state_at", "subspace",
]

__version__ = "0.1.0"

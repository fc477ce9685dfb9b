import math

import numpy as np
import pytest

from tsp_qsearch import (
    CapacityError,
    HoboLayout,
    PhaseAssignment,
    Schedule,
    appendix_experiment,
    build_cost_operator,
    build_cost_oracle_r2,
    build_diffusion_operator,
    build_two_step,
    builtin_phases,
    enumerate_feasible,
    evolve,
    first_peak,
    fullspace,
    gen_gaussian_phases,
    main_distribution,
    new_state,
    optimal_q1,
    optimal_q2,
    oracle_angles,
    run,
    series_to_csv,
    state_at,
    subspace,
)
from tsp_qsearch.matrix_model import ProbabilitySeries

from helpers import gates_unitary

PI = math.pi

# Values frozen from one explicit dense 6x6 matrix-vector product:
# psi1 = (2/6 J - I) diag(e^{iW}) psi0 with the bundled 3-city dataset.
N3_T1_P_MIN = 0.4853082390147468
N3_T1_P_MAX = 0.3784522873664112


class TestSearchSpaces:
    def test_subspace_basis_is_feasible_enumeration(self):
        space = subspace(builtin_phases(3))
        assert space.basis == enumerate_feasible(3)
        assert space.mode == "subspace"

    def test_fullspace_basis_is_every_bitstring(self):
        space = fullspace(builtin_phases(3))
        assert len(space.basis) == 64
        assert space.basis[:2] == ("000000", "000001")

    def test_fullspace_capacity(self):
        with pytest.raises(CapacityError):
            fullspace(gen_gaussian_phases(5, PI, 0.5, 1))

    def test_oracle_angles_default_to_stored_values(self):
        phases = builtin_phases(3)
        assert oracle_angles(subspace(phases)) == phases.phases

    def test_oracle_angles_rescaled_span_full_circle(self):
        phases = builtin_phases(3)
        angles = oracle_angles(subspace(phases, rescale_costs=True))
        assert angles[phases.min_key] == 0.0
        assert angles[phases.max_key] == pytest.approx(2 * PI)
        mid = [v for k, v in angles.items() if k not in (phases.min_key, phases.max_key)]
        assert all(0.0 < v < 2 * PI for v in mid)


class TestCostOperator:
    def test_near_zero_phases_give_identity(self):
        keys = enumerate_feasible(3)
        tiny = PhaseAssignment(3, {b: 1e-12 * (i + 1) for i, b in enumerate(keys)})
        diag = build_cost_operator(subspace(tiny))
        assert np.max(np.abs(diag - 1.0)) < 1e-9

    def test_reference_dataset_extremes(self):
        space = subspace(builtin_phases(3))
        diag = build_cost_operator(space)
        basis = list(space.basis)
        assert diag[basis.index("000110")] == pytest.approx(np.exp(1j * PI / 2))
        assert diag[basis.index("100100")] == pytest.approx(np.exp(1j * 3 * PI / 2))

    def test_fullspace_matches_circuit_cost_oracle(self):
        layout = HoboLayout.for_cities(3)
        phases = builtin_phases(3)
        built = gates_unitary(build_cost_oracle_r2(layout, phases).gates, layout.main_qubits)
        diag = build_cost_operator(fullspace(phases))
        assert np.max(np.abs(built - np.diag(diag))) < 1e-10


class TestDiffusionOperator:
    def test_fixes_uniform_feasible_state(self):
        space = subspace(builtin_phases(3))
        op = build_diffusion_operator(space)
        psi0 = np.full(6, 1 / math.sqrt(6))
        assert np.max(np.abs(op @ psi0 - psi0)) < 1e-12

    def test_squares_to_identity(self):
        for space in (subspace(builtin_phases(3)), fullspace(builtin_phases(3))):
            op = build_diffusion_operator(space)
            assert np.max(np.abs(op @ op - np.eye(len(space.basis)))) < 1e-10

    def test_subspace_entries_from_outer_product(self):
        op = build_diffusion_operator(subspace(builtin_phases(3)))
        expected = 2 / 6 * np.ones((6, 6)) - np.eye(6)
        assert np.max(np.abs(op - expected)) < 1e-12


class TestEvolve:
    def test_uniform_start(self):
        series = evolve(subspace(builtin_phases(4)), 0)
        assert series.p_min[0] == pytest.approx(1 / 24, abs=1e-12)
        assert series.p_max[0] == pytest.approx(1 / 24, abs=1e-12)

    def test_three_city_single_step_matches_dense_product(self):
        phases = builtin_phases(3)
        # independent dense arithmetic
        w = np.array([phases.phases[b] for b in enumerate_feasible(3)])
        psi0 = np.full(6, 1 / math.sqrt(6), dtype=complex)
        psi1 = (2 / 6 * np.ones((6, 6)) - np.eye(6)) @ (np.exp(1j * w) * psi0)
        assert abs(psi1[0]) ** 2 == pytest.approx(N3_T1_P_MIN, abs=1e-12)
        assert abs(psi1[5]) ** 2 == pytest.approx(N3_T1_P_MAX, abs=1e-12)

        series = evolve(subspace(phases), 1)
        assert series.p_min[1] == pytest.approx(N3_T1_P_MIN, abs=1e-12)
        assert series.p_max[1] == pytest.approx(N3_T1_P_MAX, abs=1e-12)
        assert series.p_combined[1] == pytest.approx(N3_T1_P_MIN + N3_T1_P_MAX, abs=1e-12)

    def test_five_city_rescaled_first_peak_in_window(self):
        phases = gen_gaussian_phases(5, PI, 0.5, 42)
        series = evolve(subspace(phases, rescale_costs=True), 10)
        assert 5 <= first_peak(series) <= 8

    @pytest.mark.parametrize("n", [3, 4])
    def test_subspace_and_fullspace_agree(self, n):
        phases = builtin_phases(n)
        sub = evolve(subspace(phases), 10)
        full = evolve(fullspace(phases), 10)
        for t in range(11):
            assert abs(sub.p_min[t] - full.p_min[t]) < 1e-10
            assert abs(sub.p_max[t] - full.p_max[t]) < 1e-10

    def test_norm_preserved_at_every_step(self):
        space = subspace(builtin_phases(4))
        for t in range(11):
            assert abs(np.linalg.norm(state_at(space, t)) - 1.0) < 1e-10

    def test_phase_shift_leaves_series_unchanged(self):
        base = builtin_phases(3)
        shifted = PhaseAssignment(3, {b: w + 0.3 for b, w in base.phases.items()})
        a = evolve(subspace(base), 10)
        b = evolve(subspace(shifted), 10)
        for t in range(11):
            assert abs(a.p_min[t] - b.p_min[t]) < 1e-10
            assert abs(a.p_max[t] - b.p_max[t]) < 1e-10
        assert first_peak(a) == first_peak(b)

    def test_rejects_negative_horizon(self):
        with pytest.raises(ValueError):
            evolve(subspace(builtin_phases(3)), -1)


class TestCircuitEquivalence:
    @pytest.mark.parametrize("n", [3, 4])
    def test_interior_iterations_agree_within_budget(self, n):
        # Endpoint t = 2*q2 is covered by the acceptance suite, where the
        # first stage's leakage amplification is documented.
        layout = HoboLayout.for_cities(n)
        phases = builtin_phases(n)
        q1, q2 = optimal_q1(n), optimal_q2(n, 2)
        reference = evolve(subspace(phases), 2 * q2)
        for t in range(2 * q2):
            circuit = build_two_step(layout, phases, Schedule(q1, t))
            state = run(circuit, new_state(layout.width))
            dist = main_distribution(state, layout)
            combined = dist.probs[phases.min_key] + dist.probs[phases.max_key]
            assert combined == pytest.approx(reference.p_combined[t], abs=1e-3)


class TestFirstPeak:
    def test_simple_interior_peak(self):
        series = ProbabilitySeries((0, 1, 2, 3), (0, 0, 0, 0), (0, 0, 0, 0), (0.1, 0.5, 0.4, 0.6))
        assert first_peak(series) == 1

    def test_monotone_rise_peaks_at_the_end(self):
        series = ProbabilitySeries((0, 1, 2), (0, 0, 0), (0, 0, 0), (0.1, 0.2, 0.3))
        assert first_peak(series) == 2

    def test_single_point(self):
        series = ProbabilitySeries((0,), (1.0,), (0.0,), (1.0,))
        assert first_peak(series) == 0


class TestAppendixExperiment:
    def test_peak_histogram_is_dominated_by_the_extreme_tours(self):
        phases = gen_gaussian_phases(5, PI, 0.5, 42)
        series, dist = appendix_experiment(PI, 0.5, 42)
        ranked = sorted(dist.probs, key=dist.probs.get, reverse=True)
        assert set(ranked[:2]) == {phases.min_key, phases.max_key}

    def test_peak_exceeds_uniform_baseline(self):
        series, _ = appendix_experiment(PI, 0.5, 42)
        assert series.p_combined[first_peak(series)] > 20 * (2 / 120)

    def test_deterministic_per_seed(self):
        series_a, dist_a = appendix_experiment(PI, 0.5, 42)
        series_b, dist_b = appendix_experiment(PI, 0.5, 42)
        assert series_a == series_b
        assert dist_a.probs == dist_b.probs

    def test_histogram_keys_ordered_by_ascending_cost(self):
        phases = gen_gaussian_phases(5, PI, 0.5, 42)
        _, dist = appendix_experiment(PI, 0.5, 42)
        keys = list(dist.probs)
        costs = [phases.phases[b] for b in keys]
        assert costs == sorted(costs)
        assert len(keys) == 120


class TestSeriesCsv:
    def test_header_and_row_count(self):
        series = evolve(subspace(builtin_phases(3)), 10)
        text = series_to_csv(series)
        lines = text.splitlines()
        assert lines[0] == "t,p_min,p_max,p_combined"
        assert len(lines) == 12
        assert lines[1].startswith("0,")

    def test_values_round_trip_through_repr(self):
        series = evolve(subspace(builtin_phases(3)), 2)
        row = series_to_csv(series).splitlines()[2].split(",")
        assert int(row[0]) == 1
        assert float(row[1]) == series.p_min[1]
        assert float(row[3]) == series.p_combined[1]

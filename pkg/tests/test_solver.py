import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cflow.bounds import bound_report
from cflow.errors import InvalidParameter, NoFlowExists
from cflow.flow import FlowAssignment, conservation_residual, flow_number_estimate, verify_nzf
from cflow.graph import Graph, cycle_graph, petersen_graph, prism_graph, wheel_graph
from cflow.solver import (
    SolverConfig,
    circulation,
    cycle_basis,
    norm_ratio,
    optimize_wheel_points,
    probe_moves,
    solve_upper,
    symmetric_starts,
)
from cflow.wheel import optimal_sequence, theorem1_value

QUICK = SolverConfig(starts=6, kicks=8)


class TestCycleBasis:
    def test_tree_is_empty(self):
        assert len(cycle_basis(Graph(4, ((0, 1), (1, 2), (1, 3))))) == 0

    @pytest.mark.parametrize("n", range(3, 10))
    def test_dimensions(self, n):
        assert len(cycle_basis(wheel_graph(n))) == n
        assert len(cycle_basis(prism_graph(n))) == n + 1

    def test_disconnected_dimension(self):
        G = Graph(7, cycle_graph(3).edges + tuple((u + 3, v + 3) for u, v in cycle_graph(4).edges))
        assert len(cycle_basis(G)) == 2

    @pytest.mark.parametrize("G", [petersen_graph(), wheel_graph(7), prism_graph(5), Graph(2, ((0, 1), (0, 1), (1, 0)))])
    def test_generators_have_zero_boundary(self, G):
        basis = cycle_basis(G)
        B = basis.matrix()
        assert np.linalg.matrix_rank(B) == len(basis)
        for j in range(len(basis)):
            assert conservation_residual(FlowAssignment(G, B[:, j])) == 0

    def test_wheel_coefficients_are_rim_values(self):
        n = 7
        basis = cycle_basis(wheel_graph(n))
        seq = optimal_sequence(n)
        # the basis is rooted at the hub, so rim edge j is the only chord of generator j
        f = circulation(basis, seq.points)
        assert np.allclose(np.abs(f.values[n:]), np.abs(seq.points))


class TestCirculation:
    def test_zero(self):
        basis = cycle_basis(petersen_graph())
        assert np.all(circulation(basis, np.zeros(len(basis))).values == 0)

    def test_single_generator(self):
        basis = cycle_basis(wheel_graph(5))
        f = circulation(basis, [1, 0, 0, 0, 0])
        support = np.flatnonzero(f.values)
        assert set(np.abs(f.values[support])) == {1.0}
        assert sorted(support) == sorted(k for k, _ in basis.cycles[0])

    def test_length_mismatch(self):
        with pytest.raises(InvalidParameter):
            circulation(cycle_basis(wheel_graph(5)), [1, 2])

    @settings(max_examples=50, deadline=None)
    @given(st.lists(st.builds(complex, st.floats(-5, 5), st.floats(-5, 5)), min_size=7, max_size=7))
    def test_random_coeffs_conserve(self, coeffs):
        f = circulation(cycle_basis(wheel_graph(7)), coeffs)
        assert conservation_residual(f) <= 1e-12 * max(1.0, 7 * max(abs(c) for c in coeffs))


class TestConfig:
    @pytest.mark.parametrize(
        "kwargs", [{"starts": 0}, {"ratio_tol": 0}, {"step_init": -1}, {"max_iters": 0}, {"kicks": -1}]
    )
    def test_invalid(self, kwargs):
        with pytest.raises(InvalidParameter):
            SolverConfig(**kwargs)


class TestSolveUpper:
    def test_bridged_or_disconnected(self):
        with pytest.raises(NoFlowExists):
            solve_upper(Graph(4, ((0, 1), (1, 2), (2, 0), (2, 3))))
        two = Graph(6, cycle_graph(3).edges + tuple((u + 3, v + 3) for u, v in cycle_graph(3).edges))
        with pytest.raises(NoFlowExists):
            solve_upper(two)

    def test_cycle_is_two(self):
        res = solve_upper(cycle_graph(5), QUICK)
        assert res.upper_bound == pytest.approx(2.0, abs=1e-12)

    def test_w4(self):
        res = solve_upper(wheel_graph(4), QUICK)
        assert res.upper_bound <= 2 + 1e-3

    def test_w5(self):
        res = solve_upper(wheel_graph(5), SolverConfig(starts=8, kicks=10))
        assert res.upper_bound <= theorem1_value(5) + 1e-3

    def test_petersen_respects_lower_bound_and_witness(self):
        G = petersen_graph()
        res = solve_upper(G, QUICK)
        assert res.upper_bound >= bound_report(G).lower - 1e-6
        w = res.witness
        assert w.norms.min() == pytest.approx(1.0, abs=1e-12)
        assert verify_nzf(w, res.upper_bound, 1e-6).valid_for_r
        assert res.iterations_used > 0 and res.starts_improved >= 1

    def test_deterministic(self):
        G = prism_graph(5)
        a = solve_upper(G, QUICK)
        b = solve_upper(G, QUICK)
        assert a.upper_bound == b.upper_bound
        assert np.array_equal(a.witness.values, b.witness.values)
        assert a.iterations_used == b.iterations_used and a.starts_improved == b.starts_improved

    def test_seed_changes_streams(self):
        G = petersen_graph()
        a = solve_upper(G, SolverConfig(starts=3, kicks=0, symmetry_starts=False, seed=1))
        b = solve_upper(G, SolverConfig(starts=3, kicks=0, symmetry_starts=False, seed=2))
        assert a.start_ratios[1:] != b.start_ratios[1:]

    @settings(max_examples=30, deadline=None)
    @given(st.floats(-math.pi, math.pi), st.floats(1e-3, 1e3))
    def test_reported_ratio_reparameterisation_invariant(self, theta, scale):
        res = solve_upper(wheel_graph(5), SolverConfig(starts=2, kicks=2, symmetry_starts=False))
        moved = res.witness.scaled(scale * cmath.exp(1j * theta))
        assert abs(flow_number_estimate(moved) - res.upper_bound) <= 1e-12

    @pytest.mark.parametrize("G", [wheel_graph(6), prism_graph(3), prism_graph(4), wheel_graph(3)])
    def test_witness_valid_and_above_lower(self, G):
        res = solve_upper(G, QUICK)
        assert verify_nzf(res.witness, res.upper_bound, 1e-6).valid_for_r
        assert res.upper_bound >= bound_report(G).lower - 1e-6


class TestSymmetricStarts:
    def test_w11_star_polygon_seed(self):
        G = wheel_graph(11)
        basis = cycle_basis(G)
        starts = symmetric_starts(G, basis.matrix(), np.random.default_rng(0))
        assert starts
        ratios = [norm_ratio(basis.matrix() @ s) for s in starts]
        # the eigenvector of the rotation carrying the {11/2} star polygon is already optimal
        assert min(ratios) == pytest.approx(theorem1_value(11) - 1, abs=1e-9)

    def test_empty_for_trees(self):
        G = Graph(3, ((0, 1), (1, 2)))
        assert symmetric_starts(G, cycle_basis(G).matrix(), np.random.default_rng(0)) == []


class TestWheelPoints:
    def test_even(self):
        _, ratio = optimize_wheel_points(4, QUICK)
        assert ratio <= 1 + 1e-3

    def test_n5(self):
        seq, ratio = optimize_wheel_points(5, QUICK)
        assert ratio <= 2 * math.sin(math.pi / 6 * 6 / 5) + 1e-3
        assert ratio == pytest.approx(seq.ratio(), abs=0)

    def test_rejects_small(self):
        with pytest.raises(InvalidParameter):
            optimize_wheel_points(2)

    @pytest.mark.parametrize("n", [3, 5, 7, 9, 11, 13])
    def test_optimal_sequences_are_local_optima(self, n):
        assert probe_moves(optimal_sequence(n)) <= 1e-9

    def test_probe_detects_improvable_sequence(self):
        seq = optimal_sequence(9)
        from cflow.wheel import radial_scale

        assert probe_moves(radial_scale(seq, 4, 1.01)) > 1e-6

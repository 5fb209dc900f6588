import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from pdeepc import DataLengthError, DimensionError, LtpSystem, simulate
from pdeepc.behavior import behavior_basis, split_behavior, subspace_equal
from pdeepc.datapipe import (
    DataMatrices,
    advance_index,
    build_data_matrices,
    collect_offline,
    gaussian_input_law,
    proper_index,
    recommended_data_length,
    required_ppe_order,
    trajectory_from_csv,
    trajectory_to_csv,
    zero_input_law,
)
from pdeepc.excitation import hankel, is_ppe, periodic_hankel
from pdeepc.plant import Plant

from conftest import random_controllable_ltp, random_ltp_system


def offline_trajectory(sys, L, N, seed, t_d1=0):
    length = recommended_data_length(L, N, sys.period, sys.n, sys.m)
    rng = np.random.default_rng(seed)
    u = rng.standard_normal((length, sys.m))
    return simulate(sys, t_d1, rng.standard_normal(sys.n), u).traj


class TestBuildDataMatrices:
    def test_lti_case_is_classical_partition(self, rng):
        sys = random_ltp_system(rng, n=2, m=2, p=1, T=1)
        traj = offline_trajectory(sys, L=3, N=2, seed=0)
        data = build_data_matrices(traj, L=3, N=2, T=1)
        assert data.T == 1
        HU = hankel(traj.u, 5)
        HY = hankel(traj.y, 5)
        Up, Uf, Yp, Yf = data.matrices(1)
        assert_allclose(Up, HU[: 2 * 3])
        assert_allclose(Uf, HU[2 * 3:])
        assert_allclose(Yp, HY[:3])
        assert_allclose(Yf, HY[3:])

    def test_alternating_gain_spans_behaviors(self, alternating_gain_system):
        sys = alternating_gain_system
        L = N = 2
        traj = offline_trajectory(sys, L, N, seed=11)
        data = build_data_matrices(traj, L, N, T=2)
        for theta in (1, 2):
            t_theta = traj.start + theta + L - 1
            expected = split_behavior(
                behavior_basis(sys, t_theta - L, t_theta + N - 1), L
            ).stacked()
            assert subspace_equal(data.stacked(theta), expected)

    def test_block_row_bookkeeping(self, rng):
        sys = random_ltp_system(rng, n=2, m=2, p=1, T=3)
        L, N = 2, 3
        traj = offline_trajectory(sys, L, N, seed=4)
        data = build_data_matrices(traj, L, N, T=3)
        K = L + N + 3 - 1
        U_d = periodic_hankel(traj.u, K, 3)
        Y_d = periodic_hankel(traj.y, K, 3)
        for theta in range(1, 4):
            Up, Uf, Yp, Yf = data.matrices(theta)
            assert_allclose(np.vstack([Up, Uf]), U_d[(theta - 1) * 2:(theta - 1 + L + N) * 2])
            assert_allclose(np.vstack([Yp, Yf]), Y_d[theta - 1: theta - 1 + L + N])

    def test_column_count_formula(self, rng):
        sys = random_ltp_system(rng, n=1, m=1, p=1, T=3)
        steps = 40
        traj = simulate(sys, 5, [0.0], np.ones((steps, 1))).traj
        L, N, T = 3, 2, 3
        K = L + N + T - 1
        data = build_data_matrices(traj, L, N, T)
        assert data.h == (steps - 1 - K + 1) // T + 1
        assert data.t_d1 == 5

    def test_unknown_start_flag(self, rng):
        sys = random_ltp_system(rng)
        traj = simulate(sys, 0, np.zeros(2), np.ones((20, 1))).traj
        data = build_data_matrices(traj, 2, 2, 2, known_start=False)
        assert data.t_d1 is None

    def test_data_too_short(self, rng):
        sys = random_ltp_system(rng)
        traj = simulate(sys, 0, np.zeros(2), np.ones((4, 1))).traj
        with pytest.raises(DataLengthError):
            build_data_matrices(traj, L=3, N=2, T=2)

    def test_proper_index_selects_matching_behavior(self, rng):
        # arbitrary times over two periods all resolve to the right span
        sys = random_controllable_ltp(rng, n=2, m=1, p=1, T=3)
        L, N = 6, 4
        traj = offline_trajectory(sys, L, N, seed=21, t_d1=2)
        data = build_data_matrices(traj, L, N, T=3)
        for t in range(30, 30 + 2 * 3):
            theta = proper_index(t, t_d1=2, L=L, T=3)
            expected = split_behavior(behavior_basis(sys, t - L, t + N - 1), L).stacked()
            assert subspace_equal(data.stacked(theta), expected)


class TestProperIndex:
    def test_benchmark_values(self):
        assert proper_index(t=40, t_d1=0, L=30, T=5) == 1

    @settings(max_examples=40, deadline=None)
    @given(t=st.integers(-50, 50), t_d1=st.integers(-10, 10),
           L=st.integers(1, 40), T=st.integers(1, 8))
    def test_periodic_and_cyclic(self, t, t_d1, L, T):
        base = proper_index(t, t_d1, L, T)
        assert 1 <= base <= T
        assert proper_index(t + T, t_d1, L, T) == base
        assert proper_index(t + 1, t_d1, L, T) == advance_index(base, 1, T)

    def test_advance_index_wraps(self):
        assert advance_index(5, 1, 5) == 1
        assert advance_index(1, 7, 5) == 3


class TestRequiredPpeOrder:
    def test_benchmark_parameters(self):
        assert required_ppe_order(L=30, N=30, T=5, n_bound=6) == 95

    def test_lti_degenerate(self):
        assert required_ppe_order(L=4, N=3, T=1, n_bound=2) == 4 + 3 + 2

    def test_monotone(self):
        base = required_ppe_order(3, 3, 2, 2)
        assert required_ppe_order(4, 3, 2, 2) >= base
        assert required_ppe_order(3, 4, 2, 2) >= base
        assert required_ppe_order(3, 3, 3, 2) >= base
        assert required_ppe_order(3, 3, 2, 3) >= base

    def test_positive_arguments(self):
        with pytest.raises(ValueError):
            required_ppe_order(0, 1, 1, 1)


class TestCollectOffline:
    def test_zero_input_is_free_response(self, rng):
        sys = random_ltp_system(rng, n=2, m=1, p=1, T=2)
        x0 = rng.standard_normal(2)
        plant = Plant(sys, t0=0, x0=x0)
        traj = collect_offline(plant, 0, 12, zero_input_law(1), seed=0)
        expected = simulate(sys, 0, x0, np.zeros((12, 1)))
        assert_allclose(traj.y, expected.traj.y, atol=1e-12)

    def test_deterministic_given_seed(self, rng):
        sys = random_ltp_system(rng, n=2, m=2, p=1, T=2)
        runs = []
        for _ in range(2):
            plant = Plant(sys, t0=0)
            runs.append(collect_offline(plant, 0, 15, gaussian_input_law(2), seed=99))
        assert_allclose(runs[0].u, runs[1].u)
        assert_allclose(runs[0].y, runs[1].y)

    def test_recommended_length_is_exciting(self, rng):
        sys = random_controllable_ltp(rng, n=2, m=1, p=1, T=3)
        L, N = 6, 4
        order = required_ppe_order(L, N, 3, 2)
        length = recommended_data_length(L, N, 3, 2, 1)
        plant = Plant(sys, t0=0)
        traj = collect_offline(plant, 0, length, gaussian_input_law(1), seed=5)
        assert is_ppe(traj.u, order, 3)

    def test_clock_mismatch_rejected(self, rng):
        plant = Plant(random_ltp_system(rng), t0=3)
        with pytest.raises(ValueError):
            collect_offline(plant, 0, 5, zero_input_law(1), seed=0)


class TestPlant:
    def test_matches_pure_simulation(self, rng):
        sys = random_ltp_system(rng, n=3, m=2, p=2, T=2)
        x0 = rng.standard_normal(3)
        u = rng.standard_normal((9, 2))
        plant = Plant(sys, t0=-2, x0=x0)
        for uk in u:
            plant.step(uk)
        pure = simulate(sys, -2, x0, u)
        hist = plant.history()
        assert hist.start == -2
        assert_allclose(hist.y, pure.traj.y, atol=1e-12)
        assert_allclose(plant.state, pure.final_state, atol=1e-12)

    def test_recent_window_layout(self, rng):
        sys = random_ltp_system(rng, n=2, m=1, p=1, T=2)
        plant = Plant(sys, t0=0, x0=rng.standard_normal(2))
        for k in range(6):
            plant.step([float(k)])
        w = plant.recent_window(3)
        hist = plant.history()
        assert_allclose(w, hist.w(3, 5))
        with pytest.raises(DataLengthError):
            plant.recent_window(7)

    def test_noise_reproducible_across_instances(self, rng):
        sys = random_ltp_system(rng, n=2, m=1, p=1, T=2)
        traces = []
        for _ in range(2):
            plant = Plant(sys, process_var=1e-3, measurement_var=1e-3,
                          rng=np.random.default_rng(77))
            traces.append(np.vstack([plant.step([1.0]) for _ in range(10)]))
        assert_allclose(traces[0], traces[1])

    def test_input_dimension_checked(self, rng):
        plant = Plant(random_ltp_system(rng, m=2))
        with pytest.raises(DimensionError):
            plant.step([1.0])


class TestPersistence:
    def test_trajectory_csv_round_trip(self, rng, tmp_path):
        sys = random_ltp_system(rng, n=2, m=2, p=1, T=2)
        traj = simulate(sys, 7, rng.standard_normal(2), rng.standard_normal((6, 2))).traj
        path = tmp_path / "traj.csv"
        trajectory_to_csv(traj, path)
        back = trajectory_from_csv(path)
        assert back.start == 7
        assert_allclose(back.u, traj.u)
        assert_allclose(back.y, traj.y)

    def test_data_matrices_json_round_trip(self, rng):
        sys = random_ltp_system(rng, n=2, m=1, p=2, T=2)
        traj = offline_trajectory(sys, L=2, N=2, seed=1)
        data = build_data_matrices(traj, 2, 2, 2)
        back = DataMatrices.from_json(data.to_json())
        assert back.T == data.T and back.h == data.h and back.t_d1 == data.t_d1
        for theta in (1, 2):
            for a, b in zip(back.matrices(theta), data.matrices(theta)):
                assert_allclose(a, b)

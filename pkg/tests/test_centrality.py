import numpy as np
import pytest
from numpy.testing import assert_allclose

from opinion_game import (
    Network,
    apply_delta,
    compute_profile,
    delta_matrix,
    delta_row,
    katz_multiphase,
    katz_r,
    katz_s,
)

from conftest import neumann_transpose_apply, random_network, two_node_net


class TestKatzVectors:
    def test_no_edges_gives_ones_and_bias(self):
        net = Network.build(3, [], w0=[0.2, 0.5, 0.0])
        assert_allclose(katz_r(net), np.ones(3), atol=0)
        assert_allclose(katz_s(net), [0.2, 0.5, 0.0], atol=0)

    def test_two_node_values(self):
        net = two_node_net()
        assert_allclose(katz_r(net), [2.0, 2.0], atol=1e-12)
        assert_allclose(katz_s(net), [1.2, 1.2], atol=1e-12)
        assert_allclose(katz_multiphase(net, 3), [0.72, 0.72], atol=1e-12)

    def test_scalar_geometric(self):
        net = Network.build(1, [(0, 0, 0.5)], w0=0.4)
        assert_allclose(katz_r(net), [2.0], atol=1e-12)

    def test_zero_bias_kills_s(self):
        net = two_node_net(w0=0.0)
        assert_allclose(katz_s(net), [0.0, 0.0], atol=0)

    def test_multiphase_base_cases(self):
        net = two_node_net()
        assert_allclose(katz_multiphase(net, 1), katz_r(net), atol=0)
        assert_allclose(katz_multiphase(net, 2), katz_s(net), atol=1e-14)
        with pytest.raises(ValueError):
            katz_multiphase(net, 0)

    def test_residuals_of_defining_systems(self):
        rng = np.random.default_rng(13)
        for _ in range(10):
            net = random_network(rng, int(rng.integers(2, 30)), nonneg=False)
            wt = net.weights.toarray().T
            r = katz_r(net)
            s = katz_s(net, r)
            assert np.max(np.abs(r - wt @ r - 1.0)) < 1e-8
            assert np.max(np.abs(s - wt @ s - r * net.w0)) < 1e-8

    def test_nonnegative_weights_keep_r_at_least_one(self):
        rng = np.random.default_rng(19)
        for _ in range(10):
            net = random_network(rng, int(rng.integers(2, 20)), nonneg=True)
            assert np.all(katz_r(net) >= 1.0 - 1e-12)

    def test_truncated_series_oracle(self):
        rng = np.random.default_rng(23)
        for _ in range(20):
            net = random_network(rng, int(rng.integers(2, 9)), nonneg=True)
            r_oracle = neumann_transpose_apply(net, np.ones(net.n))
            s_oracle = neumann_transpose_apply(net, r_oracle * net.w0)
            third_oracle = neumann_transpose_apply(net, s_oracle * net.w0)
            assert np.max(np.abs(katz_r(net) - r_oracle)) < 1e-8
            assert np.max(np.abs(katz_s(net) - s_oracle)) < 1e-8
            assert np.max(np.abs(katz_multiphase(net, 3) - third_oracle)) < 1e-8

    def test_damping_of_higher_orders(self):
        # with nonnegative parameters and bias weights uniformly below c,
        # each extra look-ahead order shrinks by at most c * the resolvent gain
        rng = np.random.default_rng(27)
        for _ in range(10):
            net = random_network(rng, int(rng.integers(2, 15)), dependency=True)
            cap = float(np.max(net.w0))
            gain = float(np.max(np.abs(delta_matrix(net)).sum(axis=0)))
            for q in (1, 2, 3):
                lo = katz_multiphase(net, q + 1)
                hi = katz_multiphase(net, q)
                assert np.max(np.abs(lo)) <= cap * gain * np.max(np.abs(hi)) + 1e-12


class TestProfile:
    def test_profile_orders(self):
        net = two_node_net()
        prof = compute_profile(net, orders=4)
        assert_allclose(prof.order(1), katz_r(net), atol=0)
        assert_allclose(prof.order(2), katz_s(net), atol=0)
        assert_allclose(prof.order(3), katz_multiphase(net, 3), atol=1e-14)
        assert_allclose(prof.order(4), katz_multiphase(net, 4), atol=1e-14)
        with pytest.raises(ValueError):
            prof.order(5)


class TestResolventRows:
    def test_identity_when_no_edges(self):
        net = Network.build(3, [])
        assert_allclose(delta_row(net, 1), [0.0, 1.0, 0.0], atol=0)

    def test_two_node_row(self):
        net = two_node_net()
        assert_allclose(delta_row(net, 0), [4.0 / 3.0, 2.0 / 3.0], atol=1e-12)

    def test_rows_sum_to_r(self):
        rng = np.random.default_rng(37)
        for _ in range(5):
            net = random_network(rng, int(rng.integers(2, 12)), nonneg=False)
            stacked = np.array([delta_row(net, j) for j in range(net.n)])
            assert np.max(np.abs(stacked.sum(axis=0) - katz_r(net))) < 1e-8

    def test_rows_are_cached(self):
        net = two_node_net()
        first = delta_row(net, 1)
        assert delta_row(net, 1) is first
        assert not first.flags.writeable

    def test_matrix_agrees_with_rows(self):
        rng = np.random.default_rng(43)
        net = random_network(rng, 7, nonneg=False)
        full = delta_matrix(net)
        for j in range(net.n):
            assert_allclose(delta_row(net, j), full[j], atol=1e-9)

    def test_apply_delta_matches_matrix(self):
        rng = np.random.default_rng(47)
        net = random_network(rng, 9, nonneg=False)
        vec = rng.normal(size=9)
        assert_allclose(apply_delta(net, vec), delta_matrix(net) @ vec, atol=1e-9)

    def test_row_index_checked(self):
        net = two_node_net()
        with pytest.raises(ValueError):
            delta_row(net, 2)

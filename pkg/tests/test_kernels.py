import math

import numpy as np
import pytest

from sphmg import (
    ContractError,
    ExternalBid,
    KernelParams,
    bid_mean_trajectory,
    extract_stationary,
    frozen_solution,
    iterate_kernels,
    stationary_solution,
)
from sphmg.kernels import causal_inverse
from oracles import sample_effective_process


def _params(alpha, kappa=0.0, A=0.0, zeta=0, T=200, lambda0=1.0):
    return KernelParams(
        alpha=alpha, kappa=kappa, external=ExternalBid(zeta=zeta, amplitude=A),
        lambda0=lambda0, T=T,
    )


def test_zero_alpha_limit_is_static():
    state = iterate_kernels(_params(0.0, A=2.0, zeta=1, T=30, lambda0=0.7))
    assert np.allclose(state.C, 1.0)
    assert np.allclose(state.lambda_traj, 0.7)
    assert np.allclose(state.K, 0.49)


def test_structure_invariants():
    state = iterate_kernels(_params(3.0, kappa=0.2, A=1.0, zeta=1, T=60))
    n = state.T + 1
    assert np.abs(np.diag(state.C) - 1.0).max() < 1e-10
    assert np.array_equal(state.C, state.C.T)
    assert np.abs(state.C).max() <= 1.0 + 1e-8
    assert np.abs(np.triu(state.G)).max() == 0.0  # causality, includes diagonal
    assert np.all(state.lambda_traj > 0.0)
    # K_tt = lambda(t)^2 and C = K normalized
    assert np.allclose(np.diag(state.K), state.lambda_traj**2, rtol=1e-12)
    lam = state.lambda_traj
    assert np.allclose(state.C, state.K / np.outer(lam, lam), atol=1e-12)
    # D carries the drive: D = 1 + C + 2 a_e(t) a_e(t')
    a_e = ExternalBid(zeta=1, amplitude=1.0).series(n)
    assert np.allclose(state.D, 1.0 + state.C + 2.0 * np.outer(a_e, a_e), atol=1e-12)
    # Sigma = W D W^T with W the causal inverse
    W = causal_inverse(state.G)
    assert np.allclose(state.Sigma, W @ state.D @ W.T, atol=1e-10)


def test_cross_moments_satisfy_gaussian_identity():
    # For the linear process, <eta(t) q(s)> = sqrt(alpha) (Sigma g^T)_ts with
    # g the unnormalized response; exact, so tight tolerance.
    for alpha, kappa, A, zeta in [(2.0, 0.0, 0.0, 0), (4.0, 0.3, 1.0, 1), (1.5, 0.0, 2.0, 0)]:
        state = iterate_kernels(_params(alpha, kappa, A, zeta, T=40))
        g = state.G * state.lambda_traj[:, np.newaxis]
        expected = math.sqrt(alpha) * (state.Sigma @ g.T)
        scale = max(1.0, np.abs(expected).max())
        assert np.abs(state.L - expected).max() / scale < 1e-12


def test_monte_carlo_reproduces_the_correlation_matrix():
    state = iterate_kernels(_params(2.0, kappa=0.25, A=1.0, zeta=1, T=10))
    rng = np.random.default_rng(2024)
    c_mc, c_se = sample_effective_process(state, n_paths=200_000, rng=rng)
    bound = np.maximum(3.0 * c_se, 1e-10)
    assert np.all(np.abs(c_mc - state.C) < bound)


def test_oscillating_point_matches_theory():
    state = iterate_kernels(_params(4.0, T=400))
    tail = extract_stationary(state, 0.25)
    th = stationary_solution(4.0, 0.0, 0.0, 0)
    assert tail.c0 == pytest.approx(th.c0, rel=0.02)
    assert tail.lam == pytest.approx(th.lam, rel=0.02)
    assert tail.sigma_fl**2 == pytest.approx(th.sigma_fl**2, rel=0.03)
    assert abs(tail.Lambda) < 1e-3


def test_oscillating_point_with_drive_matches_theory():
    state = iterate_kernels(_params(3.0, A=1.0, zeta=1, T=300))
    tail = extract_stationary(state, 0.25)
    th = stationary_solution(3.0, 0.0, 1.0, 1)
    assert tail.c0 == pytest.approx(th.c0, rel=0.02)
    assert tail.lam == pytest.approx(th.lam, rel=0.02)
    assert tail.sigma_fl == pytest.approx(th.sigma_fl, rel=0.02)


def test_frozen_point_growth_rate_and_fluctuations():
    state = iterate_kernels(_params(1.0, T=400))
    tail = extract_stationary(state, 0.25)
    th = frozen_solution(1.0, 0.0, 0.0, 0)
    assert tail.Lambda == pytest.approx(th.Lambda, rel=0.05)
    assert tail.c0 == pytest.approx(1.0, abs=0.01)
    assert tail.sigma_fl == pytest.approx(th.sigma_fl, rel=0.05)
    # constraint force diverges: lambda grew linearly to O(Lambda * T)
    assert state.lambda_traj[-1] > 0.5 * th.Lambda * state.T


def test_tti_emerges_in_the_tail():
    state = iterate_kernels(_params(4.0, T=400))
    for lag in range(6):
        vals = [state.C[t, t - lag] for t in range(330, 401)]
        assert max(vals) - min(vals) < 1e-3


def test_bid_mean_trajectory_zero_drive():
    state = iterate_kernels(_params(2.5, T=50))
    assert np.all(bid_mean_trajectory(state, np.zeros(51)) == 0.0)


def test_bid_mean_trajectory_static_drive():
    drive = ExternalBid(zeta=0, amplitude=1.0)
    state = iterate_kernels(_params(6.0, A=1.0, zeta=0, T=300))
    traj = bid_mean_trajectory(state, drive.series(301))
    # chi = 1/(alpha-1) = 0.2 at kappa = 0, so the tail approaches 1/1.2
    assert traj[-60:].mean() == pytest.approx(5.0 / 6.0, rel=0.02)


def test_bid_mean_trajectory_oscillating_drive():
    drive = ExternalBid(zeta=1, amplitude=1.0)
    state = iterate_kernels(_params(4.0, A=1.0, zeta=1, T=300))
    traj = bid_mean_trajectory(state, drive.series(301))
    t = np.arange(301)
    staggered = np.where(t % 2 == 0, 1.0, -1.0) * traj
    assert staggered[-60:].mean() == pytest.approx(1.25, rel=0.02)
    # plain average vanishes for a pure oscillation
    assert abs(traj[-60:].mean()) < 0.01


def test_extract_stationary_static_limit():
    state = iterate_kernels(_params(0.0, T=60))
    tail = extract_stationary(state, 0.5)
    assert tail.c0 == pytest.approx(1.0, abs=1e-12)
    assert tail.Lambda == pytest.approx(0.0, abs=1e-12)


def test_contract_errors():
    with pytest.raises(ContractError):
        KernelParams(alpha=-1.0)
    with pytest.raises(ContractError):
        KernelParams(alpha=1.0, T=0)
    with pytest.raises(ContractError):
        KernelParams(alpha=1.0, lambda0=0.0)
    state = iterate_kernels(_params(1.0, T=20))
    with pytest.raises(ContractError):
        extract_stationary(state, 0.6)
    with pytest.raises(ContractError):
        extract_stationary(state, 0.1)  # only 2 tail points
    with pytest.raises(ContractError):
        bid_mean_trajectory(state, np.zeros(5))


def test_unbiased_scale_start_converges_to_the_same_tail():
    # lambda0 mirrors the unbiased simulation start; the stationary tail of
    # the oscillating phase does not remember it
    tail_big = extract_stationary(iterate_kernels(_params(4.0, T=300, lambda0=1.0)), 0.2)
    tail_small = extract_stationary(iterate_kernels(_params(4.0, T=300, lambda0=1e-4)), 0.2)
    assert tail_big.c0 == pytest.approx(tail_small.c0, abs=5e-3)
    assert tail_big.lam == pytest.approx(tail_small.lam, rel=5e-3)

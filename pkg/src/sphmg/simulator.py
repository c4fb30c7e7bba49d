"""Agent-level integration of the batch spherical minority game.

One batch step maps the valuation vector q(t) through

    q_i(t+1) = q_i(t) - b_i A_e(t) - h_i - sum_j J_ij phi_j(t) + kappa d_i phi_i(t)

followed by the spherical renormalization lambda(t+1) = sqrt(mean q^2) and
phi = q / lambda.  This is the exact regrouping of the per-pattern form

    q_i(t+1) = q_i(t) - (2/sqrt(N)) sum_mu xi_i^mu [A^mu(t) - (kappa/sqrt(N)) phi_i(t) xi_i^mu]
    A^mu(t)  = A_e(t) + Omega_mu + N^(-1/2) sum_j phi_j(t) xi_j^mu

so the coupling route and the per-pattern route agree to accumulation noise.
run_experiment integrates an equilibration window followed by a measurement
window in which every pattern bid A^mu(t) is recorded exactly, and reduces the
history to the stationary observables (c0, sigma, sigma_fl, lambda statistics,
bid averages, frozen flag).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    _STREAM_INIT,
    ContractError,
    Couplings,
    DegenerateStateError,
    DisorderSample,
    GameParams,
    generate_disorder,
    precompute_couplings,
    rng_stream,
)
from .estimators import fit_line, lag_correlations, persistent_correlation

# Snapshot window (unit stride, tail of the measurement window) for the c0
# estimator; 64 lags leave >= 31 consecutive-lag pairs in the upper half.
C0_SNAPSHOTS = 64

# Frozen-state proxy: lambda(t) declared divergent when the fitted slope
# exceeds this many standard errors and lambda grew by at least 2x.
FROZEN_SLOPE_SIGMAS = 5.0
FROZEN_GROWTH_FACTOR = 2.0

MIN_MEASURE_STEPS = 16


@dataclass(frozen=True)
class AgentState:
    """Microscopic state: valuations q, constraint force lam, positions phi=q/lam."""

    q: np.ndarray
    lam: float
    phi: np.ndarray
    t: int


@dataclass(frozen=True)
class RunObservables:
    """Stationary observables measured over one run's measurement window."""

    c0_hat: float
    sigma: float
    sigma_fl: float
    lambda_mean: float
    lambda_slope: float
    bid_mean: float
    bid_staggered: float
    frozen_flag: bool


def init_state(params: GameParams) -> AgentState:
    """Random +-init_scale valuations; lambda(0) = init_scale exactly."""
    rng = rng_stream(params.seed, _STREAM_INIT)
    p_plus = 0.5 * (1.0 + params.sign_bias)
    signs = np.where(rng.random(params.n_agents) < p_plus, 1.0, -1.0)
    q = params.init_scale * signs
    return AgentState(q=q, lam=params.init_scale, phi=signs.copy(), t=0)


def market_bids(state: AgentState, sample: DisorderSample, a_e: float) -> np.ndarray:
    """Total bid per pattern: A^mu = a_e + Omega_mu + N^(-1/2) sum_j phi_j xi_j^mu."""
    n = sample.n_agents
    if state.phi.shape[0] != n:
        raise ContractError(
            f"state has {state.phi.shape[0]} agents, sample has {n}"
        )
    internal = (state.phi @ sample.xi.astype(np.float64)) / np.sqrt(n)
    return a_e + sample.Omega + internal


def _renormalize(q: np.ndarray, t: int) -> AgentState:
    lam = float(np.sqrt(np.mean(q * q)))
    if lam == 0.0:
        raise DegenerateStateError(f"all valuations vanished at t={t}")
    return AgentState(q=q, lam=lam, phi=q / lam, t=t)


def batch_step(state: AgentState, couplings: Couplings, params: GameParams) -> AgentState:
    """One coupling-based batch step followed by the spherical renormalization."""
    if couplings.n_agents != state.q.shape[0]:
        raise ContractError("state and couplings disagree on the number of agents")
    a_e = params.external.value_at(state.t)
    q = (
        state.q
        - couplings.b * a_e
        - couplings.h
        - couplings.J @ state.phi
        + params.kappa * (couplings.d * state.phi)
    )
    return _renormalize(q, state.t + 1)


def _run_loop(params: GameParams, sample: DisorderSample, couplings: Couplings | None):
    """Integrate the full protocol and collect the raw measurement history.

    Equilibration uses the compiled couplings when available.  During the
    measurement window each step evaluates the per-pattern bids (needed for
    the volatility anyway) and completes the identical update from them; the
    pattern products run in float32 (exact to ~1e-7, far below measurement
    noise) to keep large N affordable.
    """
    n, p = sample.n_agents, sample.n_patterns
    sqrt_n = np.sqrt(n)
    xi32 = sample.xi.astype(np.float32)
    d = (2.0 / n) * np.abs(sample.xi).sum(axis=1, dtype=np.int64).astype(np.float64)

    state = init_state(params)
    q, phi, t = state.q, state.phi, 0
    lam = state.lam

    if couplings is not None:
        for t in range(params.t_equilibrate):
            a_e = params.external.value_at(t)
            q = q - couplings.b * a_e - couplings.h - couplings.J @ phi + params.kappa * (d * phi)
            lam = float(np.sqrt(np.mean(q * q)))
            if lam == 0.0:
                raise DegenerateStateError(f"all valuations vanished at t={t + 1}")
            phi = q / lam
    else:
        for t in range(params.t_equilibrate):
            a_e = params.external.value_at(t)
            bids = a_e + sample.Omega + (phi.astype(np.float32) @ xi32).astype(np.float64) / sqrt_n
            q = (
                q
                - (2.0 / sqrt_n) * (xi32 @ bids.astype(np.float32)).astype(np.float64)
                + params.kappa * (d * phi)
            )
            lam = float(np.sqrt(np.mean(q * q)))
            if lam == 0.0:
                raise DegenerateStateError(f"all valuations vanished at t={t + 1}")
            phi = q / lam

    tau = params.t_measure
    n_snap = min(C0_SNAPSHOTS, tau)
    phi_ring = np.empty((n_snap, n), dtype=np.float64)
    lam_hist = np.empty(tau)
    abar_hist = np.empty(tau)
    t_abs = np.arange(params.t_equilibrate, params.t_equilibrate + tau)
    sum_a = 0.0
    sum_a2 = 0.0

    for k in range(tau):
        t = params.t_equilibrate + k
        a_e = params.external.value_at(t)
        bids = a_e + sample.Omega + (phi.astype(np.float32) @ xi32).astype(np.float64) / sqrt_n
        sum_a += bids.sum()
        sum_a2 += float(bids @ bids)
        abar_hist[k] = bids.mean()
        lam_hist[k] = lam  # lambda(t) entering this step's positions
        q = (
            q
            - (2.0 / sqrt_n) * (xi32 @ bids.astype(np.float32)).astype(np.float64)
            + params.kappa * (d * phi)
        )
        lam = float(np.sqrt(np.mean(q * q)))
        if lam == 0.0:
            raise DegenerateStateError(f"all valuations vanished at t={t + 1}")
        phi = q / lam
        phi_ring[k % n_snap] = phi

    # unroll the ring so rows are the last n_snap snapshots in time order
    order = np.arange(tau - n_snap, tau) % n_snap
    phi_hist = phi_ring[order]
    return phi_hist, lam_hist, abar_hist, t_abs, sum_a, sum_a2, p


def measure_c0(phi_history: np.ndarray) -> float:
    """Persistent correlation from consecutive position snapshots.

    The stationary two-time correlation has the form c0 + (1 - c0)(-1)^tau;
    averaging lag pairs (tau, tau+1) over the upper half of the available
    lags cancels the staggered part and returns c0.
    """
    phi = np.asarray(phi_history, dtype=np.float64)
    if phi.ndim != 2 or phi.shape[0] < 8:
        raise ContractError("need at least 8 unit-stride snapshots to estimate c0")
    return persistent_correlation(lag_correlations(phi))


def run_experiment(
    params: GameParams,
    sample: DisorderSample | None = None,
    streaming: bool = False,
) -> RunObservables:
    """Equilibrate, measure, and reduce one quenched run to its observables.

    sigma^2 is the time-pattern variance of the recorded bids A^mu(t); the
    staggered bid mean is (1/tau) sum_t (-1)^t Abar(t) with Abar the pattern
    average and t the absolute batch time; sigma_fl^2 subtracts the squared
    staggered mean from sigma^2 (the plain mean is already removed).  With
    streaming=True no N x N coupling matrix is built and every step runs in
    the per-pattern form (for N where J does not fit comfortably).
    """
    if params.t_measure < MIN_MEASURE_STEPS:
        raise ContractError(f"t_measure must be >= {MIN_MEASURE_STEPS} for stable estimates")
    if sample is None:
        sample = generate_disorder(params)
    if sample.n_agents != params.n_agents:
        raise ContractError("sample size does not match params.n_agents")
    couplings = None if streaming else precompute_couplings(sample)

    phi_hist, lam_hist, abar_hist, t_abs, sum_a, sum_a2, p = _run_loop(params, sample, couplings)

    tau = params.t_measure
    mean_a = sum_a / (tau * p)
    sigma2 = sum_a2 / (tau * p) - mean_a**2
    sigma = float(np.sqrt(max(sigma2, 0.0)))
    signs = np.where(t_abs % 2 == 0, 1.0, -1.0)
    bid_staggered = float(np.mean(signs * abar_hist))
    sigma_fl = float(np.sqrt(max(sigma2 - bid_staggered**2, 0.0)))

    fit = fit_line(t_abs.astype(np.float64), lam_hist)
    frozen = (
        fit.slope > FROZEN_SLOPE_SIGMAS * fit.slope_stderr
        and lam_hist[-1] > FROZEN_GROWTH_FACTOR * lam_hist[0]
    )
    return RunObservables(
        c0_hat=measure_c0(phi_hist),
        sigma=sigma,
        sigma_fl=sigma_fl,
        lambda_mean=float(lam_hist.mean()),
        lambda_slope=fit.slope,
        bid_mean=mean_a,
        bid_staggered=bid_staggered,
        frozen_flag=bool(frozen),
    )

"""Deterministic iteration of the exact two-time order-parameter dynamics.

The effective single-agent process behind the batch spherical game is linear,

    q(t+1) = q(t) - alpha sum_{t'<=t} M_tt' q(t')/lambda(t') + sqrt(alpha) eta(t)
    M      = (1 + G)^(-1) - kappa 1            (restricted to the causal triangle)
    <eta(t) eta(t')> = Sigma_tt' = [(1+G)^(-1) D (1+G^T)^(-1)]_tt'
    D_tt'  = 1 + C_tt' + 2 A_e(t) A_e(t')

so every second moment obeys a closed causal recursion and no sampling is
needed.  With K_tt' = <q(t) q(t')> and L_tt' = <eta(t) q(t')> one step grows
the triangle by one row:

    L_{t,s+1}  = L_{t,s} - alpha sum_{t'<=s} M_st' L_{t,t'}/lambda(t') + sqrt(alpha) Sigma_ts
    K_{t+1,s}  = K_{t,s} - alpha sum_{t'<=t} M_tt' K_{t',s}/lambda(t') + sqrt(alpha) L_{t,s}
    K_{t+1,t+1} follows by applying the same update to the second factor,
    lambda(t+1) = sqrt(K_{t+1,t+1}),   C_{t+1,s} = K_{t+1,s} / (lambda(t+1) lambda(s))

and the response is carried unnormalized, G_ts = g_ts / lambda(t), with

    g_{t+1,s} = g_{t,s} + delta_ts - alpha sum_{t'<=t} M_tt' g_{t',s}/lambda(t').

(1+G) is unit lower triangular, so its inverse is obtained exactly by forward
substitution on the grown triangle.  Note that L is a full matrix: eta is
correlated across all time pairs, so <eta(t) q(s)> != 0 even for s <= t.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import solve_triangular

from .core import ContractError, ExternalBid
from .estimators import fit_line, persistent_correlation


class KernelInstabilityError(RuntimeError):
    """The moment recursion produced a nonpositive diagonal second moment."""


@dataclass(frozen=True)
class KernelParams:
    """Horizon and control parameters for one kernel iteration."""

    alpha: float
    kappa: float = 0.0
    external: ExternalBid = field(default_factory=ExternalBid)
    lambda0: float = 1.0
    T: int = 400

    def __post_init__(self) -> None:
        if not (self.alpha >= 0.0 and np.isfinite(self.alpha)):
            raise ContractError(f"alpha must be finite and >= 0, got {self.alpha}")
        if not 0.0 <= self.kappa <= 1.0:
            raise ContractError(f"kappa must lie in [0, 1], got {self.kappa}")
        if not (self.lambda0 > 0.0 and np.isfinite(self.lambda0)):
            raise ContractError(f"lambda0 must be > 0, got {self.lambda0}")
        if self.T < 1:
            raise ContractError(f"T must be >= 1, got {self.T}")


@dataclass(frozen=True)
class KernelState:
    """Two-time kernels on the grid {0..T}^2.

    C is symmetric with unit diagonal, G strictly lower triangular, K the
    unnormalized moments <q q>, L the noise-trajectory cross moments
    <eta(t) q(t')>, Sigma the effective noise covariance and D its source.
    """

    params: KernelParams
    T: int
    C: np.ndarray
    G: np.ndarray
    lambda_traj: np.ndarray
    K: np.ndarray
    L: np.ndarray
    Sigma: np.ndarray
    D: np.ndarray


@dataclass(frozen=True)
class KernelTail:
    """Stationary estimates extracted from the tail of a kernel state."""

    c0: float
    lam: float
    Lambda: float
    sigma_fl: float


def causal_inverse(G: np.ndarray) -> np.ndarray:
    """(1 + G)^(-1) for a strictly lower triangular response matrix."""
    n = G.shape[0]
    return solve_triangular(np.eye(n) + G, np.eye(n), lower=True, unit_diagonal=True)


def memory_rows(G: np.ndarray, kappa: float, lam: np.ndarray) -> np.ndarray:
    """Rows of [(1+G)^(-1) - kappa 1] with columns pre-divided by lambda(t')."""
    ml = causal_inverse(G)
    ml[np.diag_indices_from(ml)] -= kappa
    ml /= lam[np.newaxis, :]
    return ml


def iterate_kernels(params: KernelParams) -> KernelState:
    """Grow the C, G, lambda trajectory step by step up to horizon T.

    Each entry of the kernels is computed exactly once and never revisited;
    rows of the triangular inverse, the noise covariance, and the cross
    moments are refreshed as the triangle grows.  Raises
    KernelInstabilityError if the diagonal moment closure fails.
    """
    n = params.T + 1
    alpha, kappa = params.alpha, params.kappa
    sqrt_a = np.sqrt(alpha)
    a_e = params.external.series(n)

    C = np.zeros((n, n))
    G = np.zeros((n, n))
    K = np.zeros((n, n))
    L = np.zeros((n, n))
    Sig = np.zeros((n, n))
    D = np.zeros((n, n))
    W = np.zeros((n, n))  # (1+G)^(-1), grown by forward substitution
    g = np.zeros((n, n))  # response to a valuation kick, G = g / lambda
    Ml = np.zeros((n, n))  # memory rows divided by lambda(t')
    lam = np.zeros(n)

    lam[0] = params.lambda0
    K[0, 0] = params.lambda0**2
    C[0, 0] = 1.0
    W[0, 0] = 1.0

    def refresh_rows(t: int) -> None:
        """Row t of W, D, Sigma, Ml and the cross-moment row L[t, :t+2]."""
        if t > 0:
            W[t, :t] = -(G[t, :t] @ W[:t, :t])
            W[t, t] = 1.0
        D[t, : t + 1] = 1.0 + C[t, : t + 1] + 2.0 * a_e[t] * a_e[: t + 1]
        D[: t + 1, t] = D[t, : t + 1]
        Sig[t, : t + 1] = (W[t, : t + 1] @ D[: t + 1, : t + 1]) @ W[: t + 1, : t + 1].T
        Sig[: t + 1, t] = Sig[t, : t + 1]
        Ml[t, : t + 1] = W[t, : t + 1]
        Ml[t, t] -= kappa
        Ml[t, : t + 1] /= lam[: t + 1]
        for u in range(min(t + 1, n - 1)):
            L[t, u + 1] = (
                L[t, u] - alpha * (Ml[u, : u + 1] @ L[t, : u + 1]) + sqrt_a * Sig[t, u]
            )

    for t in range(params.T):
        refresh_rows(t)

        K[t + 1, : t + 1] = (
            K[t, : t + 1] - alpha * (Ml[t, : t + 1] @ K[: t + 1, : t + 1]) + sqrt_a * L[t, : t + 1]
        )
        K[t + 1, t + 1] = (
            K[t + 1, t] - alpha * (Ml[t, : t + 1] @ K[t + 1, : t + 1]) + sqrt_a * L[t, t + 1]
        )
        if not K[t + 1, t + 1] > 0.0:
            raise KernelInstabilityError(
                f"<q^2> closure failed at t={t + 1}: K={K[t + 1, t + 1]:.3e}, "
                f"lambda tail {lam[max(0, t - 3) : t + 1]}"
            )
        K[: t + 1, t + 1] = K[t + 1, : t + 1]
        lam[t + 1] = np.sqrt(K[t + 1, t + 1])
        C[t + 1, : t + 2] = K[t + 1, : t + 2] / (lam[t + 1] * lam[: t + 2])
        C[: t + 2, t + 1] = C[t + 1, : t + 2]

        g[t + 1, : t + 1] = g[t, : t + 1] - alpha * (Ml[t, : t + 1] @ g[: t + 1, : t + 1])
        g[t + 1, t] += 1.0
        G[t + 1, : t + 1] = g[t + 1, : t + 1] / lam[t + 1]

    refresh_rows(params.T)  # complete the last rows of W, D, Sigma, L
    # The in-loop fill of L[t, :] stops at the superdiagonal entry, which is
    # all the K closure consumes.  Extend every row to the full horizon (the
    # noise influences all later times) now that Sigma and Ml are final.
    for t in range(n):
        for u in range(t + 1, n - 1):
            L[t, u + 1] = (
                L[t, u] - alpha * (Ml[u, : u + 1] @ L[t, : u + 1]) + sqrt_a * Sig[t, u]
            )
    return KernelState(
        params=params, T=params.T, C=C, G=G, lambda_traj=lam, K=K, L=L, Sigma=Sig, D=D
    )


def bid_mean_trajectory(state: KernelState, a_e: np.ndarray) -> np.ndarray:
    """Deterministic bid-mean series sum_{t'} (1+G)^(-1)_tt' a_e(t').

    Under a stationary (alternating) drive, the plain (staggered) tail average
    approaches A/(1+chi) (A/(1+chi_hat)).
    """
    a_e = np.asarray(a_e, dtype=np.float64)
    if a_e.shape != (state.T + 1,):
        raise ContractError(f"a_e must have length T+1 = {state.T + 1}")
    return causal_inverse(state.G) @ a_e


def extract_stationary(state: KernelState, tail_fraction: float = 0.25) -> KernelTail:
    """Tail-window estimates of c0, lambda, Lambda, and sigma_fl.

    c0 comes from consecutive-lag pair averaging over the tail block of C;
    Lambda is the fitted slope of lambda(t) over the tail; sigma_fl^2 is the
    tail average of diag[(1+G)^(-1) (1 + C) (1+G^T)^(-1)] / 2.
    """
    if not 0.0 < tail_fraction <= 0.5:
        raise ContractError(f"tail_fraction must lie in (0, 0.5], got {tail_fraction}")
    n = state.T + 1
    n_tail = int(round(tail_fraction * n))
    if n_tail < 8:
        raise ContractError(f"tail window has {n_tail} points, need >= 8")
    idx = np.arange(n - n_tail, n)

    block = state.C[np.ix_(idx, idx)]
    c_lag = np.array([np.mean(np.diagonal(block, offset=tau)) for tau in range(n_tail)])
    c0 = persistent_correlation(c_lag)

    lam_tail = state.lambda_traj[idx]
    fit = fit_line(idx.astype(np.float64), lam_tail)

    W = causal_inverse(state.G)
    d0 = 1.0 + state.C
    wt = W[idx, :]
    diag_tail = np.einsum("ij,jk,ik->i", wt, d0, wt)
    sigma_fl = float(np.sqrt(max(np.mean(diag_tail) / 2.0, 0.0)))

    return KernelTail(
        c0=c0, lam=float(lam_tail.mean()), Lambda=fit.slope, sigma_fl=sigma_fl
    )

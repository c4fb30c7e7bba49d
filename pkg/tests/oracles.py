"""Independent reference implementations used as test oracles.

Everything here is written from the defining sums with explicit Python loops
(or direct stochastic sampling), deliberately sharing no code path with the
package implementations it checks.
"""

from __future__ import annotations

import math

import numpy as np

from sphmg.core import DisorderSample
from sphmg.kernels import KernelState, memory_rows


def sample_from_tables(r1, r2) -> DisorderSample:
    """Build a DisorderSample from explicit +-1 look-up tables."""
    r1 = np.asarray(r1, dtype=np.int8)
    r2 = np.asarray(r2, dtype=np.int8)
    assert set(np.unique(r1)) <= {-1, 1} and set(np.unique(r2)) <= {-1, 1}
    xi = ((r1 - r2) // 2).astype(np.int8)
    omega = ((r1 + r2) // 2).astype(np.int8)
    Omega = omega.sum(axis=0) / math.sqrt(r1.shape[0])
    return DisorderSample(xi=xi, omega=omega, Omega=Omega)


def mirrored_sample(sample: DisorderSample) -> DisorderSample:
    """Duplicate agents with negated omega rows so the pattern bias vanishes."""
    xi = np.concatenate([sample.xi, sample.xi])
    omega = np.concatenate([sample.omega, -sample.omega])
    Omega = omega.sum(axis=0) / math.sqrt(xi.shape[0])
    return DisorderSample(xi=xi, omega=omega, Omega=Omega)


def brute_force_bids(phi, sample: DisorderSample, a_e: float) -> list[float]:
    """Per-pattern total bids evaluated by literal summation."""
    n, p = sample.xi.shape
    sqrt_n = math.sqrt(n)
    bids = []
    for mu in range(p):
        inner = sum(phi[j] * float(sample.xi[j, mu]) for j in range(n))
        bids.append(a_e + float(sample.Omega[mu]) + inner / sqrt_n)
    return bids


def brute_force_step(q, phi, sample: DisorderSample, a_e: float, kappa: float):
    """One batch step evaluated pattern by pattern, then renormalized."""
    n, p = sample.xi.shape
    sqrt_n = math.sqrt(n)
    bids = brute_force_bids(phi, sample, a_e)
    q_new = []
    for i in range(n):
        acc = 0.0
        for mu in range(p):
            xi = float(sample.xi[i, mu])
            acc += xi * (bids[mu] - (kappa / sqrt_n) * phi[i] * xi)
        q_new.append(q[i] - (2.0 / sqrt_n) * acc)
    lam = math.sqrt(sum(v * v for v in q_new) / n)
    phi_new = [v / lam for v in q_new]
    return q_new, lam, phi_new


def brute_force_trajectory(q0, sample: DisorderSample, a_e_of_t, kappa: float, n_steps: int):
    """Iterate brute_force_step; a_e_of_t maps the batch time to the drive."""
    n = len(q0)
    lam = math.sqrt(sum(v * v for v in q0) / n)
    q = list(q0)
    phi = [v / lam for v in q]
    qs = [list(q)]
    for t in range(n_steps):
        q, lam, phi = brute_force_step(q, phi, sample, a_e_of_t(t), kappa)
        qs.append(list(q))
    return qs


def sample_effective_process(state: KernelState, n_paths: int, rng: np.random.Generator):
    """Monte Carlo estimate of the correlation matrix of the effective process.

    Draws Gaussian noise paths with the kernel state's converged covariance,
    integrates the linear valuation recursion per path with the kernel
    state's (fixed) memory and lambda trajectory, and returns (C_mc, C_se),
    the entrywise mean and standard error of phi(t) phi(t').
    """
    p = state.params
    T = state.T
    eta = rng.multivariate_normal(np.zeros(T), state.Sigma[:T, :T], size=n_paths, method="eigh")
    ml = memory_rows(state.G, p.kappa, state.lambda_traj)
    q = np.empty((n_paths, T + 1))
    q[:, 0] = p.lambda0 * rng.choice([-1.0, 1.0], size=n_paths)
    sqrt_a = math.sqrt(p.alpha)
    for t in range(T):
        q[:, t + 1] = q[:, t] - p.alpha * (q[:, : t + 1] @ ml[t, : t + 1]) + sqrt_a * eta[:, t]
    phi = q / state.lambda_traj[np.newaxis, :]
    c_mc = (phi.T @ phi) / n_paths
    second = ((phi**2).T @ (phi**2)) / n_paths
    c_se = np.sqrt(np.maximum(second - c_mc**2, 0.0) / n_paths)
    return c_mc, c_se

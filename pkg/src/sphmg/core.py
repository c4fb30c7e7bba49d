"""Game configuration, quenched strategy disorder, and compiled couplings.

N agents each hold two binary look-up tables over p = round(alpha*N)
information patterns.  Only the half-difference xi and half-sum omega of the
two tables enter the batch dynamics; omega appears through the pattern bias
Omega_mu = N^(-1/2) sum_i omega_i^mu.  Because the batch valuation update is
affine in the normalized positions phi, a quenched sample can be compiled once
into dense couplings

    J_ij = (2/N) sum_mu xi_i^mu xi_j^mu      (agent-agent coupling)
    h_i  = (2/sqrt(N)) sum_mu xi_i^mu Omega_mu
    b_i  = (2/sqrt(N)) sum_mu xi_i^mu        (response to the external bid)
    d_i  = (2/N) sum_mu (xi_i^mu)^2          (self-coupling, J_ii)

after which one batch step is a single matrix-vector product.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

# Budget for one quenched sample: N*p int8 entries per table.
MAX_TABLE_ENTRIES = 2**28

# Sub-stream indices derived from GameParams.seed, so that strategy draws and
# initial-condition draws come from independent generators.
_STREAM_DISORDER = 0
_STREAM_INIT = 1


class ContractError(ValueError):
    """A caller violated an interface precondition (shape, range, or order)."""


class ResourceBudgetError(MemoryError):
    """Requested strategy tables exceed the configured allocation budget."""


class DegenerateStateError(RuntimeError):
    """The valuation vector became exactly zero, so phi = q/lambda is undefined."""


def rng_stream(seed: int, purpose: int) -> np.random.Generator:
    """Independent, reproducible generator for one purpose under one seed."""
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(purpose,)))


@dataclass(frozen=True)
class ExternalBid:
    """External additive contribution to the total market bid.

    value_at(t) = amplitude * (-1)^(zeta*t): a constant offset for zeta=0, a
    period-2 alternation for zeta=1.  amplitude=0 reproduces the unperturbed
    game for either zeta.
    """

    zeta: int = 0
    amplitude: float = 0.0

    def __post_init__(self) -> None:
        if self.zeta not in (0, 1):
            raise ContractError(f"zeta must be 0 or 1, got {self.zeta!r}")
        if not (self.amplitude >= 0.0 and np.isfinite(self.amplitude)):
            raise ContractError(f"amplitude must be finite and >= 0, got {self.amplitude!r}")

    def value_at(self, t: int) -> float:
        if self.zeta == 1 and t % 2 == 1:
            return -self.amplitude
        return self.amplitude

    def series(self, n_steps: int, t0: int = 0) -> np.ndarray:
        """Values at times t0, t0+1, ..., t0+n_steps-1."""
        out = np.full(n_steps, self.amplitude, dtype=np.float64)
        if self.zeta == 1:
            start = (1 - t0 % 2) % 2  # first odd time in the window
            out[start::2] *= -1.0
        return out


@dataclass(frozen=True)
class GameParams:
    """Full experiment configuration for one quenched run.

    n_agents == N; the pattern count is p = round(alpha*N), floored at 1, and
    realized_alpha = p/N is what theory comparisons should use.  kappa in
    [0, 1] is the degree of self-impact correction.  init_scale is the
    magnitude of the initial valuations (1 = biased start, 1e-4 = unbiased
    start); sign_bias shifts the probability of positive initial signs to
    (1 + sign_bias)/2.
    """

    n_agents: int
    alpha: float
    kappa: float = 0.0
    external: ExternalBid = field(default_factory=ExternalBid)
    init_scale: float = 1.0
    t_equilibrate: int = 1000
    t_measure: int = 2000
    seed: int = 0
    sign_bias: float = 0.0

    def __post_init__(self) -> None:
        if self.n_agents < 1:
            raise ContractError(f"n_agents must be >= 1, got {self.n_agents}")
        if not (self.alpha > 0.0 and np.isfinite(self.alpha)):
            raise ContractError(f"alpha must be finite and > 0, got {self.alpha}")
        if not 0.0 <= self.kappa <= 1.0:
            raise ContractError(f"kappa must lie in [0, 1], got {self.kappa}")
        if not (self.init_scale > 0.0 and np.isfinite(self.init_scale)):
            raise ContractError(f"init_scale must be > 0, got {self.init_scale}")
        if self.t_equilibrate < 0:
            raise ContractError("t_equilibrate must be >= 0")
        if self.t_measure < 1:
            raise ContractError("t_measure must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ContractError("seed must be a 64-bit unsigned integer")
        if not -1.0 <= self.sign_bias <= 1.0:
            raise ContractError("sign_bias must lie in [-1, 1]")

    @property
    def n_patterns(self) -> int:
        return max(1, int(round(self.alpha * self.n_agents)))

    @property
    def realized_alpha(self) -> float:
        return self.n_patterns / self.n_agents


@dataclass(frozen=True)
class DisorderSample:
    """One quenched strategy realization.

    xi and omega are (N, p) int8 matrices with entries in {-1, 0, +1}; for
    every (i, mu) exactly one of xi_i^mu, omega_i^mu is nonzero because they
    are the half-difference and half-sum of two +-1 tables.  Omega is the
    length-p float vector N^(-1/2) sum_i omega_i^mu.
    """

    xi: np.ndarray
    omega: np.ndarray
    Omega: np.ndarray

    @property
    def n_agents(self) -> int:
        return self.xi.shape[0]

    @property
    def n_patterns(self) -> int:
        return self.xi.shape[1]


@dataclass(frozen=True)
class Couplings:
    """Dense coupling tables compiled from one DisorderSample (float64)."""

    J: np.ndarray
    h: np.ndarray
    b: np.ndarray
    d: np.ndarray

    @property
    def n_agents(self) -> int:
        return self.h.shape[0]


def _freeze(*arrays: np.ndarray) -> None:
    for a in arrays:
        a.flags.writeable = False


def generate_disorder(params: GameParams, max_entries: int = MAX_TABLE_ENTRIES) -> DisorderSample:
    """Draw the two +-1 look-up tables and reduce them to (xi, omega, Omega).

    Every table entry is an independent fair coin.  The draw is a pure
    function of params.seed: identical seeds give bit-identical samples.
    """
    n, p = params.n_agents, params.n_patterns
    if n * p > max_entries:
        raise ResourceBudgetError(
            f"disorder sample needs {n * p} entries/table, budget is {max_entries}"
        )
    rng = rng_stream(params.seed, _STREAM_DISORDER)
    r1 = rng.integers(0, 2, size=(n, p), dtype=np.int8)
    r2 = rng.integers(0, 2, size=(n, p), dtype=np.int8)
    r1 = (2 * r1 - 1).astype(np.int8)
    r2 = (2 * r2 - 1).astype(np.int8)
    xi = ((r1 - r2) // 2).astype(np.int8)
    omega = ((r1 + r2) // 2).astype(np.int8)
    Omega = omega.sum(axis=0, dtype=np.int64) / np.sqrt(n)
    _freeze(xi, omega, Omega)
    return DisorderSample(xi=xi, omega=omega, Omega=Omega)


def precompute_couplings(sample: DisorderSample) -> Couplings:
    """Compile (J, h, b, d) so that one batch step is an O(N^2) product.

    The xi self-product is taken in float32: all partial sums are integers
    bounded by p < 2^24, so the accumulation is exact and the float64 result
    is the exact integer matrix scaled by 2/N.
    """
    n = sample.n_agents
    xf = sample.xi.astype(np.float32)
    J = (xf @ xf.T).astype(np.float64) * (2.0 / n)
    xd = sample.xi.astype(np.float64)
    h = (2.0 / np.sqrt(n)) * (xd @ sample.Omega)
    b = (2.0 / np.sqrt(n)) * xd.sum(axis=1)
    d = (2.0 / n) * np.abs(sample.xi).sum(axis=1, dtype=np.int64).astype(np.float64)
    _freeze(J, h, b, d)
    return Couplings(J=J, h=h, b=b, d=d)

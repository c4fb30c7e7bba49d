"""Spherical minority game laboratory.

Three independent engines for the batch spherical minority game under static
or period-2 oscillating external bid perturbations with partial self-impact
correction:

* ``simulator``: agent-level integration of the batch dynamics at finite N;
* ``theory``: exact closed-form stationary solutions and transition lines;
* ``kernels``: deterministic iteration of the exact two-time correlation and
  response dynamics of the effective single-agent process.

The ``cli`` module drives parameter sweeps and cross-engine comparisons.
"""

from .core import (
    ContractError,
    Couplings,
    DegenerateStateError,
    DisorderSample,
    ExternalBid,
    GameParams,
    ResourceBudgetError,
    generate_disorder,
    precompute_couplings,
)
from .kernels import (
    KernelInstabilityError,
    KernelParams,
    KernelState,
    KernelTail,
    bid_mean_trajectory,
    extract_stationary,
    iterate_kernels,
)
from .simulator import (
    AgentState,
    RunObservables,
    batch_step,
    init_state,
    market_bids,
    measure_c0,
    run_experiment,
)
from .theory import (
    Phase,
    StationaryTheory,
    alpha_c1,
    alpha_c2,
    alpha_c2_via_c0,
    classify_phase,
    ergodic_solution,
    frozen_solution,
    stationary_residuals,
    stationary_solution,
)

__version__ = "0.1.0"

__all__ = [
    "AgentState",
    "ContractError",
    "Couplings",
    "DegenerateStateError",
    "DisorderSample",
    "ExternalBid",
    "GameParams",
    "KernelInstabilityError",
    "KernelParams",
    "KernelState",
    "KernelTail",
    "Phase",
    "ResourceBudgetError",
    "RunObservables",
    "StationaryTheory",
    "alpha_c1",
    "alpha_c2",
    "alpha_c2_via_c0",
    "batch_step",
    "bid_mean_trajectory",
    "classify_phase",
    "ergodic_solution",
    "extract_stationary",
    "frozen_solution",
    "generate_disorder",
    "init_state",
    "iterate_kernels",
    "market_bids",
    "measure_c0",
    "precompute_couplings",
    "run_experiment",
    "stationary_residuals",
    "stationary_solution",
    "__version__",
]

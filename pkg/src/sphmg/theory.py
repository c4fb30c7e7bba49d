"""Exact stationary solutions of the batch spherical minority game.

Everything here is a closed form in the control parameters (alpha, kappa,
A, zeta) where A >= 0 is the external-bid amplitude and zeta selects a static
(zeta=0) or period-2 oscillating (zeta=1) drive.  Only A^2 * delta(zeta, 0)
enters the static formulas, abbreviated a2 below; the oscillating drive
enters only the staggered susceptibility chi_hat through 2 A^2 / (1 - c0).

Phases as a function of alpha, for fixed (kappa, A, zeta):

    alpha <= alpha_c1            anomalous (A):  c0 = 1, chi = inf
    alpha_c1 < alpha <= alpha_c2 frozen (F):     c0 = 1, lambda(t) ~ Lambda*t
    alpha > alpha_c2             oscillating (O): c0 < 1, lambda finite

with boundaries

    alpha_c1 = 1 / (2 (1 + a2))
    alpha_c2 = [R - 2(1-kappa) + sqrt(R^2 - 4(1-kappa) R)] / (2 (1-kappa)^2),
    R = (3 + 2 a2)^2 / (2 + 2 a2)

alpha_c2 is also the locus c0 = 1 of the finite-lambda solution; the second
route below (alpha_c2_via_c0) evaluates that form and must agree to 1e-9.

Frozen phase (diverging constraint force, growth rate Lambda):

    chi      = 1 / (sqrt(2 alpha (1 + a2)) - 1)         chi_hat = 0
    Lambda   = -1 - alpha (1-kappa) + sqrt(alpha) (3 + 2 a2) / sqrt(2 (1 + a2))
    sigma_fl = 1 - 1 / sqrt(2 alpha (1 + a2))

Oscillating phase (finite lambda = alpha (gamma - kappa) / 2):

    chi   = smaller root of  alpha kappa chi^2 + chi [1 + alpha (kappa-1)] + 1 = 0
    c0    = chi (1 + 2 a2) / (1 - kappa (1 + chi)^2)
    chi_hat(+-) = -1 / (1 +- s),  s = sqrt(alpha [1 + 2 A^2 d(zeta,1) / (1 - c0)])
    gamma = -[1 + chi_hat (1 - alpha)] / (alpha chi_hat (1 + chi_hat))
    sigma_fl^2 = (1 + c0) / (2 (1+chi)^2) + (1 - c0) / (2 (1+chi_hat)^2)

The physical staggered branch is chi_hat_plus (in-phase, high volatility).
The conventional volatility obeys sigma^2 = sigma_fl^2 + A^2/(1+chi_hat)^2
under an oscillating drive and sigma = sigma_fl under a static one, while the
bid averages are A/(1+chi) (plain, zeta=0) and A/(1+chi_hat) (staggered,
zeta=1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .core import ContractError

# Discriminants within this distance of zero are clamped to zero so that
# boundary-grid sweeps do not fail on float noise.
DISC_CLAMP = 1e-12


class Phase(Enum):
    OSCILLATING = "O"
    FROZEN = "F"
    ANOMALOUS = "A"

    def __str__(self) -> str:  # compact form for tables
        return self.value


@dataclass(frozen=True)
class StationaryTheory:
    """Stationary observables; None marks quantities the theory leaves open.

    lam is the stationary constraint force (inf in the frozen phase), Lambda
    its linear growth rate (positive only in the frozen phase).  chi_hat is
    the physical (in-phase) staggered branch; the out-of-phase branch is kept
    in chi_hat_minus for diagnostics.
    """

    phase: Phase
    chi: float
    chi_hat: float | None
    chi_hat_minus: float | None
    c0: float | None
    lam: float | None
    Lambda: float | None
    gamma: float | None
    psi0: float | None
    psi1: float | None
    sigma_fl: float | None
    sigma: float | None
    bid_mean: float | None
    bid_staggered: float | None


def _static_a2(A_tilde: float, zeta: int) -> float:
    """A^2 if the drive is static, else 0 (only A^2 delta(zeta,0) enters)."""
    _check_inputs(A_tilde, zeta)
    return A_tilde * A_tilde if zeta == 0 else 0.0


def _check_inputs(A_tilde: float, zeta: int) -> None:
    if zeta not in (0, 1):
        raise ContractError(f"zeta must be 0 or 1, got {zeta!r}")
    if not (A_tilde >= 0.0 and np.isfinite(A_tilde)):
        raise ContractError(f"A_tilde must be finite and >= 0, got {A_tilde!r}")


def _check_kappa(kappa: float) -> None:
    if not 0.0 <= kappa <= 1.0:
        raise ContractError(f"kappa must lie in [0, 1], got {kappa!r}")


def alpha_c1(A_tilde: float, zeta: int) -> float:
    """Ergodicity-breaking line (chi diverges): 1 / (2 (1 + A^2 d(zeta,0)))."""
    a2 = _static_a2(A_tilde, zeta)
    return 0.5 / (1.0 + a2)


def _big_r(a2: float) -> float:
    return (3.0 + 2.0 * a2) ** 2 / (2.0 + 2.0 * a2)


def alpha_c2(A_tilde: float, kappa: float, zeta: int) -> float:
    """Frozen-to-oscillating line: where the frozen growth rate Lambda hits 0.

    Plus-branch of the quadratic in alpha; the minus branch falls inside the
    nonergodic regime and is not physical.  Diverges at kappa = 1 (full
    self-impact correction), returned as +inf.
    """
    a2 = _static_a2(A_tilde, zeta)
    _check_kappa(kappa)
    if kappa == 1.0:
        return math.inf
    r = _big_r(a2)
    disc = r * r - 4.0 * (1.0 - kappa) * r
    if disc < 0.0:  # cannot happen: r >= 4.5 > 4 (1 - kappa)
        raise ContractError("negative discriminant in alpha_c2")
    return (r - 2.0 * (1.0 - kappa) + math.sqrt(disc)) / (2.0 * (1.0 - kappa) ** 2)


def alpha_c2_via_c0(A_tilde: float, kappa: float, zeta: int) -> float:
    """Same line obtained from the c0 = 1 condition of the finite-lambda state.

    With Xi = sqrt((1 + 2 a2)^2 + 8 kappa (1 + a2)) the line reads

        2 (Xi - 1 - 2 a2) / [(Xi - 1 - 2 a2 - 2 kappa) (3 + 2 a2 - Xi)]

    whose differences cancel badly for large a2 and kappa near 1 (and is 0/0
    at kappa = 0).  Each difference reduces exactly against Xi^2, e.g.
    Xi^2 - (1 + 2 a2 + 2 kappa)^2 = 4 kappa (1 - kappa), which yields the
    cancellation-free equivalent evaluated here:

        (Xi + 1 + 2 a2 + 2 kappa) (3 + 2 a2 + Xi) / [2 (1-kappa)^2 (Xi + 1 + 2 a2)]

    This form is finite and exact down to kappa = 0, where it gives
    2 (1 + a2); it diverges at kappa = 1, returned as +inf.
    """
    a2 = _static_a2(A_tilde, zeta)
    _check_kappa(kappa)
    if kappa == 1.0:
        return math.inf
    xi = math.sqrt((1.0 + 2.0 * a2) ** 2 + 8.0 * kappa * (1.0 + a2))
    num = (xi + 1.0 + 2.0 * a2 + 2.0 * kappa) * (3.0 + 2.0 * a2 + xi)
    den = 2.0 * (1.0 - kappa) ** 2 * (xi + 1.0 + 2.0 * a2)
    return num / den


def _chi_minus(alpha: float, kappa: float) -> float:
    """Smaller root of  alpha kappa chi^2 + chi [1 + alpha (kappa-1)] + 1 = 0.

    For x = alpha (1-kappa) - 1 > 0 (always true above the frozen-to-
    oscillating line) the conjugate form 2 / (x + sqrt(x^2 - 4 alpha kappa))
    avoids cancellation and reduces to 1/(alpha-1) exactly at kappa = 0.  For
    x < 0, reachable only in the small-alpha algebra regime below the
    existence gap, the literal root is the stable one.
    """
    x = alpha * (1.0 - kappa) - 1.0
    disc = x * x - 4.0 * alpha * kappa
    if disc < 0.0:
        if disc < -DISC_CLAMP:
            raise ContractError(
                f"no finite-constraint-force solution at alpha={alpha}, kappa={kappa}"
            )
        disc = 0.0
    s = math.sqrt(disc)
    if x > 0.0:
        return 2.0 / (x + s)
    if kappa == 0.0:
        raise ContractError("finite-force branch diverges for alpha <= 1 at kappa = 0")
    return (x - s) / (2.0 * alpha * kappa)


def _finite_force_c0(alpha: float, kappa: float, a2: float) -> float:
    """Persistent correlation of the finite-force branch, physical or not."""
    chi = _chi_minus(alpha, kappa)
    return chi * (1.0 + 2.0 * a2) / (1.0 - kappa * (1.0 + chi) ** 2)


def classify_phase(alpha: float, kappa: float, A_tilde: float, zeta: int) -> Phase:
    """Phase at (alpha, kappa, A, zeta); exact boundaries go to the lower-alpha phase."""
    if not (alpha > 0.0 and np.isfinite(alpha)):
        raise ContractError(f"alpha must be finite and > 0, got {alpha!r}")
    if alpha <= alpha_c1(A_tilde, zeta):
        return Phase.ANOMALOUS
    if alpha <= alpha_c2(A_tilde, kappa, zeta):
        return Phase.FROZEN
    return Phase.OSCILLATING


def frozen_solution(alpha: float, kappa: float, A_tilde: float, zeta: int) -> StationaryTheory:
    """Closed forms in the frozen window alpha_c1 < alpha <= alpha_c2."""
    a2 = _static_a2(A_tilde, zeta)
    _check_kappa(kappa)
    if classify_phase(alpha, kappa, A_tilde, zeta) is not Phase.FROZEN:
        raise ContractError(f"alpha={alpha} is outside the frozen window")
    root = math.sqrt(2.0 * alpha * (1.0 + a2))  # > 1 inside the window
    chi = 1.0 / (root - 1.0)
    lam_rate = -1.0 - alpha * (1.0 - kappa) + math.sqrt(alpha) * (3.0 + 2.0 * a2) / math.sqrt(
        2.0 * (1.0 + a2)
    )
    sigma_fl = 1.0 - 1.0 / root
    stag = A_tilde if zeta == 1 else 0.0  # chi_hat = 0 makes the staggered gain 1
    sigma = math.sqrt(sigma_fl**2 + stag**2)
    return StationaryTheory(
        phase=Phase.FROZEN,
        chi=chi,
        chi_hat=0.0,
        chi_hat_minus=None,
        c0=1.0,
        lam=math.inf,
        Lambda=lam_rate,
        gamma=None,
        psi0=1.0,
        psi1=0.0,
        sigma_fl=sigma_fl,
        sigma=sigma,
        bid_mean=A_tilde / (1.0 + chi) if zeta == 0 else 0.0,
        bid_staggered=stag,
    )


def ergodic_solution(alpha: float, kappa: float, A_tilde: float, zeta: int) -> StationaryTheory:
    """Finite-constraint-force solution for alpha > alpha_c2.

    chi is the smaller root of the static quadratic, evaluated in the
    cancellation-free form 2 / (x + sqrt(x^2 - 4 alpha kappa)) with
    x = alpha (1-kappa) - 1, which reproduces the kappa -> 0 limit
    1/(alpha - 1) exactly at kappa = 0.
    """
    a2 = _static_a2(A_tilde, zeta)
    _check_kappa(kappa)
    if classify_phase(alpha, kappa, A_tilde, zeta) is not Phase.OSCILLATING:
        raise ContractError(f"alpha={alpha} is not above the frozen-to-oscillating line")

    chi = _chi_minus(alpha, kappa)
    c0 = chi * (1.0 + 2.0 * a2) / (1.0 - kappa * (1.0 + chi) ** 2)
    if not 0.0 <= c0 < 1.0:
        raise ContractError(f"persistent correlation c0={c0} outside [0, 1)")

    osc = 2.0 * A_tilde * A_tilde / (1.0 - c0) if zeta == 1 else 0.0
    s = math.sqrt(alpha * (1.0 + osc))  # > 1 since alpha > alpha_c2 >= 2/(1+a2) > 1
    chi_hat = -1.0 / (1.0 + s)
    chi_hat_minus = -1.0 / (1.0 - s)
    gamma = -(1.0 + chi_hat * (1.0 - alpha)) / (alpha * chi_hat * (1.0 + chi_hat))
    lam = 0.5 * alpha * (gamma - kappa)
    if not lam > 0.0:
        raise ContractError(f"nonpositive stationary constraint force lam={lam}")

    sigma_fl2 = (1.0 + c0) / (2.0 * (1.0 + chi) ** 2) + (1.0 - c0) / (2.0 * (1.0 + chi_hat) ** 2)
    stag = A_tilde / (1.0 + chi_hat) if zeta == 1 else 0.0
    sigma = math.sqrt(sigma_fl2 + stag**2)
    return StationaryTheory(
        phase=Phase.OSCILLATING,
        chi=chi,
        chi_hat=chi_hat,
        chi_hat_minus=chi_hat_minus,
        c0=c0,
        lam=lam,
        Lambda=0.0,
        gamma=gamma,
        psi0=(lam + alpha * kappa) / lam,
        psi1=1.0 / lam,
        sigma_fl=math.sqrt(sigma_fl2),
        sigma=sigma,
        bid_mean=A_tilde / (1.0 + chi) if zeta == 0 else 0.0,
        bid_staggered=stag,
    )


def stationary_solution(alpha: float, kappa: float, A_tilde: float, zeta: int) -> StationaryTheory:
    """Dispatch on the phase; the anomalous phase carries only c0 = 1, chi = inf."""
    phase = classify_phase(alpha, kappa, A_tilde, zeta)
    if phase is Phase.FROZEN:
        return frozen_solution(alpha, kappa, A_tilde, zeta)
    if phase is Phase.OSCILLATING:
        return ergodic_solution(alpha, kappa, A_tilde, zeta)
    return StationaryTheory(
        phase=Phase.ANOMALOUS,
        chi=math.inf,
        chi_hat=None,
        chi_hat_minus=None,
        c0=1.0,
        lam=None,
        Lambda=None,
        gamma=None,
        psi0=None,
        psi1=None,
        sigma_fl=None,
        sigma=None,
        bid_mean=None,
        bid_staggered=None,
    )


def stationary_residuals(
    alpha: float, kappa: float, A_tilde: float, zeta: int, sol: StationaryTheory
) -> np.ndarray:
    """Residuals of the four stationary order-parameter equations.

    For a time-translation invariant state (c0, chi, chi_hat, psi0, psi1) the
    reduced equations read

        c0 [alpha psi1 + (1+chi)^2 (1-psi0)]          = alpha psi1 chi (1 + 2 A^2 d(zeta,0))
        (1-c0) [alpha psi1 - (1+chi_hat)^2 (1+psi0)]  = 2 alpha psi1 chi_hat A^2 d(zeta,1)
        (1-psi0) chi (1+chi)                          = psi1 (1 + chi - alpha chi)
        -(1+psi0) chi_hat (1+chi_hat)                 = psi1 (1 + chi_hat - alpha chi_hat)

    and a valid oscillating-phase solution must satisfy all four to float
    accuracy.  Returns the four signed residuals (LHS - RHS).
    """
    a2 = _static_a2(A_tilde, zeta)
    if None in (sol.c0, sol.chi_hat, sol.psi0, sol.psi1):
        raise ContractError("residuals need a fully populated stationary solution")
    c0, chi, ch, p0, p1 = sol.c0, sol.chi, sol.chi_hat, sol.psi0, sol.psi1
    a2_osc = A_tilde * A_tilde if zeta == 1 else 0.0
    r1 = c0 * (alpha * p1 + (1.0 + chi) ** 2 * (1.0 - p0)) - alpha * p1 * chi * (1.0 + 2.0 * a2)
    r2 = (1.0 - c0) * (alpha * p1 - (1.0 + ch) ** 2 * (1.0 + p0)) - 2.0 * alpha * p1 * ch * a2_osc
    r3 = (1.0 - p0) * chi * (1.0 + chi) - p1 * (1.0 + chi - alpha * chi)
    r4 = -(1.0 + p0) * ch * (1.0 + ch) - p1 * (1.0 + ch - alpha * ch)
    return np.array([r1, r2, r3, r4])

"""Nonequilibrium thermodynamics of the cycle, three independent ways.

Average work, the two heats, and the entropy production are computed by

* trace formulas on the evolved state (any propagator mode),
* closed-form expressions (interaction-only evolution semantics),
* finite differences of the two-point-measurement characteristic function.

The trace route is the oracle; the other two are cross-checked against it.

Entropy production uses Sigma = (beta_b - beta_a)*Q_H + beta_b*W, which under
the first law is identical to -beta_a*Q_H - beta_b*Q_C, i.e. the weighted sum
of local energy changes beta_a*dE_a + beta_b*dE_b.
"""

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .linalg import dagger, kron
from .model import (
    IDENTITY_2,
    CycleParams,
    center_population_gap,
    corner_population_gap,
    free_hamiltonian,
    initial_populations,
    initial_state,
    local_hamiltonian,
)
from .propagators import PropagatorMode, evolve, propagator

DEAD_BAND = 1e-12
FIRST_LAW_TOL = 1e-10

CF_STEP = 1e-4
CF_IMAG_TOL = 1e-8


class NumericalConsistencyError(RuntimeError):
    """A numerical health check failed (e.g. a moment came out complex)."""


class Regime(enum.Enum):
    ENGINE = "Engine"
    REFRIGERATOR = "Refrigerator"
    ACCELERATOR = "Accelerator"
    OTHER = "Other"


@dataclass(frozen=True)
class EnergyBook:
    """Averaged energetics of one cycle.

    w, q_hot, q_cold  work and heats, satisfying w + q_hot + q_cold = 0
    sigma             entropy production, nonnegative
    eta               efficiency -w/q_hot, present only in the engine regime
    power             extracted power -w/tau (0 for the degenerate tau = 0 cycle)
    regime            operating-regime label
    method            which evaluation route produced the numbers
    degenerate        tau = 0, so power is a placeholder
    """

    w: float
    q_hot: float
    q_cold: float
    sigma: float
    eta: Optional[float]
    power: float
    regime: Regime
    method: str
    degenerate: bool = False


class Performance(NamedTuple):
    eta: Optional[float]
    power: float
    eta_otto: float
    eta_carnot: float


@dataclass(frozen=True)
class CFMoments:
    """Finite-difference moments of the characteristic function.

    w_mean and qh_mean are always filled; `value` is the requested moment
    <W^n Q_H^m> for the stored order (n, m).
    """

    lambda_step: float
    nu_step: float
    w_mean: float
    qh_mean: float
    order: tuple[int, int]
    value: float


def _dead(x: float) -> float:
    return 0.0 if abs(x) < DEAD_BAND else x


def classify_regime(w: float, q_hot: float, q_cold: float) -> Regime:
    """Operating regime from the signs of work and heats.

    Values inside the dead band count as zero, so exact boundary points land
    in OTHER instead of flipping on roundoff.
    """
    if abs(w + q_hot + q_cold) > FIRST_LAW_TOL:
        raise ValueError(
            f"first-law violation: w + q_hot + q_cold = {w + q_hot + q_cold!r}"
        )
    w, q_hot, q_cold = _dead(w), _dead(q_hot), _dead(q_cold)
    if q_hot > 0.0 and q_cold < 0.0 and w < 0.0:
        return Regime.ENGINE
    if q_hot < 0.0 and q_cold > 0.0 and w > 0.0:
        return Regime.REFRIGERATOR
    if q_hot > 0.0 and q_cold < 0.0 and w > 0.0:
        return Regime.ACCELERATOR
    return Regime.OTHER


def entropy_production(w: float, q_hot: float, p: CycleParams) -> float:
    return (p.beta_b - p.beta_a) * q_hot + p.beta_b * w


def carnot_efficiency(p: CycleParams) -> float:
    """Temperature-ratio bound 1 - T_cold/T_hot = 1 - beta_a/beta_b."""
    return 1.0 - p.beta_a / p.beta_b


def otto_efficiency(p: CycleParams) -> float:
    """Gap-ratio reference line 1 - eps_b/eps_a (metadata, not a bound)."""
    return 1.0 - p.eps_b / p.eps_a


def _finish_book(
    p: CycleParams, w: float, q_hot: float, q_cold: float, method: str
) -> EnergyBook:
    sigma = entropy_production(w, q_hot, p)
    regime = classify_regime(w, q_hot, q_cold)
    eta = -w / q_hot if regime is Regime.ENGINE else None
    degenerate = p.tau == 0.0
    power = 0.0 if degenerate else -w / p.tau
    return EnergyBook(
        w=w,
        q_hot=q_hot,
        q_cold=q_cold,
        sigma=sigma,
        eta=eta,
        power=power,
        regime=regime,
        method=method,
        degenerate=degenerate,
    )


def energetics_from_states(
    p: CycleParams, rho0: np.ndarray, rho_tau: np.ndarray, method: str
) -> EnergyBook:
    """Trace-formula energetics given the initial and evolved states."""
    h0 = free_hamiltonian(p)
    h_a = kron(local_hamiltonian(p.eps_a), IDENTITY_2)
    h_b = kron(IDENTITY_2, local_hamiltonian(p.eps_b))
    diff = rho_tau - rho0
    w = float(np.trace(h0 @ diff).real)
    q_hot = -float(np.trace(h_a @ diff).real)
    q_cold = -float(np.trace(h_b @ diff).real)
    return _finish_book(p, w, q_hot, q_cold, method)


def energetics_trace(
    p: CycleParams, mode: PropagatorMode = PropagatorMode.INTERACTION_ONLY
) -> EnergyBook:
    """Evolve the initial state with the requested propagator and take traces."""
    u = propagator(p, mode)
    rho0 = initial_state(p)
    rho_tau = evolve(rho0, u)
    return energetics_from_states(p, rho0, rho_tau, method=f"trace:{mode.value}")


def _corner_weight(p: CycleParams) -> float:
    """kappa^2 sin^2(gamma tau/2)/gamma^2 with the corner-block frequency."""
    if p.kappa == 0.0:
        return 0.0
    gamma = math.hypot(p.kappa, 2.0 * p.omega)
    return (p.kappa * math.sin(0.5 * gamma * p.tau) / gamma) ** 2


def energetics_closed(p: CycleParams) -> EnergyBook:
    """Closed-form energetics of the interaction-only evolution.

    The exponential prefactors are evaluated through population differences,
    which is the same expression in algebraically identical, overflow-proof
    form.  The cold heat is reconstructed from the first law.
    """
    xs = _corner_weight(p)
    qs = math.sin(0.5 * p.kappa * p.tau) ** 2
    zbar = corner_population_gap(p)
    delta = center_population_gap(p)
    w = p.eps_p * xs * zbar + p.delta_eps * qs * delta
    q_hot = -p.eps_a * (xs * zbar + qs * delta)
    q_cold = -w - q_hot
    return _finish_book(p, w, q_hot, q_cold, method="closed")


def closed_sigma_terms(p: CycleParams) -> tuple[float, float]:
    """Both terms of the closed-form entropy production, each nonnegative."""
    xs = _corner_weight(p)
    qs = math.sin(0.5 * p.kappa * p.tau) ** 2
    term_corner = (p.beta_a * p.eps_a + p.beta_b * p.eps_b) * xs * corner_population_gap(p)
    term_center = (p.beta_a * p.eps_a - p.beta_b * p.eps_b) * qs * center_population_gap(p)
    return term_corner, term_center


def characteristic_function(
    p: CycleParams, lam: float, nu: float, form: str = "closed"
) -> complex:
    """Two-point-measurement characteristic function F(lambda, nu).

    `form` picks the implementation: "closed" evaluates the six-term scalar
    expression, "operator" runs the defining trace over phase-conjugated
    local Hamiltonians with the interaction-only unitary.  Both satisfy
    F(0, 0) = 1 and agree to roundoff.
    """
    if form == "closed":
        return _cf_closed(p, lam, nu)
    if form == "operator":
        return _cf_operator(p, lam, nu)
    raise ValueError(f"form must be 'closed' or 'operator', got {form!r}")


def _cf_closed(p: CycleParams, lam: float, nu: float) -> complex:
    p_gg, p_ge, p_eg, p_ee = initial_populations(p)
    xs = _corner_weight(p)
    corner_stay = 1.0 - xs          # |theta_+|^2 by unitarity of the corner block
    cos2 = math.cos(0.5 * p.kappa * p.tau) ** 2
    sin2 = math.sin(0.5 * p.kappa * p.tau) ** 2
    u = complex(math.cos(p.eps_a * (lam - nu)), -math.sin(p.eps_a * (lam - nu)))
    v = complex(math.cos(p.eps_b * lam), -math.sin(p.eps_b * lam))
    return (
        corner_stay * (p_gg + p_ee)
        + cos2 * (p_ge + p_eg)
        + xs * (p_gg * u * v + p_ee * np.conj(u) * np.conj(v))
        + sin2 * (p_eg * np.conj(u) * v + p_ge * u * np.conj(v))
    )


def _cf_operator(p: CycleParams, lam: float, nu: float) -> complex:
    u = propagator(p, PropagatorMode.INTERACTION_ONLY)
    rho0 = initial_state(p)
    e_a = np.diag(kron(local_hamiltonian(p.eps_a), IDENTITY_2)).real
    e_b = np.diag(kron(IDENTITY_2, local_hamiltonian(p.eps_b))).real
    phases = np.exp(1j * ((lam - nu) * e_a + lam * e_b))
    conjugated = dagger(u) @ np.diag(phases) @ u @ np.diag(np.conj(phases))
    return complex(np.trace(conjugated @ rho0))


def _richardson_first(f, h: float) -> complex:
    def central(step):
        return (f(step) - f(-step)) / (2.0 * step)

    return (4.0 * central(0.5 * h) - central(h)) / 3.0


def _richardson_second(f, h: float) -> complex:
    f0 = f(0.0)

    def central(step):
        return (f(step) - 2.0 * f0 + f(-step)) / step**2

    return (4.0 * central(0.5 * h) - central(h)) / 3.0


def _richardson_mixed(f, h: float) -> complex:
    def central(step):
        return (
            f(step, step) - f(step, -step) - f(-step, step) + f(-step, -step)
        ) / (4.0 * step**2)

    return (4.0 * central(0.5 * h) - central(h)) / 3.0


def _real_moment(raw: complex, prefactor: complex, label: str) -> float:
    value = prefactor * raw
    if abs(value.imag) > CF_IMAG_TOL:
        raise NumericalConsistencyError(
            f"moment {label} has imaginary residue {value.imag!r}"
        )
    return float(value.real)


def moments_from_cf(
    p: CycleParams, n: int, m: int, step: float = CF_STEP
) -> CFMoments:
    """<W^n Q_H^m> from central finite differences of F at the origin.

    One Richardson refinement is applied on top of the central stencils; the
    imaginary residue of every returned moment is asserted small.
    """
    if n < 0 or m < 0 or not 1 <= n + m <= 2:
        raise ValueError(f"moment order (n, m) must satisfy 1 <= n+m <= 2, got {(n, m)}")

    def f(lam, nu):
        return _cf_closed(p, lam, nu)

    w_mean = _real_moment(_richardson_first(lambda s: f(s, 0.0), step), -1j, "<W>")
    qh_mean = _real_moment(_richardson_first(lambda s: f(0.0, s), step), -1j, "<Q_H>")

    if (n, m) == (1, 0):
        value = w_mean
    elif (n, m) == (0, 1):
        value = qh_mean
    elif (n, m) == (2, 0):
        value = _real_moment(_richardson_second(lambda s: f(s, 0.0), step), -1.0, "<W^2>")
    elif (n, m) == (0, 2):
        value = _real_moment(_richardson_second(lambda s: f(0.0, s), step), -1.0, "<Q_H^2>")
    else:
        value = _real_moment(_richardson_mixed(f, step), -1.0, "<W Q_H>")

    return CFMoments(
        lambda_step=step,
        nu_step=step,
        w_mean=w_mean,
        qh_mean=qh_mean,
        order=(n, m),
        value=value,
    )


def energetics_cf(p: CycleParams, step: float = CF_STEP) -> EnergyBook:
    """Energetics with first moments from the characteristic function."""
    moments = moments_from_cf(p, 1, 0, step=step)
    w = moments.w_mean
    q_hot = moments.qh_mean
    q_cold = -w - q_hot
    return _finish_book(p, w, q_hot, q_cold, method="cf")


def performance(book: EnergyBook, p: CycleParams) -> Performance:
    """Efficiency and power plus the two reference lines.

    eta is only defined in the engine regime; the reference lines are
    attached as metadata and never asserted as achieved efficiencies.
    """
    eta = book.eta if book.regime is Regime.ENGINE else None
    power = 0.0 if p.tau == 0.0 else -book.w / p.tau
    return Performance(
        eta=eta,
        power=power,
        eta_otto=otto_efficiency(p),
        eta_carnot=carnot_efficiency(p),
    )

"""Physical building blocks: local qubit Hamiltonians, thermal states,
collective spin operators for two qubits, and the nonlinear interaction.

Conventions, fixed once for the whole package:

* single-qubit basis order (|g>, |e|) with sigma_z |g> = +|g>;
* two-qubit basis order |gg>, |ge>, |eg>, |ee>, qubit a in the first slot;
* qubit a is the hot one (beta_a < beta_b);
* the local Hamiltonian puts the excited level at energy -eps, so the
  thermally favoured level is |e> (no re-gauging to +eps: the closed-form
  expressions downstream depend on this sign).
"""

import math
from dataclasses import dataclass

import numpy as np

from .linalg import kron

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)
IDENTITY_4 = np.eye(4, dtype=complex)

# exp(beta*eps) overflows float64 beyond this; populations never need it.
BETA_EPS_MAX = 700.0


@dataclass(frozen=True)
class CycleParams:
    """All physical controls of one cycle (hbar = k_B = 1).

    eps_a, eps_b   energy gaps of the hot/cold qubit
    beta_a, beta_b inverse temperatures, beta_a < beta_b (a is hot)
    kappa          twisting strength, >= 0
    omega          transverse field, >= 0
    tau            interaction-stroke duration, >= 0
    """

    eps_a: float
    eps_b: float
    beta_a: float
    beta_b: float
    kappa: float
    omega: float
    tau: float

    def __post_init__(self):
        for name in ("eps_a", "eps_b", "beta_a", "beta_b", "kappa", "omega", "tau"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
        for name in ("eps_a", "eps_b", "beta_a", "beta_b"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)!r}")
        for name in ("kappa", "omega", "tau"):
            if getattr(self, name) < 0.0:
                raise ValueError(f"{name} must be nonnegative, got {getattr(self, name)!r}")
        if not self.beta_a < self.beta_b:
            raise ValueError(
                f"qubit a must be the hot one (beta_a < beta_b), got "
                f"beta_a={self.beta_a!r}, beta_b={self.beta_b!r}"
            )

    @property
    def delta_eps(self) -> float:
        """Gap difference eps_a - eps_b."""
        return self.eps_a - self.eps_b

    @property
    def eps_p(self) -> float:
        """Gap sum eps_a + eps_b."""
        return self.eps_a + self.eps_b


@dataclass(frozen=True)
class SpinOps:
    """Collective spin-1/2 operators for the two-qubit space."""

    sx: np.ndarray
    sy: np.ndarray
    sz: np.ndarray


def local_hamiltonian(eps: float) -> np.ndarray:
    """Single-qubit Hamiltonian -eps |e><e|, i.e. diag(0, -eps)."""
    if not (math.isfinite(eps) and eps > 0.0):
        raise ValueError(f"eps must be positive and finite, got {eps!r}")
    return np.diag([0.0, -eps]).astype(complex)


def thermal_populations(eps: float, beta: float) -> tuple[float, float]:
    """Gibbs populations (p_g, p_e) of the local Hamiltonian.

    Evaluated in logistic form with exp(-beta*eps) only, so arbitrarily large
    beta*eps stays finite (p_g underflows to 0, p_e saturates at 1).
    """
    if not (math.isfinite(eps) and eps > 0.0):
        raise ValueError(f"eps must be positive and finite, got {eps!r}")
    if not (math.isfinite(beta) and beta > 0.0):
        raise ValueError(f"beta must be positive and finite, got {beta!r}")
    w = math.exp(-beta * eps)
    return w / (1.0 + w), 1.0 / (1.0 + w)


def thermal_state(eps: float, beta: float) -> np.ndarray:
    """Local thermal equilibrium state exp(-beta H)/Z as a diagonal 2x2 matrix."""
    p_g, p_e = thermal_populations(eps, beta)
    return np.diag([p_g, p_e]).astype(complex)


def partition_function(eps: float, beta: float) -> float:
    """Raw partition function Z = 1 + exp(beta*eps).

    Raises OverflowError once beta*eps exceeds the float64 range; callers that
    only need populations or log Z should use the stable forms instead.
    """
    if not (math.isfinite(eps) and eps > 0.0):
        raise ValueError(f"eps must be positive and finite, got {eps!r}")
    if not (math.isfinite(beta) and beta > 0.0):
        raise ValueError(f"beta must be positive and finite, got {beta!r}")
    if beta * eps > BETA_EPS_MAX:
        raise OverflowError(
            f"beta*eps = {beta * eps!r} overflows exp(); use thermal_populations "
            f"or log_partition_function"
        )
    return 1.0 + math.exp(beta * eps)


def log_partition_function(eps: float, beta: float) -> float:
    """log Z = log(1 + exp(beta*eps)), stable for any beta*eps."""
    if not (math.isfinite(eps) and eps > 0.0):
        raise ValueError(f"eps must be positive and finite, got {eps!r}")
    if not (math.isfinite(beta) and beta > 0.0):
        raise ValueError(f"beta must be positive and finite, got {beta!r}")
    x = beta * eps
    # log(1+e^x) = x + log(1+e^-x) for x > 0
    return x + math.log1p(math.exp(-x))


def collective_ops() -> SpinOps:
    """Collective operators S_alpha = (sigma_alpha x I + I x sigma_alpha)/2."""
    sx = 0.5 * (kron(SIGMA_X, IDENTITY_2) + kron(IDENTITY_2, SIGMA_X))
    sy = 0.5 * (kron(SIGMA_Y, IDENTITY_2) + kron(IDENTITY_2, SIGMA_Y))
    sz = 0.5 * (kron(SIGMA_Z, IDENTITY_2) + kron(IDENTITY_2, SIGMA_Z))
    return SpinOps(sx=sx, sy=sy, sz=sz)


def interaction_hamiltonian(kappa: float, omega: float) -> np.ndarray:
    """Twisting-plus-field coupling kappa*S_x^2 + omega*S_z.

    Couples |gg> <-> |ee> and |ge> <-> |eg> only (checkerboard block
    structure); rejects the fully degenerate kappa = omega = 0 case.
    """
    if not (math.isfinite(kappa) and kappa >= 0.0):
        raise ValueError(f"kappa must be nonnegative and finite, got {kappa!r}")
    if not (math.isfinite(omega) and omega >= 0.0):
        raise ValueError(f"omega must be nonnegative and finite, got {omega!r}")
    if kappa == 0.0 and omega == 0.0:
        raise ValueError("kappa and omega cannot both vanish (degenerate cycle)")
    ops = collective_ops()
    return kappa * (ops.sx @ ops.sx) + omega * ops.sz


def free_hamiltonian(p: CycleParams) -> np.ndarray:
    """Sum of the local Hamiltonians: diag(0, -eps_b, -eps_a, -eps_a-eps_b)."""
    return kron(local_hamiltonian(p.eps_a), IDENTITY_2) + kron(
        IDENTITY_2, local_hamiltonian(p.eps_b)
    )


def initial_state(p: CycleParams) -> np.ndarray:
    """Product of the two local thermal states (diagonal, uncorrelated)."""
    return kron(thermal_state(p.eps_a, p.beta_a), thermal_state(p.eps_b, p.beta_b))


def initial_populations(p: CycleParams) -> np.ndarray:
    """Diagonal of the initial state: (p_gg, p_ge, p_eg, p_ee)."""
    pg_a, pe_a = thermal_populations(p.eps_a, p.beta_a)
    pg_b, pe_b = thermal_populations(p.eps_b, p.beta_b)
    return np.array([pg_a * pg_b, pg_a * pe_b, pe_a * pg_b, pe_a * pe_b])


def corner_population_gap(p: CycleParams) -> float:
    """p_ee - p_gg, the population imbalance in the |gg>/|ee> block.

    Equals 1 - 1/Z_a - 1/Z_b; strictly inside [0, 1) for valid parameters.
    """
    pops = initial_populations(p)
    return float(pops[3] - pops[0])


def center_population_gap(p: CycleParams) -> float:
    """p_eg - p_ge, the population imbalance in the |ge>/|eg> block.

    Sign follows beta_a*eps_a - beta_b*eps_b; it changes sign across the
    gap-ratio axis and drives the regime changes of the machine.
    """
    pops = initial_populations(p)
    return float(pops[2] - pops[1])

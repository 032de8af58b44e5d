"""Parameter sweeps over one cycle control, with multi-route evaluation.

Each grid point is independent, so sweeps can fan out to a process pool; the
output is assembled in grid order and is byte-identical for any pool width.
"""

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Optional, Sequence

import numpy as np

from .model import CycleParams, initial_state
from .propagators import PropagatorMode, evolve, propagator
from .squeezing import xi_closed_form, xi_general
from .thermo import EnergyBook, Regime, energetics_cf, energetics_closed, energetics_from_states

SWEEP_VARIABLES = ("tau", "kappa", "omega", "eps_ratio")
ROUTES = ("trace", "closed", "cf")

CSV_COLUMNS = (
    "swept_value",
    "eps_a",
    "eps_b",
    "beta_a",
    "beta_b",
    "kappa",
    "omega",
    "tau",
    "W",
    "Q_H",
    "Q_C",
    "Sigma",
    "eta",
    "power",
    "xi_general",
    "xi_closed",
    "coherence_l1",
    "regime",
    "resid_closed",
    "resid_cf",
)


@dataclass(frozen=True)
class SweepSpec:
    """One swept variable over a fixed base cycle.

    `eps_ratio` sweeps eps_b/eps_a with eps_a held fixed; the other variables
    replace the corresponding base field directly.
    """

    base: CycleParams
    variable: str
    start: float
    stop: float
    points: int
    mode: PropagatorMode = PropagatorMode.INTERACTION_ONLY
    routes: tuple[str, ...] = ROUTES
    output_path: Optional[str] = None

    def __post_init__(self):
        if self.variable not in SWEEP_VARIABLES:
            raise ValueError(f"variable must be one of {SWEEP_VARIABLES}, got {self.variable!r}")
        if not (math.isfinite(self.start) and math.isfinite(self.stop)):
            raise ValueError("start and stop must be finite")
        if not self.start < self.stop:
            raise ValueError(f"start must be below stop, got [{self.start!r}, {self.stop!r}]")
        if self.points < 2:
            raise ValueError(f"points must be at least 2, got {self.points!r}")
        if not self.routes:
            raise ValueError("at least one evaluation route is required")
        for route in self.routes:
            if route not in ROUTES:
                raise ValueError(f"unknown route {route!r}, valid routes: {ROUTES}")

    def grid(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.points)


@dataclass(frozen=True)
class SweepRow:
    """One evaluated grid point (numeric fields are None on failure)."""

    swept_value: float
    params: CycleParams
    w: Optional[float] = None
    q_hot: Optional[float] = None
    q_cold: Optional[float] = None
    sigma: Optional[float] = None
    eta: Optional[float] = None
    power: Optional[float] = None
    xi_general: Optional[float] = None
    xi_closed: Optional[float] = None
    coherence_l1: Optional[float] = None
    regime: Optional[str] = None
    resid_closed: Optional[float] = None
    resid_cf: Optional[float] = None
    error: Optional[str] = None


def apply_variable(base: CycleParams, variable: str, value: float) -> CycleParams:
    if variable == "eps_ratio":
        return replace(base, eps_b=value * base.eps_a)
    return replace(base, **{variable: value})


def _book_residual(primary: EnergyBook, other: EnergyBook) -> float:
    return max(
        abs(primary.w - other.w),
        abs(primary.q_hot - other.q_hot),
        abs(primary.q_cold - other.q_cold),
        abs(primary.sigma - other.sigma),
    )


def evaluate_point(spec: SweepSpec, value: float) -> SweepRow:
    """Evaluate one grid point with every requested route.

    Failures never abort a sweep: the exception text is attached to the row
    and the remaining points keep running.
    """
    try:
        params = apply_variable(spec.base, spec.variable, float(value))
    except Exception as exc:  # noqa: BLE001 - reported per row
        return SweepRow(swept_value=float(value), params=spec.base, error=str(exc))
    try:
        u = propagator(params, spec.mode)
        rho0 = initial_state(params)
        rho_tau = evolve(rho0, u)

        books: dict[str, EnergyBook] = {}
        if "trace" in spec.routes:
            books["trace"] = energetics_from_states(
                params, rho0, rho_tau, method=f"trace:{spec.mode.value}"
            )
        if "closed" in spec.routes:
            books["closed"] = energetics_closed(params)
        if "cf" in spec.routes:
            books["cf"] = energetics_cf(params)

        primary = books.get("trace") or books.get("closed") or books["cf"]
        resid_closed = (
            _book_residual(books["trace"], books["closed"])
            if "trace" in books and "closed" in books
            else None
        )
        resid_cf = (
            _book_residual(books["trace"], books["cf"])
            if "trace" in books and "cf" in books
            else None
        )

        report = xi_general(rho_tau)
        return SweepRow(
            swept_value=float(value),
            params=params,
            w=primary.w,
            q_hot=primary.q_hot,
            q_cold=primary.q_cold,
            sigma=primary.sigma,
            eta=primary.eta,
            power=primary.power,
            xi_general=report.xi,
            xi_closed=xi_closed_form(params),
            coherence_l1=report.coherence_l1,
            regime=primary.regime.value,
            resid_closed=resid_closed,
            resid_cf=resid_cf,
        )
    except Exception as exc:  # noqa: BLE001 - reported per row
        return SweepRow(swept_value=float(value), params=params, error=str(exc))


def _evaluate_star(args: tuple[SweepSpec, float]) -> SweepRow:
    return evaluate_point(*args)


def run_sweep(spec: SweepSpec, workers: int = 1) -> list[SweepRow]:
    """Evaluate the whole grid, in grid order, optionally on a process pool.

    Results do not depend on `workers`; a width of 1 avoids the pool
    entirely.  When `spec.output_path` is set the CSV is written as well.
    """
    if workers < 1:
        raise ValueError(f"workers must be at least 1, got {workers!r}")
    values = spec.grid()
    if workers == 1:
        rows = [evaluate_point(spec, v) for v in values]
    else:
        args = [(spec, float(v)) for v in values]
        chunk = max(1, len(args) // (workers * 4))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_evaluate_star, args, chunksize=chunk))
    if spec.output_path is not None:
        write_csv(rows, spec.output_path)
    return rows


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    return format(float(value), ".17g")


def rows_to_csv(rows: Sequence[SweepRow]) -> str:
    """Render rows in the fixed column order, 17 significant digits, LF endings."""
    lines = [",".join(CSV_COLUMNS)]
    for row in rows:
        p = row.params
        lines.append(
            ",".join(
                _cell(v)
                for v in (
                    row.swept_value,
                    p.eps_a,
                    p.eps_b,
                    p.beta_a,
                    p.beta_b,
                    p.kappa,
                    p.omega,
                    p.tau,
                    row.w,
                    row.q_hot,
                    row.q_cold,
                    row.sigma,
                    row.eta,
                    row.power,
                    row.xi_general,
                    row.xi_closed,
                    row.coherence_l1,
                    row.regime,
                    row.resid_closed,
                    row.resid_cf,
                )
            )
        )
    return "\n".join(lines) + "\n"


def write_csv(rows: Sequence[SweepRow], path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(rows_to_csv(rows))


def failure_count(rows: Sequence[SweepRow]) -> int:
    return sum(1 for row in rows if row.error is not None)

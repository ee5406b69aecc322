"""Parameter sweeps, figure presets, peak search and the self-check grid."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .detector import DetectorParams, build_final_state
from .measures import (
    analytic_eigenvalues,
    concurrence_analytic,
    measure_state,
    qfe_from_concurrence,
    wootters_spectrum,
)

DEFAULT_Q_MAX = 0.9999

_INV_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
_COARSE_STEPS = 2000


@dataclass(frozen=True)
class SweepSpec:
    """Uniform grid over one variable ('q' or 'theta'), endpoints included.

    ``fixed`` carries the parameters that are not swept; its value for the
    swept variable is ignored.
    """

    variable: str
    min: float
    max: float
    steps: int
    fixed: DetectorParams

    def __post_init__(self):
        if self.variable not in ("q", "theta"):
            raise ValueError(f"variable must be 'q' or 'theta', got {self.variable!r}")
        if not (math.isfinite(self.min) and math.isfinite(self.max)):
            raise ValueError("sweep bounds must be finite")
        if not self.min < self.max:
            raise ValueError(f"sweep needs min < max, got [{self.min}, {self.max}]")
        if self.steps < 2:
            raise ValueError(f"steps must be at least 2, got {self.steps}")
        if self.variable == "q" and not (0.0 <= self.min and self.max < 1.0):
            raise ValueError(
                f"q sweep bounds must lie in [0, 1), got [{self.min}, {self.max}]"
            )

    def grid(self) -> np.ndarray:
        return np.linspace(self.min, self.max, self.steps)


@dataclass(frozen=True)
class SweepRecord:
    """One evaluated grid point: parameters, weights and measures."""

    q: float
    theta: float
    nu: float
    mu: float
    upsilon: float
    eta: float
    concurrence: float
    entropy: float
    qfe: float
    ratio: float | None


@dataclass(frozen=True)
class PeakResult:
    """Located fluctuation maximum with the bracket that pinned it down."""

    location: float
    value: float
    bracket: tuple[float, float]


class OracleScan(NamedTuple):
    """Worst deviations between the closed-form and matrix routes."""

    max_concurrence_deviation: float
    max_eigenvalue_deviation: float
    points: int


def _point_params(spec: SweepSpec, x: float) -> DetectorParams:
    if spec.variable == "q":
        return DetectorParams(theta=spec.fixed.theta, nu=spec.fixed.nu, q=float(x))
    return DetectorParams(theta=float(x), nu=spec.fixed.nu, q=spec.fixed.q)


def evaluate_point(params: DetectorParams, *, cross_check: bool = False) -> SweepRecord:
    """Measures and weights for a single parameter point."""
    state = build_final_state(params)
    ms = measure_state(state, cross_check=cross_check)
    return SweepRecord(
        q=params.q,
        theta=params.theta,
        nu=params.nu,
        mu=state.mu,
        upsilon=state.upsilon,
        eta=state.eta,
        concurrence=ms.concurrence,
        entropy=ms.entropy,
        qfe=ms.qfe,
        ratio=ms.ratio,
    )


def run_sweep(spec: SweepSpec, *, cross_check: bool = False) -> list[SweepRecord]:
    """Evaluate the grid in ascending order.

    Points are independent, so evaluation could be parallelized; output is
    deterministic and assembled in grid order either way.
    """
    return [
        evaluate_point(_point_params(spec, x), cross_check=cross_check)
        for x in spec.grid()
    ]


def figure_preset(which: str) -> list[SweepSpec]:
    """Sweep specifications behind the three standard data sets.

    fig1: fluctuation vs q for theta in {pi/3, pi/4, pi/5} at nu = 0.05.
    fig2: fluctuation vs theta for q in {0, 0.5, 0.8} at nu = 0.05.
    fig3: concurrence, fluctuation and their ratio vs q at theta = pi/4.
    """
    if which == "fig1":
        return [
            SweepSpec("q", 0.0, DEFAULT_Q_MAX, 2000, DetectorParams(theta=t, nu=0.05))
            for t in (math.pi / 3, math.pi / 4, math.pi / 5)
        ]
    if which == "fig2":
        return [
            SweepSpec(
                "theta", 0.0, math.pi / 2, 721,
                DetectorParams(theta=0.0, nu=0.05, q=qv),
            )
            for qv in (0.0, 0.5, 0.8)
        ]
    if which == "fig3":
        return [
            SweepSpec(
                "q", 0.0, DEFAULT_Q_MAX, 2000,
                DetectorParams(theta=math.pi / 4, nu=0.05),
            )
        ]
    raise ValueError(f"unknown figure preset {which!r}; expected fig1, fig2 or fig3")


def golden_section_max(
    func: Callable[[float], float], lo: float, hi: float, tol: float = 1e-8
) -> tuple[float, float]:
    """Maximum of a unimodal function on [lo, hi] by golden-section search.

    Shrinks the bracket to ``tol`` and returns (location, value) at the
    bracket midpoint; one function evaluation is reused per iteration.
    """
    if not lo < hi:
        raise ValueError(f"golden section needs lo < hi, got [{lo}, {hi}]")
    a, b = float(lo), float(hi)
    c = b - _INV_GOLDEN * (b - a)
    d = a + _INV_GOLDEN * (b - a)
    fc, fd = func(c), func(d)
    while (b - a) > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INV_GOLDEN * (b - a)
            fc = func(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_GOLDEN * (b - a)
            fd = func(d)
    x = (a + b) / 2.0
    return x, func(x)


def _qfe_at(fixed: DetectorParams, variable: str, x: float) -> float:
    if variable == "q":
        params = DetectorParams(theta=fixed.theta, nu=fixed.nu, q=float(x))
    else:
        params = DetectorParams(theta=float(x), nu=fixed.nu, q=fixed.q)
    return qfe_from_concurrence(concurrence_analytic(build_final_state(params)))


def find_qfe_peak(
    fixed: DetectorParams,
    variable: str,
    bracket: tuple[float, float],
    *,
    location_tol: float = 1e-8,
) -> PeakResult:
    """Locate the fluctuation maximum over ``bracket`` for the swept variable.

    A 2000-point coarse scan seeds a golden-section refinement to an
    absolute location tolerance of 1e-8.  A profile that is not unimodal
    (some coarse sample beating the returned value by more than 1e-9) is
    reported as a RuntimeWarning diagnostic.
    """
    if variable not in ("q", "theta"):
        raise ValueError(f"variable must be 'q' or 'theta', got {variable!r}")
    lo, hi = float(bracket[0]), float(bracket[1])
    if not lo < hi:
        raise ValueError(f"bracket needs lo < hi, got [{lo}, {hi}]")
    if variable == "q" and not (0.0 <= lo and hi < 1.0):
        raise ValueError(f"q bracket must lie in [0, 1), got [{lo}, {hi}]")
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise ValueError("bracket must be finite")

    xs = np.linspace(lo, hi, _COARSE_STEPS)
    vals = np.array([_qfe_at(fixed, variable, x) for x in xs])
    i = int(np.argmax(vals))
    bracket_lo = float(xs[max(i - 1, 0)])
    bracket_hi = float(xs[min(i + 1, len(xs) - 1)])
    x, v = golden_section_max(
        lambda y: _qfe_at(fixed, variable, y), bracket_lo, bracket_hi, location_tol
    )
    if vals[i] > v:
        x, v = float(xs[i]), float(vals[i])
    if np.any(vals > v + 1e-9):
        warnings.warn(
            "fluctuation profile is not unimodal over the bracket; "
            "returned peak is the best local refinement",
            RuntimeWarning,
        )
    return PeakResult(location=x, value=v, bracket=(bracket_lo, bracket_hi))


def oracle_scan(
    theta_points: int = 33,
    nu_values: tuple[float, ...] = (0.0, 0.01, 0.05, 0.1),
    q_points: int = 100,
    q_max: float = 0.999,
) -> OracleScan:
    """Compare closed-form concurrence and spectrum against the matrix route.

    Runs the standard validation grid (theta x nu x q) and returns the
    worst absolute deviations; the concurrence routes must agree to 1e-9
    and the spectra to 1e-10.
    """
    thetas = np.linspace(0.0, math.pi / 2.0, theta_points)
    qs = np.linspace(0.0, q_max, q_points)
    worst_c = 0.0
    worst_lam = 0.0
    count = 0
    for nu in nu_values:
        for theta in thetas:
            for q in qs:
                params = DetectorParams(theta=float(theta), nu=float(nu), q=float(q))
                state = build_final_state(params)
                spectrum = wootters_spectrum(state.rho)
                numeric_c = min(
                    1.0,
                    max(0.0, float(spectrum[0] - spectrum[1] - spectrum[2] - spectrum[3])),
                )
                worst_c = max(worst_c, abs(concurrence_analytic(state) - numeric_c))
                deviation = np.abs(analytic_eigenvalues(state) - spectrum**2).max()
                worst_lam = max(worst_lam, float(deviation))
                count += 1
    return OracleScan(
        max_concurrence_deviation=worst_c,
        max_eigenvalue_deviation=worst_lam,
        points=count,
    )

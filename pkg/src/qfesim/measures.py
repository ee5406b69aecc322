"""Entanglement measures and the entanglement fluctuation.

Two routes to the two-qubit concurrence are kept deliberately separate:

* :func:`concurrence_analytic` evaluates the closed form available for the
  X-shaped joint state produced by :mod:`qfesim.detector`;
* :func:`concurrence_numeric` runs the generic spin-flip construction,
  C = max(0, r1 - r2 - r3 - r4) with r_i the descending eigenvalues of
  R = sqrt(sqrt(rho) rho~ sqrt(rho)), rho~ = (sy x sy) conj(rho) (sy x sy).

The two must agree to 1e-9; ``measure_state(..., cross_check=True)``
enforces that per point.  Entropies and fluctuations are in bits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .detector import JointState
from .qmatrix import (
    EIGENVALUE_FLOOR,
    _as_matrix,
    check_density_matrix,
    hermitian_eigen,
    matrix_sqrt_psd,
    partial_trace,
)

_SIGMA_Y = np.array([[0.0, -1j], [1j, 0.0]])
FLIP_OPERATOR = np.kron(_SIGMA_Y, _SIGMA_Y)

RATIO_THRESHOLD = 1e-12
CROSS_CHECK_TOL = 1e-9
_DEFAULT_PURITY_TOL = 1e-6


class CrossCheckError(RuntimeError):
    """Analytic and numeric concurrence disagree beyond tolerance."""


@dataclass(frozen=True)
class MeasureSet:
    """Concurrence, joint-state entropy, fluctuation and their ratio.

    ``ratio`` is ``None`` whenever the concurrence is at or below 1e-12;
    the fluctuation-to-concurrence quotient carries no information there.
    """

    concurrence: float
    entropy: float
    qfe: float
    ratio: float | None


def spin_flip(rho) -> np.ndarray:
    """(sy x sy) conj(rho) (sy x sy); an involution on 4x4 matrices."""
    m = _as_matrix(rho)
    if m.shape[0] != 4:
        raise ValueError("spin flip is defined for 4x4 matrices")
    return FLIP_OPERATOR @ m.conj() @ FLIP_OPERATOR


def wootters_spectrum(rho) -> np.ndarray:
    """Descending eigenvalues of R = sqrt(sqrt(rho) rho~ sqrt(rho)).

    These are the square roots of the spectrum of rho @ rho~; staying with
    the Hermitian R keeps all spectral work inside the Jacobi solver.
    """
    m = check_density_matrix(rho, require_psd=False)
    if m.shape[0] != 4:
        raise ValueError("the spin-flip spectrum is defined for 4x4 density matrices")
    root = matrix_sqrt_psd(m)  # also gates positivity of the input
    r_matrix = matrix_sqrt_psd(root @ spin_flip(m) @ root)
    return np.maximum(hermitian_eigen(r_matrix).eigenvalues, 0.0)


def concurrence_numeric(rho) -> float:
    """Concurrence from the spin-flip spectrum, clamped to [0, 1]."""
    r = wootters_spectrum(rho)
    return min(1.0, max(0.0, float(r[0] - r[1] - r[2] - r[3])))


def concurrence_analytic(state: JointState) -> float:
    """Closed-form concurrence of the X-shaped joint state.

    For this template the spin-flip spectrum collapses to
    {2 mu |sin 2theta|, sqrt(eta upsilon), sqrt(eta upsilon), 0}, so
    C = max(0, 2 mu |sin 2theta| - 2 sqrt(eta upsilon)).
    """
    s = math.sin(state.params.theta)
    c = math.cos(state.params.theta)
    value = 2.0 * state.mu * abs(2.0 * s * c) - 2.0 * math.sqrt(state.eta * state.upsilon)
    return min(1.0, max(0.0, value))


def analytic_eigenvalues(state: JointState) -> np.ndarray:
    """Spectrum of rho @ rho~ implied by the X-state structure, descending.

    Returns {4 mu^2 sin^2(2 theta), eta*upsilon, eta*upsilon, 0} sorted;
    must match the squared numeric spin-flip spectrum to 1e-10.
    """
    s = math.sin(state.params.theta)
    c = math.cos(state.params.theta)
    big = (2.0 * state.mu * (2.0 * s * c)) ** 2
    cross = state.eta * state.upsilon
    return np.array(sorted((big, cross, cross, 0.0), reverse=True))


def _require_pure(psi_rho, tolerance: float) -> np.ndarray:
    m = check_density_matrix(psi_rho, require_psd=False)
    w = hermitian_eigen(m).eigenvalues
    if w[0] < 1.0 - tolerance:
        raise ValueError(
            f"state is not pure within {tolerance:g}: largest eigenvalue {w[0]!r}"
        )
    return m


def pure_concurrence(psi_rho, tolerance: float = _DEFAULT_PURITY_TOL) -> float:
    """Concurrence 2 sqrt(det rho_A) of a pure two-qubit state."""
    m = _require_pure(psi_rho, tolerance)
    ra = partial_trace(m, "A")
    det = (ra[0, 0] * ra[1, 1] - ra[0, 1] * ra[1, 0]).real
    return min(1.0, 2.0 * math.sqrt(max(0.0, det)))


def von_neumann_entropy(rho) -> float:
    """-sum p log2 p over the spectrum, with the convention 0 log 0 = 0."""
    m = check_density_matrix(rho, require_psd=False)
    w = hermitian_eigen(m).eigenvalues
    if w[-1] < EIGENVALUE_FLOOR:
        raise ValueError(
            f"density matrix must be positive semidefinite: "
            f"smallest eigenvalue {w[-1]:.3e}"
        )
    probs = np.clip(w, 0.0, 1.0)
    return float(-sum(p * math.log2(p) for p in probs if p > 0.0))


def entanglement_entropy_pure(psi_rho, tolerance: float = _DEFAULT_PURITY_TOL) -> float:
    """Entanglement entropy of a pure two-qubit state, in bits.

    Computed as the entropy of the reduced state of subsystem A; tracing
    out the other side gives the same value (to 1e-10) for pure input.
    """
    m = _require_pure(psi_rho, tolerance)
    return von_neumann_entropy(partial_trace(m, "A"))


def qfe_from_concurrence(c: float) -> float:
    """Entanglement fluctuation C log2((1 + sqrt(1 - C^2)) / C) in bits.

    Exactly zero at C = 1, and defined as zero for C <= 1e-12 (the
    continuity limit, taken before any logarithm of 1/C is formed).
    """
    if not 0.0 <= c <= 1.0:
        raise ValueError(f"concurrence must lie in [0, 1], got {c}")
    if c <= RATIO_THRESHOLD:
        return 0.0
    root = math.sqrt(max(0.0, 1.0 - c * c))
    return c * math.log2((1.0 + root) / c)


def qfe_variance_pure(psi_rho, tolerance: float = _DEFAULT_PURITY_TOL) -> float:
    """Standard deviation of the entanglement-entropy operator on a pure state.

    With reduced-state spectrum {p, 1-p} this is
    sqrt(p(1-p)) |log2(p/(1-p))|, which vanishes at p in {0, 1/2, 1} and
    coincides with qfe_from_concurrence(2 sqrt(p(1-p))).
    """
    m = _require_pure(psi_rho, tolerance)
    w = hermitian_eigen(partial_trace(m, "A")).eigenvalues
    p = min(1.0, max(0.0, float(w[0])))
    complement = 1.0 - p
    if p <= 0.0 or complement <= 0.0:
        return 0.0
    return math.sqrt(p * complement) * abs(math.log2(p / complement))


def measure_state(
    state: JointState,
    *,
    cross_check: bool = False,
    cross_check_tol: float = CROSS_CHECK_TOL,
) -> MeasureSet:
    """Bundle the measures for one parameter point.

    With ``cross_check`` enabled the closed-form concurrence is verified
    against the numeric spin-flip route; a deviation beyond
    ``cross_check_tol`` raises :class:`CrossCheckError`.
    """
    c = concurrence_analytic(state)
    if cross_check:
        numeric = concurrence_numeric(state.rho)
        if abs(c - numeric) > cross_check_tol:
            raise CrossCheckError(
                f"analytic concurrence {c!r} deviates from the numeric value "
                f"{numeric!r} by {abs(c - numeric):.3e}"
            )
    entropy = von_neumann_entropy(state.rho)
    qfe = qfe_from_concurrence(c)
    ratio = qfe / c if c > RATIO_THRESHOLD else None
    return MeasureSet(concurrence=c, entropy=entropy, qfe=qfe, ratio=ratio)

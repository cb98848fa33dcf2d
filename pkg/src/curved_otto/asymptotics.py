"""Closed-form limiting-case estimators for the curvature Otto cycle.

Small common curvature (lam_hot = lam, lam_cold = lam - epsilon, epsilon
small): first-order expansion of work and hot-bath heat in the temperature
difference theta at a reference temperature t_ref, and a two-level compact
efficiency formula.

Large common curvature: the spectrum approaches E_n ~ (lam/2)(n+1)**2, so
thermal sums become Jacobi theta-3 series in the nome q = exp(-lam/(2T)).
Work and heat share the bracket

    B(q_h) - B(q_c),   B(q) = q * theta3'(q) / (theta3(q) - 1),

work carrying epsilon/2 and heat lam/2, hence the temperature-independent
efficiency epsilon/lam.

B(q) is evaluated from the two defining series (sum n^2 q^{n^2} over
sum q^{n^2}) rather than from theta3 itself: both numerator and denominator
vanish like 2q as q -> 0, and the series form avoids that cancellation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError
from .spectrum import (
    _check_curvature,
    _check_level,
    energy,
    energy_derivative,
    level_energies,
    level_energy_derivatives,
)
from .thermo import DEFAULT_POLICY, TruncationPolicy, gibbs_state

__all__ = [
    "LargeCurvatureEstimate",
    "LimitParams",
    "SmallCurvatureEstimate",
    "large_curvature_estimate",
    "large_gap_shift",
    "scan_reference_temperature",
    "small_curvature_efficiency_series",
    "small_curvature_estimate",
    "theta3",
    "theta3_prime",
]

# Terms of the theta series decay like q^(n^2); cutting at the first term
# below this relative size gives full double precision for q <= 0.99.
_TERM_REL_TOL = 1e-16
_MAX_TERMS = 100_000


def _check_nome(q: float) -> float:
    q = float(q)
    if not math.isfinite(q) or q < 0.0 or q >= 1.0:
        raise DomainError(f"nome must satisfy 0 <= q < 1, got {q!r}")
    return q


def theta3(q: float) -> float:
    """Jacobi theta-3 value at z = 0: 1 + 2 sum_{n>=1} q**(n**2)."""
    q = _check_nome(q)
    total = 1.0
    for n in range(1, _MAX_TERMS):
        term = 2.0 * q ** (n * n)
        total += term
        if term < _TERM_REL_TOL * total:
            return total
    raise DomainError(f"theta3 series did not converge for q={q!r}")


def theta3_prime(q: float) -> float:
    """Derivative of theta3 with respect to its nome: 2 sum_{n>=1} n**2 q**(n**2-1)."""
    q = _check_nome(q)
    total = 0.0
    for n in range(1, _MAX_TERMS):
        term = 2.0 * n * n * q ** (n * n - 1)
        total += term
        if term < _TERM_REL_TOL * total:
            return total
    raise DomainError(f"theta3_prime series did not converge for q={q!r}")


def _excited_ratio(q: float) -> float:
    """B(q) = q theta3'(q) / (theta3(q) - 1), by the defining series.

    Equals sum_{m>=1} m^2 q^{m^2} / sum_{m>=1} q^{m^2}; tends to 1 as q -> 0,
    which is the value returned when q underflows to exactly zero.
    """
    q = _check_nome(q)
    if q == 0.0:
        return 1.0
    num = 0.0
    den = 0.0
    for n in range(1, _MAX_TERMS):
        p = q ** (n * n)
        num += n * n * p
        den += p
        if n * n * p < _TERM_REL_TOL * num:
            return num / den
    raise DomainError(f"theta ratio series did not converge for q={q!r}")


def large_gap_shift(n: int) -> float:
    """Leading-order spectral-shift coefficient (n + 1)**2 at large curvature.

    The adiabatic level shift between curvatures lam and lam - epsilon tends
    to (epsilon/2) * (n+1)**2 as lam grows; this returns the (n+1)**2 factor
    that the theta-series estimates weight with epsilon/2.
    """
    n = _check_level(n)
    return float((n + 1) ** 2)


@dataclass(frozen=True)
class LimitParams:
    """Inputs of the small-curvature expansion.

    lam is the common curvature scale (hot side), epsilon > 0 the curvature
    difference, theta_temp the bath temperature difference, t_ref the
    reference temperature the Boltzmann factors are evaluated at.
    """

    lam: float
    epsilon: float
    theta_temp: float
    t_ref: float

    def __post_init__(self) -> None:
        _check_curvature(self.lam)
        if not (math.isfinite(self.epsilon) and self.epsilon > 0.0):
            raise DomainError(f"epsilon must be a finite number > 0, got {self.epsilon!r}")
        if not (math.isfinite(self.theta_temp)):
            raise DomainError(f"theta_temp must be finite, got {self.theta_temp!r}")
        if not (math.isfinite(self.t_ref) and self.t_ref > 0.0):
            raise DomainError(f"t_ref must be a finite number > 0, got {self.t_ref!r}")


class SmallCurvatureEstimate(NamedTuple):
    work: float
    heat_in: float
    efficiency: float


class LargeCurvatureEstimate(NamedTuple):
    work: float
    heat_in: float
    efficiency: float


def _two_level_efficiency(lam: float, epsilon: float, t_ref: float) -> float:
    e0, e1 = energy(0, lam), energy(1, lam)
    d0, d1 = energy_derivative(0, lam), energy_derivative(1, lam)
    return (epsilon * d0 / e0) * (
        1.0 + (e1 * d1) / (e0 * d0) * math.exp(-(e1 - e0) / t_ref)
    )


def small_curvature_estimate(
    params: LimitParams, policy: TruncationPolicy = DEFAULT_POLICY
) -> SmallCurvatureEstimate:
    """First-order work/heat estimates and the two-level compact efficiency.

    work    ~ (epsilon * theta / t_ref**2) * sum_n P_n E'_n E_n
    heat_in ~ (theta / t_ref**2)           * sum_n P_n E_n**2
    efficiency = (epsilon E'_0 / E_0) * (1 + (E_1 E'_1)/(E_0 E'_0)
                                             * exp(-(E_1 - E_0)/t_ref))

    with P_n the thermal populations at (lam, t_ref).  The efficiency keeps
    only the two lowest levels; see small_curvature_efficiency_series for
    the all-level diagnostic ratio.
    """
    state = gibbs_state(params.lam, params.t_ref, policy)
    e = level_energies(params.lam, state.n_levels)
    de = level_energy_derivatives(params.lam, state.n_levels)
    p = state.populations
    prefactor = params.theta_temp / params.t_ref**2
    work = params.epsilon * prefactor * float(np.sum(p * de * e))
    heat_in = prefactor * float(np.sum(p * e * e))
    efficiency = _two_level_efficiency(params.lam, params.epsilon, params.t_ref)
    return SmallCurvatureEstimate(work=work, heat_in=heat_in, efficiency=efficiency)


def small_curvature_efficiency_series(
    lam: float, t_ref: float, epsilon: float, policy: TruncationPolicy = DEFAULT_POLICY
) -> float:
    """All-level diagnostic ratio epsilon * sum P E' E / sum P E**2.

    This is the work/heat ratio implied by the first-order expansion when no
    levels are dropped; useful for judging how much the two-level compact
    formula truncates.
    """
    state = gibbs_state(lam, t_ref, policy)
    e = level_energies(lam, state.n_levels)
    de = level_energy_derivatives(lam, state.n_levels)
    p = state.populations
    return epsilon * float(np.sum(p * de * e)) / float(np.sum(p * e * e))


def large_curvature_estimate(
    lam: float, epsilon: float, t_hot: float, t_cold: float
) -> LargeCurvatureEstimate:
    """Theta-series work/heat estimates and the efficiency epsilon/lam.

    Intended for lam well above the level spacing scale (lam >~ 5) with
    epsilon << lam; the formulas are evaluated as given for any lam > 0.
    """
    lam = _check_curvature(lam)
    if lam == 0.0:
        raise DomainError("large-curvature estimate requires lam > 0")
    if not (math.isfinite(epsilon) and epsilon > 0.0):
        raise DomainError(f"epsilon must be a finite number > 0, got {epsilon!r}")
    for name, value in (("t_hot", t_hot), ("t_cold", t_cold)):
        if not (math.isfinite(value) and value > 0.0):
            raise DomainError(f"{name} must be a finite number > 0, got {value!r}")
    q_h = math.exp(-lam / (2.0 * t_hot))
    q_c = math.exp(-lam / (2.0 * t_cold))
    bracket = _excited_ratio(q_h) - _excited_ratio(q_c)
    return LargeCurvatureEstimate(
        work=0.5 * epsilon * bracket,
        heat_in=0.5 * lam * bracket,
        efficiency=epsilon / lam,
    )


def scan_reference_temperature(
    target_efficiency: float,
    lam: float,
    epsilon: float,
    *,
    t_max: float = 2.0,
    step: float = 1e-3,
    rel_window: float = 0.01,
) -> tuple[list[tuple[float, float]], tuple[float, float]]:
    """Scan t_ref over (0, t_max] for the two-level efficiency hitting a target.

    Returns (matches, closest): matches is the list of (t_ref, efficiency)
    grid points whose efficiency lies within rel_window of the target, and
    closest is the grid point minimizing the relative deviation.  The
    temperature difference theta does not enter the two-level formula, so it
    is not a parameter here.
    """
    if not (math.isfinite(target_efficiency) and target_efficiency > 0.0):
        raise DomainError(f"target efficiency must be > 0, got {target_efficiency!r}")
    _check_curvature(lam)
    matches: list[tuple[float, float]] = []
    closest: tuple[float, float] | None = None
    closest_dev = math.inf
    steps = round(t_max / step)
    for k in range(1, steps + 1):
        t_ref = k * step
        eta = _two_level_efficiency(lam, epsilon, t_ref)
        dev = abs(eta - target_efficiency) / target_efficiency
        if dev <= rel_window:
            matches.append((t_ref, eta))
        if dev < closest_dev:
            closest_dev = dev
            closest = (t_ref, eta)
    assert closest is not None
    return matches, closest

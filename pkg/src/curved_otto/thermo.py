"""Gibbs-equilibrium quantities for the circle-oscillator spectrum.

Partition function, level populations and internal energy are infinite sums
over the spectrum; they are truncated with a certified tail bound rather
than at a fixed level count.  Since ``E_n - E_0 = g*n + lam*n**2/2 >= g*n``,
the shifted Boltzmann terms are dominated by the geometric sequence
``r**n`` with ``r = exp(-g/T)``, and both the plain tail and the
energy-weighted tail have closed-form geometric/polynomial bounds.  The
loop stops once both bounds fall below a comfortable fraction of the
requested relative tolerance, so the partition function and the mean energy
are certified simultaneously.

All exponentials are evaluated relative to the ground state (energy origin
shifted to E_0); the shift is reported in log domain so that the partition
function remains usable far outside the range of ``exp``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError, TruncationError
from .spectrum import _check_curvature, energy, gamma, level_energies

__all__ = [
    "DEFAULT_POLICY",
    "GibbsState",
    "PartitionResult",
    "TruncationPolicy",
    "gibbs_state",
    "partition_function",
]

# Stop once the tail bounds are this fraction of rel_tol; the slack keeps
# downstream ratios (populations, mean energy) inside rel_tol as well.
_SAFETY = 0.05


@dataclass(frozen=True)
class TruncationPolicy:
    """How far thermal sums are taken.

    rel_tol bounds the neglected tail relative to the partial sum; n_max is
    a hard cap on the number of levels.
    """

    rel_tol: float = 1e-12
    n_max: int = 100_000

    def __post_init__(self) -> None:
        if not (isinstance(self.rel_tol, float) and math.isfinite(self.rel_tol) and self.rel_tol > 0.0):
            raise DomainError(f"rel_tol must be a finite number > 0, got {self.rel_tol!r}")
        if self.n_max < 2:
            raise DomainError(f"n_max must be >= 2, got {self.n_max}")


DEFAULT_POLICY = TruncationPolicy()


class PartitionResult(NamedTuple):
    """Partition function with its log-domain bookkeeping.

    value      -- Z itself (may underflow to 0.0 for extreme lam/T; the log
                  form below is then the usable representation)
    log_value  -- log Z, exact up to float rounding
    shift      -- E_0 / T, the energy-origin shift applied to every exponential
    n_levels   -- number of levels the certified sum actually used
    """

    value: float
    log_value: float
    shift: float
    n_levels: int


def _check_temperature(temperature: float) -> float:
    temperature = float(temperature)
    if not math.isfinite(temperature) or temperature <= 0.0:
        raise DomainError(f"temperature must be a finite number > 0, got {temperature!r}")
    return temperature


def _shifted_weights(lam: float, temperature: float, policy: TruncationPolicy) -> np.ndarray:
    """Boltzmann weights exp(-(E_n - E_0)/T) up to the certified level count."""
    g = gamma(lam)
    beta = 1.0 / temperature
    r = math.exp(-g * beta)
    one_minus_r = 1.0 - r  # r < 1 strictly since g >= 1 and T is finite
    s0 = 1.0 / one_minus_r
    s1 = r / one_minus_r**2
    s2 = r * (1.0 + r) / one_minus_r**3
    e0 = 0.5 * g

    weights: list[float] = []
    sum_z = 0.0
    sum_e = 0.0  # sum of t_n * (E_n - E_0)
    threshold = _SAFETY * policy.rel_tol
    for n in range(policy.n_max):
        de = g * n + 0.5 * lam * n * n
        t = math.exp(-de * beta)
        if t < 1e-300:
            # the geometric bound ignores the n**2 term and can lag far
            # behind the true super-exponential decay; terms this small are
            # below any reachable tolerance relative to sum_z >= 1
            return np.asarray(weights)
        weights.append(t)
        sum_z += t
        sum_e += t * de

        m = n + 1
        rm = math.exp(-g * m * beta)
        tail_z = rm * s0
        tail_e = rm * (g * (m * s0 + s1) + 0.5 * lam * (m * m * s0 + 2.0 * m * s1 + s2))
        if tail_z <= threshold * sum_z and tail_e <= threshold * (e0 * sum_z + sum_e):
            return np.asarray(weights)

    achieved = max(tail_z / sum_z, tail_e / (e0 * sum_z + sum_e))
    raise TruncationError(
        f"thermal sum at lam={lam}, T={temperature} did not reach rel_tol={policy.rel_tol} "
        f"within n_max={policy.n_max} levels (achieved tail bound {achieved:.3e})",
        achieved_rel_bound=achieved,
        n_levels=policy.n_max,
    )


def partition_function(
    lam: float, temperature: float, policy: TruncationPolicy = DEFAULT_POLICY
) -> PartitionResult:
    """Canonical partition function Z = sum_n exp(-E_n/T), certified to rel_tol."""
    lam = _check_curvature(lam)
    temperature = _check_temperature(temperature)
    weights = _shifted_weights(lam, temperature, policy)
    shifted_sum = float(np.sum(weights))
    shift = energy(0, lam) / temperature
    log_value = math.log(shifted_sum) - shift
    return PartitionResult(
        value=math.exp(log_value),
        log_value=log_value,
        shift=shift,
        n_levels=len(weights),
    )


@dataclass(frozen=True)
class GibbsState:
    """Thermal equilibrium state over the truncated level set.

    populations sum to 1 exactly (renormalized after truncation) and are
    strictly decreasing in n.  The array is marked read-only so the state
    can be shared freely.
    """

    lam: float
    temperature: float
    n_levels: int
    populations: np.ndarray
    partition_function: float
    log_partition_function: float
    mean_energy: float


def gibbs_state(
    lam: float, temperature: float, policy: TruncationPolicy = DEFAULT_POLICY
) -> GibbsState:
    """Thermal populations, partition function and mean energy at (lam, T)."""
    lam = _check_curvature(lam)
    temperature = _check_temperature(temperature)
    weights = _shifted_weights(lam, temperature, policy)
    populations = weights / np.sum(weights)
    populations /= np.sum(populations)  # second pass pins the total at 1.0
    populations.flags.writeable = False

    e0 = energy(0, lam)
    shifted_energies = level_energies(lam, len(weights)) - e0
    mean = e0 + float(np.sum(populations * shifted_energies))

    shifted_sum = float(np.sum(weights))
    log_z = math.log(shifted_sum) - e0 / temperature
    return GibbsState(
        lam=lam,
        temperature=temperature,
        n_levels=len(weights),
        populations=populations,
        partition_function=math.exp(log_z),
        log_partition_function=log_z,
        mean_energy=mean,
    )

"""One quantum Otto cycle between two curvature/temperature pairs.

The cycle alternates two isochores (fixed spectrum, populations relax to the
bath) with two population-preserving adiabats (curvature changes, occupation
numbers frozen).  Denoting by P^h the thermal populations at (T_hot, lam_hot)
and by P^c those at (T_cold, lam_cold), the per-cycle energy books are

    q_hot            = sum_n E_n(lam_hot)  * (P^h_n - P^c_n)
    q_cold_absorbed  = sum_n E_n(lam_cold) * (P^c_n - P^h_n)
    work             = sum_n [E_n(lam_hot) - E_n(lam_cold)] * (P^h_n - P^c_n)

so ``work = q_hot + q_cold_absorbed`` holds as an algebraic identity.

Sign conventions: q_hot > 0 means the substance absorbed heat from the hot
bath, q_cold_out > 0 means it rejected heat to the cold bath, work > 0 means
net work was extracted.  The per-stroke works below are defined so that
``w_expansion + w_compression`` equals the net work with the same sign.

Both population sets are evaluated over a common truncation level (the max
of the two certified counts, the shorter set zero-padded) so the first-law
identity holds to float precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Optional

import numpy as np

from .errors import DomainError
from .spectrum import _check_curvature, level_energies
from .thermo import DEFAULT_POLICY, TruncationPolicy, gibbs_state

__all__ = [
    "TIE_TOLERANCE",
    "CycleOutcome",
    "Mode",
    "OttoParams",
    "StrokeQuantities",
    "carnot_efficiency",
    "classify_mode",
    "run_cycle",
    "stroke_quantities",
]

# Heats/works closer to zero than this are treated as exact zeros when
# classifying the operation mode; tooling needs a deterministic answer on
# the measure-zero boundaries.
TIE_TOLERANCE = 1e-12


class Mode(str, Enum):
    ENGINE = "engine"
    REFRIGERATOR = "refrigerator"
    DISSIPATOR = "dissipator"

    def __str__(self) -> str:  # CSV/JSON cells carry the bare value
        return self.value


@dataclass(frozen=True)
class OttoParams:
    """The cycle's four knobs plus the truncation policy.

    lam_hot >= lam_cold is NOT required; the reversed ordering is a valid
    (work-consuming) regime.
    """

    lambda_cold: float
    lambda_hot: float
    t_hot: float
    t_cold: float
    policy: TruncationPolicy = DEFAULT_POLICY

    def __post_init__(self) -> None:
        _check_curvature(self.lambda_cold)
        _check_curvature(self.lambda_hot)
        for name in ("t_hot", "t_cold"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise DomainError(f"{name} must be a finite number > 0, got {value!r}")
        if not self.t_hot > self.t_cold:
            raise DomainError(
                f"t_hot must exceed t_cold, got t_hot={self.t_hot}, t_cold={self.t_cold}"
            )


@dataclass(frozen=True)
class CycleOutcome:
    """Energy books of one cycle plus the operation-mode classification."""

    q_hot: float
    q_cold_out: float
    work: float
    efficiency: Optional[float]  # only in engine mode
    cop: Optional[float]  # only in refrigerator mode
    mode: Mode
    n_levels: int

    @property
    def q_cold_absorbed(self) -> float:
        return -self.q_cold_out


class StrokeQuantities(NamedTuple):
    w_expansion: float
    w_compression: float
    q_hot: float
    q_cold_absorbed: float


def _aligned_states(params: OttoParams):
    """Energies and zero-padded populations on a common level range."""
    cold = gibbs_state(params.lambda_cold, params.t_cold, params.policy)
    hot = gibbs_state(params.lambda_hot, params.t_hot, params.policy)
    n = max(cold.n_levels, hot.n_levels)
    p_cold = np.pad(cold.populations, (0, n - cold.n_levels))
    p_hot = np.pad(hot.populations, (0, n - hot.n_levels))
    e_cold = level_energies(params.lambda_cold, n)
    e_hot = level_energies(params.lambda_hot, n)
    return e_cold, e_hot, p_cold, p_hot, n


def classify_mode(
    q_hot: float, q_cold_absorbed: float, work: float, tie_tol: float = TIE_TOLERANCE
) -> Mode:
    """Operation mode from the signs of the three energy flows.

    Engine: work out of positive hot-bath heat.  Refrigerator: work consumed
    to move heat out of the cold bath against the gradient.  Anything else,
    including exact zeros, dissipates.
    """
    q_h = 0.0 if abs(q_hot) <= tie_tol else q_hot
    q_c = 0.0 if abs(q_cold_absorbed) <= tie_tol else q_cold_absorbed
    w = 0.0 if abs(work) <= tie_tol else work
    if w > 0.0 and q_h > 0.0:
        return Mode.ENGINE
    if w < 0.0 and q_h < 0.0 and q_c > 0.0:
        return Mode.REFRIGERATOR
    return Mode.DISSIPATOR


def run_cycle(params: OttoParams) -> CycleOutcome:
    """Evaluate one cycle: heats, net work, efficiency/COP and mode."""
    e_cold, e_hot, p_cold, p_hot, n = _aligned_states(params)
    dp = p_hot - p_cold
    q_hot = float(np.sum(e_hot * dp))
    q_cold_absorbed = float(np.sum(e_cold * (p_cold - p_hot)))
    work = float(np.sum((e_hot - e_cold) * dp))
    mode = classify_mode(q_hot, q_cold_absorbed, work)
    efficiency = work / q_hot if mode is Mode.ENGINE else None
    cop = q_cold_absorbed / abs(work) if mode is Mode.REFRIGERATOR else None
    return CycleOutcome(
        q_hot=q_hot,
        q_cold_out=-q_cold_absorbed,
        work=work,
        efficiency=efficiency,
        cop=cop,
        mode=mode,
        n_levels=n,
    )


def stroke_quantities(params: OttoParams) -> StrokeQuantities:
    """Per-stroke works and heats.

    w_expansion is released while the spectrum relaxes from lam_hot to
    lam_cold at frozen hot populations; w_compression is the (usually
    negative) work of driving the spectrum back at frozen cold populations.
    Their sum equals the net work of ``run_cycle``.
    """
    e_cold, e_hot, p_cold, p_hot, _ = _aligned_states(params)
    w_expansion = float(np.sum(p_hot * (e_hot - e_cold)))
    w_compression = float(np.sum(p_cold * (e_cold - e_hot)))
    q_hot = float(np.sum(e_hot * (p_hot - p_cold)))
    q_cold_absorbed = float(np.sum(e_cold * (p_cold - p_hot)))
    return StrokeQuantities(w_expansion, w_compression, q_hot, q_cold_absorbed)


def carnot_efficiency(t_hot: float, t_cold: float) -> float:
    """Second-law ceiling 1 - t_cold/t_hot for any engine between the baths."""
    if not (math.isfinite(t_hot) and math.isfinite(t_cold) and t_hot > t_cold > 0.0):
        raise DomainError(
            f"temperatures must satisfy t_hot > t_cold > 0, got {t_hot!r}, {t_cold!r}"
        )
    return 1.0 - t_cold / t_hot

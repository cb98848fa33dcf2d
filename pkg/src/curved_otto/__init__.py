"""Quantum Otto cycle with a circle-constrained harmonic oscillator.

The working substance is a harmonic oscillator living on a circle of
curvature lam = 1/R**2; its energy ladder depends on lam, so a four-stroke
Otto cycle run between two curvature values (hot bath at lambda_hot, cold
bath at lambda_cold) exchanges curvature-dependent work and heat.  The
package evaluates single cycles exactly (certified series truncation),
provides small/large-curvature closed-form estimators, and generates the
sweep datasets behind the standard figures.
"""

from .asymptotics import (
    LargeCurvatureEstimate,
    LimitParams,
    SmallCurvatureEstimate,
    large_curvature_estimate,
    large_gap_shift,
    scan_reference_temperature,
    small_curvature_efficiency_series,
    small_curvature_estimate,
    theta3,
    theta3_prime,
)
from .cycle import (
    TIE_TOLERANCE,
    CycleOutcome,
    Mode,
    OttoParams,
    StrokeQuantities,
    carnot_efficiency,
    classify_mode,
    run_cycle,
    stroke_quantities,
)
from .errors import BracketError, DomainError, TruncationError
from .spectrum import (
    CurvedSpectrum,
    energy,
    energy_derivative,
    gamma,
    gamma_derivative,
    gap,
    gap_ratio,
    level_energies,
    level_energy_derivatives,
)
from .sweep import (
    FIGURE_IDS,
    PARAMETER_NAMES,
    QUANTITIES,
    Axis,
    PeakResult,
    SweepSpec,
    SweepTable,
    TransitionResult,
    figure_dataset,
    find_mode_transition,
    find_peak_work,
    sweep_grid,
)
from .thermo import (
    DEFAULT_POLICY,
    GibbsState,
    PartitionResult,
    TruncationPolicy,
    gibbs_state,
    partition_function,
)

__version__ = "0.1.0"

__all__ = [
    "Axis",
    "BracketError",
    "CurvedSpectrum",
    "CycleOutcome",
    "DEFAULT_POLICY",
    "DomainError",
    "FIGURE_IDS",
    "GibbsState",
    "LargeCurvatureEstimate",
    "LimitParams",
    "Mode",
    "OttoParams",
    "PARAMETER_NAMES",
    "PartitionResult",
    "PeakResult",
    "QUANTITIES",
    "SmallCurvatureEstimate",
    "StrokeQuantities",
    "SweepSpec",
    "SweepTable",
    "TIE_TOLERANCE",
    "TransitionResult",
    "TruncationError",
    "TruncationPolicy",
    "carnot_efficiency",
    "classify_mode",
    "energy",
    "energy_derivative",
    "figure_dataset",
    "find_mode_transition",
    "find_peak_work",
    "gamma",
    "gamma_derivative",
    "gap",
    "gap_ratio",
    "gibbs_state",
    "large_curvature_estimate",
    "large_gap_shift",
    "level_energies",
    "level_energy_derivatives",
    "partition_function",
    "run_cycle",
    "scan_reference_temperature",
    "small_curvature_efficiency_series",
    "small_curvature_estimate",
    "stroke_quantities",
    "sweep_grid",
    "theta3",
    "theta3_prime",
]

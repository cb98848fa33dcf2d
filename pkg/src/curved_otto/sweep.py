"""Parameter-space exploration: grids, figure datasets, root and peak search.

Sweeps evaluate the cycle (or pure spectrum/population quantities) on a 1- or
2-axis grid and return a tabular dataset in deterministic row-major order.
``figure_dataset`` bakes in the grids behind the standard plots; the axis
ranges the source material leaves open are fixed here so the datasets are
reproducible.

Root finding for the engine-to-refrigerator transition uses plain bisection
on the hot-bath heat (robust, no derivatives); peak-work search uses a
100-point pre-scan for unimodality followed by golden-section refinement,
reporting every local maximum instead of failing when the pre-scan is not
unimodal.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .cycle import Mode, OttoParams, run_cycle
from .errors import BracketError, DomainError, TruncationError
from .spectrum import energy, gap_ratio
from .thermo import DEFAULT_POLICY, TruncationPolicy, gibbs_state

__all__ = [
    "Axis",
    "PARAMETER_NAMES",
    "PeakResult",
    "QUANTITIES",
    "SweepSpec",
    "SweepTable",
    "TransitionResult",
    "figure_dataset",
    "FIGURE_IDS",
    "find_mode_transition",
    "find_peak_work",
    "sweep_grid",
]

PARAMETER_NAMES = ("lambda_cold", "lambda_hot", "t_hot", "t_cold", "level_n")

QUANTITIES = (
    "work",
    "q_hot",
    "q_cold_out",
    "efficiency",
    "mode",
    "energy_gap_shift",
    "population_shift",
    "gap_ratio",
)

_CYCLE_PARAMS = frozenset({"lambda_cold", "lambda_hot", "t_hot", "t_cold"})
_REQUIRED_PARAMS = {
    "work": _CYCLE_PARAMS,
    "q_hot": _CYCLE_PARAMS,
    "q_cold_out": _CYCLE_PARAMS,
    "efficiency": _CYCLE_PARAMS,
    "mode": _CYCLE_PARAMS,
    "energy_gap_shift": frozenset({"lambda_cold", "lambda_hot", "level_n"}),
    "population_shift": _CYCLE_PARAMS | {"level_n"},
    "gap_ratio": frozenset({"lambda_hot", "level_n"}),
}

_CYCLE_QUANTITIES = frozenset({"work", "q_hot", "q_cold_out", "efficiency", "mode"})


def _check_param_value(name: str, value: float) -> float:
    if name == "level_n":
        if isinstance(value, float) and not value.is_integer():
            raise DomainError(f"level_n must be an integer, got {value!r}")
        if int(value) < 0:
            raise DomainError(f"level_n must be >= 0, got {value!r}")
        return float(int(value))
    value = float(value)
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value!r}")
    if name.startswith("lambda") and value < 0.0:
        raise DomainError(f"{name} must be >= 0, got {value}")
    if name.startswith("t_") and value <= 0.0:
        raise DomainError(f"{name} must be > 0, got {value}")
    return value


@dataclass(frozen=True)
class Axis:
    """One swept parameter: evenly spaced over [lo, hi], or explicit points."""

    name: str
    lo: float
    hi: float
    count: int
    points: Optional[tuple[float, ...]] = None

    def __post_init__(self) -> None:
        if self.name not in PARAMETER_NAMES:
            raise DomainError(
                f"unknown sweep parameter {self.name!r}; expected one of {PARAMETER_NAMES}"
            )
        if self.count < 2:
            raise DomainError(f"axis {self.name!r} needs at least 2 points, got {self.count}")
        if self.points is not None:
            if len(self.points) != self.count:
                raise DomainError(
                    f"axis {self.name!r}: count={self.count} but {len(self.points)} points given"
                )
            values = self.points
        else:
            if not self.lo < self.hi:
                raise DomainError(
                    f"axis {self.name!r} range must satisfy lo < hi, got [{self.lo}, {self.hi}]"
                )
            values = (self.lo, self.hi)
        for v in values:
            _check_param_value(self.name, v)

    @classmethod
    def from_points(cls, name: str, points: tuple[float, ...]) -> "Axis":
        pts = tuple(float(p) for p in points)
        if len(pts) < 2:
            raise DomainError(f"axis {name!r} needs at least 2 points, got {len(pts)}")
        return cls(name=name, lo=min(pts), hi=max(pts), count=len(pts), points=pts)

    def values(self) -> np.ndarray:
        if self.points is not None:
            vals = np.asarray(self.points, dtype=float)
        else:
            vals = np.linspace(self.lo, self.hi, self.count)
        if self.name == "level_n":
            rounded = np.rint(vals)
            if not np.all(np.abs(vals - rounded) < 1e-9):
                raise DomainError(
                    f"axis level_n must land on integers; got {vals.tolist()}"
                )
            vals = rounded
        return vals


@dataclass(frozen=True)
class SweepSpec:
    """Grid definition: 1 or 2 axes, fixed values for the rest, quantities."""

    axes: tuple[Axis, ...]
    fixed: dict[str, float] = field(default_factory=dict)
    quantities: tuple[str, ...] = ("work",)

    def __post_init__(self) -> None:
        if not 1 <= len(self.axes) <= 2:
            raise DomainError(f"spec needs 1 or 2 axes, got {len(self.axes)}")
        names = [axis.name for axis in self.axes]
        if len(set(names)) != len(names):
            raise DomainError(f"duplicate axis parameter in {names}")
        if not self.quantities:
            raise DomainError("spec needs at least one quantity")
        for q in self.quantities:
            if q not in QUANTITIES:
                raise DomainError(f"unknown quantity {q!r}; expected one of {QUANTITIES}")
        if len(set(self.quantities)) != len(self.quantities):
            raise DomainError(f"duplicate quantity in {self.quantities}")
        checked = {}
        for name, value in self.fixed.items():
            if name not in PARAMETER_NAMES:
                raise DomainError(
                    f"unknown fixed parameter {name!r}; expected one of {PARAMETER_NAMES}"
                )
            if name in names:
                raise DomainError(f"parameter {name!r} is both an axis and fixed")
            checked[name] = _check_param_value(name, value)
        object.__setattr__(self, "fixed", checked)
        available = set(names) | set(checked)
        needed = set()
        for q in self.quantities:
            needed |= _REQUIRED_PARAMS[q]
        missing = needed - available
        if missing:
            raise DomainError(
                f"quantities {self.quantities} need parameters {sorted(missing)} "
                "set either as an axis or as fixed values"
            )

    def axis_names(self) -> tuple[str, ...]:
        return tuple(axis.name for axis in self.axes)


@dataclass(frozen=True)
class SweepTable:
    """Row-major sweep results with fixed column order and full provenance.

    Cells are floats, ints (level_n), mode strings, or None where a quantity
    is not applicable (efficiency outside engine mode) or a row failed with
    a truncation error; failed rows are listed in row_errors.
    """

    columns: tuple[str, ...]
    rows: tuple[tuple, ...]
    spec: SweepSpec
    policy: TruncationPolicy
    row_errors: tuple[tuple[int, str], ...] = ()

    def column(self, name: str) -> list:
        try:
            i = self.columns.index(name)
        except ValueError:
            raise DomainError(f"no column {name!r}; have {self.columns}") from None
        return [row[i] for row in self.rows]


def _validate_temperatures(spec: SweepSpec) -> None:
    """Reject grids containing t_hot <= t_cold combinations up front."""

    def candidates(name: str) -> Optional[np.ndarray]:
        for axis in spec.axes:
            if axis.name == name:
                return axis.values()
        if name in spec.fixed:
            return np.array([spec.fixed[name]])
        return None

    t_hot = candidates("t_hot")
    t_cold = candidates("t_cold")
    if t_hot is None or t_cold is None:
        return
    if not t_hot.min() > t_cold.max():
        raise DomainError(
            f"grid contains t_hot <= t_cold combinations "
            f"(min t_hot {t_hot.min()}, max t_cold {t_cold.max()})"
        )


def _row_cells(
    point: dict[str, float], quantities: tuple[str, ...], policy: TruncationPolicy
) -> list:
    outcome = None
    if _CYCLE_QUANTITIES & set(quantities):
        outcome = run_cycle(
            OttoParams(
                lambda_cold=point["lambda_cold"],
                lambda_hot=point["lambda_hot"],
                t_hot=point["t_hot"],
                t_cold=point["t_cold"],
                policy=policy,
            )
        )
    cells = []
    for q in quantities:
        if q == "work":
            cells.append(outcome.work)
        elif q == "q_hot":
            cells.append(outcome.q_hot)
        elif q == "q_cold_out":
            cells.append(outcome.q_cold_out)
        elif q == "efficiency":
            cells.append(outcome.efficiency)
        elif q == "mode":
            cells.append(str(outcome.mode))
        elif q == "energy_gap_shift":
            n = int(point["level_n"])
            cells.append(energy(n, point["lambda_hot"]) - energy(n, point["lambda_cold"]))
        elif q == "population_shift":
            n = int(point["level_n"])
            hot = gibbs_state(point["lambda_hot"], point["t_hot"], policy)
            cold = gibbs_state(point["lambda_cold"], point["t_cold"], policy)
            p_hot = hot.populations[n] if n < hot.n_levels else 0.0
            p_cold = cold.populations[n] if n < cold.n_levels else 0.0
            cells.append(float(p_hot - p_cold))
        elif q == "gap_ratio":
            cells.append(gap_ratio(int(point["level_n"]), point["lambda_hot"]))
    return cells


def sweep_grid(spec: SweepSpec, policy: TruncationPolicy = DEFAULT_POLICY) -> SweepTable:
    """Evaluate the grid definition point by point, rows in deterministic grid order."""
    _validate_temperatures(spec)
    axis_values = [axis.values() for axis in spec.axes]
    axis_names = spec.axis_names()
    columns = axis_names + tuple(spec.quantities)
    rows: list[tuple] = []
    errors: list[tuple[int, str]] = []
    for index, combo in enumerate(itertools.product(*axis_values)):
        point = dict(spec.fixed)
        point.update(zip(axis_names, combo))
        head = [int(v) if name == "level_n" else float(v) for name, v in zip(axis_names, combo)]
        try:
            cells = _row_cells(point, spec.quantities, policy)
        except TruncationError as exc:
            errors.append((index, str(exc)))
            cells = [None] * len(spec.quantities)
        rows.append(tuple(head + cells))
    return SweepTable(
        columns=columns,
        rows=tuple(rows),
        spec=spec,
        policy=policy,
        row_errors=tuple(errors),
    )


# Grids behind the standard figures.  Temperatures are t_hot = 1, t_cold = 0.1
# unless the figure varies them; open axis ranges are fixed to contain every
# documented feature (work peaks, efficiency plateau, the heat sign change
# near lambda_hot ~ 7.2).
_FIG_TEMPS = {"t_hot": 1.0, "t_cold": 0.1}


def _fig2_spec() -> SweepSpec:
    return SweepSpec(
        axes=(Axis("level_n", 0, 3, 4), Axis("lambda_hot", 0.0, 5.0, 51)),
        quantities=("gap_ratio",),
    )


def _fig4_spec() -> SweepSpec:
    return SweepSpec(
        axes=(Axis("level_n", 0, 7, 8), Axis("lambda_hot", 0.0, 5.0, 51)),
        fixed={"lambda_cold": 0.5},
        quantities=("energy_gap_shift",),
    )


def _fig5_spec() -> SweepSpec:
    return SweepSpec(
        axes=(Axis("level_n", 0, 7, 8), Axis("lambda_hot", 0.5, 5.0, 46)),
        fixed={"lambda_cold": 0.5, **_FIG_TEMPS},
        quantities=("population_shift",),
    )


def _fig6_spec() -> SweepSpec:
    return SweepSpec(
        axes=(
            Axis.from_points("lambda_cold", (0.1, 0.3, 0.5, 1.0)),
            Axis("lambda_hot", 0.01, 10.0, 200),
        ),
        fixed=dict(_FIG_TEMPS),
        quantities=("work", "mode"),
    )


def _fig7_spec() -> SweepSpec:
    return SweepSpec(
        axes=(Axis("lambda_cold", 0.01, 5.0, 41), Axis("lambda_hot", 0.01, 5.0, 41)),
        fixed=dict(_FIG_TEMPS),
        quantities=("work",),
    )


def _fig8_spec() -> SweepSpec:
    # The lambda_hot family must stay below the work peak of the coldest
    # t_hot grid point (~0.29 at t_hot = 0.2), otherwise work is no longer
    # monotone across the family at fixed t_hot.
    return SweepSpec(
        axes=(
            Axis.from_points("lambda_hot", (0.12, 0.15, 0.2, 0.25)),
            Axis("t_hot", 0.2, 3.0, 57),
        ),
        fixed={"lambda_cold": 0.1, "t_cold": 0.1},
        quantities=("work", "mode"),
    )


def _fig9_spec() -> SweepSpec:
    return SweepSpec(
        axes=(
            Axis.from_points("lambda_cold", (0.1, 0.3, 0.5, 1.0)),
            Axis("lambda_hot", 0.01, 10.0, 200),
        ),
        fixed=dict(_FIG_TEMPS),
        quantities=("efficiency", "work", "mode"),
    )


def _fig10_spec() -> SweepSpec:
    return SweepSpec(
        axes=(Axis("lambda_cold", 0.01, 5.0, 41), Axis("lambda_hot", 0.01, 5.0, 41)),
        fixed=dict(_FIG_TEMPS),
        quantities=("efficiency", "mode"),
    )


def _fig11_spec() -> SweepSpec:
    return SweepSpec(
        axes=(Axis("lambda_hot", 0.01, 10.0, 200),),
        fixed={"lambda_cold": 0.1, **_FIG_TEMPS},
        quantities=("q_hot", "q_cold_out", "work", "mode"),
    )


_FIGURE_SPECS: dict[str, Callable[[], SweepSpec]] = {
    "fig2": _fig2_spec,
    "fig4": _fig4_spec,
    "fig5": _fig5_spec,
    "fig6": _fig6_spec,
    "fig7": _fig7_spec,
    "fig8": _fig8_spec,
    "fig9": _fig9_spec,
    "fig10": _fig10_spec,
    "fig11": _fig11_spec,
}

FIGURE_IDS = tuple(_FIGURE_SPECS)


def figure_dataset(figure_id: str, policy: TruncationPolicy = DEFAULT_POLICY) -> SweepTable:
    """Dataset behind one of the standard figures (fig2, fig4 .. fig11)."""
    try:
        spec = _FIGURE_SPECS[figure_id]()
    except KeyError:
        raise DomainError(
            f"unknown figure id {figure_id!r}; expected one of {FIGURE_IDS}"
        ) from None
    return sweep_grid(spec, policy)


@dataclass(frozen=True)
class TransitionResult:
    """Root of q_hot(lambda_hot) = 0 with the verified sign change."""

    lambda_hot: float
    q_hot: float
    bracket: tuple[float, float]
    f_lo: float
    f_hi: float
    iterations: int


def find_mode_transition(
    lambda_cold: float,
    t_hot: float,
    t_cold: float,
    bracket: tuple[float, float],
    *,
    tol: float = 1e-6,
    residual_rel: float = 1e-8,
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> TransitionResult:
    """Bisect q_hot(lambda_hot) = 0, i.e. the engine-to-refrigerator boundary.

    Stops once the bracket is narrower than ``tol`` AND the midpoint residual
    is below ``residual_rel`` relative to |q_hot| at the lower bracket edge.
    Raises BracketError when the bracket does not straddle a sign change.
    """
    lo, hi = float(bracket[0]), float(bracket[1])
    if not lo < hi:
        raise DomainError(f"bracket must satisfy lo < hi, got [{lo}, {hi}]")

    def f(lam_hot: float) -> float:
        params = OttoParams(
            lambda_cold=lambda_cold, lambda_hot=lam_hot, t_hot=t_hot, t_cold=t_cold, policy=policy
        )
        return run_cycle(params).q_hot

    f_lo = f(lo)
    f_hi = f(hi)
    if f_lo == 0.0 or f_hi == 0.0 or (f_lo > 0.0) == (f_hi > 0.0):
        raise BracketError(
            f"q_hot does not change sign over [{lo}, {hi}]: q_hot(lo)={f_lo:.6e}, "
            f"q_hot(hi)={f_hi:.6e}"
        )
    residual_scale = abs(f_lo)
    a, b, fa = lo, hi, f_lo
    mid = 0.5 * (a + b)
    f_mid = f(mid)
    iterations = 1
    for iterations in range(1, 201):
        if (b - a) <= tol and abs(f_mid) <= residual_rel * residual_scale:
            break
        if f_mid == 0.0:
            break
        if (f_mid > 0.0) == (fa > 0.0):
            a, fa = mid, f_mid
        else:
            b = mid
        nxt = 0.5 * (a + b)
        if nxt == a or nxt == b:  # float resolution exhausted
            break
        mid = nxt
        f_mid = f(mid)
    return TransitionResult(
        lambda_hot=mid,
        q_hot=f_mid,
        bracket=(lo, hi),
        f_lo=f_lo,
        f_hi=f_hi,
        iterations=iterations,
    )


@dataclass(frozen=True)
class PeakResult:
    """Work maximum over lambda_hot; candidates lists every local maximum.

    unimodal is False when the pre-scan saw more than one local maximum; the
    top-level (lambda_hot, work) pair is then the best of the candidates.
    """

    lambda_hot: float
    work: float
    candidates: tuple[tuple[float, float], ...]
    unimodal: bool


_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def _golden_max(f: Callable[[float], float], lo: float, hi: float, tol: float) -> tuple[float, float]:
    a, b = lo, hi
    x1 = b - _INV_PHI * (b - a)
    x2 = a + _INV_PHI * (b - a)
    f1, f2 = f(x1), f(x2)
    while (b - a) > tol:
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + _INV_PHI * (b - a)
            f2 = f(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - _INV_PHI * (b - a)
            f1 = f(x1)
    x = 0.5 * (a + b)
    return x, f(x)


def _peak_candidates(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float,
    scan_points: int,
) -> tuple[tuple[tuple[float, float], ...], bool]:
    xs = np.linspace(lo, hi, scan_points)
    ws = np.array([f(x) for x in xs])
    maxima: list[int] = []
    for i in range(1, len(xs) - 1):
        if ws[i] >= ws[i - 1] and ws[i] >= ws[i + 1] and (ws[i] > ws[i - 1] or ws[i] > ws[i + 1]):
            if maxima and maxima[-1] == i - 1 and ws[i] == ws[i - 1]:
                continue  # plateau already counted
            maxima.append(i)
    if ws[0] > ws[1]:
        maxima.insert(0, 0)
    if ws[-1] > ws[-2]:
        maxima.append(len(xs) - 1)
    unimodal = len(maxima) == 1
    candidates = []
    for i in maxima:
        a = xs[max(i - 1, 0)]
        b = xs[min(i + 1, len(xs) - 1)]
        candidates.append(_golden_max(f, a, b, tol))
    candidates.sort(key=lambda c: c[1], reverse=True)
    return tuple(candidates), unimodal


def find_peak_work(
    lambda_cold: float,
    t_hot: float,
    t_cold: float,
    search_range: tuple[float, float],
    *,
    tol: float = 1e-5,
    scan_points: int = 100,
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> PeakResult:
    """Locate the lambda_hot maximizing extracted work over the search range."""
    lo, hi = float(search_range[0]), float(search_range[1])
    if not lo < hi:
        raise DomainError(f"search range must satisfy lo < hi, got [{lo}, {hi}]")

    def f(lam_hot: float) -> float:
        params = OttoParams(
            lambda_cold=lambda_cold, lambda_hot=lam_hot, t_hot=t_hot, t_cold=t_cold, policy=policy
        )
        return run_cycle(params).work

    candidates, unimodal = _peak_candidates(f, lo, hi, tol, scan_points)
    if not candidates:
        raise DomainError(
            f"work has no local maximum over [{lo}, {hi}]; widen the search range"
        )
    best = candidates[0]
    return PeakResult(lambda_hot=best[0], work=best[1], candidates=candidates, unimodal=unimodal)

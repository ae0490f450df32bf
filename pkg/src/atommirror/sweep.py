"""Point evaluation, parameter sweeps, CSV emission, critical temperature.

A sweep varies one axis (detuning, temperature, or cavity-cavity
coupling) over a uniform grid, optionally once per overlay value of a
second axis, and evaluates the full pipeline at every grid point:
derived constants, steady state, linear model, stability gate, Lyapunov
solve, entanglement reports. Unstable points carry no entanglement
values at all; absence is not the same as separability and the CSV
leaves those cells empty.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace as _dc_replace
from enum import Enum
import math

import numpy as np

from .params import (PhysicalParams, derive_constants, with_effective_detuning)
from .steady_state import (SteadyStateError, solve_steady_state,
                           validity_report)
from .linear_dynamics import build_linear_model
from .lyapunov import solve_lyapunov
from .entanglement import BipartitePair, all_pairs_report

__all__ = [
    "SweepAxis",
    "SweepSpec",
    "SweepRow",
    "CriticalTempResult",
    "NoCrossingError",
    "evaluate_point",
    "run_sweep",
    "rows_to_csv_text",
    "write_csv",
    "find_critical_temperature",
]


class NoCrossingError(RuntimeError):
    """Critical-temperature search could not bracket an E_N -> 0 crossing."""


class SweepAxis(Enum):
    """Sweepable quantities; values double as CSV column names."""

    DELTA_OVER_OMEGA_M = "Delta_over_omega_m"
    TEMPERATURE_K = "T_K"
    J_OVER_OMEGA_M = "J_over_omega_m"


@dataclass(frozen=True)
class SweepSpec:
    """Uniform grid over one axis, optionally overlaid on a second.

    axis values are dimensionless multiples of omega_m for the detuning
    and coupling axes, kelvin for temperature. ``overlays`` values live
    on ``overlay_axis`` (one full grid pass per overlay value).
    """

    axis: SweepAxis
    start: float
    stop: float
    points: int
    base: PhysicalParams
    overlay_axis: SweepAxis = SweepAxis.J_OVER_OMEGA_M
    overlays: tuple[float, ...] = ()

    def __post_init__(self):
        if not isinstance(self.axis, SweepAxis) \
                or not isinstance(self.overlay_axis, SweepAxis):
            raise ValueError("axis and overlay_axis must be SweepAxis")
        if not (math.isfinite(self.start) and math.isfinite(self.stop)
                and self.start < self.stop):
            raise ValueError("need finite start < stop")
        if self.points < 2:
            raise ValueError("need at least 2 grid points")
        if self.overlays and self.axis is self.overlay_axis:
            raise ValueError("overlay axis must differ from the sweep axis")
        if any(not math.isfinite(v) for v in self.overlays):
            raise ValueError("overlay values must be finite")
        object.__setattr__(self, "overlays", tuple(self.overlays))

    def grid(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.points)


@dataclass(frozen=True)
class SweepRow:
    """One evaluated parameter point.

    Entanglement fields are None when the point is linearly unstable
    (no stationary state) or the steady state failed; ``stable`` is
    None only in the failed case. ``failed`` never reaches the CSV,
    whose schema is fixed; failed rows are recognizable by their empty
    ``stable`` cell.
    """

    axis_value: float | None = None
    overlay_value: float | None = None
    EN1: float | None = None
    EN2: float | None = None
    EN3: float | None = None
    nu1: float | None = None
    nu2: float | None = None
    nu3: float | None = None
    stable: bool | None = None
    low_excitation_ok: bool | None = None
    strong_drive_ok: bool | None = None
    abs_a1: float | None = None
    abs_a2: float | None = None
    q_s: float | None = None
    Delta2_eff_over_omega_m: float | None = None
    G_over_omega_m: float | None = None
    failed: bool = False


_PAIR_FIELD = {
    BipartitePair.MIRROR_CAVITY1: "EN1",
    BipartitePair.MIRROR_CAVITY2: "EN2",
    BipartitePair.MIRROR_ATOMS: "EN3",
}


def evaluate_point(p: PhysicalParams) -> SweepRow:
    """Full pipeline at one parameter point; never raises on instability."""
    d = derive_constants(p)
    try:
        s = solve_steady_state(p, d)
    except SteadyStateError:
        return SweepRow(failed=True)
    v = validity_report(p, d, s)
    model = build_linear_model(p, d, s)
    omega_m = p.mech_freq_omega_m
    common = dict(
        stable=model.stable,
        low_excitation_ok=v.low_excitation_ok,
        strong_drive_ok=v.strong_drive_ok,
        abs_a1=v.amp1_abs,
        abs_a2=v.amp2_abs,
        q_s=s.q_s,
        Delta2_eff_over_omega_m=s.Delta2_eff / omega_m,
        G_over_omega_m=s.G_eff / omega_m,
    )
    if not model.stable:
        return SweepRow(**common)
    cov = solve_lyapunov(model.drift_A, model.diffusion_D)
    reports = all_pairs_report(cov)
    r1 = reports[BipartitePair.MIRROR_CAVITY1]
    r2 = reports[BipartitePair.MIRROR_CAVITY2]
    r3 = reports[BipartitePair.MIRROR_ATOMS]
    return SweepRow(
        EN1=r1.E_N, EN2=r2.E_N, EN3=r3.E_N,
        nu1=r1.nu_minus, nu2=r2.nu_minus, nu3=r3.nu_minus,
        **common,
    )


def _with_axis(p: PhysicalParams, axis: SweepAxis,
               value: float) -> PhysicalParams:
    omega_m = p.mech_freq_omega_m
    if axis is SweepAxis.DELTA_OVER_OMEGA_M:
        return with_effective_detuning(p, value * omega_m)
    if axis is SweepAxis.TEMPERATURE_K:
        return _dc_replace(p, temperature_T=value)
    if axis is SweepAxis.J_OVER_OMEGA_M:
        return _dc_replace(p, cavity_coupling_J=value * omega_m)
    raise ValueError(f"unknown axis {axis!r}")


def run_sweep(spec: SweepSpec, csv_path=None, plot_path=None,
              workers: int = 1) -> list[SweepRow]:
    """Evaluate the grid and optionally write the CSV and plot files.

    Points are independent; with workers > 1 they are evaluated on a
    thread pool. Row order and content are identical for any worker
    count, so repeated runs produce byte-identical CSV.
    """
    grid = spec.grid()
    overlays = spec.overlays if spec.overlays else (None,)
    tasks = []
    for overlay in overlays:
        for value in grid:
            tasks.append((float(value), overlay))

    def eval_one(task):
        value, overlay = task
        p = spec.base
        if overlay is not None:
            p = _with_axis(p, spec.overlay_axis, overlay)
        p = _with_axis(p, spec.axis, value)
        row = evaluate_point(p)
        return _dc_replace(row, axis_value=value, overlay_value=overlay)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(eval_one, tasks))
    else:
        rows = [eval_one(t) for t in tasks]

    if csv_path is not None:
        write_csv(rows, spec, csv_path)
    if plot_path is not None:
        from .plotting import render_sweep_plot
        render_sweep_plot(rows, spec, plot_path)
    return rows


_VALUE_COLUMNS = (
    "EN1", "EN2", "EN3", "nu1", "nu2", "nu3",
    "stable", "low_excitation_ok", "strong_drive_ok",
    "abs_a1", "abs_a2", "q_s", "Delta2_eff_over_omega_m", "G_over_omega_m",
)


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    return repr(float(value))


def rows_to_csv_text(rows, spec: SweepSpec) -> str:
    """Render rows to the fixed CSV schema (full double precision)."""
    header = [spec.axis.value]
    with_overlay = bool(spec.overlays)
    if with_overlay:
        header.append(spec.overlay_axis.value)
    header.extend(_VALUE_COLUMNS)
    lines = [",".join(header)]
    for row in rows:
        cells = [_cell(row.axis_value)]
        if with_overlay:
            cells.append(_cell(row.overlay_value))
        cells.extend(_cell(getattr(row, name)) for name in _VALUE_COLUMNS)
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def write_csv(rows, spec: SweepSpec, path) -> None:
    text = rows_to_csv_text(rows, spec)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


@dataclass(frozen=True)
class CriticalTempResult:
    """Smallest temperature at which the pair's entanglement has died.

    bracket = (T_low, T_high) with E_N(T_low) > 0, E_N(T_high) = 0 and
    T_high - T_low <= tolerance; T_c is T_high. ``profile`` holds
    (T, E_N) samples across the search range (NaN where E_N is
    undefined); ``monotonic`` is False when the sampled profile ever
    increases, in which case ``warnings`` explains.
    """

    T_c: float
    bracket: tuple[float, float]
    pair: BipartitePair
    tolerance: float
    monotonic: bool
    profile: tuple[tuple[float, float], ...]
    warnings: tuple[str, ...]


def find_critical_temperature(p: PhysicalParams,
                              pair: BipartitePair = BipartitePair.MIRROR_ATOMS,
                              t_max: float = 100.0,
                              tol: float = 0.1,
                              profile_points: int = 17) -> CriticalTempResult:
    """Bisect for the smallest temperature with E_N = 0.

    The base temperature is taken from ``p`` and must carry positive
    entanglement; ``t_max`` must carry none. The profile sampling
    checks the assumed monotonic decay; violations are reported as
    warnings, never as failures.
    """
    if tol <= 0:
        raise ValueError("tol must be > 0")
    t_base = p.temperature_T
    if not t_base < t_max:
        raise ValueError("need base temperature < t_max")
    field = _PAIR_FIELD[pair]

    def en_at(T: float):
        row = evaluate_point(_dc_replace(p, temperature_T=T))
        return getattr(row, field)

    e_base = en_at(t_base)
    if e_base is None:
        raise NoCrossingError(
            "entanglement is undefined at the base temperature (the "
            "operating point is linearly unstable or its steady state "
            "failed), so no crossing exists")
    if e_base <= 0:
        raise NoCrossingError(
            f"E_N is already zero at the base temperature {t_base} K")
    warnings = []
    e_top = en_at(t_max)
    if e_top is None:
        # the drift matrix does not depend on temperature, so this is
        # unreachable unless the base point was marginal; treat as dead
        warnings.append("entanglement undefined at t_max; treated as zero")
        e_top = 0.0
    if e_top > 0:
        raise NoCrossingError(
            f"E_N is still positive at t_max = {t_max} K; raise t_max")

    lo, hi = t_base, t_max
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        e_mid = en_at(mid)
        if e_mid is not None and e_mid > 0:
            lo = mid
        else:
            hi = mid

    profile = []
    previous = None
    monotonic = True
    for T in np.linspace(t_base, t_max, profile_points):
        e = en_at(float(T))
        profile.append((float(T), math.nan if e is None else e))
        if e is not None and previous is not None and e > previous + 1e-12:
            monotonic = False
        if e is not None:
            previous = e
    if not monotonic:
        warnings.append(
            "sampled E_N(T) is not monotonically decreasing; T_c is the "
            "highest-temperature crossing found by bisection and may not "
            "be unique")

    return CriticalTempResult(
        T_c=hi, bracket=(lo, hi), pair=pair, tolerance=tol,
        monotonic=monotonic, profile=tuple(profile),
        warnings=tuple(warnings),
    )

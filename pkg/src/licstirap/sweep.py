"""Signals over 1-D and 2-D parameter grids.

Grid points are independent; they are split into contiguous index ranges,
one per worker thread, and written into a preallocated buffer so the
result never depends on scheduling. The compiled integrator releases the
GIL, so numeric sweeps scale with threads.
"""
from __future__ import annotations

import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .adiabatic import P0_INTEGRATED, DegenerateDenominator, EliminationDomainError, analytic_signals
from .dynamics import DEFAULT_ATOL, DEFAULT_RTOL, MISSING, NumericalFailure, Signals, simulate
from .model import TWO_LEVEL, ModelParams
from .pulses import DEFAULT_PADDING, PulseSet

log = logging.getLogger(__name__)

NUMERIC = "numeric"
ANALYTIC = "analytic"

PULSE_FIELDS = {
    "omega0": ("pump", "amplitude"), "tau_p": ("pump", "center"), "width_p": ("pump", "width"),
    "gamma_i0": ("ionizing", "amplitude"), "tau_i": ("ionizing", "center"),
    "width_i": ("ionizing", "width"),
    "gamma_c0": ("control", "amplitude"), "tau_c": ("control", "center"),
    "width_c": ("control", "width"),
}
MODEL_FIELDS = {"gamma": "gamma_loss", "delta_pump": "delta_pump",
                "delta_control": "delta_control", "fano_q": "fano_q"}
PARAMETERS = tuple(PULSE_FIELDS) + tuple(MODEL_FIELDS)
COLUMNS = ("I", "F", "P1", "P2", "Pc")

_POINT_ERRORS = (NumericalFailure, DegenerateDenominator, EliminationDomainError,
                 ValueError, ArithmeticError)


@dataclass(frozen=True)
class AxisSpec:
    name: str
    min: float
    max: float
    count: int
    scale: str = "linear"

    def __post_init__(self):
        if self.name not in PARAMETERS:
            raise ValueError(f"unknown sweep parameter {self.name!r}; choose from {PARAMETERS}")
        if not self.min < self.max:
            raise ValueError(f"axis {self.name}: min must be < max")
        if int(self.count) != self.count or self.count < 2:
            raise ValueError(f"axis {self.name}: count must be an integer >= 2")
        if self.scale not in ("linear", "log"):
            raise ValueError(f"axis {self.name}: scale must be linear or log")
        if self.scale == "log" and not self.min > 0:
            raise ValueError(f"axis {self.name}: log scale needs min > 0")

    @classmethod
    def parse(cls, text: str) -> "AxisSpec":
        """Parse ``name:min:max:count[:log]``."""
        parts = text.split(":")
        if len(parts) not in (4, 5) or (len(parts) == 5 and parts[4] not in ("log", "linear")):
            raise ValueError(f"axis {text!r} must look like name:min:max:count[:log]")
        try:
            lo, hi, n = float(parts[1]), float(parts[2]), float(parts[3])
        except ValueError:
            raise ValueError(f"axis {text!r}: min, max and count must be numbers") from None
        if n != int(n):
            raise ValueError(f"axis {text!r}: count must be an integer")
        return cls(parts[0], lo, hi, int(n), parts[4] if len(parts) == 5 else "linear")

    def values(self) -> np.ndarray:
        if self.scale == "log":
            return np.geomspace(self.min, self.max, self.count)
        return np.linspace(self.min, self.max, self.count)

    def __str__(self):
        tail = ":log" if self.scale == "log" else ""
        return f"{self.name}:{self.min:.9g}:{self.max:.9g}:{self.count}{tail}"


def override(pulses: PulseSet, params: ModelParams, name: str, value: float):
    """Copies of ``pulses`` and ``params`` with one named scalar replaced."""
    if name in PULSE_FIELDS:
        which, attr = PULSE_FIELDS[name]
        pulse = replace(getattr(pulses, which), **{attr: float(value)})
        return pulses.replace(**{which: pulse}), params
    if name in MODEL_FIELDS:
        return pulses, params.replace(**{MODEL_FIELDS[name]: float(value)})
    raise ValueError(f"unknown sweep parameter {name!r}")


@dataclass
class SweepResult:
    axes: tuple[AxisSpec, ...]
    grid: list[Signals]
    mode: str
    failures: int = 0
    window_warnings: int = 0
    points: list[tuple[float, ...]] = field(default_factory=list)

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(a.count for a in self.axes)

    def array(self, column: str = "I") -> np.ndarray:
        """One signal column reshaped to the grid, first axis outermost."""
        k = COLUMNS.index(column)
        return np.array([s.as_row()[k] for s in self.grid]).reshape(self.shape)


def grid_points(axes) -> list[tuple[float, ...]]:
    """Row-major grid coordinates; the first axis varies slowest."""
    vals = [a.values() for a in axes]
    if len(vals) == 1:
        return [(float(x),) for x in vals[0]]
    return [(float(x), float(y)) for x in vals[0] for y in vals[1]]


def default_workers() -> int:
    env = os.environ.get("SWEEP_WORKERS")
    if env:
        n = int(env)
        if n < 1:
            raise ValueError("SWEEP_WORKERS must be >= 1")
        return n
    return os.cpu_count() or 1


def evaluate_point(pulses, params, names, point, mode=NUMERIC, window=None,
                   tolerances=(DEFAULT_RTOL, DEFAULT_ATOL), padding=DEFAULT_PADDING,
                   p0_form=P0_INTEGRATED) -> Signals:
    """Signals at one grid point; this is exactly what :func:`sweep` computes there."""
    for name, value in zip(names, point):
        pulses, params = override(pulses, params, name, value)
    if mode == NUMERIC:
        return simulate(pulses, params, warn=False, window=window, tolerances=tolerances,
                        padding=padding)
    return analytic_signals(pulses, params, window=window, padding=padding, p0_form=p0_form)


def sweep(pulses: PulseSet, params: ModelParams, axes, mode: str = NUMERIC,
          workers: int | None = None, window=None,
          tolerances=(DEFAULT_RTOL, DEFAULT_ATOL), padding: float = DEFAULT_PADDING,
          p0_form: str = P0_INTEGRATED) -> SweepResult:
    """Evaluate signals on the grid spanned by one or two axes.

    The time window is recomputed at every point unless a fixed ``window`` is
    given. Points that fail are stored as NaN signals and counted.
    """
    axes = tuple(axes)
    if not 1 <= len(axes) <= 2:
        raise ValueError("sweep takes one or two axes")
    names = tuple(a.name for a in axes)
    if len(set(names)) != len(names):
        raise ValueError("sweep axes must reference distinct parameters")
    if mode not in (NUMERIC, ANALYTIC):
        raise ValueError(f"mode must be {NUMERIC!r} or {ANALYTIC!r}")
    if params.model_kind == TWO_LEVEL and "gamma_c0" in names:
        raise ValueError("sweeping gamma_c0 requires the three_level model")

    points = grid_points(axes)
    buf: list[Signals | None] = [None] * len(points)
    failed = np.zeros(len(points), dtype=bool)

    def run(lo, hi):
        for k in range(lo, hi):
            try:
                buf[k] = evaluate_point(pulses, params, names, points[k], mode, window,
                                        tolerances, padding, p0_form)
            except _POINT_ERRORS as exc:
                log.debug("grid point %s failed: %s", points[k], exc)
                buf[k] = MISSING
                failed[k] = True

    n_workers = max(1, min(workers or default_workers(), len(points)))
    chunk = math.ceil(len(points) / n_workers)
    ranges = [(lo, min(lo + chunk, len(points))) for lo in range(0, len(points), chunk)]
    if len(ranges) == 1:
        run(*ranges[0])
    else:
        with ThreadPoolExecutor(max_workers=len(ranges)) as pool:
            for fut in [pool.submit(run, lo, hi) for lo, hi in ranges]:
                fut.result()

    n_fail = int(failed.sum())
    if n_fail:
        log.warning("%d of %d grid points failed and are stored as NaN", n_fail, len(points))
    warned = sum(1 for s, bad in zip(buf, failed) if not bad and not s.window_ok)
    return SweepResult(axes, buf, mode, n_fail, warned, points)


def argmax(result: SweepResult) -> tuple[tuple[float, ...], float]:
    """First grid point (in grid order) with the largest ionization."""
    best, best_i = None, -np.inf
    for pt, sig in zip(result.points, result.grid):
        if not math.isnan(sig.ionization) and sig.ionization > best_i:
            best, best_i = pt, sig.ionization
    if best is None:
        raise ValueError("every grid point is missing")
    return best, float(best_i)


def fmt(x: float) -> str:
    return "NaN" if math.isnan(x) else f"{x:.9g}"


def grid_csv(result: SweepResult) -> str:
    lines = ["# " + ",".join([a.name for a in result.axes] + list(COLUMNS))]
    ny = result.axes[1].count if len(result.axes) == 2 else None
    for k, (pt, sig) in enumerate(zip(result.points, result.grid)):
        if ny and k and k % ny == 0:
            lines.append("")  # gnuplot scan separator
        lines.append(",".join(fmt(v) for v in pt + sig.as_row()))
    return "\n".join(lines) + "\n"


def plot_script(result: SweepResult, csv_name: str) -> str:
    ax = result.axes
    out = ["set datafile separator ','", "set datafile missing 'NaN'",
           f"set xlabel '{ax[0].name}'"]
    if ax[0].scale == "log":
        out.append("set logscale x")
    if len(ax) == 2:
        if ax[1].scale == "log":
            out.append("set logscale y")
        out += [f"set ylabel '{ax[1].name}'", "set title 'ionization I'", "set pm3d map",
                f"splot '{csv_name}' using 1:2:3 with pm3d notitle"]
    else:
        out += ["set ylabel 'signal'", "set key outside",
                f"plot '{csv_name}' using 1:2 with linespoints title 'I', "
                f"'' using 1:3 with linespoints title 'F'"]
    out.append("pause mouse close")
    return "\n".join(out) + "\n"


def write_grid(result: SweepResult, path) -> Path:
    """Write the grid CSV and a gnuplot script beside it; returns the script path."""
    path = Path(path)
    path.write_text(grid_csv(result))
    script = path.with_suffix(".gp")
    script.write_text(plot_script(result, path.name))
    return script

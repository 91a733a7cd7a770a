"""Command-line front end.

Configuration is a flat ``key=value`` file (``#`` starts a comment). Times
are in units of the pump width, frequencies and rates in inverse units.

Exit codes: 0 success, 2 configuration error, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import dataclasses
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .adiabatic import (P0_FORMS, P0_INTEGRATED, DegenerateDenominator, EliminationDomainError,
                        analytic_trajectory, perturbative_eigensystem)
from .dynamics import NumericalFailure, Signals, Trajectory, propagate, signals_from
from .eigen import DefectiveMatrix, eigenvalue_curves, exact_eigensystem
from .model import MODEL_KINDS, THREE_LEVEL, TWO_LEVEL, ModelParams, check_conditions, hamiltonian
from .pulses import GaussianPulse, PulseSet, time_window
from .sweep import ANALYTIC, NUMERIC, AxisSpec, argmax, fmt, sweep, write_grid

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC = 0, 2, 3
NUMERICAL_ERRORS = (NumericalFailure, DegenerateDenominator, EliminationDomainError,
                    DefectiveMatrix)


class ConfigError(ValueError):
    def __init__(self, key, reason):
        super().__init__(f"{key}: {reason}")
        self.key = key
        self.reason = reason


@dataclass(frozen=True)
class RunConfig:
    model_kind: str = TWO_LEVEL
    omega0: float = 0.0
    tau_p: float = 0.0
    width_p: float = 1.0
    gamma_i0: float = 0.0
    tau_i: float = 0.0
    width_i: float = 1.0
    gamma_c0: float = 0.0
    tau_c: float = 0.0
    width_c: float = 1.0
    gamma: float = 0.0
    delta_pump: float = 0.0
    delta_control: float = 0.0
    fano_q: float = 0.0
    stark_1: float = 0.0
    stark_2: float = 0.0
    stark_c: float = 0.0
    tol_rel: float = 1e-9
    tol_abs: float = 1e-12
    padding: float = 5.0
    sample_count: int = 2000
    t_start: float | None = None
    t_end: float | None = None
    p0_form: str = P0_INTEGRATED

    def pulses(self) -> PulseSet:
        return PulseSet(GaussianPulse(self.omega0, self.tau_p, self.width_p),
                        GaussianPulse(self.gamma_i0, self.tau_i, self.width_i),
                        GaussianPulse(self.gamma_c0, self.tau_c, self.width_c))

    def params(self) -> ModelParams:
        return ModelParams(self.delta_pump, self.delta_control, self.gamma, self.fano_q,
                           self.stark_1, self.stark_2, self.stark_c, self.model_kind)

    def window(self):
        t0, t1 = time_window(self.pulses(), self.padding)
        return (t0 if self.t_start is None else self.t_start,
                t1 if self.t_end is None else self.t_end)

    def fixed_window(self):
        """The user override, or ``None`` when the window should follow the pulses."""
        if self.t_start is None and self.t_end is None:
            return None
        return self.window()


_FIELDS = {f.name: f for f in dataclasses.fields(RunConfig)}
_KEY_ALIASES = {"model": "model_kind"}
_STRINGS = {"model_kind": MODEL_KINDS, "p0_form": P0_FORMS}
_NONNEG = ("omega0", "gamma_i0", "gamma_c0", "gamma")
_POSITIVE = ("width_p", "width_i", "width_c", "tol_rel", "tol_abs", "padding")


def _convert(key, raw):
    if key in _STRINGS:
        if raw not in _STRINGS[key]:
            raise ConfigError(key, f"must be one of {', '.join(_STRINGS[key])}, got {raw!r}")
        return raw
    if key == "sample_count":
        try:
            return int(raw)
        except ValueError:
            raise ConfigError(key, f"expected an integer, got {raw!r}") from None
    try:
        val = float(raw)
    except ValueError:
        raise ConfigError(key, f"expected a number, got {raw!r}") from None
    if not math.isfinite(val):
        raise ConfigError(key, "must be finite")
    return val


def validate(cfg: RunConfig) -> RunConfig:
    for key in _NONNEG:
        if getattr(cfg, key) < 0:
            raise ConfigError(key, "rates must be >= 0")
    for key in _POSITIVE:
        if not getattr(cfg, key) > 0:
            raise ConfigError(key, "must be > 0")
    if cfg.sample_count < 2:
        raise ConfigError("sample_count", "must be >= 2")
    if cfg.model_kind == TWO_LEVEL and cfg.gamma_c0 > 0:
        raise ConfigError("gamma_c0", "a control pulse requires model=three_level")
    t0, t1 = cfg.window()
    if not t1 > t0:
        raise ConfigError("t_end" if cfg.t_end is not None else "t_start",
                          f"window end must exceed its start ({t0:g} >= {t1:g})")
    return cfg


def parse_config(text: str, overrides=()) -> RunConfig:
    """Parse ``key=value`` text; ``overrides`` are extra ``key=value`` items applied last."""
    values = {}
    seen = set()
    lines = [(n, line) for n, line in enumerate(text.splitlines(), 1)]
    lines += [(f"override {i + 1}", item) for i, item in enumerate(overrides)]
    for where, line in lines:
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(line, f"line {where}: expected key=value")
        key, raw = (x.strip() for x in line.split("=", 1))
        key = _KEY_ALIASES.get(key, key)
        if key not in _FIELDS:
            raise ConfigError(key, "unknown key")
        if key in seen and not str(where).startswith("override"):
            raise ConfigError(key, "given more than once")
        seen.add(key)
        values[key] = _convert(key, raw)
    return validate(RunConfig(**values))


def dump_config(cfg: RunConfig) -> str:
    out = []
    for name in _FIELDS:
        val = getattr(cfg, name)
        if val is None:
            continue
        key = "model" if name == "model_kind" else name
        out.append(f"{key}={val!r}" if isinstance(val, float) else f"{key}={val}")
    return "\n".join(out) + "\n"


# -- output ------------------------------------------------------------------

TRAJECTORY_COLUMNS = ("t", "P1", "P2", "Pc", "F", "Iacc")


def trajectory_csv(tr: Trajectory) -> str:
    cols = tr.columns()
    data = np.column_stack([cols[c] for c in TRAJECTORY_COLUMNS])
    rows = ["# " + ",".join(TRAJECTORY_COLUMNS)]
    rows += [",".join(fmt(v) for v in row) for row in data]
    return "\n".join(rows) + "\n"


def _signals_of(tr: Trajectory) -> Signals:
    return signals_from(tr, warn=False)


def compare_trajectories(numeric: Trajectory, analytic: Trajectory) -> dict[str, float]:
    """Max absolute deviation per shared column, plus the final I and F."""
    a, b = numeric.columns(), analytic.columns()
    dev = {c: float(np.max(np.abs(a[c] - b[c]))) for c in TRAJECTORY_COLUMNS[1:]}
    sa, sb = _signals_of(numeric), _signals_of(analytic)
    dev["I"] = abs(sa.ionization - sb.ionization)
    dev["F_total"] = abs(sa.fluorescence - sb.fluorescence)
    return dev


def eigen_csv(cfg: RunConfig) -> str:
    pulses, params = cfg.pulses(), cfg.params()
    times = np.linspace(*cfg.window(), cfg.sample_count)
    mats = [hamiltonian(t, pulses, params) for t in times]
    if params.model_kind == THREE_LEVEL:
        labels = ("plus", "zero", "minus")
        try:
            ref = perturbative_eigensystem(times[0], pulses, params).eigenvalues
        except DegenerateDenominator:
            ref = None
    else:
        labels = ("1", "2")
        first = exact_eigensystem(mats[0]).eigenvalues
        # branch 1 starts nearest the ground-state energy
        ref = sorted(first, key=lambda e: abs(e - mats[0][0, 0]))
    curves = eigenvalue_curves(mats, reference=ref)
    head = ["t"] + [f"{p}_eps_{lab}" for lab in labels for p in ("re", "im")]
    rows = ["# " + ",".join(head)]
    for t, eps in zip(times, curves):
        vals = [t] + [x for e in eps for x in (e.real, e.imag)]
        rows.append(",".join(fmt(v) for v in vals))
    return "\n".join(rows) + "\n"


def _diagnostics(cfg: RunConfig, err):
    diag = check_conditions(cfg.tau_p, cfg.pulses(), cfg.params())
    for line in diag.lines():
        print("conditions: " + line, file=err)


def _run_numeric(cfg):
    return propagate(cfg.pulses(), cfg.params(), window=cfg.window(),
                     tolerances=(cfg.tol_rel, cfg.tol_abs), sample_count=cfg.sample_count)


def _run_analytic(cfg):
    return analytic_trajectory(cfg.pulses(), cfg.params(), window=cfg.window(),
                               sample_count=cfg.sample_count, p0_form=cfg.p0_form)


def _window_warning(sig: Signals, err):
    if not sig.window_ok:
        print(f"warning: P2={sig.residual_p2:.3g} Pc={sig.residual_pc:.3g} left at window end",
              file=err)


def run(command: str, cfg: RunConfig, axes=(), output=None, mode=NUMERIC,
        fixed_window=False, workers=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        if command == "simulate":
            _diagnostics(cfg, err)
            tr = _run_numeric(cfg)
            Path(output or "trajectory.csv").write_text(trajectory_csv(tr))
            sig = _signals_of(tr)
            _window_warning(sig, err)
            print(sig.summary(), file=out)
        elif command == "analytic":
            tr = _run_analytic(cfg)
            Path(output or "analytic.csv").write_text(trajectory_csv(tr))
            print(_signals_of(tr).summary(), file=out)
        elif command == "compare":
            _diagnostics(cfg, err)
            num, ana = _run_numeric(cfg), _run_analytic(cfg)
            stem = str(output or "compare")
            Path(stem + ".numeric.csv").write_text(trajectory_csv(num))
            Path(stem + ".analytic.csv").write_text(trajectory_csv(ana))
            print("numeric  " + _signals_of(num).summary(), file=out)
            print("analytic " + _signals_of(ana).summary(), file=out)
            dev = compare_trajectories(num, ana)
            print("max|dev| " + " ".join(f"{k}={v:.9g}" for k, v in dev.items()), file=out)
        elif command == "sweep":
            axes = [a if isinstance(a, AxisSpec) else AxisSpec.parse(a) for a in axes]
            window = cfg.window() if fixed_window else cfg.fixed_window()
            res = sweep(cfg.pulses(), cfg.params(), axes, mode=mode, workers=workers,
                        window=window, tolerances=(cfg.tol_rel, cfg.tol_abs),
                        padding=cfg.padding, p0_form=cfg.p0_form)
            path = Path(output or "grid.csv")
            script = write_grid(res, path)
            if res.failures:
                print(f"warning: {res.failures} grid points failed (NaN)", file=err)
            if res.window_warnings:
                print(f"warning: {res.window_warnings} grid points left P2/Pc > 1e-4",
                      file=err)
            try:
                pt, best = argmax(res)
                where = " ".join(f"{a.name}={v:.9g}" for a, v in zip(axes, pt))
                print(f"max I={best:.9g} at {where}; wrote {path} and {script}", file=out)
            except ValueError:
                print(f"all grid points failed; wrote {path}", file=out)
        elif command == "eigen":
            Path(output or "eigen.csv").write_text(eigen_csv(cfg))
        else:
            raise ConfigError("command", f"unknown command {command!r}")
    except ConfigError as exc:
        print(f"config error: {exc}", file=err)
        return EXIT_CONFIG
    except NUMERICAL_ERRORS as exc:
        print(f"numerical failure: {exc}", file=err)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"config error: {exc}", file=err)
        return EXIT_CONFIG
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="licstirap", description=__doc__.splitlines()[0])
    ap.add_argument("command", choices=("simulate", "analytic", "compare", "sweep", "eigen"))
    ap.add_argument("config", help="key=value configuration file ('-' for stdin)")
    ap.add_argument("-o", "--output", help="output CSV (compare: file stem)")
    ap.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                    help="override one configuration key")
    ap.add_argument("--x", dest="x_axis", metavar="NAME:MIN:MAX:COUNT[:log]")
    ap.add_argument("--y", dest="y_axis", metavar="NAME:MIN:MAX:COUNT[:log]")
    ap.add_argument("--mode", choices=(NUMERIC, ANALYTIC), default=NUMERIC)
    ap.add_argument("--fixed-window", action="store_true",
                    help="use the base configuration's window at every grid point")
    ap.add_argument("--dump-config", action="store_true",
                    help="print the parsed configuration and exit")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text = sys.stdin.read() if args.config == "-" else Path(args.config).read_text("utf-8")
        cfg = parse_config(text, args.set)
    except OSError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if args.dump_config:
        sys.stdout.write(dump_config(cfg))
        return EXIT_OK
    axes = [a for a in (args.x_axis, args.y_axis) if a]
    if args.command == "sweep" and not axes:
        print("config error: sweep needs --x (and optionally --y)", file=sys.stderr)
        return EXIT_CONFIG
    return run(args.command, cfg, axes, args.output, args.mode, args.fixed_window)


if __name__ == "__main__":
    sys.exit(main())

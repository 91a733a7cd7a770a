"""Numerical propagation of the lossy amplitude equations and final signals."""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from . import _dopri
from .model import THREE_LEVEL, ModelParams
from .pulses import DEFAULT_PADDING, PulseSet, time_window

DEFAULT_RTOL = 1e-9
DEFAULT_ATOL = 1e-12
DEFAULT_SAMPLES = 2000
RESIDUAL_LIMIT = 1e-4
MAX_STEPS = 50_000_000


class NumericalFailure(RuntimeError):
    """The integrator could not reach the end of the window."""


class ResidualPopulationWarning(UserWarning):
    """Discrete excited-state population is left at the end of the window."""


@dataclass(frozen=True)
class StateVector:
    amplitudes: np.ndarray
    fluorescence_acc: float = 0.0


def norm(state) -> float:
    """Total discrete-state population ``sum |c_n|**2``.

    Accepts a :class:`StateVector` or a bare amplitude sequence.
    """
    amps = state.amplitudes if isinstance(state, StateVector) else state
    amps = np.asarray(amps, dtype=complex)
    return float(np.sum(amps.real**2 + amps.imag**2))


@dataclass(frozen=True)
class Trajectory:
    """Sampled populations; ``final`` holds the exact end-of-window state."""

    times: np.ndarray
    p1: np.ndarray
    p2: np.ndarray
    pc: np.ndarray
    fluorescence: np.ndarray
    final: StateVector
    dimension: int
    steps: int = 0
    rejected: int = 0

    @property
    def ionized(self) -> np.ndarray:
        return 1.0 - self.p1 - self.p2 - self.pc - self.fluorescence

    @property
    def norm(self) -> np.ndarray:
        return self.p1 + self.p2 + self.pc

    def columns(self) -> dict[str, np.ndarray]:
        return {"t": self.times, "P1": self.p1, "P2": self.p2, "Pc": self.pc,
                "F": self.fluorescence, "Iacc": self.ionized}


@dataclass(frozen=True)
class Signals:
    ionization: float
    fluorescence: float
    residual_p1: float
    residual_p2: float
    residual_pc: float = 0.0

    @property
    def window_ok(self) -> bool:
        return max(self.residual_p2, self.residual_pc) <= RESIDUAL_LIMIT

    def as_row(self) -> tuple[float, ...]:
        return (self.ionization, self.fluorescence, self.residual_p1,
                self.residual_p2, self.residual_pc)

    def summary(self) -> str:
        return ("I={:.9g} F={:.9g} P1={:.9g} P2={:.9g} Pc={:.9g}"
                .format(*self.as_row()))


MISSING = Signals(*(float("nan"),) * 5)


def pack(pulses: PulseSet, params: ModelParams) -> np.ndarray:
    p = np.zeros(_dopri.N_PARAMS)
    for base, pulse in ((_dopri.OMEGA0, pulses.pump), (_dopri.GAMMA_I0, pulses.ionizing),
                        (_dopri.GAMMA_C0, pulses.control)):
        p[base:base + 3] = pulse.amplitude, pulse.center, pulse.width
    p[_dopri.DELTA] = params.delta_pump
    p[_dopri.SMALL_DELTA] = params.delta_control
    p[_dopri.GAMMA] = params.gamma_loss
    p[_dopri.Q] = params.fano_q
    p[_dopri.STARK_1] = params.stark_1
    p[_dopri.STARK_2] = params.stark_2
    p[_dopri.STARK_C] = params.stark_c
    p[_dopri.THREE] = 1.0 if params.model_kind == THREE_LEVEL else 0.0
    return p


def _check_model(pulses, params):
    if params.model_kind != THREE_LEVEL and pulses.control.amplitude > 0:
        raise ValueError("a control pulse requires the three_level model")


def propagate(pulses: PulseSet, params: ModelParams, window=None,
              tolerances=(DEFAULT_RTOL, DEFAULT_ATOL), sample_count: int = DEFAULT_SAMPLES,
              padding: float = DEFAULT_PADDING, max_step=None) -> Trajectory:
    """Integrate ``i dc/dt = H(t) c`` from ``c = (1, 0, 0)`` across ``window``.

    ``window`` defaults to :func:`time_window` with ``padding``. The step is
    capped at a tenth of the narrowest pulse width unless ``max_step`` is given.
    """
    _check_model(pulses, params)
    if window is None:
        window = time_window(pulses, padding)
    t0, t1 = map(float, window)
    if not t1 > t0:
        raise ValueError(f"window end must exceed start, got {window}")
    if sample_count < 2:
        raise ValueError("sample_count must be >= 2")
    rtol, atol = tolerances
    if not (rtol > 0 and atol >= 0):
        raise ValueError(f"need rtol > 0 and atol >= 0, got {tolerances}")
    hmax = pulses.min_width / 10 if max_step is None else float(max_step)
    times = np.linspace(t0, t1, sample_count)
    times[-1] = t1
    y0 = np.array([1, 0, 0, 0], dtype=complex)
    status, samples, y_end, acc, rej = _dopri.integrate(
        pack(pulses, params), t0, t1, y0, times, float(rtol), float(atol), hmax, MAX_STEPS)
    if status != _dopri.OK:
        reason = {_dopri.STEP_UNDERFLOW: "step size underflow",
                  _dopri.TOO_MANY_STEPS: "step budget exhausted",
                  _dopri.NOT_FINITE: "non-finite state"}[status]
        raise NumericalFailure(f"{reason} after {acc} accepted steps")
    pops = samples.real**2 + samples.imag**2
    dim = params.dimension
    return Trajectory(
        times=times,
        p1=pops[:, 0],
        p2=pops[:, 1],
        pc=pops[:, 2] if dim == 3 else np.zeros(sample_count),
        fluorescence=samples[:, 3].real.copy(),
        final=StateVector(y_end[:dim].copy(), float(y_end[3].real)),
        dimension=dim,
        steps=acc,
        rejected=rej,
    )


def signals_from(trajectory: Trajectory, warn: bool = True) -> Signals:
    """Final ionization and fluorescence signals from the exact end state."""
    amps = trajectory.final.amplitudes
    pops = amps.real**2 + amps.imag**2
    p1, p2 = float(pops[0]), float(pops[1])
    pc = float(pops[2]) if len(pops) > 2 else 0.0
    f = trajectory.final.fluorescence_acc
    sig = Signals(1.0 - p1 - p2 - pc - f, f, p1, p2, pc)
    if warn and not sig.window_ok:
        warnings.warn(f"excited-state population left at window end "
                      f"(P2={p2:.3g}, Pc={pc:.3g}); widen the window",
                      ResidualPopulationWarning, stacklevel=2)
    return sig


def simulate(pulses: PulseSet, params: ModelParams, warn: bool = True, **kwargs) -> Signals:
    """Signals only; propagates without intermediate samples."""
    kwargs.setdefault("sample_count", 2)
    return signals_from(propagate(pulses, params, **kwargs), warn=warn)

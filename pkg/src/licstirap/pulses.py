"""Gaussian pulse envelopes and the three-pulse schedule.

Times are measured in units of the pump width, rates in the inverse unit.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

DEFAULT_PADDING = 5.0


@dataclass(frozen=True)
class GaussianPulse:
    """Envelope ``amplitude * exp(-(t - center)**2 / width**2)``."""

    amplitude: float = 0.0
    center: float = 0.0
    width: float = 1.0

    def __post_init__(self):
        if not self.amplitude >= 0:
            raise ValueError(f"amplitude must be >= 0, got {self.amplitude}")
        if not self.width > 0:
            raise ValueError(f"width must be > 0, got {self.width}")

    def __call__(self, t):
        return evaluate(self, t)

    @property
    def area(self) -> float:
        """Time integral over the whole real line."""
        return self.amplitude * self.width * np.sqrt(np.pi)


def evaluate(pulse: GaussianPulse, t):
    """Envelope value at ``t`` (scalar or array)."""
    x = (np.asarray(t, dtype=float) - pulse.center) / pulse.width
    out = pulse.amplitude * np.exp(-x * x)
    return float(out) if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class PulseSet:
    """Pump Rabi frequency, ionizing rate and control rate envelopes.

    A control amplitude of zero is the two-level limit.
    """

    pump: GaussianPulse = field(default_factory=GaussianPulse)
    ionizing: GaussianPulse = field(default_factory=GaussianPulse)
    control: GaussianPulse = field(default_factory=GaussianPulse)

    def __iter__(self):
        return iter((self.pump, self.ionizing, self.control))

    @property
    def min_width(self) -> float:
        return min(p.width for p in self)

    def replace(self, **changes) -> "PulseSet":
        return replace(self, **changes)


def time_window(pulses: PulseSet, padding: float = DEFAULT_PADDING) -> tuple[float, float]:
    """Interval covering every pulse out to ``padding`` widths from its center."""
    if not padding > 0:
        raise ValueError(f"padding must be > 0, got {padding}")
    start = min(p.center - padding * p.width for p in pulses)
    end = max(p.center + padding * p.width for p in pulses)
    return float(start), float(end)

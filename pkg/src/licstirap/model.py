"""Model parameters and the effective non-Hermitian Hamiltonians.

The continuum is already eliminated: state 2 couples to it with the pulsed
rate ``gamma_i(t)``, the control state with ``gamma_c(t)``, and state 2 also
decays irreversibly with the constant rate ``gamma``.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .pulses import PulseSet

TWO_LEVEL = "two_level"
THREE_LEVEL = "three_level"
MODEL_KINDS = (TWO_LEVEL, THREE_LEVEL)

AREA_THRESHOLD = 10.0
RATIO_THRESHOLD = 10.0


@dataclass(frozen=True)
class ModelParams:
    delta_pump: float = 0.0
    delta_control: float = 0.0
    gamma_loss: float = 0.0
    fano_q: float = 0.0
    stark_1: float = 0.0
    stark_2: float = 0.0
    stark_c: float = 0.0
    model_kind: str = TWO_LEVEL

    def __post_init__(self):
        if self.model_kind not in MODEL_KINDS:
            raise ValueError(f"model_kind must be one of {MODEL_KINDS}, got {self.model_kind!r}")
        if not self.gamma_loss >= 0:
            raise ValueError(f"gamma_loss must be >= 0, got {self.gamma_loss}")

    @property
    def dimension(self) -> int:
        return 2 if self.model_kind == TWO_LEVEL else 3

    @property
    def stark(self) -> float:
        """Differential Stark shift used by the two-level formulas."""
        return self.stark_2 - self.stark_1

    def replace(self, **changes) -> "ModelParams":
        return replace(self, **changes)


def rates(t, pulses: PulseSet):
    """``(Omega, Gamma_i, Gamma_c)`` at time ``t``."""
    return pulses.pump(t), pulses.ionizing(t), pulses.control(t)


def hamiltonian_2(t: float, pulses: PulseSet, params: ModelParams) -> np.ndarray:
    omega, gi, _ = rates(t, pulses)
    h = np.empty((2, 2), dtype=complex)
    h[0, 0] = params.stark_1
    h[0, 1] = h[1, 0] = 0.5 * omega
    h[1, 1] = params.delta_pump + params.stark_2 - 0.5j * (gi + params.gamma_loss)
    return h


def hamiltonian_3(t: float, pulses: PulseSet, params: ModelParams) -> np.ndarray:
    omega, gi, gc = rates(t, pulses)
    h = np.zeros((3, 3), dtype=complex)
    h[:2, :2] = hamiltonian_2(t, pulses, params)
    h[1, 2] = h[2, 1] = -0.5 * (params.fano_q + 1j) * np.sqrt(gi * gc)
    h[2, 2] = params.delta_control + params.stark_c - 0.5j * gc
    return h


def hamiltonian(t: float, pulses: PulseSet, params: ModelParams) -> np.ndarray:
    """Hamiltonian of the dimension selected by ``params.model_kind``."""
    if params.model_kind == TWO_LEVEL:
        return hamiltonian_2(t, pulses, params)
    return hamiltonian_3(t, pulses, params)


@dataclass(frozen=True)
class LossSplit:
    """``H = hermitian - 0.5j * loss`` and ``loss = ionization + diag(0, gamma, 0)``."""

    hermitian: np.ndarray
    loss: np.ndarray
    ionization: np.ndarray


def loss_split(t: float, pulses: PulseSet, params: ModelParams) -> LossSplit:
    h = hamiltonian(t, pulses, params)
    herm = 0.5 * (h + h.conj().T)
    # real q makes the loss matrix real symmetric
    loss = (1j * (h - h.conj().T)).real
    spont = np.zeros(h.shape)
    spont[1, 1] = params.gamma_loss
    return LossSplit(hermitian=herm, loss=loss, ionization=loss - spont)


@dataclass(frozen=True)
class Diagnostics:
    """Adiabaticity ratios at one instant plus whole-pulse areas.

    ``depletion_ratio`` is ``Omega**2 * T / (Gamma_i + Gamma)``, which should
    not be small; ``damping_ratio`` is ``(Gamma_i + Gamma) / Omega``, which
    should be large.
    """

    t: float
    depletion_ratio: float
    damping_ratio: float
    pump_area: float
    ionizing_area: float
    pump_area_large: bool
    ionizing_area_large: bool
    damping_large: bool

    def lines(self) -> list[str]:
        flag = lambda ok: "ok" if ok else "VIOLATED"
        return [
            f"t={self.t:.9g} Omega^2*T/(Gi+G)={self.depletion_ratio:.9g} "
            f"(Gi+G)/Omega={self.damping_ratio:.9g} [{flag(self.damping_large)}]",
            f"pump area={self.pump_area:.9g} [{flag(self.pump_area_large)}] "
            f"ionizing area={self.ionizing_area:.9g} [{flag(self.ionizing_area_large)}]",
        ]


def check_conditions(t: float, pulses: PulseSet, params: ModelParams) -> Diagnostics:
    omega, gi, _ = rates(t, pulses)
    damping = gi + params.gamma_loss
    t_ref = pulses.pump.width
    if damping > 0:
        depletion = omega**2 * t_ref / damping
    else:
        depletion = np.inf if omega > 0 else 0.0
    ratio = damping / omega if omega > 0 else np.inf
    pump_area = pulses.pump.area
    ion_area = pulses.ionizing.area
    return Diagnostics(
        t=float(t),
        depletion_ratio=float(depletion),
        damping_ratio=float(ratio),
        pump_area=float(pump_area),
        ionizing_area=float(ion_area),
        pump_area_large=pump_area > AREA_THRESHOLD,
        ionizing_area_large=ion_area > AREA_THRESHOLD,
        damping_large=ratio > RATIO_THRESHOLD,
    )

"""Closed-form adiabatic approximations.

Two approximations are provided:

* strong damping of state 2 (two-level model), where the intermediate
  amplitude follows the ground state adiabatically;
* the LICS quasi-dark state (three-level model), built from a perturbative
  eigensystem in the small ratio ``Omega / sqrt(Gamma_i * Gamma_c)``.

Time integrals are adaptive Gauss-Kronrod quadratures (``scipy.integrate``)
with relative tolerance ``QUAD_RTOL`` over the same window as the numerics.
Running integrals are split into panels: cumulative values at the panel
edges come from one vectorized quadrature, values inside a panel from a
second quadrature started at its left edge.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad_vec

from .dynamics import DEFAULT_SAMPLES, Signals, StateVector, Trajectory
from .model import THREE_LEVEL, TWO_LEVEL, ModelParams
from .pulses import DEFAULT_PADDING, PulseSet, time_window

QUAD_RTOL = 1e-8
DEGENERATE_TOL = 1e-12
SIGNAL_PANELS = 48


# quasi-dark decay exponent: -i * integral of eps_0, or the printed shortcut
# delta~(t) * integral of Omega^2 / (Gamma~^2 - 4 Delta~ delta~)
P0_INTEGRATED = "integrated"
P0_PRINTED = "printed"
P0_FORMS = (P0_INTEGRATED, P0_PRINTED)


class DegenerateDenominator(ZeroDivisionError):
    """A perturbative denominator vanishes; the approximation is undefined there."""


class EliminationDomainError(ValueError):
    """State 2 is neither damped nor detuned, so it cannot be eliminated."""


@dataclass(frozen=True)
class TildeQuantities:
    delta_tilde: complex
    small_delta_tilde: complex
    gamma_tilde: complex
    eta: complex


@dataclass(frozen=True)
class PerturbativeEigensystem:
    """Eigenvalues and right eigenvectors labelled ``(+, 0, -)``.

    ``eigenvectors[:, k]`` belongs to ``eigenvalues[k]``. ``regime_ratio`` is
    ``Omega / |sqrt(Gamma_i Gamma_c)|``; the expansion assumes it is small.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    xi: complex
    regime_ratio: float

    labels = ("+", "0", "-")

    @property
    def eps_plus(self):
        return self.eigenvalues[0]

    @property
    def eps_zero(self):
        return self.eigenvalues[1]

    @property
    def eps_minus(self):
        return self.eigenvalues[2]


@dataclass(frozen=True)
class AnalyticPopulations:
    p0: float
    p1: float
    p2: float
    pc: float


def _require(params, kind):
    if params.model_kind != kind:
        raise ValueError(f"this approximation needs model_kind={kind!r}")


def _tilde_arrays(t, pulses: PulseSet, params: ModelParams):
    t = np.asarray(t, dtype=float)
    omega = pulses.pump(t)
    gi = pulses.ionizing(t)
    gc = pulses.control(t)
    # energies are measured from state 1, which absorbs stark_1 exactly
    big = params.delta_pump + params.stark_2 - params.stark_1 - 0.5j * (gi + params.gamma_loss)
    small = params.delta_control + params.stark_c - params.stark_1 - 0.5j * gc
    prod = gi * gc
    gt = -(params.fano_q + 1j) * np.sqrt(prod)
    eta = np.sqrt((big - small) ** 2 + (params.fano_q + 1j) ** 2 * prod)
    return omega, big, small, gt, eta


def _denominator(omega, big, small, gt):
    """``Gamma~^2 - 4 Delta~ delta~`` with the degeneracy guard applied."""
    den = gt * gt - 4 * big * small
    scale = np.maximum(np.maximum(np.abs(big), np.abs(small)), np.abs(gt))
    bad = np.abs(den) < DEGENERATE_TOL * scale**2
    if np.any(bad & (omega != 0)):
        raise DegenerateDenominator("Gamma~^2 - 4 Delta~ delta~ vanishes while the pump is on")
    # where the pump is off every Omega-weighted term is zero anyway
    return np.where(bad, 1.0, den), np.where(bad, 0.0, omega)


def tilde(t: float, pulses: PulseSet, params: ModelParams) -> TildeQuantities:
    _, big, small, gt, eta = _tilde_arrays(t, pulses, params)
    return TildeQuantities(complex(big), complex(small), complex(gt), complex(eta))


def perturbative_eigensystem(t: float, pulses: PulseSet, params: ModelParams) -> PerturbativeEigensystem:
    _require(params, THREE_LEVEL)
    omega, big, small, gt, eta = (complex(x) for x in _tilde_arrays(t, pulses, params))
    omega = omega.real
    den = gt * gt - 4 * big * small
    scale = max(abs(big), abs(small), abs(gt), abs(eta))
    if abs(den) < DEGENERATE_TOL * scale**2:
        raise DegenerateDenominator("Gamma~^2 - 4 Delta~ delta~ vanishes")
    if gt == 0 or eta == 0:
        raise DegenerateDenominator("no LICS coupling (Gamma~ = 0)")
    sp, dp = eta + big + small, eta - big - small
    if abs(sp) < DEGENERATE_TOL * scale or abs(dp) < DEGENERATE_TOL * scale:
        raise DegenerateDenominator("eta +/- (Delta~ + delta~) vanishes")
    plus_ratio = (eta + big - small) / sp
    minus_ratio = (eta - big + small) / dp
    o2 = omega * omega
    eps = np.array([
        0.5 * (big + small + eta) + o2 / (4 * eta) * plus_ratio,
        o2 * small / den,
        0.5 * (big + small - eta) - o2 / (4 * eta) * minus_ratio,
    ]) + params.stark_1
    xi = _mixing_angle(big - small, gt, eta)
    s, c = np.sin(xi), np.cos(xi)
    vecs = np.array([
        [omega / gt * plus_ratio * s, 1 - o2 * (gt * gt + 4 * small * small) / (2 * den * den),
         omega / gt * minus_ratio * c],
        [c, 2 * small * omega / den, -s],
        [s, -omega * gt / den, c],
    ], dtype=complex)
    root = np.sqrt(abs(_sqrt_rates(t, pulses)))
    ratio = omega / root if root > 0 else np.inf
    return PerturbativeEigensystem(eps, vecs, complex(xi), float(ratio))


def _mixing_angle(diff, gt, eta):
    """Solution of ``tan 2xi = Gamma~ / (Delta~ - delta~)`` on the branch of ``eta``.

    Of the two solutions modulo pi, pick the one with ``cos 2xi = diff/eta`` and
    ``sin 2xi = Gamma~/eta`` so that ``f_+`` and ``f_-`` belong to ``eps_+`` and
    ``eps_-`` for the principal root ``eta``.
    """
    base = 0.5 * np.arctan(gt / diff) if diff != 0 else np.pi / 4
    cands = (base, base + np.pi / 2)
    miss = [abs(np.cos(2 * x) - diff / eta) + abs(np.sin(2 * x) - gt / eta) for x in cands]
    return cands[int(np.argmin(miss))]


def _sqrt_rates(t, pulses):
    return pulses.ionizing(t) * pulses.control(t)


# -- running integrals -------------------------------------------------------

def _cumulative(f, nodes):
    """``J[k] = integral of f from nodes[0] to nodes[k]``."""
    left, h = nodes[:-1], np.diff(nodes)
    panels, _ = quad_vec(lambda u: h * f(left + u * h), 0.0, 1.0, epsrel=QUAD_RTOL, norm="max")
    out = np.zeros(len(nodes), dtype=np.result_type(panels, float))
    out[1:] = np.cumsum(panels)
    return out


def _running(f, left, j_left, s):
    """Integral of f up to points ``s`` given its value ``j_left`` at ``left <= s``."""
    h = s - left
    inner, _ = quad_vec(lambda w: h * f(left + w * h), 0.0, 1.0, epsrel=QUAD_RTOL, norm="max")
    return j_left + inner


class _Approximation:
    """Integrand, populations and fluorescence rate of one closed-form model."""

    def __init__(self, pulses: PulseSet, params: ModelParams, p0_form: str = P0_INTEGRATED):
        if p0_form not in P0_FORMS:
            raise ValueError(f"p0_form must be one of {P0_FORMS}, got {p0_form!r}")
        self.pulses = pulses
        self.params = params
        self.printed = p0_form == P0_PRINTED
        self.three = params.model_kind == THREE_LEVEL
        if not self.three and pulses.control.amplitude > 0:
            raise ValueError("a control pulse requires the three_level model")

    def _two_level_terms(self, t):
        p = self.params
        omega = self.pulses.pump(t)
        damping = self.pulses.ionizing(t) + p.gamma_loss
        den = damping**2 + 4 * (p.delta_pump + p.stark) ** 2
        bad = den == 0
        if np.any(bad & (omega != 0)):
            raise EliminationDomainError("Gamma_i + Gamma = 0 and Delta + S = 0: elimination invalid")
        den = np.where(bad, 1.0, den)
        ratio = np.where(bad, 0.0, omega**2 / den)
        return ratio, ratio * damping

    def integrand(self, t):
        if self.three:
            omega, big, small, gt, _ = _tilde_arrays(t, self.pulses, self.params)
            den, omega = _denominator(omega, big, small, gt)
            return omega**2 / den if self.printed else omega**2 * small / den
        return self._two_level_terms(t)[1]

    def populations(self, t, j):
        """``(p0, p1, p2, pc)`` at times ``t`` given the running integral ``j``."""
        if self.three:
            omega, big, small, gt, _ = _tilde_arrays(t, self.pulses, self.params)
            den, omega = _denominator(omega, big, small, gt)
            p0 = np.exp(2 * np.imag(small * j if self.printed else j))
            p1 = np.abs(1 - omega**2 * (gt * gt + 4 * small * small) / (2 * den * den)) ** 2 * p0
            p2 = np.abs(2 * omega * small / den) ** 2 * p0
            pc = np.abs(omega * gt / den) ** 2 * p0
            return p0, p1, p2, pc
        ratio, _ = self._two_level_terms(t)
        p1 = np.exp(-np.real(j))
        return p1, p1, ratio * p1, np.zeros_like(p1)

    def trajectory(self, times) -> Trajectory:
        times = np.asarray(times, dtype=float)
        j_nodes = _cumulative(self.integrand, times)
        _, p1, p2, pc = self.populations(times, j_nodes)
        gamma = self.params.gamma_loss
        left, h = times[:-1], np.diff(times)

        def fluor_rate(u):
            s = left + u * h
            _, _, p2s, _ = self.populations(s, _running(self.integrand, left, j_nodes[:-1], s))
            return h * gamma * p2s

        fl = np.zeros(len(times))
        if gamma > 0:
            panels, _ = quad_vec(fluor_rate, 0.0, 1.0, epsrel=QUAD_RTOL, norm="max")
            fl[1:] = np.cumsum(panels)
        dim = self.params.dimension
        end = np.sqrt(np.array([p1[-1], p2[-1], pc[-1]][:dim], dtype=complex))
        return Trajectory(times=times, p1=p1, p2=p2, pc=pc, fluorescence=fl,
                          final=StateVector(end, float(fl[-1])), dimension=dim)

    def value_at(self, t, padding):
        t_start = time_window(self.pulses, padding)[0]
        t = float(t)
        if t <= t_start:
            j = 0.0
        else:
            j = _running(self.integrand, np.array([t_start]), np.zeros(1), np.array([t]))[0]
        return [float(np.ravel(x)[0]) for x in self.populations(np.array([t]), np.array([j]))]


def elimination_p1_p2(t: float, pulses: PulseSet, params: ModelParams,
                      padding: float = DEFAULT_PADDING) -> tuple[float, float]:
    """Ground and intermediate populations with state 2 adiabatically eliminated."""
    _require(params, TWO_LEVEL)
    _, p1, p2, _ = _Approximation(pulses, params).value_at(t, padding)
    return p1, p2


def quasi_dark_p0(t: float, pulses: PulseSet, params: ModelParams,
                  padding: float = DEFAULT_PADDING, p0_form: str = P0_INTEGRATED) -> float:
    """Population of the quasi-dark adiabatic state, ``|b_0(t)|**2``.

    With ``p0_form="integrated"`` this is ``exp(2 * integral of Im eps_0)``.
    ``"printed"`` takes ``delta~`` out of the integral and evaluates it at
    ``t``; it agrees with the integrated form only while ``Gamma_c`` is
    nearly constant.
    """
    _require(params, THREE_LEVEL)
    return _Approximation(pulses, params, p0_form).value_at(t, padding)[0]


def analytic_populations(t: float, pulses: PulseSet, params: ModelParams,
                         padding: float = DEFAULT_PADDING,
                         p0_form: str = P0_INTEGRATED) -> AnalyticPopulations:
    """Bare-state populations carried by the quasi-dark state."""
    _require(params, THREE_LEVEL)
    return AnalyticPopulations(*_Approximation(pulses, params, p0_form).value_at(t, padding))


def analytic_trajectory(pulses: PulseSet, params: ModelParams, window=None,
                        sample_count: int = DEFAULT_SAMPLES,
                        padding: float = DEFAULT_PADDING,
                        p0_form: str = P0_INTEGRATED) -> Trajectory:
    """Closed-form populations and running fluorescence on a uniform grid.

    Uses the strong-damping formulas for ``two_level`` and the quasi-dark
    state for ``three_level``. ``final`` carries real amplitudes ``sqrt(P)``.
    """
    if window is None:
        window = time_window(pulses, padding)
    if sample_count < 2:
        raise ValueError("sample_count must be >= 2")
    times = np.linspace(window[0], window[1], sample_count)
    return _Approximation(pulses, params, p0_form).trajectory(times)


def analytic_signals(pulses: PulseSet, params: ModelParams, window=None,
                     padding: float = DEFAULT_PADDING, p0_form: str = P0_INTEGRATED) -> Signals:
    """Fluorescence ``integral of Gamma * P2`` and the ionization left over."""
    tr = analytic_trajectory(pulses, params, window, SIGNAL_PANELS + 1, padding, p0_form)
    p1, p2, pc, f = tr.p1[-1], tr.p2[-1], tr.pc[-1], tr.fluorescence[-1]
    return Signals(float(1 - p1 - p2 - pc - f), float(f), float(p1), float(p2), float(pc))

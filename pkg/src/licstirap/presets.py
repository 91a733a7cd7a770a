"""Ready-made pulse configurations used throughout the demos and tests.

All pulses have unit width unless stated; the pump is centred at ``t = 0``.
"""
from .model import THREE_LEVEL, TWO_LEVEL, ModelParams
from .pulses import GaussianPulse, PulseSet


def two_photon(gamma, tau_i=-1.0, omega0=50.0, gamma_i0=50.0, delta_pump=0.0, width_i=1.0):
    """Pump plus ionizing pulse, no control laser."""
    pulses = PulseSet(GaussianPulse(omega0, 0.0, 1.0), GaussianPulse(gamma_i0, tau_i, width_i))
    return pulses, ModelParams(delta_pump=delta_pump, gamma_loss=gamma, model_kind=TWO_LEVEL)


def lics(gamma, fano_q=3.0, gamma_c0=50.0, tau_c=-0.5, tau_i=-1.0, omega0=50.0,
         gamma_i0=50.0, delta_pump=10.0, delta_control=10.0, width=1.0):
    """Pump, ionizing and control pulses; ``width`` applies to ionizing and control."""
    pulses = PulseSet(GaussianPulse(omega0, 0.0, 1.0),
                      GaussianPulse(gamma_i0, tau_i, width),
                      GaussianPulse(gamma_c0, tau_c, width))
    params = ModelParams(delta_pump=delta_pump, delta_control=delta_control, gamma_loss=gamma,
                         fano_q=fano_q, model_kind=THREE_LEVEL)
    return pulses, params


def techniques(gamma, fano_q=3.0):
    """Coincident pulses, counterintuitive pulses, and counterintuitive pulses with LICS."""
    return {
        "TPI": lics(gamma, fano_q, gamma_c0=0.0, tau_i=0.0),
        "c-STIRAP": lics(gamma, fano_q, gamma_c0=0.0, tau_i=-1.0),
        "LICS-STIRAP": lics(gamma, fano_q, gamma_c0=50.0, tau_c=-0.5, tau_i=-1.0),
    }

# %% [markdown]
# # Closed-form approximation against the integrator
#
# When the pump is weak compared with the continuum couplings the atom
# follows a single quasi-dark adiabatic state, and the yields follow from
# a few quadratures. Here both are compared while the ionizing pulse moves.

# %%
import numpy as np

from licstirap import analytic_signals, presets, simulate

print(" tau_i  I_num  I_ana   F_num  F_ana")
for tau_i in np.linspace(-3, 1, 9):
    pulses, params = presets.lics(100, tau_i=tau_i)
    num, ana = simulate(pulses, params, warn=False), analytic_signals(pulses, params)
    print(f"{tau_i:+5.1f}  {num.ionization:.3f}  {ana.ionization:.3f}   "
          f"{num.fluorescence:.3f}  {ana.fluorescence:.3f}")

# %% [markdown]
# For the two-level case with strong damping, state 2 can be eliminated.

# %%
from licstirap import elimination_p1_p2

pulses, params = presets.two_photon(300)
print("P1, P2 at the pump peak:", elimination_p1_p2(0.0, pulses, params))
print("numeric  ", simulate(pulses, params).summary())
print("analytic ", analytic_signals(pulses, params).summary())

# %% [markdown]
# # Three ways to ionize
#
# Coincident pulses (TPI), counterintuitive pulses without control
# (c-STIRAP), and counterintuitive pulses with the control laser
# (LICS-STIRAP), compared as the loss rate of state 2 grows.

# %%
import numpy as np

from licstirap import presets, simulate

names = ("TPI", "c-STIRAP", "LICS-STIRAP")
print("  gamma " + "".join(f"{n:>13}" for n in names))
for gamma in np.geomspace(10, 300, 8):
    setups = presets.techniques(gamma)
    vals = [simulate(*setups[n], warn=False).ionization for n in names]
    print(f"{gamma:7.1f} " + "".join(f"{v:13.3f}" for v in vals))

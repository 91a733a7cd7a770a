# %% [markdown]
# # Boosting the yield with a control laser
#
# A third laser couples a discrete state c to the same continuum and
# shapes it into a Fano-type structure. Scanning the control pulse timing
# `tau_c` and strength `gamma_c0` shows where ionization peaks.

# %%
import time

import numpy as np

from licstirap import AxisSpec, argmax, presets, sweep
from licstirap.sweep import write_grid

axes = [AxisSpec("tau_c", -3, 2, 26), AxisSpec("gamma_c0", 2, 100, 25)]
for q in (1, 3, 6):
    pulses, params = presets.lics(100, fano_q=q, delta_pump=0.0)
    start = time.perf_counter()
    res = sweep(pulses, params, axes)
    (tau_c, gc0), best = argmax(res)
    print(f"q={q}: max I={best:.3f} at tau_c={tau_c:.2f}, gamma_c0={gc0:.0f} "
          f"({time.perf_counter() - start:.1f} s)")

# %% [markdown]
# The last grid can be written as CSV with a gnuplot script next to it.

# %%
script = write_grid(res, "control_sweep.csv")
print("coarse map of I (rows tau_c, columns gamma_c0):")
print(np.array2string(res.array("I")[::5, ::6], precision=2))
print("plot with: gnuplot", script)

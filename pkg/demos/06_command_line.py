# %% [markdown]
# # Driving the command-line tool
#
# The `licstirap` command reads a flat `key=value` file. This script writes
# one, then calls the same entry point the console script uses.

# %%
from pathlib import Path

from licstirap.cli import main

Path("lics.cfg").write_text("""\
# control-assisted ionization with a lossy intermediate state
model=three_level
omega0=50
gamma_i0=50
gamma_c0=50
gamma=100
fano_q=3
tau_i=-1
tau_c=-0.5
delta_pump=10
delta_control=10
""")

# %%
main(["simulate", "lics.cfg", "-o", "lics_trajectory.csv"])
main(["compare", "lics.cfg", "-o", "lics_compare"])
main(["sweep", "lics.cfg", "--x", "tau_c:-3:2:21", "--y", "gamma_c0:2:100:11",
      "-o", "lics_grid.csv"])
main(["eigen", "lics.cfg", "--set", "sample_count=200", "-o", "lics_eigen.csv"])

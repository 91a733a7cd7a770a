# %% [markdown]
# # Ionization through a decaying intermediate state
#
# A pump couples the ground state 1 to state 2, which leaks to outside
# states at rate `gamma` and is photoionized by a second pulse. Without
# any control laser the ionization yield drops quickly as `gamma` grows.

# %%
from licstirap import presets, simulate, propagate

for gamma in (1, 10, 100):
    sig = simulate(*presets.two_photon(gamma))
    print(f"gamma={gamma:>3}: {sig.summary()}")

# %% [markdown]
# Pulse order matters. Sending the ionizing pulse first (`tau_i < 0`) keeps
# the atom in a state that never populates 2, so little is lost to `gamma`.

# %%
for tau_i in (-2, -1, 0, 1, 2):
    sig = simulate(*presets.two_photon(100, tau_i=tau_i), warn=False)
    print(f"tau_i={tau_i:+d}: I={sig.ionization:.3f}  F={sig.fluorescence:.3f}")

# %% [markdown]
# The full trajectory shows where the population goes.

# %%
tr = propagate(*presets.two_photon(100), sample_count=11)
for t, p1, p2, f, i in zip(tr.times, tr.p1, tr.p2, tr.fluorescence, tr.ionized):
    print(f"t={t:+6.2f} P1={p1:.3f} P2={p2:.2e} F={f:.3f} I={i:.3f}")

# %% [markdown]
# # Adiabatic eigenvalues along the pulse sequence
#
# The instantaneous Hamiltonian is a complex symmetric 3x3 matrix. Its
# eigenvalues, tracked continuously in time, show the quasi-dark branch
# (imaginary part near zero) separating from the strongly damped ones.

# %%
import numpy as np

from licstirap import exact_eigensystem, hamiltonian, perturbative_eigensystem, presets
from licstirap.eigen import eigenvalue_curves

pulses, params = presets.lics(100, delta_pump=0.0)
times = np.linspace(-3, 3, 13)
ref = perturbative_eigensystem(times[0], pulses, params).eigenvalues
curves = eigenvalue_curves([hamiltonian(t, pulses, params) for t in times], reference=ref)
for t, (plus, zero, minus) in zip(times, curves):
    print(f"t={t:+.1f}  eps+={plus:.2f}  eps0={zero:.3g}  eps-={minus:.2f}")

# %% [markdown]
# The perturbative quasi-dark eigenvalue improves as the pump weakens,
# with the error falling roughly as the fourth power of the pump amplitude.

# %%
from licstirap.model import hamiltonian_3

for omega0 in (50, 25, 12.5, 6.25):
    ps, p = presets.lics(100, delta_pump=0.0, omega0=omega0)
    pert = perturbative_eigensystem(0.0, ps, p).eps_zero
    exact = exact_eigensystem(hamiltonian_3(0.0, ps, p)).eigenvalues
    print(f"omega0={omega0:6.2f}  error={np.min(np.abs(exact - pert)):.2e}")

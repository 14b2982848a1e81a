# %% [markdown]
# # Output spectra and per-frequency entanglement
#
# The converter is pumped on both the beam-splitter (G1) and two-mode-squeezing
# (G2) sidebands. With the mechanics detuned from the cavity splitting by
# ``delta``, the thermal phonons only leak into the microwave output near
# ``w = delta``, while the squeezing peak around ``w = 0`` carries the
# entanglement we later use for target detection.

# %%
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from qi_oms import CovarianceMatrix, figure2_params, log_negativity, output_spectra, planck_occupation

HERE = Path(__file__).parent

# %% [markdown]
# A 10 MHz mechanical mode at 30 mK holds about 62 phonons.

# %%
print(f"n_b = {planck_occupation(2 * np.pi * 10e6, 30e-3):.3f}")
params = figure2_params()
print(params)

# %%
omega = np.concatenate([np.linspace(-0.5, 3.0, 3501),
                        np.linspace(1.45, 1.55, 2001)])
omega.sort()
sp = output_spectra(params, omega)
e_n = log_negativity(CovarianceMatrix.from_moments(sp.n_plus, sp.n_minus, sp.x))

# %%
fig, (ax1, ax2) = plt.subplots(2, 1, sharex=True, figsize=(6, 6))
ax1.semilogy(omega, sp.n_plus, label="$n_+$ (microwave)")
ax1.semilogy(omega, sp.n_minus, "--", label="$n_-$ (optical)")
ax1.set_ylabel("photons per unit bandwidth")
ax1.legend()
ax2.plot(omega, e_n, label="$E_N$")
ax2.plot(omega, np.divide(e_n, sp.n_plus), ":", label="$E_N / n_+$")
ax2.set_xlabel(r"$\omega / \kappa$")
ax2.set_ylim(0, None)
ax2.legend()
fig.tight_layout()
fig.savefig(HERE / "spectra_and_entanglement.png", dpi=120)

# %% [markdown]
# Entanglement per transmitted photon is largest well away from the
# mechanical resonance, which is where a narrow filter should sit.

# %%
i0 = np.argmin(abs(omega))
print(f"E_N(0) = {e_n[i0]:.4f}, n+(0) = {sp.n_plus[i0]:.4f}")

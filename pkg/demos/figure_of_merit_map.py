# %% [markdown]
# # Where does quantum illumination beat a coherent transmitter?
#
# We scan the two cooperativities on a log grid in the monochromatic limit
# (``sigma = 0``) and map the figure of merit ``F = SNR_QI / SNR_coh``.
# Points with ``C2 > C1`` have no steady state and are left blank.

# %%
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from qi_oms.experiments import run_figure

HERE = Path(__file__).parent

# %%
ds = run_figure("fig3", overrides=["workers=1"])
n = int(np.sqrt(len(ds.rows)))
c1 = ds.column("c1").reshape(n, n)
c2 = ds.column("c2").reshape(n, n)
f = ds.column("f_merit").reshape(n, n)

# %%
fig, ax = plt.subplots(figsize=(5.5, 4.5))
mesh = ax.pcolormesh(c1, c2, f, shading="nearest")
ax.plot([1, 1e3], [1, 1e3], "w--", lw=0.8)
ax.set_xscale("log")
ax.set_yscale("log")
ax.set_xlabel("$C_1$")
ax.set_ylabel("$C_2$")
fig.colorbar(mesh, label="F")
fig.tight_layout()
fig.savefig(HERE / "figure_of_merit_map.png", dpi=120)

# %% [markdown]
# The best stable operating points hug the diagonal: squeezing as hard as the
# beam-splitter cooling allows.

# %%
i, j = np.unravel_index(np.nanargmax(f), f.shape)
print(f"max F = {f[i, j]:.3f} at C1 = {c1[i, j]:.1f}, C2 = {c2[i, j]:.1f}")

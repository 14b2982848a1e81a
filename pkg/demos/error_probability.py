# %% [markdown]
# # Error probability versus number of mode pairs
#
# Each mode pair contributes independently to the photon-difference
# statistic, so both SNRs grow linearly with M and the error probability
# ``erfc(sqrt(SNR/8))/2`` falls off like a Gaussian tail.

# %%
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from qi_oms.experiments import run_figure

HERE = Path(__file__).parent

# %%
ds = run_figure("fig5")
for row in ds.rows:
    print("log10 M = {:.0f}: p_qi = {:.3e}, p_coh = {:.3e}".format(*row))

# %%
fig, ax = plt.subplots(figsize=(5, 3.5))
ax.semilogy(ds.column("log10_m"), ds.column("p_qi"), "o-", label="QI")
ax.semilogy(ds.column("log10_m"), ds.column("p_coh"), "s--", label="coherent")
ax.set_xlabel(r"$\log_{10} M$")
ax.set_ylabel("error probability")
ax.legend()
fig.tight_layout()
fig.savefig(HERE / "error_probability.png", dpi=120)

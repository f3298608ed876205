"""Building an interference pattern one particle at a time.

At Z = Z2 the fringe contrast is 0.183; the Fourier estimator recovers it
with an error that shrinks as one over the square root of the particle count.
"""

# %%
import numpy as np

import whichpath as wp
from whichpath.decoherence import critical_charge_z2
from whichpath.pattern import PatternConfig, fit_fringes, monte_carlo_pattern

cfg = wp.tonomura()
z2 = critical_charge_z2(cfg)
spacing = wp.fringe_spacing(cfg)
pcfg = PatternConfig(cfg, n_points=400, screen_halfwidth=10 * spacing)
print(f"fringe spacing {spacing:.4g} cm, screen +-{pcfg.screen_halfwidth:.3g} cm")

# %% Crude text rendering of the first two periods as counts accumulate.
for n in (100, 10_000, 1_000_000):
    hist = monte_carlo_pattern(pcfg, 0.0, n, seed=1)
    row = hist.counts[:40] / max(hist.counts.max(), 1)
    print(f"{n:>9} " + "".join(" .:-=+*#%@"[int(9 * x)] for x in row))

# %% Recovered contrast at Z2 against the particle count.
for n in (10**4, 10**5, 10**6):
    fit = fit_fringes(monte_carlo_pattern(pcfg, z2, n, seed=42))
    print(f"n = {n:>8}: V = {fit.visibility:.4f} +- {fit.stderr:.4f}  (exact 0.1831)")

# %% Same seed, same histogram.
a = monte_carlo_pattern(pcfg, z2, 50_000, seed=7)
b = monte_carlo_pattern(pcfg, z2, 50_000, seed=7)
print("reproducible:", np.array_equal(a.counts, b.counts))

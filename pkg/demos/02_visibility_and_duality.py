"""Fringes fade before the path can be read.

Compares the closed-form visibility with the radiation integral along the
actual trajectories, then writes the V, D, V^2 + D^2 curve as CSV.
"""

# %%
import io
import math

import numpy as np

import whichpath as wp
from whichpath import cli
from whichpath.decoherence import (critical_charge_z2, log_visibility_closed_form, trajectory_pair,
                                   visibility_numeric, zero_photon_factor)

cfg = wp.tonomura()
z2 = critical_charge_z2(cfg)
print(f"Z2 = {z2:.4g}, V(Z2) = exp(-16 / 3 pi) = {math.exp(-16 / (3 * math.pi)):.4f}")

# %% Two routes to log V. The kink-only integral reproduces the closed form up to
# the rounded logarithm; counting the emission and arrival kinks as well adds half again.
traj = trajectory_pair(cfg)
print(f"omega_max T = {wp.omega_max(cfg) * traj.T:.3g}")
for Z in (5e4, z2, 3e5):
    closed = float(log_visibility_closed_form(Z, cfg))
    kink = visibility_numeric(Z, cfg, traj=traj).log_visibility
    full = visibility_numeric(Z, cfg, traj=traj, endpoints=True).log_visibility
    print(f"Z = {Z:9.4g}: log V closed {closed:9.4f}, slit kink {kink:9.4f}, all kinks {full:9.4f}")

# %% Events with no emitted photon keep only V^(1/2) of the contrast.
half, _ = zero_photon_factor(z2, cfg)
print(f"zero-photon factor at Z2: {float(half):.4f}")

# %% The duality curve stays under 1 because Z2 < 8 Z1 / sqrt(3).
z = np.geomspace(1e3, 1e7, 9)
V, D, f = wp.duality_arrays(cfg, z)
for row in zip(z, V, D, f):
    print("Z = {:8.2e}  V = {:.4f}  D = {:.4f}  f = {:.4f}".format(*row))
print("bound holds:", wp.duality_bound_holds(cfg))

# %% The same curve through the command line front end.
out = io.StringIO()
cli.run("duality-curve", "@tonomura", ["sweep.n_points=4"], stdout=out)
print(out.getvalue())

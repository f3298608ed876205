"""Can a detector tell which slit a charged particle went through?

Walks from the field-measurement limit to the charge scale Z1 at which
the Coulomb field at a distant probe starts to betray the path.
"""

# %%
import numpy as np

import whichpath as wp
from whichpath.fieldmeas import (apparatus_for, critical_charge_z1, critical_charge_z1_exact,
                                 field_difference, field_uncertainty)
from whichpath.pathinfo import DetectionModel, distinguishability, distinguishability_mc, path_probabilities

cfg = wp.tonomura()
k = wp.constants()
print(f"d = {cfg.d:g} cm, cT = {k.c * wp.flight_time(cfg):g} cm, R = {cfg.R:g} cm")

# %% The probe is matched to the Coulomb pulse: size xi = cT, averaging time T.
app = apparatus_for(cfg)
dE = field_uncertainty(app)
print(f"smallest resolvable field: {dE:.4g} statvolt/cm")
print(f"field difference per unit charge: {field_difference(1.0, app.R, cfg.d, app.xi):.4g}")

# %% Two charge scales: the order-of-magnitude one and the root of Delta_E = delta_E.
print(f"Z1 = cT / (d sqrt(alpha)) = {critical_charge_z1(cfg):.4g}")
print(f"exact crossing in this geometry = {critical_charge_z1_exact(cfg):.4g}")

# %% A midpoint-threshold detector, exact and sampled.
rng = np.random.default_rng(0)
for ratio in (0.1, 1.0, 3.0):
    model = DetectionModel(E_u=ratio * dE, E_l=0.0, delta_E=dE)
    p = path_probabilities(model)
    est, se = distinguishability_mc(model, 200_000, rng)
    print(f"Delta_E / delta_E = {ratio:>4}: p(Du,u) = {p.p_Du_u:.4f}, D = {distinguishability(model):.4f}, "
          f"sampled {est:.4f} +- {se:.4f}")

# %% D against charge: half the path information at Z = 2 sqrt(2) erfinv(1/2) Z1.
z = np.array([1e4, 1e5, 7e5, 2e6, 1e7])
for zi, di in zip(z, wp.distinguishability_of_charge(z, cfg)):
    print(f"Z = {zi:8.0e}  D = {di:.4f}")

"""Which-path detection through gravity.

A pair of mirrors responds to the tidal field of a massive particle.  Once
the particle is heavy enough for the signal to beat a Planck-length
resolution, its fringes are already finer than a Planck length.
"""

# %%
import math

import numpy as np

import whichpath as wp
from whichpath.gravity import (GravityDetector, critical_mass, detector_response, detector_response_numeric,
                               fringe_vs_planck, point_mass_phi_prime, required_phi_pp_accuracy)

cfg = wp.tonomura()
k = wp.constants()
print(f"Planck length {k.planck_length:.4g} cm, Planck mass {k.planck_mass:.4g} g")

# %% Step response of the mirror separation, closed form against the full equations of motion.
det = GravityDetector(S=1.0, omega=10.0, R=1e4)
t = np.linspace(0.0, 2 * math.pi / det.omega, 7)[1:]
full = detector_response_numeric(det, point_mass_phi_prime(1e3, -det.R), t)
lin = detector_response(det, -2 * k.G * 1e3 / det.R**3, t)
for ti, a, b in zip(t, full, lin):
    print(f"omega t = {det.omega * ti:5.2f}: eta numeric {a: .6e}, closed form {b: .6e}")

# %% The mass at which the two paths' tidal fields differ resolvably.
m = critical_mass(cfg)
print(f"R / d = {cfg.R / cfg.d:.3g}, m_crit = {m:.4g} g")
print(f"tidal difference to resolve: {required_phi_pp_accuracy(m, cfg.R, cfg.d):.3g} s^-2")

# %% At and above that mass the fringes sit below the Planck length.
for mass in (1e-3, m, 10 * m):
    res = fringe_vs_planck(cfg, mass)
    print(f"m = {mass:8.3g} g: fringe / l_pl = {res.ratio_to_planck_length:.3g}, "
          f"bound cT/R = {res.bound:.3g}, detectable {res.detectable}")

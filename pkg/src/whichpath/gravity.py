"""Gravitational which-path detection with a two-mirror strain detector.

The mirror separation is a harmonic mode of frequency ``omega``.  A Newtonian
potential switched on at ``t = 0`` and then held constant displaces it by
``eta(t) = -phi''(x0) S (1 - cos omega t) / omega^2``.  Requiring that the
difference between the upper- and lower-slit tidal fields be resolvable to a
Planck length pushes the particle mass above ``(R/d)`` Planck masses, at
which point the fringes are finer than a Planck length.
"""

from dataclasses import dataclass
import math

import numpy as np
from scipy.integrate import solve_ivp

from .experiment import flight_time
from .units import constants

__all__ = [
    "GravityDetector",
    "IntegrationError",
    "FringeVsPlanck",
    "detector_response",
    "detector_response_numeric",
    "quadratic_phi_prime",
    "point_mass_phi_prime",
    "required_phi_pp_accuracy",
    "phi_pp_accuracy_leading",
    "eta_accuracy_bound",
    "critical_mass",
    "fringe_vs_planck",
]


class IntegrationError(RuntimeError):
    """The mirror equations of motion could not be integrated to tolerance."""


@dataclass(frozen=True)
class GravityDetector:
    """Mirror separation `S` (cm), mode frequency `omega` (rad/s), midpoint `x0` and
    distance `R` from the slits (cm)."""

    S: float
    omega: float
    R: float
    x0: float = 0.0

    def __post_init__(self):
        for name in ("S", "omega", "R"):
            val = getattr(self, name)
            if not (math.isfinite(val) and val > 0):
                raise ValueError(f"{name} must be positive, got {val!r}")


@dataclass(frozen=True)
class FringeVsPlanck:
    fringe: float
    ratio_to_planck_length: float
    # cT / R, the bound the ratio obeys once m >= critical_mass
    bound: float
    detectable: bool
    within_bound: bool


def detector_response(det, phi_pp, t):
    """Closed-form separation change for a step tidal field ``phi''(x0)``."""
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise ValueError("t must be nonnegative")
    # 1 - cos x = 2 sin^2(x/2), without cancellation near t = 0
    return -phi_pp * det.S * 2.0 * np.sin(0.5 * det.omega * t) ** 2 / det.omega**2


def quadratic_phi_prime(phi_pp, x0=0.0, slope=0.0):
    """``phi'(x)`` for ``phi = slope (x - x0) + phi_pp (x - x0)^2 / 2``."""
    return lambda x: slope + phi_pp * (x - x0)


def point_mass_phi_prime(m, position, G=None):
    """``phi'(x)`` of a point mass `m` at `position` on the detector axis."""
    G = constants().G if G is None else G

    def phi_prime(x):
        r = x - position
        return G * m * math.copysign(1.0, r) / (r * r)

    return phi_prime


def detector_response_numeric(det, phi_prime, t, rtol=1e-12, atol_scale=1e-16):
    """Separation change from the full two-mirror equations of motion.

    Each mirror obeys ``x'' = -/+ (omega^2 / 2) (x_+ - x_- - S) - phi'(x)``.
    The system is integrated in midpoint-shift and separation-change
    coordinates so that ``eta`` never has to be recovered as a small
    difference of mirror positions.

    Parameters
    ----------
    det : GravityDetector
    phi_prime : callable
        Gradient of the potential, ``phi'(x)`` in cm/s^2.
    t : array_like
        Output times, s, nonnegative.
    """
    t = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(t < 0):
        raise ValueError("t must be nonnegative")
    S, w2, x0 = det.S, det.omega**2, det.x0

    def rhs(_, y):
        mid, eta, dmid, deta = y
        f_plus = phi_prime(x0 + mid + 0.5 * (S + eta))
        f_minus = phi_prime(x0 + mid - 0.5 * (S + eta))
        return [dmid, deta, -0.5 * (f_plus + f_minus), -w2 * eta - (f_plus - f_minus)]

    order = np.argsort(t)
    t_sorted = t[order]
    t_end = t_sorted[-1]
    if t_end == 0.0:
        return np.zeros_like(t)
    sol = solve_ivp(rhs, (0.0, t_end), [0.0, 0.0, 0.0, 0.0], method="DOP853",
                    t_eval=t_sorted, rtol=rtol, atol=atol_scale * S,
                    max_step=0.05 / det.omega)
    if not sol.success:
        raise IntegrationError(sol.message)
    eta = np.empty_like(t)
    eta[order] = sol.y[1]
    return eta


def required_phi_pp_accuracy(m, R, d, G=None):
    """Tidal-field difference between the two paths, ``2 G m (1/R^3 - 1/(R+d)^3)``."""
    G = constants().G if G is None else G
    # expanded numerator keeps precision for d << R
    return 2.0 * G * m * d * (3 * R * R + 3 * R * d + d * d) / (R**3 * (R + d) ** 3)


def phi_pp_accuracy_leading(m, R, d, G=None):
    """Leading term ``6 G m d / R^4`` of :func:`required_phi_pp_accuracy`.

    Dropping the 6 gives the order-of-magnitude scale ``G m d / R^4``.
    """
    G = constants().G if G is None else G
    return 6.0 * G * m * d / R**4


def eta_accuracy_bound(m, R, d, S, T, G=None):
    """``(G m d S T^2 / R^4, G m d / (R c^2))``.

    The first is the largest displacement signal a flight time ``T`` can
    produce (using ``1 - cos x <= x^2 / 2``); it is below the second whenever
    ``S (cT)^2 < R^3``.
    """
    k = constants()
    G = k.G if G is None else G
    return G * m * d * S * T**2 / R**4, G * m * d / (R * k.c**2)


def critical_mass(cfg, delta_eta=None):
    """Mass above which the tidal signal beats a displacement resolution `delta_eta`.

    With the default resolution of one Planck length this is ``(R / d)``
    Planck masses.
    """
    k = constants()
    delta_eta = k.planck_length if delta_eta is None else delta_eta
    return (delta_eta / k.planck_length) * (cfg.R / cfg.d) * k.planck_mass


def fringe_vs_planck(cfg, m):
    """Fringe separation ``(L/d) hbar / (m v)`` of a particle of mass `m`, against the Planck length."""
    if not m > 0:
        raise ValueError(f"m must be positive, got {m!r}")
    k = constants()
    fringe = (cfg.L / cfg.d) * k.hbar / (m * cfg.v)
    ratio = fringe / k.planck_length
    bound = k.c * flight_time(cfg) / cfg.R
    return FringeVsPlanck(
        fringe=fringe,
        ratio_to_planck_length=ratio,
        bound=bound,
        detectable=m >= critical_mass(cfg),
        within_bound=ratio <= bound * (1 + 1e-12),
    )

"""Bohr-Rosenfeld field-measurement limit and the Coulomb which-path charge scale.

A cubic test body of side ``xi`` averaging the field for a time ``T_meas``
cannot resolve fields below ``sqrt(hbar / (xi**3 T_meas))``.  Comparing that
with the difference between the averaged Coulomb fields of a particle passing
the upper or the lower slit gives the charge above which the path becomes
readable.
"""

from dataclasses import dataclass
import math

from .experiment import flight_time
from .units import constants

__all__ = [
    "BRApparatus",
    "apparatus_for",
    "field_uncertainty",
    "avg_coulomb_field",
    "field_difference",
    "field_difference_first_order",
    "critical_charge_z1",
    "critical_charge_z1_exact",
]


@dataclass(frozen=True)
class BRApparatus:
    """Field-measuring body: side `xi` (cm), averaging time `T_meas` (s), distance `R` (cm)."""

    xi: float
    T_meas: float
    R: float

    def __post_init__(self):
        for name in ("xi", "T_meas", "R"):
            val = getattr(self, name)
            if not (math.isfinite(val) and val > 0):
                raise ValueError(f"{name} must be positive, got {val!r}")


def apparatus_for(cfg, xi=None, T_meas=None):
    """Apparatus matched to `cfg`: by default ``xi = cT`` and ``T_meas = T``.

    Larger bodies or longer averaging do not help, since the Coulomb pulse
    lasts about ``T`` and is ``cT`` long.
    """
    T = flight_time(cfg)
    return BRApparatus(
        xi=constants().c * T if xi is None else xi,
        T_meas=T if T_meas is None else T_meas,
        R=cfg.R,
    )


def field_uncertainty(app):
    """Smallest resolvable field ``sqrt(hbar / (xi^3 T_meas))``, statvolt/cm.

    The charge of the test body drops out when the position and momentum
    uncertainties are traded off against each other, so it is not a parameter.
    The order-one prefactor is taken as exactly 1.
    """
    return math.sqrt(constants().hbar / (app.xi**3 * app.T_meas))


def avg_coulomb_field(Z, R, xi, e=None):
    """Coulomb field of charge ``Z e`` averaged over ``[R, R + xi]``: ``Z e / (R (R + xi))``."""
    e = constants().e if e is None else e
    return Z * e / (R * (R + xi))


def field_difference(Z, R, d, xi, e=None):
    """Difference of the averaged fields for the upper and lower slit, exact in `d`."""
    return avg_coulomb_field(Z, R, xi, e) - avg_coulomb_field(Z, R + d, xi, e)


def field_difference_first_order(Z, R, d, xi, e=None):
    """Leading term of :func:`field_difference` in ``d``: ``Z e d (2R + xi) / (R^2 (R + xi)^2)``."""
    e = constants().e if e is None else e
    return Z * e * d * (2 * R + xi) / (R**2 * (R + xi) ** 2)


def critical_charge_z1(cfg):
    """Charge scale ``Z1 = (cT / d) / sqrt(alpha)`` at which the path starts to be readable.

    Geometric factors of order one are dropped, which is the convention the
    distinguishability curve ``erf(Z / (2 sqrt(2) Z1))`` is written in.
    """
    k = constants()
    return k.c * flight_time(cfg) / (cfg.d * math.sqrt(k.alpha))


def critical_charge_z1_exact(cfg, xi=None, T_meas=None):
    """Charge at which the exact field difference equals the field uncertainty.

    Defaults to ``xi = cT`` and ``T_meas = T``; with ``R = cT`` this lands at
    ``(4/3) Z1``.  The field difference is linear in the charge, so the
    crossing is a ratio.
    """
    app = apparatus_for(cfg, xi=xi, T_meas=T_meas)
    per_unit_charge = field_difference(1.0, app.R, cfg.d, app.xi)
    return field_uncertainty(app) / per_unit_charge

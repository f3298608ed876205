"""Two-slit geometry and the derived kinematic quantities."""

from dataclasses import dataclass, replace
import math
import warnings

from .units import constants, de_broglie_wavelength

__all__ = [
    "ExperimentConfig",
    "GeometryWarning",
    "flight_time",
    "wavelength",
    "log_term",
    "omega_max",
    "fringe_spacing",
]


class GeometryWarning(UserWarning):
    """Configuration lies outside the regime where the approximations hold."""


@dataclass(frozen=True)
class ExperimentConfig:
    """Geometry and kinematics of the two-slit setup (CGS).

    Parameters
    ----------
    d : float
        Slit spacing, cm.
    L : float
        Emitter-to-screen distance, cm.
    R : float
        Distance from the slits to the field detector, in the slit plane, cm.
    v : float
        Particle speed, cm/s.
    Z : float
        Particle charge in units of ``|e|``.
    m : float, optional
        Particle mass, g.  Needed for anything that uses the de Broglie
        wavelength.
    slit_fraction : float
        Position of the slit plane as a fraction of `L` measured from the
        emitter.
    log_term : float, optional
        Override for ``log(pi L / lambda)``.
    """

    d: float
    L: float
    R: float
    v: float
    Z: float = 0.0
    m: float | None = None
    slit_fraction: float = 0.5
    log_term: float | None = None

    def __post_init__(self):
        c = constants().c
        for name in ("d", "L", "R", "v"):
            val = getattr(self, name)
            if isinstance(val, bool) or not (math.isfinite(val) and val > 0):
                raise ValueError(f"{name} must be a positive finite number, got {val!r}")
        if self.v >= c:
            raise ValueError(f"v must be below c ({c:.6g} cm/s), got {self.v!r}")
        if not self.Z >= 0:
            raise ValueError(f"Z must be nonnegative, got {self.Z!r}")
        if self.m is not None and not self.m > 0:
            raise ValueError(f"m must be positive, got {self.m!r}")
        if not 0 < self.slit_fraction < 1:
            raise ValueError(f"slit_fraction must lie in (0, 1), got {self.slit_fraction!r}")
        if self.log_term is not None and not self.log_term > 0:
            raise ValueError(f"log_term must be positive, got {self.log_term!r}")

        if self.d / self.R >= 0.01:
            warnings.warn(f"d/R = {self.d / self.R:.3g} is not small; d << R is assumed",
                          GeometryWarning, stacklevel=3)
        cT = c * self.L / self.v
        # R == cT is the intended boundary case, so allow rounding slack
        if self.R < cT * (1 - 1e-9):
            warnings.warn(f"R = {self.R:.6g} cm < cT = {cT:.6g} cm; the distant field "
                          "measurement could back-react on the particle",
                          GeometryWarning, stacklevel=3)

    def with_(self, **changes):
        return replace(self, **changes)


def flight_time(cfg):
    """Time of flight ``L / v`` in seconds."""
    return cfg.L / cfg.v


def wavelength(cfg):
    """De Broglie wavelength of the interfering particle, cm."""
    if cfg.m is None:
        raise ValueError("the de Broglie wavelength needs a particle mass m")
    return de_broglie_wavelength(cfg.m, cfg.v)


def log_term(cfg):
    """``log(pi L / lambda)``, or the configured override."""
    if cfg.log_term is not None:
        return float(cfg.log_term)
    lam = wavelength(cfg)
    ratio = math.pi * cfg.L / lam
    if ratio <= 1.0:
        raise ValueError(f"pi L / lambda = {ratio:.6g} must exceed 1: the path has to be "
                         "many de Broglie wavelengths long")
    return math.log(ratio)


def omega_max(cfg):
    """Largest photon frequency the particle can emit, rad/s.

    Energy conservation gives ``m v**2 / (2 hbar) = pi v / lambda``.  Without a
    mass the cutoff is reconstructed from the override as ``exp(log_term)/T``,
    which keeps ``log(omega_max T) == log_term``.
    """
    if cfg.m is None:
        return math.exp(log_term(cfg)) / flight_time(cfg)
    return math.pi * cfg.v / wavelength(cfg)


def fringe_spacing(cfg):
    """Far-field fringe period ``lambda L_s / d`` with ``L_s`` the slit-to-screen distance."""
    screen_distance = (1.0 - cfg.slit_fraction) * cfg.L
    return wavelength(cfg) * screen_distance / cfg.d

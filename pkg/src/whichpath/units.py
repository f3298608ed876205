"""Physical constants in Gaussian-CGS units.

Primitive values come from CODATA via ``scipy.constants`` and are converted
once at import time.  The electron charge in esu is derived from the fine
structure constant so that ``alpha == e**2 / (hbar * c)`` holds to rounding.
"""

from dataclasses import dataclass
import math

from scipy import constants as sp

__all__ = ["Constants", "constants", "de_broglie_wavelength", "ELECTRON_MASS"]

# grams
ELECTRON_MASS = sp.m_e * 1e3


@dataclass(frozen=True)
class Constants:
    """Gaussian-CGS constants.

    Attributes
    ----------
    hbar : float
        Reduced Planck constant, erg s.
    c : float
        Speed of light, cm/s.
    e : float
        Elementary charge, esu.
    alpha : float
        Fine structure constant ``e**2 / (hbar c)``.
    G : float
        Newton's constant, cm^3 g^-1 s^-2.
    planck_length : float
        ``sqrt(G hbar / c**3)``, cm.
    planck_mass : float
        ``sqrt(hbar c / G)``, g.
    """

    hbar: float
    c: float
    e: float
    alpha: float
    G: float
    planck_length: float
    planck_mass: float


def _build():
    hbar = sp.hbar * 1e7          # J s -> erg s
    c = sp.c * 1e2                # m/s -> cm/s
    G = sp.G * 1e3                # m^3 kg^-1 s^-2 -> cm^3 g^-1 s^-2
    alpha = sp.fine_structure
    e = math.sqrt(alpha * hbar * c)
    return Constants(
        hbar=hbar,
        c=c,
        e=e,
        alpha=e * e / (hbar * c),
        G=G,
        planck_length=math.sqrt(G * hbar / c**3),
        planck_mass=math.sqrt(hbar * c / G),
    )


_CONSTANTS = _build()


def constants():
    """Return the shared, immutable :class:`Constants` instance."""
    return _CONSTANTS


def de_broglie_wavelength(m, v):
    """Return ``2 pi hbar / (m v)`` in cm for mass `m` (g) and speed `v` (cm/s)."""
    k = _CONSTANTS
    if not m > 0:
        raise ValueError(f"mass must be positive, got {m!r}")
    if not v > 0:
        raise ValueError(f"velocity must be positive, got {v!r}")
    if v >= k.c:
        raise ValueError(f"velocity must be below c, got {v!r} cm/s")
    return 2.0 * math.pi * k.hbar / (m * v)

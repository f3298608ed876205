"""Gaussian detector model and path distinguishability.

The detector reads a field value smeared by a Gaussian of width ``delta_E``
around ``E_u`` or ``E_l`` and calls "upper" whenever the reading exceeds the
midpoint ``(E_u + E_l) / 2``.  Both slits are taken to carry equal weight.
"""

from dataclasses import dataclass
import math

import numpy as np
from scipy.special import erf, ndtr

from .fieldmeas import critical_charge_z1

__all__ = [
    "DetectionModel",
    "PathProbabilities",
    "path_probabilities",
    "distinguishability",
    "distinguishability_from_probabilities",
    "distinguishability_of_charge",
    "distinguishability_mc",
]


@dataclass(frozen=True)
class DetectionModel:
    E_u: float
    E_l: float
    delta_E: float

    def __post_init__(self):
        if not self.E_u > self.E_l:
            raise ValueError(f"need E_u > E_l, got E_u={self.E_u!r}, E_l={self.E_l!r}")
        if not self.delta_E > 0:
            raise ValueError(f"delta_E must be positive, got {self.delta_E!r}")

    @property
    def separation(self):
        """``(E_u - E_l) / delta_E``."""
        return (self.E_u - self.E_l) / self.delta_E


@dataclass(frozen=True)
class PathProbabilities:
    """Joint probabilities ``p(detector verdict, actual path)``."""

    p_Du_u: float
    p_Dl_u: float
    p_Dl_l: float
    p_Du_l: float

    def total(self):
        return (self.p_Du_u + self.p_Dl_u) + (self.p_Dl_l + self.p_Du_l)


def path_probabilities(model):
    # 1/4 <= p_Du_u <= 1/2, so 0.5 - p_Du_u is exact and the four sum to 1 exactly
    p_correct = 0.5 * float(ndtr(0.5 * model.separation))
    p_wrong = 0.5 - p_correct
    return PathProbabilities(p_Du_u=p_correct, p_Dl_u=p_wrong, p_Dl_l=p_correct, p_Du_l=p_wrong)


def distinguishability_from_probabilities(p):
    """``|p(Du,u) - p(Dl,u)| + |p(Dl,l) - p(Du,l)|``."""
    return abs(p.p_Du_u - p.p_Dl_u) + abs(p.p_Dl_l - p.p_Du_l)


def distinguishability(model):
    """``erf(Delta_E / (2 sqrt(2) delta_E))`` for the midpoint-threshold detector."""
    return float(erf(model.separation / (2.0 * math.sqrt(2.0))))


def distinguishability_of_charge(Z, cfg):
    """``erf(Z / (2 sqrt(2) Z1))`` with the canonical charge scale ``Z1``.

    Accepts a scalar or an array of charges.
    """
    if np.any(np.asarray(Z) < 0):
        raise ValueError("Z must be nonnegative")
    return erf(np.divide(Z, 2.0 * math.sqrt(2.0) * critical_charge_z1(cfg)))


def distinguishability_mc(model, n_samples, rng):
    """Monte Carlo estimate of D from simulated detector readings.

    Each trial picks a slit with probability 1/2, draws a Gaussian reading
    and applies the midpoint threshold.  Returns ``(estimate, standard_error)``.

    Parameters
    ----------
    model : DetectionModel
    n_samples : int
    rng : numpy.random.Generator
        Caller-owned generator; results are reproducible from its seed.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be at least 1")
    upper = rng.random(n_samples) < 0.5
    means = np.where(upper, model.E_u, model.E_l)
    readings = rng.normal(means, model.delta_E)
    said_upper = readings > 0.5 * (model.E_u + model.E_l)

    n = float(n_samples)
    p_Du_u = np.count_nonzero(upper & said_upper) / n
    p_Dl_u = np.count_nonzero(upper & ~said_upper) / n
    p_Dl_l = np.count_nonzero(~upper & ~said_upper) / n
    p_Du_l = np.count_nonzero(~upper & said_upper) / n
    estimate = abs(p_Du_u - p_Dl_u) + abs(p_Dl_l - p_Du_l)
    # per-trial score is +-1, so Var = 1 - D^2
    stderr = math.sqrt(max(1.0 - estimate**2, 0.0) / n)
    return estimate, stderr

"""Screen patterns: ideal two-path amplitudes, decohered intensity, particle-by-particle
buildup, visibility recovery and the visibility/distinguishability trade-off."""

from dataclasses import dataclass
import math
import warnings

import numpy as np

from .decoherence import critical_charge_z2, log_visibility_closed_form
from .experiment import fringe_spacing
from .fieldmeas import critical_charge_z1
from .pathinfo import distinguishability_of_charge

__all__ = [
    "GaussianEnvelope",
    "PatternConfig",
    "Histogram",
    "FringeFit",
    "DualityPoint",
    "baseline_amplitudes",
    "interference_term",
    "intensity",
    "bin_probabilities",
    "monte_carlo_pattern",
    "fit_fringes",
    "recover_visibility",
    "duality_curve",
    "duality_arrays",
    "duality_bound_holds",
]

# particles drawn per RNG sub-stream; part of the reproducibility contract
_CHUNK = 1_000_000

# 8-point Gauss-Legendre on [-1, 1] for bin masses under an envelope
_GL_X, _GL_W = np.polynomial.legendre.leggauss(8)


@dataclass(frozen=True)
class GaussianEnvelope:
    sigma: float

    def __post_init__(self):
        if not self.sigma > 0:
            raise ValueError(f"sigma must be positive, got {self.sigma!r}")

    def __call__(self, b):
        return np.exp(-0.5 * (np.asarray(b, dtype=float) / self.sigma) ** 2)


@dataclass(frozen=True)
class PatternConfig:
    """Screen sampling for an :class:`~whichpath.experiment.ExperimentConfig`.

    `n_points` bins cover ``[-screen_halfwidth, screen_halfwidth]`` (cm).
    `envelope` is ``None`` or a :class:`GaussianEnvelope`.
    """

    cfg: object
    n_points: int
    screen_halfwidth: float
    envelope: GaussianEnvelope | None = None

    def __post_init__(self):
        if int(self.n_points) != self.n_points or self.n_points < 2:
            raise ValueError(f"n_points must be an integer >= 2, got {self.n_points!r}")
        if not self.screen_halfwidth > 0:
            raise ValueError(f"screen_halfwidth must be positive, got {self.screen_halfwidth!r}")

    @property
    def edges(self):
        return np.linspace(-self.screen_halfwidth, self.screen_halfwidth, int(self.n_points) + 1)

    @property
    def fringe_spacing(self):
        return fringe_spacing(self.cfg)


@dataclass(frozen=True)
class Histogram:
    edges: np.ndarray
    counts: np.ndarray
    fringe_spacing: float

    @property
    def centers(self):
        return 0.5 * (self.edges[:-1] + self.edges[1:])

    @property
    def total(self):
        return int(self.counts.sum())


@dataclass(frozen=True)
class FringeFit:
    visibility: float
    stderr: float
    phase: float
    n_periods: float


@dataclass(frozen=True)
class DualityPoint:
    Z: float
    V: float
    D: float
    f: float


def _check_b(pcfg, b):
    if np.any(np.abs(b) > pcfg.screen_halfwidth):
        raise ValueError("screen position outside [-screen_halfwidth, screen_halfwidth]")


def _envelope(pcfg, b):
    return np.ones_like(b) if pcfg.envelope is None else pcfg.envelope(b)


def _visibility(Z, cfg):
    if np.any(np.asarray(Z) < 0):
        raise ValueError("Z must be nonnegative")
    return np.exp(log_visibility_closed_form(Z, cfg))


def baseline_amplitudes(pcfg, b):
    """Field-free path amplitudes ``(beta_u, beta_l)`` at screen position `b`.

    Equal magnitudes, relative phase ``2 pi b / delta_f``, normalized so that
    ``|beta_u|^2 + |beta_l|^2`` equals the envelope (1 without one).
    """
    b = np.asarray(b, dtype=float)
    _check_b(pcfg, b)
    mag = np.sqrt(0.5 * _envelope(pcfg, b))
    half_phase = math.pi * b / pcfg.fringe_spacing
    return mag * np.exp(1j * half_phase), mag * np.exp(-1j * half_phase)


def interference_term(pcfg, Z, b):
    """Relative interference intensity ``2 Re(beta_l* beta_u) / (|beta_u|^2 + |beta_l|^2) * V``."""
    beta_u, beta_l = baseline_amplitudes(pcfg, b)
    cross = 2.0 * np.real(np.conj(beta_l) * beta_u) / (np.abs(beta_u) ** 2 + np.abs(beta_l) ** 2)
    return cross * _visibility(Z, pcfg.cfg)


def intensity(pcfg, Z, b):
    """Screen intensity ``envelope * (1 + V cos(2 pi b / delta_f))``."""
    beta_u, beta_l = baseline_amplitudes(pcfg, b)
    incoherent = np.abs(beta_u) ** 2 + np.abs(beta_l) ** 2
    return incoherent + 2.0 * _visibility(Z, pcfg.cfg) * np.real(np.conj(beta_l) * beta_u)


def _bin_basis(edges, period):
    """Bin integrals of 1, cos(kb) and sin(kb)."""
    k = 2.0 * math.pi / period
    lo, hi = edges[:-1], edges[1:]
    return hi - lo, (np.sin(k * hi) - np.sin(k * lo)) / k, (np.cos(k * lo) - np.cos(k * hi)) / k


def bin_probabilities(pcfg, Z):
    """Probability of each screen bin under the normalized intensity."""
    edges = pcfg.edges
    V = float(_visibility(Z, pcfg.cfg))
    if pcfg.envelope is None:
        width, cos_int, _ = _bin_basis(edges, pcfg.fringe_spacing)
        mass = width + V * cos_int
    else:
        lo, hi = edges[:-1, None], edges[1:, None]
        nodes = 0.5 * (hi + lo) + 0.5 * (hi - lo) * _GL_X
        mass = 0.5 * (hi - lo)[:, 0] * (intensity(pcfg, Z, nodes) @ _GL_W)
    mass = np.clip(mass, 0.0, None)
    return mass / mass.sum()


def monte_carlo_pattern(pcfg, Z, n_particles, seed):
    """Build the pattern one particle at a time.

    Screen bins are drawn by inverting the cumulative bin distribution at
    uniform variates.  Work is split into fixed-size chunks, each with its own
    child stream of ``numpy.random.SeedSequence(seed)``, so the histogram
    depends only on `seed` and `n_particles`.
    """
    n_particles = int(n_particles)
    if n_particles < 0:
        raise ValueError("n_particles must be nonnegative")
    probs = bin_probabilities(pcfg, Z)
    cdf = np.cumsum(probs)
    cdf[-1] = 1.0
    counts = np.zeros(probs.size, dtype=np.int64)
    n_chunks = -(-n_particles // _CHUNK)
    streams = np.random.SeedSequence(seed).spawn(n_chunks)
    for i, ss in enumerate(streams):
        size = min(_CHUNK, n_particles - i * _CHUNK)
        u = np.random.default_rng(ss).random(size)
        idx = np.searchsorted(cdf, u, side="right")
        counts += np.bincount(idx, minlength=probs.size)
    return Histogram(edges=pcfg.edges, counts=counts, fringe_spacing=pcfg.fringe_spacing)


def fit_fringes(hist):
    """Fourier estimate of the fringe contrast of a histogram.

    Counts are projected onto the bin-integrated constant, cosine and sine at
    spatial frequency ``1 / delta_f``.  The normal equations undo both the
    bin-width smoothing and the leakage from a span that is not a whole number
    of periods; on whole periods this is twice the first Fourier coefficient
    over the zeroth.  The standard error assumes Poisson counts.
    """
    edges = np.asarray(hist.edges, dtype=float)
    y = np.asarray(hist.counts, dtype=float)
    n_periods = (edges[-1] - edges[0]) / hist.fringe_spacing
    if n_periods < 3:
        warnings.warn(f"histogram spans only {n_periods:.3g} fringe periods; "
                      "the visibility estimate is imprecise", RuntimeWarning, stacklevel=2)
    X = np.column_stack(_bin_basis(edges, hist.fringe_spacing))
    gram_inv = np.linalg.inv(X.T @ X)
    A, B, C = gram_inv @ (X.T @ y)
    if not A > 0:
        raise ValueError("histogram has no counts")
    r = math.hypot(B, C)
    V = r / A

    mu = np.clip(X @ np.array([A, B, C]), 0.0, None)
    cov = gram_inv @ (X.T * mu) @ X @ gram_inv
    if r > 0:
        grad = np.array([-V / A, B / (A * r), C / (A * r)])
    else:
        grad = np.array([0.0, 1.0 / A, 0.0])
    stderr = math.sqrt(max(grad @ cov @ grad, 0.0))
    return FringeFit(visibility=float(V), stderr=stderr, phase=math.atan2(-C, B),
                     n_periods=float(n_periods))


def recover_visibility(hist):
    """Fringe visibility recovered from a histogram; see :func:`fit_fringes`."""
    return fit_fringes(hist).visibility


def duality_arrays(cfg, z_grid):
    """``(V, D, f)`` arrays with ``f = V**2 + D**2`` on a charge grid."""
    z = np.asarray(z_grid, dtype=float)
    if np.any(z < 0):
        raise ValueError("charges must be nonnegative")
    if np.any(np.diff(z) < 0):
        raise ValueError("charge grid must be sorted")
    V = np.exp(log_visibility_closed_form(z, cfg))
    D = np.asarray(distinguishability_of_charge(z, cfg), dtype=float)
    return V, D, V * V + D * D


def duality_curve(cfg, z_grid):
    """Visibility, distinguishability and ``f = V^2 + D^2`` for each charge.

    The visibility is the closed form, identically
    ``exp(-(16 / 3 pi) (Z / Z2)^2)`` with the canonical ``Z2``.
    """
    z = np.atleast_1d(np.asarray(z_grid, dtype=float))
    V, D, f = duality_arrays(cfg, z)
    return [DualityPoint(Z=float(a), V=float(b), D=float(c), f=float(e))
            for a, b, c, e in zip(z, V, D, f)]


def duality_bound_holds(cfg):
    """Whether ``Z2 < 8 Z1 / sqrt(3)``, the condition for ``f(Z) < 1`` on ``0 < Z < inf``."""
    return critical_charge_z2(cfg) < 8.0 * critical_charge_z1(cfg) / math.sqrt(3.0)

"""Radiative dephasing of the two path amplitudes.

The interference term is multiplied by the vacuum expectation of the Wilson
loop around upper-path-forward / lower-path-backward.  For a free Gaussian
field that is ``exp(-(Z^2 alpha / 2 hbar c) Phi)`` with

    Re Phi = (2 hbar / 3 pi c) * Int omega |Oint dt exp(-i omega t) v(t)|^2 d omega

after summing over polarizations.  Trajectories are piecewise straight with
one velocity kink at the slits, so the contour transform is a finite sum of
exact segment integrals; only the omega integral is done numerically.

Two routes to the visibility are provided and are meant to be compared:
:func:`visibility_closed_form` (sudden kink, symmetric geometry, logarithmic
cutoffs) and :func:`visibility_numeric` (trajectory built from the geometry,
omega integral by adaptive quadrature).
"""

from dataclasses import dataclass
import math

import numpy as np
from scipy import integrate

from .experiment import flight_time, log_term, omega_max as _omega_max
from .units import constants

__all__ = [
    "TrajectoryPair",
    "VisibilityResult",
    "QuadratureError",
    "trajectory_pair",
    "contour_velocity_transform",
    "re_phi",
    "log_visibility_closed_form",
    "visibility_closed_form",
    "visibility_numeric",
    "critical_charge_z2",
    "zero_photon_factor",
]


class QuadratureError(RuntimeError):
    """The omega integral did not reach the requested tolerance."""


@dataclass(frozen=True)
class TrajectoryPair:
    """Piecewise-constant velocities (cm/s) of the two paths.

    ``v1 -> v1p`` on the upper path and ``v2 -> v2p`` on the lower one, with
    the kink at ``t_slit`` and arrival at ``T``.  Velocities are 2-vectors
    (longitudinal, transverse).
    """

    v1: np.ndarray
    v1p: np.ndarray
    v2: np.ndarray
    v2p: np.ndarray
    T: float
    t_slit: float

    def __post_init__(self):
        c = constants().c
        for name in ("v1", "v1p", "v2", "v2p"):
            vec = np.asarray(getattr(self, name), dtype=float)
            if vec.shape != (2,):
                raise ValueError(f"{name} must be a 2-vector, got shape {vec.shape}")
            if not np.hypot(*vec) < c:
                raise ValueError(f"|{name}| must be below c")
            object.__setattr__(self, name, vec)
        if not self.T > 0:
            raise ValueError(f"T must be positive, got {self.T!r}")
        if not 0 < self.t_slit < self.T:
            raise ValueError(f"t_slit must lie in (0, T), got {self.t_slit!r}")

    @property
    def pre_difference(self):
        """Velocity difference upper minus lower before the slits."""
        return self.v1 - self.v2

    @property
    def post_difference(self):
        return self.v1p - self.v2p

    @property
    def kink(self):
        """``v1 - v1' - v2 + v2'``."""
        return self.pre_difference - self.post_difference


@dataclass(frozen=True)
class VisibilityResult:
    visibility: float
    log_visibility: float
    # the pattern shift vanishes at the screen center by symmetry
    phase_zeta: float = 0.0


def trajectory_pair(cfg, b=0.0):
    """Straight-line paths from the emitter through either slit to screen point `b`.

    The longitudinal speed is ``cfg.v`` throughout, so both paths take
    ``T = L / v`` and reach the slits at ``slit_fraction * T``.
    """
    T = flight_time(cfg)
    s = cfg.slit_fraction
    t_slit = s * T
    t_after = T - t_slit
    half = 0.5 * cfg.d
    v = cfg.v
    return TrajectoryPair(
        v1=np.array([v, half / t_slit]),
        v1p=np.array([v, (b - half) / t_after]),
        v2=np.array([v, -half / t_slit]),
        v2p=np.array([v, (b + half) / t_after]),
        T=T,
        t_slit=t_slit,
    )


def _segment(omega, t1, t2):
    # exact Int_{t1}^{t2} exp(-i omega t) dt, stable as omega -> 0
    dt = t2 - t1
    return dt * np.exp(-0.5j * omega * (t1 + t2)) * np.sinc(omega * dt / (2 * np.pi))


def contour_velocity_transform(traj, omega, endpoints=True):
    """``Oint_{u-l} dt exp(-i omega t) v(t)`` for the piecewise-constant paths.

    Parameters
    ----------
    traj : TrajectoryPair
    omega : float or array_like
        Angular frequency, rad/s, strictly positive.
    endpoints : bool
        With ``True`` (default) the integral runs exactly over ``[0, T]`` and
        therefore also contains the velocity jumps where the paths start and
        end.  With ``False`` only the slit kink is kept, i.e. the sudden term
        ``(i / omega) (v1 - v1' - v2 + v2') exp(-i omega t_slit)``.

    Returns
    -------
    numpy.ndarray
        Complex array of shape ``omega.shape + (2,)``, in cm.
    """
    omega = np.asarray(omega, dtype=float)
    if np.any(~(omega > 0)):
        raise ValueError("omega must be positive")
    w = omega[..., None]
    if not endpoints:
        return (1j / w) * traj.kink * np.exp(-1j * w * traj.t_slit)
    return (traj.pre_difference * _segment(w, 0.0, traj.t_slit)
            + traj.post_difference * _segment(w, traj.t_slit, traj.T))


# QAWF tails start no lower than this; below it a fixed Gauss-Legendre rule is exact enough
_TAIL_START = 8.0 * math.pi
_HEAD_X, _HEAD_W = np.polynomial.legendre.leggauss(60)


def _cos_tail(lo):
    """Int_lo^inf cos(x) / x dx."""
    head = 0.0
    if lo < _TAIL_START:
        # log(X / lo) plus the entire function (cos x - 1) / x = -2 sin^2(x/2) / x
        x = 0.5 * (_TAIL_START + lo) + 0.5 * (_TAIL_START - lo) * _HEAD_X
        smooth = 0.5 * (_TAIL_START - lo) * np.dot(_HEAD_W, -2.0 * np.sin(0.5 * x) ** 2 / x)
        head = math.log(_TAIL_START / lo) + smooth
        lo = _TAIL_START
    val, _, info, *msg = integrate.quad(lambda x: 1.0 / x, lo, np.inf, weight="cos", wvar=1.0,
                                        epsabs=1e-12, limlst=200, limit=200, full_output=1)
    # only the first `lst` entries of ierlst are meaningful
    if msg or np.any(info["ierlst"][: info["lst"]]):
        raise QuadratureError(f"oscillatory tail from x={lo:.6g} did not converge")
    return head + val


def _cos_over_omega(tau, a, b):
    """Int_a^b cos(tau w) / w dw, as a difference of two tails in x = tau * w."""
    if tau == 0.0:
        return math.log(b / a)
    return _cos_tail(tau * a) - _cos_tail(tau * b)


def re_phi(traj, omega_min, omega_max, endpoints=False):
    """Real part of the loop phase variance, ``(2 hbar / 3 pi c) Int omega |Oint|^2 d omega``.

    The frequency integral is cut at ``omega_min`` and ``omega_max``.  By default
    only the radiation from the slit kink is counted; see
    :func:`contour_velocity_transform` for `endpoints`.  Units are erg cm so
    that ``Z^2 alpha / (2 hbar c) * re_phi`` is dimensionless.
    """
    if not (0 < omega_min < omega_max):
        raise ValueError(f"need 0 < omega_min < omega_max, got {omega_min!r}, {omega_max!r}")
    k = constants()
    prefactor = 2.0 * k.hbar / (3.0 * math.pi * k.c)

    # omega |I|^2 = (1/omega) |sum_j c_j exp(-i omega t_j)|^2 with real vector c_j
    if endpoints:
        times = [0.0, traj.t_slit, traj.T]
        coeffs = [-traj.pre_difference, traj.kink, traj.post_difference]
    else:
        times = [traj.t_slit]
        coeffs = [traj.kink]

    # diagonal terms are constant in log(omega)
    total = sum(float(c @ c) for c in coeffs) * math.log(omega_max / omega_min)
    for i in range(len(times)):
        for j in range(i + 1, len(times)):
            weight = 2.0 * float(coeffs[i] @ coeffs[j])
            if weight != 0.0:
                total += weight * _cos_over_omega(abs(times[j] - times[i]), omega_min, omega_max)
    return prefactor * total


def log_visibility_closed_form(Z, cfg):
    """``-Z^2 (16 alpha / 3 pi) (d / cT)^2 log(pi L / lambda)``; vectorized over `Z`."""
    k = constants()
    cT = k.c * flight_time(cfg)
    coeff = 16.0 * k.alpha / (3.0 * math.pi) * (cfg.d / cT) ** 2 * log_term(cfg)
    return -coeff * np.square(Z)


def visibility_closed_form(Z, cfg):
    """Fringe visibility in the sudden-kink, central-fringe approximation.

    Uses ``(v1 - v2)^2 = (2d/T)^2`` and the photon frequency window
    ``[1/T, pi v / lambda]``.
    """
    if np.any(np.asarray(Z) < 0):
        raise ValueError("Z must be nonnegative")
    logv = log_visibility_closed_form(Z, cfg)
    return VisibilityResult(visibility=np.exp(logv), log_visibility=logv)


def visibility_numeric(Z, cfg, traj=None, omega_min=None, omega_max=None, endpoints=False):
    """Visibility from the trajectory radiation integral.

    Defaults: central-fringe trajectories from :func:`trajectory_pair`,
    ``omega_min = 1/T`` and ``omega_max = pi v / lambda``.
    """
    if Z < 0:
        raise ValueError("Z must be nonnegative")
    k = constants()
    traj = trajectory_pair(cfg) if traj is None else traj
    omega_min = 1.0 / traj.T if omega_min is None else omega_min
    omega_max = _omega_max(cfg) if omega_max is None else omega_max
    phi = re_phi(traj, omega_min, omega_max, endpoints=endpoints)
    logv = -(Z * Z * k.alpha / (2.0 * k.hbar * k.c)) * phi
    return VisibilityResult(visibility=math.exp(logv), log_visibility=logv)


def critical_charge_z2(cfg, exact=False):
    """Charge scale for loss of fringes.

    ``exact=False`` gives ``(cT / (d sqrt(alpha))) / sqrt(log_term)``, the scale
    in which ``V^2 = exp(-(32 / 3 pi) (Z / Z2)^2)``.  ``exact=True`` gives the
    charge where the closed-form visibility is exactly ``e^-2``, which is
    ``sqrt(3 pi / 8)`` times larger.
    """
    k = constants()
    lt = log_term(cfg)
    z2 = k.c * flight_time(cfg) / (cfg.d * math.sqrt(k.alpha)) / math.sqrt(lt)
    if exact:
        return math.sqrt(3.0 * math.pi / 8.0) * z2
    return z2


def zero_photon_factor(Z, cfg):
    """Suppression of the zero-photon pattern.

    Returns ``(V ** 0.5, single_path)`` where ``single_path = exp(log V / 4)``
    is the magnitude of the no-emission amplitude on one path; two of them
    make up the zero-photon factor.
    """
    logv = log_visibility_closed_form(Z, cfg)
    return np.exp(0.5 * logv), np.exp(0.25 * logv)

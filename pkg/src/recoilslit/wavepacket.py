"""Closed-form entangled Gaussian double-slit state and its screen intensity.

Time and mass never appear on their own: the free evolution from the
slits to the screen enters only through ``tau = lambda * L / (2 pi)``,
which plays the role of hbar*t/m and has dimension length squared.
"""

import cmath
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .detector import overlap
from .errors import DomainError
from .grid import Pattern

COVERAGE_SIGMAS = 6.0
LOGCOSH_SWITCH = 30.0


@dataclass(frozen=True)
class SlitGeometry:
    """Slit half-width ``epsilon``, separation ``d``, wavelength, screen distance ``L``.

    ``L = 0`` is allowed and means the screen sits at the slits (tau = 0).
    """

    epsilon: float
    d: float
    wavelength: float
    L: float

    def __post_init__(self):
        for name in ("epsilon", "d", "wavelength"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be positive and finite, got {value!r}")
        if not (math.isfinite(self.L) and self.L >= 0):
            raise ValueError(f"L must be non-negative and finite, got {self.L!r}")
        if self.d <= 4.0 * self.epsilon:
            warnings.warn(
                f"d = {self.d:g} <= 4 epsilon: slit packets overlap by "
                f"{math.exp(-self.d**2 / (8 * self.epsilon**2)):.2e}",
                stacklevel=2,
            )

    @property
    def tau(self):
        return self.wavelength * self.L / (2.0 * math.pi)

    @property
    def packet_overlap(self):
        """<psi1|psi2> of the unit-normalized slit packets, conserved in time."""
        return math.exp(-self.d**2 / (8.0 * self.epsilon**2))

    def required_extent(self):
        return self.d / 2.0 + COVERAGE_SIGMAS * math.sqrt(spread(self).sigma_t2)


@dataclass(frozen=True)
class SpreadParameters:
    tau: float
    sigma_t2: float
    amp2: float


def spread(geom):
    """Evolved packet width ``sigma_t^2 = eps^2 + (tau / 2 eps)^2`` and ``|A_t|^2``."""
    tau = geom.tau
    sigma_t2 = geom.epsilon**2 + (tau / (2.0 * geom.epsilon)) ** 2
    amp2 = 0.5 / math.sqrt(2.0 * math.pi * sigma_t2)
    return SpreadParameters(tau, sigma_t2, amp2)


def amplitude_prefactor(geom):
    """``A_t = (1/sqrt2) [sqrt(2 pi) (eps + i tau / 2 eps)]^(-1/2)``, principal branch."""
    eps = geom.epsilon
    z = math.sqrt(2.0 * math.pi) * complex(eps, geom.tau / (2.0 * eps))
    return 1.0 / (math.sqrt(2.0) * np.sqrt(z))


def evolved_amplitudes(x, geom):
    """Slit amplitudes (psi1, psi2) at the screen, each carrying the 1/sqrt2 slit weight."""
    x = np.asarray(x, dtype=float)
    a_t = amplitude_prefactor(geom)
    denom = complex(4.0 * geom.epsilon**2, 2.0 * geom.tau)
    half = geom.d / 2.0
    psi1 = a_t * np.exp(-((x - half) ** 2) / denom)
    psi2 = a_t * np.exp(-((x + half) ** 2) / denom)
    return psi1, psi2


def fringe_phase_rate(geom):
    """Spatial angular frequency ``d tau / (4 eps^4 + tau^2)`` of the fringes."""
    tau = geom.tau
    return geom.d * tau / (4.0 * geom.epsilon**4 + tau**2)


def fringe_width(geom):
    """Fringe period ``lambda L / d + 16 pi^2 eps^4 / (lambda d L)``."""
    if geom.L == 0:
        return math.inf
    lam, L, d, eps = geom.wavelength, geom.L, geom.d, geom.epsilon
    return lam * L / d + 16.0 * math.pi**2 * eps**4 / (lam * d * L)


def _check_overlap(ov):
    ov = complex(ov)
    if abs(ov) > 1.0 + 1e-12:
        raise DomainError(f"|<d1|d2>| = {abs(ov):.17g} exceeds one")
    return ov


def _logcosh(y):
    y = np.abs(y)
    return y + np.log1p(np.exp(-2.0 * y)) - math.log(2.0)


def intensity(x, geom, ov):
    """Screen intensity in compact cosh/cos form.

    ``ov`` is <d1|d2>; its argument shifts the fringes. For large
    ``|x d / 2 sigma_t^2|`` the envelope is evaluated in log space.
    """
    ov = _check_overlap(ov)
    scalar = np.ndim(x) == 0
    x = np.atleast_1d(np.asarray(x, dtype=float))
    sp = spread(geom)
    d = geom.d
    log_env = -(x**2 + d**2 / 4.0) / (2.0 * sp.sigma_t2)
    y = x * d / (2.0 * sp.sigma_t2)
    phase = fringe_phase_rate(geom) * x + cmath.phase(ov)
    fringe = abs(ov) * np.cos(phase)

    big = np.abs(y) > LOGCOSH_SWITCH
    out = np.empty(x.shape)
    small = ~big
    out[small] = 2.0 * sp.amp2 * np.exp(log_env[small]) * (np.cosh(y[small]) + fringe[small])
    if np.any(big):
        lc = _logcosh(y[big])
        out[big] = 2.0 * sp.amp2 * np.exp(log_env[big] + lc) * (1.0 + fringe[big] * np.exp(-lc))
    out = np.maximum(out, 0.0)
    return float(out[0]) if scalar else out


def intensity_expanded(x, geom, ov):
    """Screen intensity from the three-term expansion |psi1|^2 + |psi2|^2 + 2 Re(ov psi1* psi2)."""
    ov = _check_overlap(ov)
    psi1, psi2 = evolved_amplitudes(x, geom)
    out = np.abs(psi1) ** 2 + np.abs(psi2) ** 2 + 2.0 * np.real(ov * np.conj(psi1) * psi2)
    return out if np.ndim(out) else float(out)


def synthesize_pattern(geom, d1, d2, grid):
    """Sample the screen intensity for detector states ``d1``, ``d2`` on ``grid``."""
    grid.require_extent(geom.required_extent())
    ov = overlap(d1, d2)
    xs = grid.points()
    return Pattern(xs, intensity(xs, geom, ov), geom, ov, label="analytic")


def pattern_for_overlap(geom, ov, grid, label="analytic"):
    grid.require_extent(geom.required_extent())
    xs = grid.points()
    return Pattern(xs, intensity(xs, geom, ov), geom, complex(ov), label=label)

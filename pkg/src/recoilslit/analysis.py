"""Fringe visibility, theoretical visibility and duality reports."""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .detector import (
    P,
    distinguishability,
    eraser_observable,
    make_correlated_pair,
    overlap,
    variance,
)
from .errors import ConsistencyError, DegeneratePatternError
from .grid import GridSpec
from .wavepacket import fringe_width, spread, synthesize_pattern

BOUND_TOL = 1e-9
WINDOW_FRINGES = 2.0


@dataclass(frozen=True)
class Visibility:
    """Result of :func:`extract_visibility`.

    ``upper`` is the upper fringe envelope interpolated at ``x_min``;
    ``i_max`` is the raw value of the central maximum.
    """

    value: float
    no_fringes: bool = False
    x_max: float = math.nan
    x_min: float = math.nan
    i_max: float = math.nan
    i_min: float = math.nan
    upper: float = math.nan

    def __float__(self):
        return self.value


def _refine(xs, ys, idx):
    """Vertex of the parabola through samples idx-1, idx, idx+1."""
    y0, y1, y2 = ys[idx - 1], ys[idx], ys[idx + 1]
    curvature = y0 - 2.0 * y1 + y2
    if curvature == 0:
        return xs[idx], y1
    shift = 0.5 * (y0 - y2) / curvature
    return xs[idx] + shift * (xs[1] - xs[0]), y1 - 0.25 * (y0 - y2) * shift


def local_extrema(xs, ys):
    """Interior local maxima and minima, sub-sample refined.

    Returns two arrays of shape (k, 2) holding (x, value) rows.
    """
    left = ys[1:-1] - ys[:-2]
    right = ys[1:-1] - ys[2:]
    is_max = (left > 0) & (right >= 0)
    is_min = (left < 0) & (right <= 0)
    maxima = np.array([_refine(xs, ys, i + 1) for i in np.nonzero(is_max)[0]]).reshape(-1, 2)
    minima = np.array([_refine(xs, ys, i + 1) for i in np.nonzero(is_min)[0]]).reshape(-1, 2)
    minima[:, 1] = np.maximum(minima[:, 1], 0.0)
    return maxima, minima


def _upper_envelope(maxima, x):
    """Upper fringe envelope at ``x``.

    A parabola through the logs of the three maxima nearest ``x`` is exact
    for a Gaussian envelope; with fewer maxima, fall back to the chord
    between the two that bracket ``x``.
    """
    nearest = maxima[np.sort(np.argsort(np.abs(maxima[:, 0] - x))[:3])]
    if len(nearest) == 3 and np.all(nearest[:, 1] > 0):
        coef = np.polyfit(nearest[:, 0], np.log(nearest[:, 1]), 2)
        return float(np.exp(np.polyval(coef, x)))
    left, right = maxima[maxima[:, 0] < x], maxima[maxima[:, 0] > x]
    if len(left) == 0 or len(right) == 0:
        return None
    (x0, y0), (x1, y1) = left[-1], right[0]
    return float(y0 + (x - x0) / (x1 - x0) * (y1 - y0))


def extract_visibility(pattern, half_window=None):
    """Fringe contrast ``(Imax - Imin) / (Imax + Imin)`` of the central fringe pair.

    The maximum nearest ``x = 0`` and its nearest minimum are located by a
    three-point test with parabolic refinement. Imax is then read off the
    upper envelope at the minimum's abscissa, so both intensities refer to
    the same point of the slowly varying envelope (see
    :func:`_upper_envelope`).

    A pattern without an interior maximum and minimum inside the window
    (``2 w`` around the centre by default) has no fringes; the result is
    then ``0`` with ``no_fringes`` set.
    """
    xs, ys = pattern.xs, pattern.intensities
    if not ys.max() > 0:
        raise DegeneratePatternError("pattern is identically zero; visibility undefined")
    if half_window is None:
        w = fringe_width(pattern.geometry) if pattern.geometry is not None else math.inf
        half_window = WINDOW_FRINGES * w
    maxima, minima = local_extrema(xs, ys)
    near_max = maxima[np.abs(maxima[:, 0]) <= half_window]
    near_min = minima[np.abs(minima[:, 0]) <= half_window]
    if len(near_max) == 0 or len(near_min) == 0:
        return Visibility(0.0, no_fringes=True)

    # nearest to the centre; ties go to +x
    x_max, i_max = near_max[np.lexsort((-near_max[:, 0], np.abs(near_max[:, 0])))[0]]
    candidates = near_min[np.lexsort((-near_min[:, 0], np.abs(near_min[:, 0] - x_max)))]
    for x_min, i_min in candidates:
        upper = _upper_envelope(maxima, x_min)
        if upper is not None:
            return _contrast(upper, i_min, x_max, x_min, i_max)
    x_min, i_min = candidates[0]
    return _contrast(i_max, i_min, x_max, x_min, i_max)


def _contrast(upper, lower, x_max, x_min, i_max):
    total = upper + lower
    if not total > 0:
        raise DegeneratePatternError("Imax + Imin vanishes; visibility undefined")
    value = (upper - lower) / total
    return Visibility(float(min(max(value, 0.0), 1.0)), False, float(x_max), float(x_min),
                      float(i_max), float(lower), float(upper))


def theoretical_visibility(geom, ov, x_star):
    """``|ov| / cosh(x_star d / 2 sigma_t^2)``, never above ``|ov|``."""
    sigma_t2 = spread(geom).sigma_t2
    return abs(complex(ov)) / math.cosh(x_star * geom.d / (2.0 * sigma_t2))


def auto_grid(geom, samples_per_fringe=64, min_n=1024):
    """Smallest power-of-two grid meeting coverage and fringe resolution."""
    extent = geom.required_extent()
    w = fringe_width(geom)
    n = min_n
    while 2.0 * extent / n > w / samples_per_fringe:
        n *= 2
    return GridSpec(extent, n)


def eraser_phase(d1):
    """Phase of the equatorial eraser observable best aligned with ``d1``.

    For real coefficients this is 0 (``Q = sigma_x``) or pi (``-Q``, same variance).
    """
    cross = d1.a_p1.conjugate() * d1.a_p2
    if abs(cross) < 1e-300:
        return 0.0
    return cmath.phase(cross)


@dataclass(frozen=True)
class DualityReport:
    V: float
    D: float
    dP2: float
    dQ2: float
    v2_plus_d2: float
    bound_residual: float
    overlap: complex = 0j
    eraser_phase: float = 0.0
    no_fringes: bool = False
    c1: complex = math.nan

    @property
    def uncertainty_sum(self):
        return self.dP2 + self.dQ2


def duality_report(geom, d1, d2, grid=None, c1=math.nan):
    """Measured visibility against distinguishability and detector uncertainties.

    ``dQ2`` uses the eraser observable aligned with ``d1`` (see
    :func:`eraser_phase`); for real coefficients this is ``Q`` up to sign.
    """
    grid = grid or auto_grid(geom)
    vis = extract_visibility(synthesize_pattern(geom, d1, d2, grid))
    D = distinguishability(d1, d2)
    phase = eraser_phase(d1)
    dP2 = variance(P, d1)
    dQ2 = variance(eraser_observable(phase), d1)
    V = vis.value
    total = V**2 + D**2
    if total > 1.0 + BOUND_TOL:
        raise ConsistencyError(f"V^2 + D^2 = {total:.17g} exceeds 1")
    if dP2 + dQ2 < 1.0 - 1e-12:
        raise ConsistencyError(f"dP^2 + dQ^2 = {dP2 + dQ2:.17g} below 1")
    if total > 2.0 - (dP2 + dQ2) + BOUND_TOL:
        raise ConsistencyError(f"V^2 + D^2 = {total:.17g} exceeds 2 - (dP^2 + dQ^2)")
    return DualityReport(V, D, dP2, dQ2, total, 1.0 - total, overlap(d1, d2), phase,
                         vis.no_fringes, c1)


def duality_sweep(geom, n_steps, grid=None, theta=0.0):
    """Reports for real ``c1`` running from ``1/sqrt2`` (no which-way) to ``1`` (full).

    ``theta`` is an extra phase on ``d2``; it moves the fringes, not V.
    """
    if n_steps < 2:
        raise ValueError("n_steps must be at least 2")
    grid = grid or auto_grid(geom)
    reports = []
    for c1 in np.linspace(1.0 / math.sqrt(2.0), 1.0, n_steps):
        c1 = float(c1)
        c2 = math.sqrt(max(0.0, 1.0 - c1 * c1))
        d1, d2 = make_correlated_pair(c1, c2)
        if theta:
            d2 = d2.with_phase(theta)
        reports.append(duality_report(geom, d1, d2, grid, c1=c1))
    return reports

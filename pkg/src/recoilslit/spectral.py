"""Grid-based free-particle propagation, used to check the closed forms.

Units are hbar = m = 1, so the elapsed time equals ``tau``. Each Fourier
mode k is multiplied by ``exp(-i k^2 tau / 2)``; on a periodic grid this
is exact up to aliasing and wraparound, and wraparound is refused up
front.
"""

import math
from dataclasses import dataclass

import numpy as np

from .detector import overlap
from .grid import GridSpec, Pattern
from .wavepacket import COVERAGE_SIGMAS, evolved_amplitudes, fringe_width, intensity, spread

DIRECT_DFT_MAX = 1024


@dataclass(frozen=True)
class ComplexField:
    values: np.ndarray
    grid: GridSpec

    def __post_init__(self):
        values = np.asarray(self.values, dtype=complex)
        if values.shape != (self.grid.n,):
            raise ValueError(f"field has shape {values.shape}, grid wants ({self.grid.n},)")
        object.__setattr__(self, "values", values)

    def norm(self):
        return float(np.sum(np.abs(self.values) ** 2) * self.grid.dx)

    def __add__(self, other):
        return ComplexField(self.values + other.values, self.grid)

    def __rmul__(self, scalar):
        return ComplexField(scalar * self.values, self.grid)


def direct_dft(values):
    """O(n^2) DFT with numpy's sign convention; reference for small transforms."""
    values = np.asarray(values, dtype=complex)
    n = values.size
    if n > DIRECT_DFT_MAX:
        raise ValueError(f"direct DFT limited to n <= {DIRECT_DFT_MAX}, got {n}")
    j = np.arange(n)
    kernel = np.exp(-2j * np.pi * np.outer(j, j) / n)
    return kernel @ values


def direct_idft(values):
    return np.conj(direct_dft(np.conj(values))) / len(values)


def init_packet(geom, sign, grid):
    """Unit-normalized slit packet at ``tau = 0``, centred at ``+d/2`` (sign=+1) or ``-d/2``."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    grid.require_extent(geom.required_extent())
    x = grid.points()
    eps = geom.epsilon
    centre = sign * geom.d / 2.0
    values = (2.0 * math.pi * eps**2) ** -0.25 * np.exp(-((x - centre) ** 2) / (4.0 * eps**2))
    return ComplexField(values, grid)


def evolved_spread(field, tau):
    """Predicted centroid and width of ``|psi|^2`` after free evolution by ``tau``.

    Uses the exact free-particle moment equations, so it can be
    evaluated before propagating.
    """
    grid = field.grid
    psi = field.values
    x = grid.points()
    k = grid.wavenumbers()
    dpsi = np.fft.ifft(k * np.fft.fft(psi))
    weight = np.abs(psi) ** 2
    norm = weight.sum()
    mean_x = float((x * weight).sum() / norm)
    mean_x2 = float((x**2 * weight).sum() / norm)
    mean_p = float(np.real(np.vdot(psi, dpsi)) / norm)
    mean_p2 = float(np.sum(np.abs(dpsi) ** 2) / norm)
    mean_xp = float(np.real(np.vdot(psi, x * dpsi)) / norm)
    var = (
        (mean_x2 - mean_x**2)
        + 2.0 * tau * (mean_xp - mean_x * mean_p)
        + tau**2 * (mean_p2 - mean_p**2)
    )
    return mean_x + tau * mean_p, math.sqrt(max(var, 0.0))


def propagate_free(field, tau):
    """Evolve ``field`` freely by ``tau`` (= hbar t / m)."""
    centre, width = evolved_spread(field, tau)
    required = abs(centre) + COVERAGE_SIGMAS * width
    field.grid.require_extent(required, what="propagated field (wraparound guard)")
    if tau == 0:
        return ComplexField(field.values.copy(), field.grid)
    k = field.grid.wavenumbers()
    kick = np.exp(-0.5j * tau * k**2)
    return ComplexField(np.fft.ifft(kick * np.fft.fft(field.values)), field.grid)


def oracle_amplitudes(geom, grid):
    """Propagated unit packets (psi1, psi2) for ``geom``."""
    tau = geom.tau
    return (
        propagate_free(init_packet(geom, 1, grid), tau),
        propagate_free(init_packet(geom, -1, grid), tau),
    )


def oracle_pattern(geom, d1, d2, grid):
    """Screen intensity assembled from the propagated packets."""
    ov = overlap(d1, d2)
    return _oracle_pattern_for_overlap(geom, ov, grid)


def _oracle_pattern_for_overlap(geom, ov, grid, fields=None):
    psi1, psi2 = fields if fields is not None else oracle_amplitudes(geom, grid)
    a, b = psi1.values, psi2.values
    values = 0.5 * (np.abs(a) ** 2 + np.abs(b) ** 2) + np.real(ov * np.conj(a) * b)
    return Pattern(grid.points(), np.maximum(values, 0.0), geom, complex(ov), label="oracle")


def relative_linf(approx, reference, floor=1e-8):
    """Max pointwise relative error where ``|reference| > floor * max|reference|``."""
    approx = np.asarray(approx)
    reference = np.asarray(reference)
    mag = np.abs(reference)
    mask = mag > floor * mag.max()
    return float(np.max(np.abs(approx[mask] - reference[mask]) / mag[mask]))


def zero_crossings(xs, values):
    """Linearly interpolated abscissae where ``values`` changes sign."""
    s = np.sign(values)
    idx = np.nonzero(s[:-1] * s[1:] < 0)[0]
    x0, x1 = xs[idx], xs[idx + 1]
    y0, y1 = values[idx], values[idx + 1]
    return x0 - y0 * (x1 - x0) / (y1 - y0)


def measured_fringe_period(xs, cross_term, half_window):
    """Fringe period from zero crossings of the interference term near the centre.

    The cross term is a positive envelope times a cosine, so its zeros
    sit exactly on the cosine's nodes and their spacing is half a period
    whatever the envelope does.
    """
    zeros = zero_crossings(xs, cross_term)
    zeros = zeros[np.abs(zeros) <= half_window]
    if zeros.size < 3:
        return math.nan
    return float(2.0 * np.mean(np.diff(zeros)))


@dataclass
class OracleReport:
    amplitude_error: float
    pattern_error: float
    norm_error: float
    unitarity_error: float
    fringe_width_analytic: float
    fringe_width_measured: float
    fringe_rel_error: float

    AMPLITUDE_TOL = 1e-6
    FRINGE_TOL = 0.01
    NORM_TOL = 1e-6

    def failures(self):
        out = []
        if not self.amplitude_error <= self.AMPLITUDE_TOL:
            out.append(f"amplitude relative Linf {self.amplitude_error:.3e} > {self.AMPLITUDE_TOL:g}")
        if not self.pattern_error <= self.AMPLITUDE_TOL:
            out.append(f"pattern relative Linf {self.pattern_error:.3e} > {self.AMPLITUDE_TOL:g}")
        if not self.norm_error <= self.NORM_TOL:
            out.append(f"integrated intensity error {self.norm_error:.3e} > {self.NORM_TOL:g}")
        if not self.unitarity_error <= self.NORM_TOL:
            out.append(f"norm drift {self.unitarity_error:.3e} > {self.NORM_TOL:g}")
        if math.isfinite(self.fringe_width_analytic) and not self.fringe_rel_error <= self.FRINGE_TOL:
            out.append(f"fringe width error {self.fringe_rel_error:.3e} > {self.FRINGE_TOL:g}")
        return out


def compare_with_oracle(geom, grid, ov=1.0):
    """Run every analytic-vs-grid check for one geometry."""
    fields = oracle_amplitudes(geom, grid)
    xs = grid.points()
    analytic1, analytic2 = evolved_amplitudes(xs, geom)
    amp_err = max(
        relative_linf(fields[0].values, math.sqrt(2.0) * analytic1),
        relative_linf(fields[1].values, math.sqrt(2.0) * analytic2),
    )
    oracle = _oracle_pattern_for_overlap(geom, ov, grid, fields)
    pattern_err = relative_linf(oracle.intensities, intensity(xs, geom, ov))
    incoherent = _oracle_pattern_for_overlap(geom, 0.0, grid, fields)
    norm_err = abs(incoherent.integral() - 1.0)
    initial = init_packet(geom, 1, grid).norm()
    unitarity = abs(fields[0].norm() - initial)

    w = fringe_width(geom)
    if math.isfinite(w):
        cross = np.real(np.conj(fields[0].values) * fields[1].values)
        window = max(2.0 * w, 2.0 * math.sqrt(spread(geom).sigma_t2))
        measured = measured_fringe_period(xs, cross, window)
        rel = abs(measured - w) / w
    else:
        measured, rel = math.nan, 0.0
    return OracleReport(amp_err, pattern_err, norm_err, unitarity, w, measured, rel)

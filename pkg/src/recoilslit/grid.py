"""Sampling grids and sampled intensity patterns."""

from dataclasses import dataclass, field

import numpy as np

from .errors import CoverageError

MIN_SAMPLES = 256


def is_power_of_two(n):
    return n > 0 and n & (n - 1) == 0


@dataclass(frozen=True)
class GridSpec:
    """Periodic grid on ``[-extent, extent)`` with ``n`` samples."""

    extent: float
    n: int

    def __post_init__(self):
        if not self.extent > 0:
            raise ValueError(f"grid extent must be positive, got {self.extent!r}")
        if not is_power_of_two(self.n) or self.n < MIN_SAMPLES:
            raise ValueError(f"grid size must be a power of two >= {MIN_SAMPLES}, got {self.n!r}")

    @property
    def dx(self):
        return 2.0 * self.extent / self.n

    def points(self):
        return -self.extent + self.dx * np.arange(self.n)

    def wavenumbers(self):
        """Signed discrete angular wavenumbers in transform order."""
        return 2.0 * np.pi * np.fft.fftfreq(self.n, d=self.dx)

    def require_extent(self, required, what="geometry"):
        if self.extent < required:
            raise CoverageError(
                f"grid extent {self.extent:g} too small for {what}; need at least {required:.6g}",
                required,
            )


@dataclass(frozen=True)
class Pattern:
    """Uniformly sampled screen intensity with the geometry/overlap it came from."""

    xs: np.ndarray
    intensities: np.ndarray
    geometry: object = None
    overlap: complex = 0j
    label: str = ""
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        xs = np.asarray(self.xs, dtype=float)
        ys = np.asarray(self.intensities, dtype=float)
        if xs.ndim != 1 or xs.shape != ys.shape:
            raise ValueError("xs and intensities must be 1-D arrays of equal length")
        if xs.size < 64:
            raise ValueError(f"pattern needs at least 64 samples, got {xs.size}")
        steps = np.diff(xs)
        if np.any(steps <= 0):
            raise ValueError("xs must be strictly increasing")
        if np.max(np.abs(steps - steps[0])) > 1e-12 * max(abs(steps[0]), np.max(np.abs(xs))):
            raise ValueError("xs must be uniformly spaced")
        if np.any(ys < 0) or not np.all(np.isfinite(ys)):
            raise ValueError("intensities must be finite and non-negative")
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "intensities", ys)

    @property
    def dx(self):
        return self.xs[1] - self.xs[0]

    def integral(self):
        return float(np.trapezoid(self.intensities, self.xs))

    def scaled(self, factor):
        return Pattern(self.xs, self.intensities * factor, self.geometry, self.overlap, self.label, dict(self.meta))

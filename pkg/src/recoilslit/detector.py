"""Two-level algebra of the recoiling-slit which-way register.

States live in the {|p1>, |p2>} basis. Observables are restricted to the
form n.sigma with a unit Bloch vector n, so every observable has
eigenvalues +1 and -1 and its variance is exactly ``1 - <A>^2``.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConsistencyError, NormalizationError

INPUT_TOL = 1e-9
STORED_TOL = 1e-12


def as_amplitude(value):
    """Coerce ``value`` to a finite Python complex."""
    z = complex(value)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"amplitude must be finite, got {z!r}")
    return z


def _check_pair(c1, c2, what):
    deficit = 1.0 - (abs(c1) ** 2 + abs(c2) ** 2)
    if abs(deficit) >= INPUT_TOL:
        raise NormalizationError(
            f"{what} not normalized: |c1|^2 + |c2|^2 = {1.0 - deficit:.17g} "
            f"(deficit {deficit:.3e})",
            deficit,
        )
    return deficit


@dataclass(frozen=True)
class DetectorState:
    """Normalized vector ``a_p1 |p1> + a_p2 |p2>``.

    Inputs within 1e-9 of unit norm are renormalized; anything further
    off raises :class:`NormalizationError`.
    """

    a_p1: complex
    a_p2: complex

    def __post_init__(self):
        a1 = as_amplitude(self.a_p1)
        a2 = as_amplitude(self.a_p2)
        deficit = _check_pair(a1, a2, "detector state")
        if deficit != 0.0:
            norm = math.sqrt(abs(a1) ** 2 + abs(a2) ** 2)
            a1, a2 = a1 / norm, a2 / norm
        object.__setattr__(self, "a_p1", a1)
        object.__setattr__(self, "a_p2", a2)

    def as_array(self):
        return np.array([self.a_p1, self.a_p2], dtype=complex)

    def with_phase(self, phi):
        """Same ray, multiplied by a global phase ``exp(i phi)``."""
        g = cmath.exp(1j * phi)
        return DetectorState(g * self.a_p1, g * self.a_p2)


@dataclass(frozen=True)
class TwoLevelObservable:
    """Observable ``n_x sigma_x + n_y sigma_y + n_z sigma_z`` with |n| = 1."""

    n_x: float
    n_y: float
    n_z: float

    def __post_init__(self):
        r2 = self.n_x**2 + self.n_y**2 + self.n_z**2
        if abs(r2 - 1.0) > STORED_TOL:
            raise ValueError(f"Bloch vector must be unit length, |n|^2 = {r2!r}")

    def matrix(self):
        return np.array(
            [
                [self.n_z, self.n_x - 1j * self.n_y],
                [self.n_x + 1j * self.n_y, -self.n_z],
            ]
        )


P = TwoLevelObservable(0.0, 0.0, 1.0)
Q = TwoLevelObservable(1.0, 0.0, 0.0)

P1 = DetectorState(1.0, 0.0)
P2 = DetectorState(0.0, 1.0)


def eraser_observable(phase=0.0):
    """Equatorial observable whose +1 eigenstate is (|p1> + e^{i phase}|p2>)/sqrt2.

    ``phase=0`` gives the eraser observable ``Q = sigma_x``.
    """
    return TwoLevelObservable(math.cos(phase), math.sin(phase), 0.0)


def eraser_basis(phase=0.0):
    """Eigenstates (q1, q2) of :func:`eraser_observable`, eigenvalues +1 and -1."""
    s = 1.0 / math.sqrt(2.0)
    e = cmath.exp(1j * phase)
    return DetectorState(s, s * e), DetectorState(s, -s * e)


def make_correlated_pair(c1, c2):
    """Detector states that get correlated with the two slits.

    ``d1 = c1|p1> + c2|p2>`` and ``d2 = c2*|p1> + c1*|p2>``.
    """
    c1 = as_amplitude(c1)
    c2 = as_amplitude(c2)
    _check_pair(c1, c2, "coefficient pair")
    return DetectorState(c1, c2), DetectorState(c2.conjugate(), c1.conjugate())


def overlap(d1, d2):
    """Hermitian inner product <d1|d2>, conjugate-linear in ``d1``."""
    return d1.a_p1.conjugate() * d2.a_p1 + d1.a_p2.conjugate() * d2.a_p2


def distinguishability(d1, d2):
    """Path distinguishability ``sqrt(1 - |<d1|d2>|^2)``."""
    radicand = 1.0 - abs(overlap(d1, d2)) ** 2
    if radicand < -STORED_TOL:
        raise ConsistencyError(f"|<d1|d2>|^2 exceeds one by {-radicand:.3e}")
    return math.sqrt(max(radicand, 0.0))


def expectation(obs, s):
    cross = s.a_p1.conjugate() * s.a_p2
    value = (
        2.0 * obs.n_x * cross.real
        + 2.0 * obs.n_y * cross.imag
        + obs.n_z * (abs(s.a_p1) ** 2 - abs(s.a_p2) ** 2)
    )
    return min(1.0, max(-1.0, value))


def variance(obs, s):
    # exact because obs squares to the identity
    return 1.0 - expectation(obs, s) ** 2


def sum_uncertainty(s):
    """Return ``(dP2, dQ2, dP2 + dQ2)`` for the fixed observables P and Q."""
    dp2 = variance(P, s)
    dq2 = variance(Q, s)
    return dp2, dq2, dp2 + dq2


def random_states(rng, n):
    """Draw ``n`` states uniformly on the Bloch sphere.

    A random global phase is applied so that phase invariance gets
    exercised too.
    """
    cos_t = rng.uniform(-1.0, 1.0, n)
    phi = rng.uniform(0.0, 2.0 * math.pi, n)
    gauge = rng.uniform(0.0, 2.0 * math.pi, n)
    half = np.arccos(cos_t) / 2.0
    a1 = np.cos(half) * np.exp(1j * gauge)
    a2 = np.sin(half) * np.exp(1j * (phi + gauge))
    return [DetectorState(complex(x), complex(y)) for x, y in zip(a1, a2)]


def random_coefficient_pairs(rng, n, real=False):
    """Random normalized (c1, c2), Bloch-uniform; real pairs lie on the x-z great circle."""
    if real:
        angle = rng.uniform(0.0, 2.0 * math.pi, n)
        return [(math.cos(a / 2.0), math.sin(a / 2.0)) for a in angle]
    return [(s.a_p1, s.a_p2) for s in random_states(rng, n)]

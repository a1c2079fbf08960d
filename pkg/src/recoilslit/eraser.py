"""Quantum-eraser patterns and the route from sum uncertainty to duality.

Expanding the joint particle-detector state in the eigenbasis of the
eraser observable gives

    g1 [psi1 + e^{i phi1} psi2]/sqrt2 |q1>  +  g2 [psi1 - e^{i phi2} psi2]/sqrt2 |q2>

with unit-normalized slit packets psi1, psi2. For real detector
coefficients both phases vanish. Conditioning on q1 or q2 gives two
complementary fringe patterns that are offset by half a fringe. Without
conditioning, the screen shows their weighted sum.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .analysis import auto_grid, eraser_phase, extract_visibility
from .detector import (
    P,
    as_amplitude,
    distinguishability,
    eraser_basis,
    make_correlated_pair,
    overlap,
    variance,
)
from .errors import ChainViolation, ConsistencyError, NormalizationError
from .grid import Pattern
from .wavepacket import evolved_amplitudes

CHAIN_TOL = 1e-6
SUM_TOL = 1e-12


@dataclass(frozen=True)
class QBasisState:
    """Coefficients of the joint state in the eraser basis."""

    g1: complex
    g2: complex
    phi1: float = 0.0
    phi2: float = 0.0

    def __post_init__(self):
        g1, g2 = as_amplitude(self.g1), as_amplitude(self.g2)
        deficit = 1.0 - abs(g1) ** 2 - abs(g2) ** 2
        if abs(deficit) >= 1e-9:
            raise NormalizationError(f"|g1|^2 + |g2|^2 off by {deficit:.3e}", deficit)
        norm = math.sqrt(abs(g1) ** 2 + abs(g2) ** 2)
        object.__setattr__(self, "g1", g1 / norm)
        object.__setattr__(self, "g2", g2 / norm)

    @property
    def weights(self):
        return abs(self.g1) ** 2, abs(self.g2) ** 2

    @property
    def contrast(self):
        """``|g1|^2 - |g2|^2``, the weight of the marginal cross term."""
        w1, w2 = self.weights
        return w1 - w2


def to_q_basis(c1, c2, phase=0.0):
    """Rewrite the correlated joint state in the eraser basis.

    ``phase`` picks the eraser observable; zero is the plain
    ``Q = sigma_x``. For real (c1, c2) and zero phase this gives
    ``g1 = (c1 + c2)/sqrt2`` and ``g2 = (c1 - c2)/sqrt2``.
    """
    d1, d2 = make_correlated_pair(c1, c2)
    q1, q2 = eraser_basis(phase)
    # rows: slit packet psi1, psi2; columns: q1, q2
    joint = np.array(
        [[overlap(q1, d1), overlap(q2, d1)], [overlap(q1, d2), overlap(q2, d2)]]
    ) / math.sqrt(2.0)
    # branch j is (joint[0,j] psi1 + joint[1,j] psi2) = g_j (psi1 +/- e^{i phi_j} psi2)/sqrt2
    g1, g2 = math.sqrt(2.0) * joint[0]
    phi1 = cmath.phase(joint[1, 0] / joint[0, 0]) if abs(g1) > 1e-15 else 0.0
    phi2 = cmath.phase(-joint[1, 1] / joint[0, 1]) if abs(g2) > 1e-15 else 0.0
    norm = abs(g1) ** 2 + abs(g2) ** 2
    if abs(norm - 1.0) > 1e-9:
        raise ConsistencyError(f"eraser-basis coefficients have norm {norm:.17g}")
    return QBasisState(complex(g1), complex(g2), phi1, phi2)


def _unit_packets(geom, xs):
    psi1, psi2 = evolved_amplitudes(xs, geom)
    return math.sqrt(2.0) * psi1, math.sqrt(2.0) * psi2


def conditional_pattern(geom, which, grid, phase=0.0):
    """Screen intensity conditioned on finding the detector in q1 or q2.

    ``|psi1 + e^{i phase} psi2|^2 / 2`` for q1, with a minus sign for q2.
    """
    if which not in ("q1", "q2"):
        raise ValueError("which must be 'q1' or 'q2'")
    grid.require_extent(geom.required_extent())
    xs = grid.points()
    a, b = _unit_packets(geom, xs)
    sign = 1.0 if which == "q1" else -1.0
    values = 0.5 * np.abs(a + sign * cmath.exp(1j * phase) * b) ** 2
    ov = sign * cmath.exp(1j * phase)
    return Pattern(xs, values, geom, ov, label=which)


def marginal_pattern(geom, q, grid):
    """Unconditioned screen intensity for the eraser-basis state ``q``.

    Summed branch by branch, ``|g1|^2 |a + e^{i phi1} b|^2 / 2 + |g2|^2 |a - e^{i phi2} b|^2 / 2``.
    This equals the three-term form with cross weight ``|g1|^2 e^{i phi1} - |g2|^2 e^{i phi2}``
    but avoids cancellation on dark fringes.
    """
    grid.require_extent(geom.required_extent())
    xs = grid.points()
    a, b = _unit_packets(geom, xs)
    w1, w2 = q.weights
    values = 0.5 * (w1 * np.abs(a + cmath.exp(1j * q.phi1) * b) ** 2
                    + w2 * np.abs(a - cmath.exp(1j * q.phi2) * b) ** 2)
    weight = w1 * cmath.exp(1j * q.phi1) - w2 * cmath.exp(1j * q.phi2)
    return Pattern(xs, values, geom, weight, label="marginal")


def delta_q2(q):
    """Variance of the eraser observable in the joint state: ``1 - (|g1|^2 - |g2|^2)^2``."""
    return 1.0 - q.contrast**2


@dataclass(frozen=True)
class ChainReport:
    c1: complex
    c2: complex
    V: float
    D: float
    dP2: float
    dQ2: float
    contrast: float
    eraser_phase: float

    @property
    def inequalities(self):
        """(name, lhs, rhs, holds) for each link of the chain."""
        V2, D2 = self.V**2, self.D**2
        s = self.dP2 + self.dQ2
        rows = [
            ("V^2 <= (|g1|^2-|g2|^2)^2", V2, self.contrast**2 + CHAIN_TOL),
            ("V^2 <= 1 - dQ^2", V2, 1.0 - self.dQ2 + CHAIN_TOL),
            ("D^2 + V^2 <= 2 - (dP^2 + dQ^2)", D2 + V2, 2.0 - s + CHAIN_TOL),
            ("dP^2 + dQ^2 >= 1", 1.0 - SUM_TOL, s),
            ("D^2 + V^2 <= 1", D2 + V2, 1.0 + CHAIN_TOL),
        ]
        return [(name, lhs, rhs, lhs <= rhs) for name, lhs, rhs in rows]


def uncertainty_duality_chain(c1, c2, geom, grid=None):
    """Evaluate and assert every inequality from the eraser expansion down to duality.

    The eraser observable is rotated in the equatorial plane to line up
    with the detector coefficients (plus or minus ``Q`` for real pairs). The
    visibility is measured on the marginal pattern.
    """
    grid = grid or auto_grid(geom)
    d1, d2 = make_correlated_pair(c1, c2)
    phase = eraser_phase(d1)
    q = to_q_basis(c1, c2, phase)
    vis = extract_visibility(marginal_pattern(geom, q, grid))
    report = ChainReport(
        complex(c1), complex(c2), vis.value, distinguishability(d1, d2),
        variance(P, d1), delta_q2(q), q.contrast, phase,
    )
    for name, lhs, rhs, holds in report.inequalities:
        if not holds:
            raise ChainViolation(f"{name} fails: {lhs:.17g} vs {rhs:.17g} for c=({c1}, {c2})", name)
    return report


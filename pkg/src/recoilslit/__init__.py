"""Einstein's recoiling-slit experiment as a which-way double-slit simulation."""

from .analysis import (
    DualityReport,
    Visibility,
    auto_grid,
    duality_report,
    duality_sweep,
    extract_visibility,
    theoretical_visibility,
)
from .detector import (
    P,
    Q,
    DetectorState,
    TwoLevelObservable,
    distinguishability,
    eraser_basis,
    expectation,
    make_correlated_pair,
    overlap,
    sum_uncertainty,
    variance,
)
from .eraser import (
    QBasisState,
    conditional_pattern,
    delta_q2,
    marginal_pattern,
    to_q_basis,
    uncertainty_duality_chain,
)
from .grid import GridSpec, Pattern
from .spectral import ComplexField, init_packet, oracle_pattern, propagate_free
from .wavepacket import (
    SlitGeometry,
    SpreadParameters,
    evolved_amplitudes,
    fringe_width,
    intensity,
    intensity_expanded,
    spread,
    synthesize_pattern,
)

DEFAULT_GEOMETRY = SlitGeometry(epsilon=1.0, d=10.0, wavelength=1.0, L=1000.0)
DEFAULT_GRID = GridSpec(extent=1024.0, n=4096)
FAR_FIELD_GEOMETRY = SlitGeometry(epsilon=1.0, d=100.0, wavelength=1.0, L=10000.0)

__version__ = "0.1.0"

__all__ = [
    "auto_grid",
    "ComplexField",
    "conditional_pattern",
    "DEFAULT_GEOMETRY",
    "DEFAULT_GRID",
    "delta_q2",
    "DetectorState",
    "distinguishability",
    "duality_report",
    "duality_sweep",
    "DualityReport",
    "eraser_basis",
    "evolved_amplitudes",
    "expectation",
    "extract_visibility",
    "FAR_FIELD_GEOMETRY",
    "fringe_width",
    "GridSpec",
    "init_packet",
    "intensity",
    "intensity_expanded",
    "make_correlated_pair",
    "marginal_pattern",
    "oracle_pattern",
    "overlap",
    "P",
    "Pattern",
    "propagate_free",
    "Q",
    "QBasisState",
    "SlitGeometry",
    "spread",
    "SpreadParameters",
    "sum_uncertainty",
    "synthesize_pattern",
    "theoretical_visibility",
    "to_q_basis",
    "TwoLevelObservable",
    "uncertainty_duality_chain",
    "variance",
    "Visibility",
]

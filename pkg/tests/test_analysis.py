import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from recoilslit import GridSpec, Pattern
from recoilslit.analysis import (
    auto_grid,
    duality_report,
    duality_sweep,
    extract_visibility,
    local_extrema,
    theoretical_visibility,
)
from recoilslit.detector import make_correlated_pair
from recoilslit.errors import DegeneratePatternError
from recoilslit.wavepacket import fringe_width, pattern_for_overlap, spread

SQRT_HALF = 1 / math.sqrt(2)


def sine_pattern(visibility, period=10.0, n=2048, shift=0.0):
    x = np.linspace(-100, 100, n, endpoint=False)
    return Pattern(x, 1.0 + visibility * np.cos(2 * math.pi * (x - shift) / period))


class TestPatternType:
    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            Pattern(np.arange(100.0), -np.ones(100))

    def test_rejects_nonuniform(self):
        x = np.arange(100.0)
        x[50] += 0.1
        with pytest.raises(ValueError):
            Pattern(x, np.ones(100))

    def test_rejects_short(self):
        with pytest.raises(ValueError):
            Pattern(np.arange(10.0), np.ones(10))

    def test_trapezoid_integral(self):
        x = np.linspace(0, 1, 101)
        assert Pattern(x, 2 * x).integral() == pytest.approx(1.0, rel=1e-14)


class TestExtrema:
    def test_parabolic_refinement(self):
        x = np.linspace(-10, 10, 201)
        y = 5 - (x - 0.0317) ** 2
        maxima, minima = local_extrema(x, y)
        assert len(minima) == 0
        np.testing.assert_allclose(maxima[0], [0.0317, 5.0], rtol=1e-12)


class TestExtractVisibility:
    @pytest.mark.parametrize("v", [0.05, 0.5, 0.8, 1.0])
    def test_pure_cosine(self, v):
        assert extract_visibility(sine_pattern(v), half_window=20).value == pytest.approx(v, abs=1e-4)

    def test_off_centre_fringes(self):
        vis = extract_visibility(sine_pattern(0.6, shift=3.3), half_window=20)
        assert vis.x_max == pytest.approx(3.3, abs=1e-3)
        assert vis.value == pytest.approx(0.6, abs=1e-4)

    def test_flat_pattern(self):
        vis = extract_visibility(Pattern(np.linspace(-1, 1, 128), np.ones(128)), half_window=1)
        assert vis.value == 0.0 and vis.no_fringes

    def test_degenerate(self):
        with pytest.raises(DegeneratePatternError):
            extract_visibility(Pattern(np.linspace(-1, 1, 128), np.zeros(128)), half_window=1)

    def test_incoherent(self, geom, grid):
        vis = extract_visibility(pattern_for_overlap(geom, 0, grid))
        assert vis.no_fringes and vis.value <= 1e-9

    def test_identical_detectors(self, geom, grid):
        assert extract_visibility(pattern_for_overlap(geom, 1, grid)).value == pytest.approx(1, abs=1e-3)

    def test_central_maximum(self, geom, grid):
        vis = extract_visibility(pattern_for_overlap(geom, 1, grid))
        assert vis.x_max == pytest.approx(0.0, abs=1e-9)
        assert vis.x_min == pytest.approx(fringe_width(geom) / 2, rel=1e-3)

    def test_partial_overlap_large_spread(self, far, far_grid):
        V = extract_visibility(pattern_for_overlap(far, 0.8, far_grid)).value
        assert 0.8 * (1 - 1e-2) < V <= 0.8

    @settings(max_examples=30, deadline=None)
    @given(st.floats(1e-6, 1e6))
    def test_rescale_invariance(self, factor):
        from recoilslit import DEFAULT_GEOMETRY, DEFAULT_GRID

        p = pattern_for_overlap(DEFAULT_GEOMETRY, 0.6, DEFAULT_GRID)
        assert extract_visibility(p.scaled(factor)).value == pytest.approx(
            extract_visibility(p).value, rel=1e-12
        )

    def test_grid_refinement(self, geom):
        extent = geom.required_extent()
        vs = [extract_visibility(pattern_for_overlap(geom, 0.8, GridSpec(extent, n))).value
              for n in (1024, 2048, 4096, 8192)]
        assert np.max(np.abs(np.diff(vs))) < 1e-4

    @pytest.mark.parametrize("which", ["default", "far"])
    def test_monotone_in_overlap(self, request, which):
        geom = request.getfixturevalue("geom" if which == "default" else "far")
        grid = request.getfixturevalue("grid" if which == "default" else "far_grid")
        vs = [extract_visibility(pattern_for_overlap(geom, a, grid)).value for a in np.linspace(0, 1, 41)]
        assert np.all(np.diff(vs) >= 0)

    @pytest.mark.parametrize("which, tol", [("default", 1e-2), ("far", 1e-4)])
    def test_theta_invariance(self, request, which, tol):
        geom = request.getfixturevalue("geom" if which == "default" else "far")
        grid = request.getfixturevalue("grid" if which == "default" else "far_grid")
        vs = [extract_visibility(pattern_for_overlap(geom, 0.8 * cmath.exp(1j * t), grid)).value
              for t in np.linspace(-3, 3, 13)]
        assert max(vs) - min(vs) < tol

    @pytest.mark.parametrize("ov", [1.0, 0.8, 0.5, 0.3])
    def test_bounded_by_overlap(self, geom, grid, far, far_grid, ov):
        for g, gr in ((geom, grid), (far, far_grid)):
            assert extract_visibility(pattern_for_overlap(g, ov, gr)).value <= ov


class TestTheoreticalVisibility:
    def test_centre(self, geom):
        assert theoretical_visibility(geom, 0.8j, 0.0) == pytest.approx(0.8)

    @given(st.floats(0, 1), st.floats(-2000, 2000))
    def test_never_above_overlap(self, mag, x):
        from recoilslit import DEFAULT_GEOMETRY

        assert theoretical_visibility(DEFAULT_GEOMETRY, mag, x) <= mag

    @pytest.mark.parametrize("ov", [1.0, 0.8, 0.5])
    def test_matches_extracted(self, far, far_grid, ov):
        measured = extract_visibility(pattern_for_overlap(far, ov, far_grid)).value
        assert measured == pytest.approx(theoretical_visibility(far, ov, fringe_width(far) / 2), rel=1e-2)


class TestDualityReport:
    def test_orthogonal(self, geom, grid):
        r = duality_report(geom, *make_correlated_pair(1.0, 0.0), grid)
        assert (r.V, r.D, r.v2_plus_d2) == (0.0, 1.0, 1.0)
        assert r.no_fringes

    def test_identical(self, geom, grid):
        r = duality_report(geom, *make_correlated_pair(SQRT_HALF, SQRT_HALF), grid)
        assert r.D == pytest.approx(0.0, abs=1e-7)
        assert r.V == pytest.approx(1.0, abs=1e-3)

    def test_partial(self, far, far_grid):
        r = duality_report(far, *make_correlated_pair(math.sqrt(0.8), math.sqrt(0.2)), far_grid)
        assert r.D == pytest.approx(0.6, abs=1e-12)
        assert 0.79 < r.V <= 0.8
        assert r.v2_plus_d2 <= 1.0
        assert r.dP2 == pytest.approx(0.64) and r.dQ2 == pytest.approx(0.36)
        assert r.uncertainty_sum == pytest.approx(1.0, abs=1e-12)

    def test_complex_pair_uses_aligned_observable(self, far, far_grid):
        d1, d2 = make_correlated_pair(SQRT_HALF, 1j * SQRT_HALF)
        r = duality_report(far, d1, d2, far_grid)
        assert r.eraser_phase == pytest.approx(math.pi / 2)
        assert r.dQ2 == pytest.approx(0.0, abs=1e-12)
        assert r.v2_plus_d2 <= 2 - r.uncertainty_sum + 1e-9

    def test_auto_grid_covers_and_resolves(self, far):
        grid = auto_grid(far)
        assert grid.extent >= far.required_extent()
        assert grid.dx <= fringe_width(far) / 64


class TestSweep:
    @pytest.mark.parametrize("which", ["default", "far"])
    def test_bound_and_monotonicity(self, request, which):
        geom = request.getfixturevalue("geom" if which == "default" else "far")
        grid = request.getfixturevalue("grid" if which == "default" else "far_grid")
        reports = duality_sweep(geom, 101, grid)
        V = np.array([r.V for r in reports])
        D = np.array([r.D for r in reports])
        assert min(r.bound_residual for r in reports) >= -1e-9
        assert np.all(np.diff(V) <= 0) and np.all(np.diff(D) >= 0)
        assert reports[0].D == pytest.approx(0, abs=1e-7) and reports[-1].D == 1.0
        assert reports[-1].V == 0.0

    def test_residual_far_field(self, far, far_grid):
        reports = duality_sweep(far, 101, far_grid)
        assert max(r.bound_residual for r in reports) < 0.02

    def test_residual_default(self, geom, grid):
        # sigma_t ~ 0.8 w here: weak fringes near extinction are hard to read
        assert spread(geom).sigma_t2 >= 25 * geom.d**2
        reports = duality_sweep(geom, 101, grid)
        strong = [r for r in reports if abs(r.overlap) >= 0.4]
        assert max(r.bound_residual for r in strong) < 0.02
        assert max(r.bound_residual for r in reports) < 0.025
        for r in reports:
            if r.no_fringes:
                assert r.bound_residual == pytest.approx(abs(r.overlap) ** 2, abs=1e-12)

    def test_theta_moves_fringes_not_visibility(self, far, far_grid):
        plain = duality_sweep(far, 5, far_grid)
        shifted = duality_sweep(far, 5, far_grid, theta=1.0)
        np.testing.assert_allclose([r.V for r in shifted], [r.V for r in plain], atol=1e-4)

    def test_needs_two_steps(self, geom):
        with pytest.raises(ValueError):
            duality_sweep(geom, 1)

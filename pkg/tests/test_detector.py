import cmath
import math

import hypothesis.strategies as st
import numpy as np
import pytest
from hypothesis import given, settings

from recoilslit.detector import (
    P,
    P1,
    P2,
    Q,
    DetectorState,
    TwoLevelObservable,
    distinguishability,
    eraser_basis,
    expectation,
    make_correlated_pair,
    overlap,
    random_coefficient_pairs,
    random_states,
    sum_uncertainty,
    variance,
)
from recoilslit.errors import NormalizationError

SQRT_HALF = 1.0 / math.sqrt(2.0)
SIGMA = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]]),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def matrix_moments(obs, s):
    """<A> and <A^2> - <A>^2 by explicit 2x2 matrix products."""
    A = obs.n_x * SIGMA["x"] + obs.n_y * SIGMA["y"] + obs.n_z * SIGMA["z"]
    v = s.as_array()
    mean = np.vdot(v, A @ v).real
    return mean, np.vdot(v, A @ A @ v).real - mean**2


bloch_angles = st.tuples(
    st.floats(0.0, math.pi), st.floats(0.0, 2 * math.pi), st.floats(0.0, 2 * math.pi)
)


def state_from_angles(theta, phi, gauge):
    g = cmath.exp(1j * gauge)
    return DetectorState(g * math.cos(theta / 2), g * math.sin(theta / 2) * cmath.exp(1j * phi))


class TestConstruction:
    def test_renormalizes_small_deficit(self):
        s = DetectorState(1.0 + 1e-10, 0.0)
        assert abs(abs(s.a_p1) ** 2 + abs(s.a_p2) ** 2 - 1.0) < 1e-12

    def test_rejects_large_deficit(self):
        with pytest.raises(NormalizationError) as exc:
            DetectorState(0.9, 0.0)
        assert exc.value.deficit == pytest.approx(0.19)

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            DetectorState(float("nan"), 1.0)

    def test_observable_needs_unit_vector(self):
        with pytest.raises(ValueError):
            TwoLevelObservable(1.0, 1.0, 0.0)

    def test_correlated_pair_rejects_unnormalized(self):
        with pytest.raises(NormalizationError):
            make_correlated_pair(1.0, 0.1)


class TestCorrelatedPair:
    def test_full_which_way(self):
        d1, d2 = make_correlated_pair(1.0, 0.0)
        assert d1 == P1 and d2 == P2
        assert overlap(d1, d2) == 0

    def test_no_which_way(self):
        d1, d2 = make_correlated_pair(SQRT_HALF, SQRT_HALF)
        q1, _ = eraser_basis()
        assert abs(overlap(d1, q1)) == pytest.approx(1.0, abs=1e-15)
        assert abs(overlap(d2, q1)) == pytest.approx(1.0, abs=1e-15)

    def test_partial_overlap_against_vdot(self):
        d1, d2 = make_correlated_pair(math.sqrt(0.8), math.sqrt(0.2))
        direct = np.vdot(d1.as_array(), d2.as_array())
        assert overlap(d1, d2) == pytest.approx(direct, abs=1e-15)
        assert direct == pytest.approx(0.8, abs=1e-15)
        assert distinguishability(d1, d2) == pytest.approx(0.6, abs=1e-15)

    def test_conjugated_swap(self):
        c1, c2 = 0.6 + 0.0j, 0.48 + 0.64j
        d1, d2 = make_correlated_pair(c1, c2)
        assert (d2.a_p1, d2.a_p2) == (c2.conjugate(), c1.conjugate())


class TestOverlapAndDistinguishability:
    def test_self_overlap(self):
        s = DetectorState(0.6, 0.8j)
        assert overlap(s, s) == pytest.approx(1.0, abs=1e-15)

    def test_orthogonal_identical(self):
        assert distinguishability(P1, P2) == 1.0
        assert distinguishability(P1, P1) == 0.0

    @given(bloch_angles, bloch_angles)
    def test_conjugate_symmetry(self, a, b):
        s, t = state_from_angles(*a), state_from_angles(*b)
        assert overlap(s, t) == pytest.approx(overlap(t, s).conjugate(), abs=1e-15)

    @given(bloch_angles, bloch_angles, st.floats(0, 2 * math.pi))
    def test_distinguishability_symmetric_and_phase_blind(self, a, b, phi):
        s, t = state_from_angles(*a), state_from_angles(*b)
        D = distinguishability(s, t)
        assert 0.0 <= D <= 1.0
        assert D == pytest.approx(distinguishability(t, s), abs=1e-12)
        assert D == pytest.approx(distinguishability(s.with_phase(phi), t), abs=1e-7)


class TestObservables:
    @pytest.mark.parametrize(
        "obs, state, expected",
        [
            (P, P1, 1.0),
            (P, DetectorState(SQRT_HALF, SQRT_HALF), 0.0),
            (Q, DetectorState(SQRT_HALF, SQRT_HALF), 1.0),
        ],
    )
    def test_expectation_examples(self, obs, state, expected):
        assert expectation(obs, state) == pytest.approx(expected, abs=1e-15)

    def test_variance_examples(self):
        d1, _ = make_correlated_pair(SQRT_HALF, SQRT_HALF)
        assert variance(P, d1) == pytest.approx(1.0, abs=1e-15)
        assert variance(P, P1) == 0.0
        d1, _ = make_correlated_pair(math.sqrt(0.8), math.sqrt(0.2))
        assert variance(P, d1) == pytest.approx(0.64, abs=1e-15)

    @settings(max_examples=200)
    @given(bloch_angles, st.tuples(st.floats(0, math.pi), st.floats(0, 2 * math.pi)))
    def test_against_matrix_oracle(self, angles, direction):
        s = state_from_angles(*angles)
        t, p = direction
        obs = TwoLevelObservable(math.sin(t) * math.cos(p), math.sin(t) * math.sin(p), math.cos(t))
        mean, var = matrix_moments(obs, s)
        assert expectation(obs, s) == pytest.approx(mean, abs=1e-12)
        assert variance(obs, s) == pytest.approx(var, abs=1e-12)

    @pytest.mark.parametrize(
        "state, expected",
        [
            (P1, (0.0, 1.0, 1.0)),
            (DetectorState(SQRT_HALF, SQRT_HALF), (1.0, 0.0, 1.0)),
            (DetectorState(SQRT_HALF, 1j * SQRT_HALF), (1.0, 1.0, 2.0)),
        ],
    )
    def test_sum_uncertainty_examples(self, state, expected):
        np.testing.assert_allclose(sum_uncertainty(state), expected, atol=1e-15)

    def test_eraser_basis(self):
        q1, q2 = eraser_basis()
        assert overlap(q1, q2) == 0
        assert overlap(q1, P1) == pytest.approx(SQRT_HALF)
        assert expectation(Q, q2) == pytest.approx(-1.0)


def test_distinguishability_variance_identity(rng):
    for c1, c2 in random_coefficient_pairs(rng, 10_000):
        d1, d2 = make_correlated_pair(c1, c2)
        dp2 = variance(P, d1)
        assert distinguishability(d1, d2) ** 2 + dp2 == pytest.approx(1.0, abs=1e-12)
        assert dp2 == pytest.approx(4 * abs(c1) ** 2 * abs(c2) ** 2, abs=1e-12)
        assert dp2 == pytest.approx(variance(P, d2), abs=1e-12)


def test_sum_uncertainty_over_random_states(rng):
    totals = np.array([sum_uncertainty(s)[2] for s in random_states(rng, 10_000)])
    assert totals.min() >= 1.0 - 1e-12
    real_totals = [
        sum_uncertainty(DetectorState(c1, c2))[2]
        for c1, c2 in random_coefficient_pairs(rng, 10_000, real=True)
    ]
    np.testing.assert_allclose(real_totals, 1.0, atol=1e-12)


def test_bloch_sampling_is_uniform(rng):
    # uniform on the sphere means <n_z> ~ 0 and <n_z^2> ~ 1/3
    nz = np.array([expectation(P, s) for s in random_states(rng, 20_000)])
    assert abs(nz.mean()) < 0.02
    assert nz.var() == pytest.approx(1.0 / 3.0, abs=0.02)

"""Auxiliary vector and scalar inequalities.

Hand-evaluated examples, error handling, and hypothesis-driven property
checks that every slack stays above -1e-10.
"""

import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from semihilbert.core import DimensionMismatch, InvalidParam, NotAPositive, NotUnitVector, a_adjoint, validate_psd
from semihilbert.fuzz import random_ba_operator, random_weight
from semihilbert.lemmas import (
    LEMMA_IDS,
    SLACK_TOL,
    check_kkk,
    check_kz,
    check_kz_implied,
    check_kzlaa,
    check_l,
    check_ll,
    check_lm310,
    check_power,
    check_scalar_interp,
    kzlaa_delta,
    run_lemma,
    run_lemma_suite,
)

from conftest import D12, I2

E1 = np.array([1.0, 0.0])
E2 = np.array([0.0, 1.0])


class TestExamples:
    def test_kz_equality(self):
        assert check_kz(I2, E1, E1, E1, 2.0) == pytest.approx(0.0, abs=1e-14)

    def test_kz_orthogonal(self):
        b = np.array([0.3, -2.0])
        # LHS vanishes, so the slack is the whole right side
        rhs = 0.5 * (1.0 * np.linalg.norm(E2) * np.linalg.norm(b) + abs(np.vdot(b, E2)))
        assert check_kz(I2, E2, b, E1, 2.0) == pytest.approx(rhs)

    def test_kzlaa_zero_a(self):
        assert kzlaa_delta(I2, np.zeros(2), E1, E1) == 0.0
        assert check_kzlaa(I2, np.zeros(2), E1, E1) >= 0.0

    def test_kzlaa_collinear(self):
        assert kzlaa_delta(I2, E1, E1, E1) == pytest.approx(0.0, abs=1e-14)
        assert check_kzlaa(I2, E1, E1, E1) == pytest.approx(0.0, abs=1e-14)

    def test_ll(self):
        z = np.array([1.0, 1j]) / math.sqrt(2)
        assert check_ll(I2, I2, z, z) == pytest.approx(0.0, abs=1e-14)
        assert check_ll(D12, np.zeros((2, 2)), E1, E1) == pytest.approx(0.0, abs=1e-14)

    def test_power(self):
        z = np.array([1.0, 1.0]) / math.sqrt(2)
        S = np.diag([1.0, 4.0])
        assert check_power(I2, S, z, 2) == pytest.approx(2.25, abs=1e-12)
        assert check_power(I2, S, z, 1) == pytest.approx(0.0, abs=1e-12)

    def test_scalar_interp_equal(self):
        for alpha in (0.0, 0.3, 1.0):
            lo, hi = check_scalar_interp(2.5, 2.5, alpha, 3.0)
            assert lo == pytest.approx(0.0, abs=1e-14)
            assert hi == pytest.approx(0.0, abs=1e-14)

    def test_l_equal_vectors(self, rng):
        x = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        u = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        assert check_l(I2, x, u, u) >= 0.0

    def test_kkk_and_lm310_simple(self):
        assert check_kkk(I2, E1, E1) == pytest.approx(0.0, abs=1e-14)
        assert check_lm310(I2, E1, E1, E2) >= 0.0


class TestErrors:
    def test_non_unit(self):
        with pytest.raises(NotUnitVector):
            check_kz(I2, E1, E1, np.zeros(2))
        with pytest.raises(NotUnitVector):
            check_ll(I2, I2, np.zeros(2), E1)

    def test_zero_alpha(self):
        with pytest.raises(InvalidParam):
            check_kz(I2, E1, E1, E1, 0)

    def test_not_a_positive(self):
        with pytest.raises(NotAPositive):
            check_power(I2, np.diag([1.0, -1.0]), E1, 2)
        with pytest.raises(NotAPositive):
            check_power(I2, np.array([[0.0, 1.0], [0.0, 0.0]]), E1, 2)

    def test_power_n(self):
        with pytest.raises(InvalidParam):
            check_power(I2, I2, E1, 0)

    def test_scalar_domain(self):
        with pytest.raises(InvalidParam):
            check_scalar_interp(0.0, 1.0, 0.5, 2.0)
        with pytest.raises(InvalidParam):
            check_scalar_interp(1.0, 1.0, 1.5, 2.0)
        with pytest.raises(InvalidParam):
            check_scalar_interp(1.0, 1.0, 0.5, 0.5)

    def test_kkk_zero_x(self):
        with pytest.raises(InvalidParam):
            check_kkk(D12, np.zeros(2), E1)

    def test_dimension(self):
        with pytest.raises(DimensionMismatch):
            check_l(I2, E1, E1, np.ones(3))

    def test_unknown_lemma(self):
        with pytest.raises(InvalidParam):
            run_lemma("nope", 10)


class TestSuite:
    def test_small_suite(self):
        results = run_lemma_suite(400, seed=5)
        assert [r.lemma_id for r in results] == list(LEMMA_IDS)
        for r in results:
            assert r.ok, r.to_dict()
            assert r.samples >= 400
            assert r.min_slack >= -SLACK_TOL

    def test_kz_implied(self):
        r = check_kz_implied(400, seed=5)
        assert r.ok and r.min_slack >= -SLACK_TOL

    def test_seeded(self):
        a = run_lemma("KKK", 200, seed=3)
        b = run_lemma("KKK", 200, seed=3)
        assert a.to_dict() == b.to_dict()


# ---------------------------------------------------------------------------
# hypothesis properties

_seeds = st.integers(0, 2**32 - 1)


def _setup(seed, n, deficit):
    rng = np.random.default_rng(seed)
    A = validate_psd(random_weight(rng, n, min(deficit, n - 1)))
    return rng, A


def _vec(rng, n):
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)


def _a_unit(A, v):
    nrm = math.sqrt(max(np.vdot(v, A.matrix @ v).real, 0.0))
    assume(nrm > 1e-6)
    return v / nrm


_common = dict(seed=_seeds, n=st.integers(2, 5), deficit=st.integers(0, 2))


@settings(max_examples=60, deadline=None)
@given(
    **_common,
    alpha_re=st.floats(-4, 4),
    alpha_im=st.floats(-4, 4),
)
def test_kz_property(seed, n, deficit, alpha_re, alpha_im):
    alpha = complex(alpha_re, alpha_im)
    assume(abs(alpha) > 1e-3)
    rng, A = _setup(seed, n, deficit)
    c = _a_unit(A, _vec(rng, n))
    assert check_kz(A, _vec(rng, n), _vec(rng, n), c, alpha) >= -SLACK_TOL


@settings(max_examples=60, deadline=None)
@given(**_common)
def test_kzlaa_property(seed, n, deficit):
    rng, A = _setup(seed, n, deficit)
    a, b = _vec(rng, n), _vec(rng, n)
    c = _a_unit(A, _vec(rng, n))
    assert check_kzlaa(A, a, b, c) >= -SLACK_TOL
    gap = check_kz(A, a, b, c, 2.0) - check_kzlaa(A, a, b, c)
    np.testing.assert_allclose(gap, kzlaa_delta(A, a, b, c), atol=1e-9)


@settings(max_examples=60, deadline=None)
@given(**_common)
def test_ll_property(seed, n, deficit):
    rng, A = _setup(seed, n, deficit)
    S = random_ba_operator(rng, A)
    x, z = _a_unit(A, _vec(rng, n)), _a_unit(A, _vec(rng, n))
    assert check_ll(A, S, x, z) >= -SLACK_TOL


@settings(max_examples=60, deadline=None)
@given(**_common, power=st.integers(1, 4))
def test_power_property(seed, n, deficit, power):
    rng, A = _setup(seed, n, deficit)
    S0 = random_ba_operator(rng, A)
    S = a_adjoint(A, S0) @ S0
    z = _a_unit(A, _vec(rng, n))
    assert check_power(A, S, z, power) >= -SLACK_TOL * max(1.0, np.linalg.norm(S, 2) ** power)


@settings(max_examples=60, deadline=None)
@given(**_common)
def test_kkk_l_lm310_property(seed, n, deficit):
    rng, A = _setup(seed, n, deficit)
    x = _a_unit(A, _vec(rng, n))
    u, v, z = _vec(rng, n), _vec(rng, n), _vec(rng, n)
    assert check_kkk(A, x, z) >= -SLACK_TOL
    assert check_l(A, x, u, v) >= -SLACK_TOL
    assert check_lm310(A, x, u, v) >= -SLACK_TOL


@settings(max_examples=200, deadline=None)
@given(
    a=st.floats(1e-3, 1e3),
    c=st.floats(1e-3, 1e3),
    alpha=st.floats(0, 1),
    r=st.floats(1, 8),
)
def test_scalar_interp_property(a, c, alpha, r):
    lo, hi = check_scalar_interp(a, c, alpha, r)
    scale = max(a, c) * 1e-12
    assert lo >= -scale
    assert hi >= -scale

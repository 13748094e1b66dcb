"""Scalar quantities: seminorm, numerical radius, Crawford number, minimum
modulus, Davis-Wielandt radius and the refinement infima.

Closed-form values are checked directly.  Random pairs are checked against
dense sampling of the unit A-sphere in the original coordinates, which
shares no code with the reduced-space optimizers.
"""

import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from semihilbert.core import InvalidParam, ToleranceFailure, a_adjoint, reduce
from semihilbert.radii import (
    DEFAULT_CONFIG,
    OptimizerConfig,
    a_crawford,
    a_dw_radius,
    a_min_modulus,
    a_numerical_radius,
    a_op_norm,
    crawford_number,
    delta_inf,
    delta_values,
    dw_dense_grid,
    dw_multistart,
    dw_objective,
    kkk_defect,
    mu_eta,
    numerical_radius,
    residual_inf,
)
from semihilbert.radii import _check_nonnegative

from conftest import D10, D12, I2, ONES, PAIR_CASES, SHIFT, a_sphere, make_pair, sampled_terms

INTRO_S = np.array([[2.0, 2.0], [0.0, 0.0]])


def dw_f(A, S, z):
    inner, norm2 = sampled_terms(A, S, np.atleast_2d(z))
    return float(np.abs(inner[0]) ** 2 + norm2[0] ** 2)


class TestClosedForm:
    def test_op_norm(self):
        assert a_op_norm(I2, D12) == pytest.approx(2.0, abs=1e-12)
        assert a_op_norm(D12, D12) == pytest.approx(2.0, abs=1e-12)
        assert a_op_norm(ONES, INTRO_S) == pytest.approx(2.0, abs=1e-12)

    def test_numerical_radius(self):
        H = np.array([[1.0, 2.0], [2.0, -3.0]])
        assert a_numerical_radius(I2, H) == pytest.approx(max(abs(np.linalg.eigvalsh(H))), abs=1e-12)
        assert a_numerical_radius(D12, D12) == pytest.approx(2.0, abs=1e-12)
        assert a_numerical_radius(D12, SHIFT) == pytest.approx(math.sqrt(2) / 4, abs=1e-10)

    def test_crawford(self):
        assert a_crawford(D12, D12) == pytest.approx(1.0, abs=1e-12)
        assert a_crawford(D12, D10) == pytest.approx(0.0, abs=1e-12)
        assert a_crawford(I2, I2) == pytest.approx(1.0, abs=1e-12)

    def test_crawford_origin_inside(self):
        # numerical range of the shift is a disc centred at 0
        assert crawford_number(SHIFT) == pytest.approx(0.0, abs=1e-12)
        # a normal matrix with eigenvalues 1 and i: segment at distance 1/sqrt(2)
        assert crawford_number(np.diag([1.0, 1j])) == pytest.approx(1 / math.sqrt(2), abs=1e-10)

    def test_min_modulus(self):
        assert a_min_modulus(D12, D12) == pytest.approx(1.0, abs=1e-12)
        assert a_min_modulus(I2, np.zeros((2, 2))) == 0.0
        assert a_min_modulus(D12, SHIFT) == pytest.approx(0.0, abs=1e-12)

    def test_one_by_one(self):
        assert numerical_radius(np.array([[3 - 4j]])) == pytest.approx(5.0)
        assert crawford_number(np.array([[3 - 4j]])) == pytest.approx(5.0)

    @pytest.mark.parametrize(
        "A,S,expected",
        [
            (I2, I2, math.sqrt(2)),
            (D12, D12, math.sqrt(20)),
            (D12, D10, math.sqrt(2)),
            (D12, SHIFT, 0.5),
        ],
    )
    def test_dw(self, A, S, expected):
        res = a_dw_radius(A, S)
        np.testing.assert_allclose(res.value, expected, atol=1e-6)
        assert res.converged
        f_grid, _ = dw_dense_grid(reduce(A, S).reduced)
        np.testing.assert_allclose(math.sqrt(f_grid), expected, atol=1e-6)


class TestNumericalRange:
    """omega and c against dense sphere sampling in the original space."""

    @pytest.mark.parametrize("seed,n,k", PAIR_CASES)
    def test_sampling_brackets(self, seed, n, k):
        A, S = make_pair(seed, n, k)
        rng = np.random.default_rng(seed)
        Z = a_sphere(A, 4000, rng)
        inner, norm2 = sampled_terms(A, S, Z)
        w = a_numerical_radius(A, S)
        c = a_crawford(A, S)
        nrm = a_op_norm(A, S)
        m = a_min_modulus(A, S)
        assert np.max(np.abs(inner)) <= w + 1e-9
        assert c <= np.min(np.abs(inner)) + 1e-9
        assert np.max(np.sqrt(norm2)) <= nrm + 1e-9
        assert m <= np.min(np.sqrt(norm2)) + 1e-9
        # the maximum over samples gets close for these small dimensions
        assert np.max(np.abs(inner)) >= 0.9 * w

    @pytest.mark.parametrize("seed,n,k", PAIR_CASES)
    def test_classical_inequalities(self, seed, n, k):
        A, S = make_pair(seed, n, k)
        w, nrm = a_numerical_radius(A, S), a_op_norm(A, S)
        assert 0.5 * nrm <= w + 1e-9
        assert w <= nrm + 1e-9
        Sa = a_adjoint(A, S)
        np.testing.assert_allclose(a_numerical_radius(A, Sa), w, atol=1e-8)
        for p in (2, 3):
            assert a_numerical_radius(A, np.linalg.matrix_power(S, p)) <= w**p + 1e-8

    @pytest.mark.parametrize("seed,n,k", PAIR_CASES)
    def test_submultiplicative(self, seed, n, k):
        from semihilbert.core import validate_psd
        from semihilbert.fuzz import random_ba_operator

        A, S = make_pair(seed, n, k)
        R = random_ba_operator(np.random.default_rng(seed + 50), validate_psd(A))
        assert a_op_norm(A, S @ R) <= a_op_norm(A, S) * a_op_norm(A, R) + 1e-9

    @pytest.mark.parametrize("seed,n,k", PAIR_CASES)
    def test_selfadjoint_case(self, seed, n, k):
        A, S0 = make_pair(seed, n, k)
        S = 0.5 * (S0 + a_adjoint(A, S0))
        nrm = a_op_norm(A, S)
        np.testing.assert_allclose(a_numerical_radius(A, S), nrm, atol=1e-8)
        np.testing.assert_allclose(a_dw_radius(A, S).value, math.sqrt(nrm**2 + nrm**4), atol=1e-6)

    def test_hermitian_fast_path_matches_scan(self, rng):
        H = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        H = H + H.conj().T
        # a tiny non-Hermitian perturbation forces the angle scan
        E = 1e-9j * np.eye(4)
        np.testing.assert_allclose(numerical_radius(H), numerical_radius(H + E), atol=1e-8)


class TestDavisWielandt:
    @pytest.mark.parametrize("seed,n,k", PAIR_CASES)
    def test_result_invariants(self, seed, n, k):
        A, S = make_pair(seed, n, k)
        res = a_dw_radius(A, S)
        w, nrm = a_numerical_radius(A, S), a_op_norm(A, S)
        assert max(w, nrm**2) <= res.value + 1e-6
        assert res.value <= res.upper_cap + 1e-9
        np.testing.assert_allclose(res.upper_cap, math.sqrt(w**2 + nrm**4), rtol=1e-12)
        z = res.witness
        np.testing.assert_allclose(np.vdot(z, np.asarray(A) @ z).real, 1.0, atol=1e-10)
        np.testing.assert_allclose(dw_f(A, S, z), res.value**2, atol=1e-10 * max(1.0, res.value**2))
        assert res.restarts_used >= 1

    @pytest.mark.parametrize("seed,n,k", PAIR_CASES)
    def test_dominates_sampling(self, seed, n, k):
        A, S = make_pair(seed, n, k)
        Z = a_sphere(A, 4000, np.random.default_rng(seed + 1))
        inner, norm2 = sampled_terms(A, S, Z)
        best = float(np.max(np.abs(inner) ** 2 + norm2**2))
        assert math.sqrt(best) <= a_dw_radius(A, S).value + 1e-9

    def test_dw_objective(self):
        T = np.diag([1.0, 2.0]).astype(complex)
        Y = np.array([[1.0, 0.0], [0.0, 1.0]], dtype=complex)
        np.testing.assert_allclose(dw_objective(T, Y), [2.0, 20.0])

    def test_deterministic(self):
        A, S = make_pair(9, 4, 1)
        T = reduce(A, S).reduced
        f1, y1, _, _ = dw_multistart(T, DEFAULT_CONFIG)
        f2, y2, _, _ = dw_multistart(T, DEFAULT_CONFIG)
        assert f1 == f2
        np.testing.assert_array_equal(y1, y2)

    def test_zero(self):
        res = a_dw_radius(I2, np.zeros((2, 2)))
        assert res.value == 0.0 and res.upper_cap == 0.0

    def test_to_dict(self):
        d = a_dw_radius(I2, I2).to_dict()
        assert set(d) == {"value", "upper_cap", "converged", "restarts_used"}
        json.dumps(d)


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), r=st.integers(1, 2))
def test_multistart_matches_grid_property(seed, r):
    rng = np.random.default_rng(seed)
    T = rng.standard_normal((r, r)) + 1j * rng.standard_normal((r, r))
    f_ms, _, _, _ = dw_multistart(T, DEFAULT_CONFIG)
    f_grid, _ = dw_dense_grid(T) if r == 2 else (float(abs(T[0, 0]) ** 2 + abs(T[0, 0]) ** 4), None)
    np.testing.assert_allclose(math.sqrt(f_ms), math.sqrt(f_grid), atol=1e-6)


class TestRefinementInfima:
    def test_residual_inf(self):
        e1, e2 = np.array([1.0, 0.0]), np.array([0.0, 1.0])
        assert residual_inf(I2, e1 + 2 * e2, e1 + 2 * e2) == pytest.approx(0.0, abs=1e-12)
        assert residual_inf(I2, e1, np.zeros(2)) == pytest.approx(1.0)
        assert residual_inf(I2, e1, e2) == pytest.approx(1.0)

    def test_residual_inf_against_scan(self, rng):
        u = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        v = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        lam = np.linspace(-3, 3, 301)[:, None] + 1j * np.linspace(-3, 3, 301)[None, :]
        U = u[None, None, :] - lam[..., None] * v[None, None, :]
        vals = np.sqrt(np.einsum("abi,ij,abj->ab", U.conj(), D12, U).real)
        got = residual_inf(D12, u, v)
        assert got <= vals.min() + 1e-12
        assert vals.min() - got < 5e-2

    def test_mu_eta_examples(self):
        np.testing.assert_allclose(mu_eta(D12, I2), (0.0, 0.0), atol=1e-12)
        np.testing.assert_allclose(mu_eta(ONES, INTRO_S), (0.0, 0.0), atol=1e-12)
        mu, eta = mu_eta(D12, SHIFT)
        assert mu == pytest.approx(0.0, abs=1e-12)
        assert eta == pytest.approx(0.0, abs=1e-12)

    def test_kkk_defect_zero_rows(self):
        T = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
        np.testing.assert_allclose(kkk_defect(T, np.array([[1.0, 0.0]])), [0.0])

    def test_delta_examples(self):
        assert delta_inf(I2, np.zeros((2, 2))) == 0.0
        assert delta_inf(I2, I2) == pytest.approx(0.0, abs=1e-12)
        val = delta_inf(D12, SHIFT)
        assert val >= 0.0

    def test_delta_shift_against_grid(self):
        T = reduce(D12, SHIFT).reduced
        t = np.linspace(0, np.pi / 2, 201)
        phi = np.linspace(0, 2 * np.pi, 400, endpoint=False)
        tt, pp = np.meshgrid(t, phi, indexing="ij")
        Y = np.stack([np.cos(tt).ravel(), (np.sin(tt) * np.exp(1j * pp)).ravel()], axis=1)
        delta, _ = delta_values(T, Y)
        np.testing.assert_allclose(delta_inf(D12, SHIFT), delta.min(), atol=1e-6)

    @pytest.mark.parametrize("seed,n,k", PAIR_CASES)
    def test_nonnegative(self, seed, n, k):
        A, S = make_pair(seed, n, k)
        mu, eta = mu_eta(A, S)
        assert mu >= 0.0 and eta >= 0.0
        assert delta_inf(A, S) >= 0.0

    def test_negative_sample_raises(self):
        with pytest.raises(ToleranceFailure):
            _check_nonnegative(np.array([0.0, -1.0]), 1.0, "test")


class TestConfig:
    def test_defaults(self):
        cfg = OptimizerConfig()
        assert (cfg.restarts, cfg.max_iters, cfg.theta_grid, cfg.alpha_grid) == (64, 500, 2048, 101)
        assert cfg.refine_tol == 1e-12 and cfg.seed == 0

    def test_escalated(self):
        assert OptimizerConfig(restarts=8).escalated(4).restarts == 32

    def test_json_round_trip(self, tmp_path):
        cfg = OptimizerConfig(restarts=7, seed=3)
        p = tmp_path / "cfg.json"
        p.write_text(json.dumps(cfg.to_dict()))
        assert OptimizerConfig.from_json(p) == cfg

    @pytest.mark.parametrize(
        "kwargs",
        [{"restarts": 0}, {"theta_grid": -1}, {"refine_tol": 0.0}, {"seed": -1}, {"seed": 2**64}],
    )
    def test_invalid(self, kwargs):
        with pytest.raises(InvalidParam):
            OptimizerConfig(**kwargs)

    def test_unknown_key(self):
        with pytest.raises(InvalidParam):
            OptimizerConfig.from_dict({"restart": 3})

    def test_seed_changes_nothing_on_closed_forms(self):
        for seed in (0, 1, 2**63):
            cfg = OptimizerConfig(seed=seed)
            np.testing.assert_allclose(a_dw_radius(D12, D12, cfg).value, math.sqrt(20), atol=1e-6)

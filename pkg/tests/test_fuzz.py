"""Random corpus generation, the fuzz driver and the JSON matrix format."""

import json

import numpy as np
import pytest

from semihilbert.core import DimensionMismatch, InvalidParam, admits_a_adjoint, validate_psd
from semihilbert.fuzz import (
    FuzzConfig,
    corpus,
    random_a_unitary,
    random_ba_operator,
    random_pair,
    random_weight,
    run_fuzz,
)
from semihilbert.jsonio import FormatError, dump_pair, load_matrices, load_pair, matrix_from_json, matrix_to_json
from semihilbert.radii import OptimizerConfig, a_dw_radius

FAST = OptimizerConfig(restarts=16)


class TestGenerators:
    @pytest.mark.parametrize("n,k", [(2, 0), (2, 1), (3, 1), (4, 2), (5, 0)])
    def test_weight_rank(self, n, k):
        A = validate_psd(random_weight(np.random.default_rng(n * 10 + k), n, k))
        assert A.rank == n - k

    def test_weight_deficit_range(self):
        with pytest.raises(InvalidParam):
            random_weight(np.random.default_rng(0), 3, 3)

    @pytest.mark.parametrize("seed", range(10))
    def test_operator_in_ba(self, seed):
        rng = np.random.default_rng(seed)
        A, S = random_pair(rng, 3, 1)
        assert admits_a_adjoint(A, S)
        # the operator is not merely block-diagonal on range and kernel
        W = validate_psd(A)
        assert np.linalg.norm(W.kernel_basis.conj().T @ S @ W.range_basis) > 1e-6

    def test_magnitude_scales(self):
        A = random_weight(np.random.default_rng(1), 3)
        W = validate_psd(A)
        S1 = random_ba_operator(np.random.default_rng(2), W, 1.0)
        S3 = random_ba_operator(np.random.default_rng(2), W, 3.0)
        np.testing.assert_allclose(S3, 3.0 * S1)

    @pytest.mark.parametrize("n,k", [(2, 0), (3, 1), (4, 1)])
    def test_a_unitary(self, n, k):
        from semihilbert.blocks import is_a_unitary

        rng = np.random.default_rng(7)
        W = validate_psd(random_weight(rng, n, k))
        V = random_a_unitary(rng, W)
        assert admits_a_adjoint(W, V)
        assert is_a_unitary(W, V)


class TestConfig:
    @pytest.mark.parametrize(
        "kwargs",
        [
            {"count": 0},
            {"dims": (1,)},
            {"rank_deficit": (-1,)},
            {"dims": (2,), "rank_deficit": (2,)},
            {"magnitude": 0.0},
            {"seed": -1},
            {"workers": 0},
        ],
    )
    def test_invalid(self, kwargs):
        with pytest.raises(InvalidParam):
            FuzzConfig(**kwargs)

    def test_corpus_cycles(self):
        items = list(corpus(FuzzConfig(seed=4, count=5, dims=(2, 3), rank_deficit=(0, 1))))
        assert [it.A.shape[0] for it in items] == [2, 2, 3, 3, 2]
        ranks = [validate_psd(it.A).rank for it in items]
        assert ranks == [2, 1, 3, 2, 2]
        assert len({it.pair_id for it in items}) == 5

    def test_item_independent_of_count(self):
        a = list(corpus(FuzzConfig(seed=9, count=3)))
        b = list(corpus(FuzzConfig(seed=9, count=6)))
        for x, y in zip(a, b):
            np.testing.assert_array_equal(x.A, y.A)
            np.testing.assert_array_equal(x.S, y.S)
            assert x.seed == y.seed

    def test_deficit_membership(self):
        for item in corpus(FuzzConfig(seed=2, count=12, dims=(3,), rank_deficit=(1,))):
            assert admits_a_adjoint(item.A, item.S)


class TestRun:
    def test_small_run(self):
        res = run_fuzz(FuzzConfig(seed=1, count=10, dims=(2,)), FAST)
        assert len(res.reports) == 10
        bad = {e.bound_id for _, _, e in res.violations}
        assert bad <= {"crawford"}
        s = res.summary()
        assert s["pairs"] == 10
        assert s["violations"] == len(res.violations)
        json.dumps(s)

    def test_csv_deterministic(self):
        cfg = FuzzConfig(seed=3, count=4, dims=(2, 3))
        assert run_fuzz(cfg, FAST).to_csv() == run_fuzz(cfg, FAST).to_csv()

    def test_workers_do_not_change_output(self):
        serial = run_fuzz(FuzzConfig(seed=3, count=4, dims=(2, 3)), FAST).to_csv()
        parallel = run_fuzz(FuzzConfig(seed=3, count=4, dims=(2, 3), workers=2), FAST).to_csv()
        assert serial == parallel

    def test_progress_callback(self):
        seen = []
        run_fuzz(FuzzConfig(seed=0, count=2, dims=(2,)), FAST, progress=lambda k, n: seen.append((k, n)))
        assert seen == [(1, 2), (2, 2)]

    def test_violation_details_replay(self):
        """Violation records carry enough to recompute the radius."""
        res = run_fuzz(FuzzConfig(seed=7, count=12, dims=(2, 3, 4), magnitude=2.0), FAST)
        details = res.summary()["violation_details"]
        # this corpus contains rank-one compressions where the stated Crawford form overshoots
        assert details
        for v in details:
            A, S = matrix_from_json(v["A"]), matrix_from_json(v["S"])
            cfg = OptimizerConfig(restarts=16, seed=v["optimizer_seed"])
            np.testing.assert_allclose(a_dw_radius(A, S, cfg).value, v["dw_lower"], rtol=1e-6)


class TestJson:
    def test_round_trip(self, tmp_path):
        rng = np.random.default_rng(0)
        A, S = random_pair(rng, 3, 1)
        p = tmp_path / "pair.json"
        dump_pair(p, A, S)
        A2, S2 = load_pair(p)
        np.testing.assert_array_equal(A2, A)
        np.testing.assert_array_equal(S2, S)

    def test_matrix_format(self):
        d = matrix_to_json(np.array([[1 + 2j]]))
        assert d == {"dim": 1, "entries": [[[1.0, 2.0]]]}

    @pytest.mark.parametrize(
        "obj",
        [
            [[1, 0]],
            {"entries": [[[1, 0], [0, 0]]]},
            {"entries": [[["x", 0]]]},
            {"entries": []},
            {"entries": [[[float("nan"), 0]]]},
        ],
    )
    def test_bad_matrix(self, obj):
        with pytest.raises(FormatError):
            matrix_from_json(obj)

    def test_declared_dim(self):
        with pytest.raises(DimensionMismatch):
            matrix_from_json({"dim": 3, "entries": [[[1, 0]]]})

    def test_missing_key_and_bad_json(self, tmp_path):
        p = tmp_path / "x.json"
        p.write_text(json.dumps({"A": matrix_to_json(np.eye(2))}))
        with pytest.raises(FormatError):
            load_matrices(p, ("A", "S"))
        p.write_text("{not json")
        with pytest.raises(FormatError):
            load_pair(p)

    def test_mixed_dims(self, tmp_path):
        p = tmp_path / "x.json"
        p.write_text(json.dumps({"A": matrix_to_json(np.eye(2)), "S": matrix_to_json(np.eye(3))}))
        with pytest.raises(DimensionMismatch):
            load_pair(p)

"""Seeded random weights, operators and corpora.

Weights are ``U diag(lambda) U^H`` with ``U`` the eigenvectors of a random
Hermitian matrix.  Operators are built in the (range, kernel) basis of the
weight as ``[[X, 0], [Y, Z]]`` so they map the kernel into itself and
always admit an A-adjoint.
"""

from __future__ import annotations

import csv
import io
import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace

import numpy as np

from .core import InvalidParam, admits_a_adjoint, as_weight, validate_psd

__all__ = [
    "FuzzConfig",
    "FuzzItem",
    "FuzzResult",
    "random_weight",
    "random_ba_operator",
    "random_pair",
    "random_a_unitary",
    "corpus",
    "run_fuzz",
    "item_seed",
]

EIGEN_FLOOR = 0.1


def _cnormal(rng, shape, magnitude=1.0):
    return magnitude * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def random_weight(rng, n: int, deficit: int = 0, magnitude: float = 1.0) -> np.ndarray:
    """Random PSD ``n x n`` weight of rank ``n - deficit``.

    Retained eigenvalues are floored at ``EIGEN_FLOOR`` times the largest so
    the compression stays well conditioned.
    """
    if not 0 <= deficit < n:
        raise InvalidParam("rank deficit must satisfy 0 <= deficit < n")
    G = _cnormal(rng, (n, n), magnitude)
    lam, U = np.linalg.eigh(0.5 * (G + G.conj().T))
    lam = np.abs(lam)
    lam = np.maximum(lam, EIGEN_FLOOR * lam.max())
    order = np.argsort(lam)
    lam[order[:deficit]] = 0.0
    A = (U * lam) @ U.conj().T
    return 0.5 * (A + A.conj().T)


def random_ba_operator(rng, A, magnitude: float = 1.0) -> np.ndarray:
    """Random operator with ``S(N(A)) ⊆ N(A)``."""
    A = as_weight(A)
    n, r = A.dim, A.rank
    Q = np.hstack([A.range_basis, A.kernel_basis])
    block = np.zeros((n, n), dtype=complex)
    block[:, :r] = _cnormal(rng, (n, r), magnitude)
    block[r:, r:] = _cnormal(rng, (n - r, n - r), magnitude)
    return Q @ block @ Q.conj().T


def random_pair(rng, n: int, deficit: int = 0, magnitude: float = 1.0):
    """``(A, S)`` with ``A`` a raw weight array and ``S`` in B_A."""
    A = random_weight(rng, n, deficit, magnitude)
    S = random_ba_operator(rng, validate_psd(A), magnitude)
    return A, S


def random_a_unitary(rng, A) -> np.ndarray:
    """Random A-unitary ``A^{+1/2} V U V^H A^{1/2} + K K^H`` (``U`` Haar-like unitary)."""
    A = as_weight(A)
    r = A.rank
    Z = _cnormal(rng, (r, r))
    Qr, R = np.linalg.qr(Z)
    Qr = Qr * (np.diag(R) / np.abs(np.diag(R)))
    V, K = A.range_basis, A.kernel_basis
    return A.pinv_sqrt @ V @ Qr @ V.conj().T @ A.sqrt + K @ K.conj().T


@dataclass(frozen=True)
class FuzzConfig:
    seed: int = 0
    count: int = 100
    dims: tuple = (2, 3, 4)
    rank_deficit: tuple = (0, 1)
    magnitude: float = 1.0
    workers: int = 1

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        object.__setattr__(self, "rank_deficit", tuple(int(k) for k in self.rank_deficit))
        if self.count < 1:
            raise InvalidParam("count must be at least 1")
        if not self.dims or min(self.dims) < 2:
            raise InvalidParam("dims must be at least 2")
        if not self.rank_deficit or min(self.rank_deficit) < 0:
            raise InvalidParam("rank deficits must be nonnegative")
        if max(self.rank_deficit) >= min(self.dims):
            raise InvalidParam("every rank deficit must be smaller than every dimension")
        if not self.magnitude > 0:
            raise InvalidParam("magnitude must be positive")
        if self.seed < 0 or self.seed >= 2**64:
            raise InvalidParam("seed must be an unsigned 64-bit integer")
        if self.workers < 1:
            raise InvalidParam("workers must be positive")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["dims"] = list(self.dims)
        d["rank_deficit"] = list(self.rank_deficit)
        return d


@dataclass(frozen=True, eq=False)
class FuzzItem:
    index: int
    pair_id: str
    A: np.ndarray
    S: np.ndarray
    seed: int


def item_seed(seed: int, index: int) -> np.random.SeedSequence:
    return np.random.SeedSequence([seed, index])


def corpus(fcfg: FuzzConfig):
    """Yield the ``count`` items of a corpus; item ``i`` depends only on ``(seed, i)``."""
    combos = list(itertools.product(fcfg.dims, fcfg.rank_deficit))
    for i in range(fcfg.count):
        n, k = combos[i % len(combos)]
        ss = item_seed(fcfg.seed, i)
        rng = np.random.default_rng(ss)
        A, S = random_pair(rng, n, k, fcfg.magnitude)
        opt_seed = int(ss.generate_state(1, np.uint64)[0])
        yield FuzzItem(i, f"{fcfg.seed}-{i}-n{n}-k{k}", A, S, opt_seed)


@dataclass
class FuzzResult:
    config: FuzzConfig
    reports: list = field(default_factory=list)
    items: list = field(default_factory=list)

    @property
    def violations(self) -> list:
        out = []
        for item, rep in zip(self.items, self.reports):
            for e in rep.violations:
                out.append((item, rep, e))
        return out

    def to_csv(self) -> str:
        from .bounds import REPORT_COLUMNS

        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(REPORT_COLUMNS)
        for rep in self.reports:
            w.writerows(rep.csv_rows())
        return buf.getvalue()

    def summary(self) -> dict:
        from .jsonio import matrix_to_json

        viol = []
        for item, rep, e in self.violations:
            viol.append(
                {
                    "pair_id": item.pair_id,
                    "bound_id": e.bound_id,
                    "kind": e.kind,
                    "value": e.value,
                    "dw_lower": rep.dw.value,
                    "A": matrix_to_json(item.A),
                    "S": matrix_to_json(item.S),
                    "optimizer_seed": item.seed,
                }
            )
        by_bound: dict = {}
        for _, _, e in self.violations:
            by_bound[e.bound_id] = by_bound.get(e.bound_id, 0) + 1
        return {
            "config": self.config.to_dict(),
            "pairs": len(self.reports),
            "entries": sum(len(r.entries) for r in self.reports),
            "violations": len(viol),
            "violations_by_bound": dict(sorted(by_bound.items())),
            "escalated_pairs": sum(1 for r in self.reports if r.escalated),
            "nonconverged_pairs": sum(1 for r in self.reports if not r.dw.converged),
            "violation_details": viol,
        }


def _report_item(args):
    from .bounds import bound_report

    item, ocfg = args
    cfg = replace(ocfg, seed=item.seed)
    return bound_report(item.A, item.S, cfg, pair_id=item.pair_id)


def run_fuzz(fcfg: FuzzConfig, ocfg=None, progress=None) -> FuzzResult:
    """Bound reports for every corpus item, in item order.

    Each item's optimizer seed is derived from ``(fcfg.seed, index)``, so
    results do not depend on the number of workers.
    """
    from .radii import DEFAULT_CONFIG

    ocfg = DEFAULT_CONFIG if ocfg is None else ocfg
    items = list(corpus(fcfg))
    for item in items:
        if not admits_a_adjoint(item.A, item.S):  # pragma: no cover - construction guarantees it
            raise AssertionError(f"generator produced an operator outside B_A ({item.pair_id})")
    jobs = [(item, ocfg) for item in items]
    result = FuzzResult(config=fcfg, items=items)
    if fcfg.workers > 1:
        with ProcessPoolExecutor(max_workers=fcfg.workers) as pool:
            for k, rep in enumerate(pool.map(_report_item, jobs, chunksize=4)):
                result.reports.append(rep)
                if progress:
                    progress(k + 1, len(jobs))
    else:
        for k, job in enumerate(jobs):
            result.reports.append(_report_item(job))
            if progress:
                progress(k + 1, len(jobs))
    return result


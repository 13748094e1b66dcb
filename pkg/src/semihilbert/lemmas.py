"""Numerical slack checks for the auxiliary inequalities.

Each ``check_*`` function returns ``RHS - LHS`` (nonnegative when the
inequality holds) for one sample.  The ``_slack_*`` helpers do the same
row-wise on batches and back the seeded suite in :func:`run_lemma_suite`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .core import (
    DimensionMismatch,
    InvalidParam,
    NotAPositive,
    NotUnitVector,
    a_adjoint,
    as_operator,
    as_weight,
    validate_psd,
)
from .fuzz import random_ba_operator, random_weight

__all__ = [
    "LemmaCheckResult",
    "LEMMA_IDS",
    "SLACK_TOL",
    "check_kz",
    "check_kzlaa",
    "check_ll",
    "check_power",
    "check_kkk",
    "check_scalar_interp",
    "check_l",
    "check_lm310",
    "kzlaa_delta",
    "run_lemma",
    "run_lemma_suite",
    "check_kz_implied",
]

SLACK_TOL = 1e-10
NORM_FLOOR = 1e-12
LEMMA_IDS = ("KZ", "KZLAA1", "LL", "L1.2", "KKK", "L11", "L", "lm310")


@dataclass(frozen=True)
class LemmaCheckResult:
    lemma_id: str
    samples: int
    min_slack: float
    violations: int

    @property
    def ok(self) -> bool:
        return self.violations == 0

    def to_dict(self) -> dict:
        return {
            "lemma_id": self.lemma_id,
            "samples": self.samples,
            "min_slack": self.min_slack,
            "violations": self.violations,
        }


# ---------------------------------------------------------------------------
# batched primitives (rows are vectors)


def _inner(A, X, Z):
    """Row-wise ``<x, z>_A = z^H A x``."""
    return np.einsum("ij,ij->i", Z.conj(), X @ A.T)


def _norm2(A, X):
    return np.maximum(_inner(A, X, X).real, 0.0)


def _resid(A, U, V):
    """Row-wise ``inf_lambda ||u - lambda v||_A``."""
    nu2, nv2 = _norm2(A, U), _norm2(A, V)
    cross = np.abs(_inner(A, U, V)) ** 2
    safe = np.where(nv2 > 0, nv2, 1.0)
    return np.where(nv2 > 0, np.sqrt(np.maximum(0.0, nu2 - cross / safe)), np.sqrt(nu2))


def _slack_kz(A, a, b, c, alpha):
    lhs = np.abs(_inner(A, a, c) * _inner(A, c, b))
    coef = max(1.0, abs(alpha - 1)) / abs(alpha)
    rhs = coef * np.sqrt(_norm2(A, a) * _norm2(A, b)) + np.abs(_inner(A, a, b)) / abs(alpha)
    return rhs - lhs


def _delta(A, a, b, c):
    na, nb = np.sqrt(_norm2(A, a)), np.sqrt(_norm2(A, b))
    live = na * nb > 0
    bracket = np.abs(_inner(A, a, c)) * _resid(A, c, b) - 0.5 * _resid(A, a, b)
    ratio = np.where(live, nb / np.where(live, na, 1.0), 0.0)
    return np.where(live, ratio * bracket**2, 0.0)


def _slack_kzlaa(A, a, b, c):
    lhs = np.abs(_inner(A, a, c) * _inner(A, c, b))
    rhs = 0.5 * (np.sqrt(_norm2(A, a) * _norm2(A, b)) + np.abs(_inner(A, a, b))) - _delta(A, a, b, c)
    return rhs - lhs


def _slack_ll(A, S, Sa, x, z):
    lhs = np.abs(_inner(A, x @ S.T, z)) ** 2
    sx2 = _norm2(A, x @ S.T)  # <S#S x, x>_A
    saz2 = _norm2(A, z @ Sa.T)  # <SS# z, z>_A
    return np.sqrt(sx2) * np.sqrt(saz2) - lhs


def _slack_power(A, S, z, n):
    Sn = np.linalg.matrix_power(S, n)
    lhs = _inner(A, z @ S.T, z).real ** n
    rhs = _inner(A, z @ Sn.T, z).real
    return rhs - lhs


def _slack_kkk(A, x, z):
    nx = np.sqrt(_norm2(A, x))
    nz = np.sqrt(_norm2(A, z))
    g = _resid(A, x, z) ** 2
    return nz * (nx - g / (2.0 * nx)) - np.abs(_inner(A, x, z))


def _slack_interp(a, c, alpha, r):
    mid = alpha * a + (1 - alpha) * c
    left = a**alpha * c ** (1 - alpha)
    right = (alpha * a**r + (1 - alpha) * c**r) ** (1.0 / r)
    return mid - left, right - mid


def _slack_l(A, x, u, v):
    lhs = np.abs(_inner(A, x, v)) ** 2 + np.abs(_inner(A, x, u)) ** 2
    rhs = _norm2(A, x) * (np.maximum(_norm2(A, v), _norm2(A, u)) + np.abs(_inner(A, v, u)))
    return rhs - lhs


def _slack_lm310(A, x, u, v):
    lhs = np.abs(_inner(A, x, u)) ** 2 + np.abs(_inner(A, x, v)) ** 2
    root = np.sqrt(
        np.abs(_inner(A, u, u)) ** 2 + 2 * np.abs(_inner(A, u, v)) ** 2 + np.abs(_inner(A, v, v)) ** 2
    )
    return _norm2(A, x) * root - lhs


# ---------------------------------------------------------------------------
# single-sample public checks


def _vecs(A, *vs):
    out = []
    for v in vs:
        v = np.asarray(v, dtype=complex)
        if v.shape != (A.dim,):
            raise DimensionMismatch(f"vector shape {v.shape} does not match weight dim {A.dim}")
        out.append(v[None, :])
    return out


def _unit(A, v, name):
    n = float(np.sqrt(_norm2(A.matrix, v)[0]))
    if n < NORM_FLOOR:
        raise NotUnitVector(f"{name} has A-norm {n:.3e}")
    if abs(n - 1.0) > 1e-8:
        raise NotUnitVector(f"{name} must have unit A-norm (got {n:.12g})")


def check_kz(A, a, b, c, alpha=2.0) -> float:
    if alpha == 0:
        raise InvalidParam("alpha must be nonzero")
    A = as_weight(A)
    a, b, c = _vecs(A, a, b, c)
    _unit(A, c, "c")
    return float(_slack_kz(A.matrix, a, b, c, complex(alpha))[0])


def kzlaa_delta(A, a, b, c) -> float:
    """The refinement term ``delta(a, b, c)`` (0 when ``||a||_A ||b||_A = 0``)."""
    A = as_weight(A)
    a, b, c = _vecs(A, a, b, c)
    return float(_delta(A.matrix, a, b, c)[0])


def check_kzlaa(A, a, b, c) -> float:
    A = as_weight(A)
    a, b, c = _vecs(A, a, b, c)
    _unit(A, c, "c")
    return float(_slack_kzlaa(A.matrix, a, b, c)[0])


def check_ll(A, S, x, z) -> float:
    A = as_weight(A)
    S = as_operator(A, S)
    Sa = a_adjoint(A, S)
    x, z = _vecs(A, x, z)
    _unit(A, x, "x")
    _unit(A, z, "z")
    return float(_slack_ll(A.matrix, S, Sa, x, z)[0])


def check_power(A, S, z, n: int) -> float:
    A = as_weight(A)
    S = as_operator(A, S)
    if int(n) != n or n < 1:
        raise InvalidParam("n must be a positive integer")
    AS = A.matrix @ S
    scale = max(1.0, float(np.linalg.norm(AS, 2)))
    if np.linalg.norm(AS - AS.conj().T, 2) > 1e-10 * scale:
        raise NotAPositive("A S is not Hermitian")
    if np.linalg.eigvalsh(0.5 * (AS + AS.conj().T))[0] < -1e-10 * scale:
        raise NotAPositive("A S is not positive semidefinite")
    (z,) = _vecs(A, z)
    _unit(A, z, "z")
    return float(_slack_power(A.matrix, S, z, int(n))[0])


def check_kkk(A, x, z) -> float:
    A = as_weight(A)
    x, z = _vecs(A, x, z)
    if np.sqrt(_norm2(A.matrix, x)[0]) < NORM_FLOOR:
        raise InvalidParam("x must have nonzero A-norm")
    return float(_slack_kkk(A.matrix, x, z)[0])


def check_scalar_interp(a: float, c: float, alpha: float, r: float):
    """Slacks of ``a^alpha c^(1-alpha) <= alpha a + (1-alpha) c <= (alpha a^r + (1-alpha) c^r)^(1/r)``."""
    if not (a > 0 and c > 0):
        raise InvalidParam("a and c must be positive")
    if not 0 <= alpha <= 1:
        raise InvalidParam("alpha must lie in [0, 1]")
    if not r >= 1:
        raise InvalidParam("r must be at least 1")
    lo, hi = _slack_interp(np.float64(a), np.float64(c), alpha, r)
    return float(lo), float(hi)


def check_l(A, x, u, v) -> float:
    A = as_weight(A)
    x, u, v = _vecs(A, x, u, v)
    return float(_slack_l(A.matrix, x, u, v)[0])


def check_lm310(A, x, u, v) -> float:
    A = as_weight(A)
    x, u, v = _vecs(A, x, u, v)
    return float(_slack_lm310(A.matrix, x, u, v)[0])


# ---------------------------------------------------------------------------
# seeded suite

_LEMMA_STREAM = {lid: k for k, lid in enumerate(LEMMA_IDS)}


def _weights(rng, dims=(2, 3, 4, 5)):
    """Full-rank and rank-deficient weights for each dimension."""
    out = []
    for n, k in itertools.product(dims, (0, 1)):
        out.append(validate_psd(random_weight(rng, n, k)))
    return out


def _raw(rng, m, n):
    return rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))


def _a_normalize(A, X):
    nrm = np.sqrt(_norm2(A.matrix, X))
    keep = nrm >= NORM_FLOOR
    return X[keep] / nrm[keep, None]


def _with_degenerate(rng, A, X, Y):
    """Replace a tenth of the rows of ``Y`` by near-multiples of ``X`` and a few by zeros."""
    m = len(Y)
    k = max(1, m // 10)
    idx = rng.choice(m, size=k, replace=False)
    lam = _raw(rng, k, 1)
    Y = Y.copy()
    Y[idx] = lam * X[idx] + 1e-9 * _raw(rng, k, X.shape[1])
    Y[idx[: max(1, k // 10)]] = 0.0
    return Y


def _lemma_batch(lemma_id, rng, A, m):
    """Slack values for ``m`` samples of one lemma under weight ``A``."""
    n = A.dim
    M = A.matrix
    if lemma_id in ("KZ", "KZLAA1"):
        c = _a_normalize(A, _raw(rng, m, n))
        a = _raw(rng, len(c), n)
        b = _with_degenerate(rng, A, c, _raw(rng, len(c), n))
        a = _with_degenerate(rng, A, b, a)
        if lemma_id == "KZLAA1":
            return _slack_kzlaa(M, a, b, c)
        alpha = complex(*rng.standard_normal(2))
        return _slack_kz(M, a, b, c, alpha)
    if lemma_id == "LL":
        S = random_ba_operator(rng, A)
        Sa = a_adjoint(A, S)
        x = _a_normalize(A, _raw(rng, m, n))
        z = _a_normalize(A, _raw(rng, len(x), n))
        k = min(len(x), len(z))
        return _slack_ll(M, S, Sa, x[:k], z[:k])
    if lemma_id == "L1.2":
        S0 = random_ba_operator(rng, A)
        S = a_adjoint(A, S0) @ S0
        z = _a_normalize(A, _raw(rng, m, n))
        power = int(rng.integers(1, 5))
        return _slack_power(M, S, z, power)
    if lemma_id == "KKK":
        x = _a_normalize(A, _raw(rng, m, n))
        z = _with_degenerate(rng, A, x, _raw(rng, len(x), n))
        return _slack_kkk(M, x, z)
    if lemma_id == "L11":
        a = np.exp(rng.uniform(-3, 3, m))
        c = np.where(rng.random(m) < 0.1, a, np.exp(rng.uniform(-3, 3, m)))
        alpha = rng.random(m)
        r = 1.0 + rng.exponential(2.0, m)
        lo, hi = _slack_interp(a, c, alpha, r)
        return np.minimum(lo, hi)
    if lemma_id in ("L", "lm310"):
        x = _raw(rng, m, n)
        u = _raw(rng, m, n)
        v = _with_degenerate(rng, A, u, _raw(rng, m, n))
        fn = _slack_l if lemma_id == "L" else _slack_lm310
        return fn(M, x, u, v)
    raise InvalidParam(f"unknown lemma {lemma_id!r}")


def run_lemma(lemma_id: str, samples: int = 10_000, seed: int = 0, tol: float = SLACK_TOL) -> LemmaCheckResult:
    """Seeded slack check of one lemma over full-rank and deficient weights of dims 2-5."""
    if lemma_id not in _LEMMA_STREAM:
        raise InvalidParam(f"unknown lemma {lemma_id!r}")
    if samples < 1:
        raise InvalidParam("samples must be positive")
    rng = np.random.default_rng([seed, _LEMMA_STREAM[lemma_id]])
    weights = _weights(rng)
    per = -(-samples // len(weights))
    slacks = []
    done = 0
    while done < samples:
        for A in weights:
            want = min(per, samples - done)
            if want <= 0:
                break
            s = _lemma_batch(lemma_id, rng, A, want)[:want]
            slacks.append(s)
            done += len(s)
    s = np.concatenate(slacks)[:samples]
    return LemmaCheckResult(lemma_id, int(len(s)), float(s.min()), int(np.count_nonzero(s < -tol)))


def run_lemma_suite(samples: int = 10_000, seed: int = 0, tol: float = SLACK_TOL) -> list:
    return [run_lemma(lid, samples, seed, tol) for lid in LEMMA_IDS]


def check_kz_implied(samples: int = 10_000, seed: int = 0, tol: float = SLACK_TOL) -> LemmaCheckResult:
    """Sample-wise link between the two Cauchy-Schwarz refinements.

    At ``alpha = 2`` the KZ slack minus the KZLAA1 slack equals ``delta``,
    which must be nonnegative.  ``min_slack`` is the smallest ``delta`` seen;
    a violation is a negative ``delta`` or a mismatch beyond ``tol``.
    """
    rng = np.random.default_rng([seed, len(LEMMA_IDS)])
    weights = _weights(rng)
    per = -(-samples // len(weights))
    deltas, bad = [], 0
    for A in weights:
        M = A.matrix
        c = _a_normalize(A, _raw(rng, per, A.dim))
        a = _raw(rng, len(c), A.dim)
        b = _with_degenerate(rng, A, c, _raw(rng, len(c), A.dim))
        d = _delta(M, a, b, c)
        gap = _slack_kz(M, a, b, c, 2.0) - _slack_kzlaa(M, a, b, c)
        bad += int(np.count_nonzero((d < -tol) | (np.abs(gap - d) > tol * np.maximum(1.0, d))))
        deltas.append(d)
    d = np.concatenate(deltas)[:samples]
    return LemmaCheckResult("KZ<=KZLAA1", int(len(d)), float(d.min()), bad)

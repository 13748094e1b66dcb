"""Semi-inner product machinery for a positive semidefinite weight ``A``.

Everything here works on dense complex matrices.  The weight is validated
once into a :class:`HermitianPSD`, which caches the eigendecomposition and
the derived matrices (``A^{1/2}``, ``A^+``, ``A^{+1/2}``, range/kernel
bases).  Functions accept either a validated weight or a raw array.

Conventions: ``<x, z>_A = <Ax, z> = z^H A x`` (linear in ``x``), and
``||z||_A = ||A^{1/2} z||``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "SemiHilbertError",
    "NotHermitian",
    "NotPSD",
    "ZeroWeight",
    "DimensionMismatch",
    "NotInBA",
    "InvalidParam",
    "NotUnitVector",
    "NotAPositive",
    "NotAUnitary",
    "UnknownBoundId",
    "ToleranceFailure",
    "HermitianPSD",
    "ReducedPair",
    "validate_psd",
    "as_weight",
    "as_operator",
    "a_inner",
    "a_norm",
    "admits_a_adjoint",
    "a_adjoint",
    "re_part",
    "im_part",
    "is_a_selfadjoint",
    "reduce",
]


class SemiHilbertError(ValueError):
    """Base class for all errors raised by this package."""


class NotHermitian(SemiHilbertError):
    """The proposed weight is not Hermitian."""


class NotPSD(SemiHilbertError):
    """The proposed weight has a negative eigenvalue beyond the rank threshold."""


class ZeroWeight(SemiHilbertError):
    """The weight is numerically zero, so the unit A-sphere is empty."""


class DimensionMismatch(SemiHilbertError):
    pass


class NotInBA(SemiHilbertError):
    """The operator does not map N(A) into N(A), so it has no A-adjoint."""


class InvalidParam(SemiHilbertError):
    pass


class NotUnitVector(SemiHilbertError):
    pass


class NotAPositive(SemiHilbertError):
    pass


class NotAUnitary(SemiHilbertError):
    pass


class UnknownBoundId(SemiHilbertError, KeyError):
    pass


class ToleranceFailure(SemiHilbertError):
    """A quantity that is nonnegative by construction came out negative."""


HERMITIAN_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class HermitianPSD:
    """Validated positive semidefinite weight with cached factorizations.

    ``eigenvalues`` are sorted descending and the ones at or below
    ``rank_tol`` are stored as exact zeros.
    """

    matrix: np.ndarray
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    rank: int
    sqrt: np.ndarray
    pinv: np.ndarray
    pinv_sqrt: np.ndarray
    range_basis: np.ndarray
    kernel_basis: np.ndarray
    rank_tol: float

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def projector(self) -> np.ndarray:
        """Orthogonal projection onto range(A)."""
        V = self.range_basis
        return V @ V.conj().T

    @property
    def range_eigenvalues(self) -> np.ndarray:
        return self.eigenvalues[: self.rank]

    def __repr__(self) -> str:
        return f"HermitianPSD(dim={self.dim}, rank={self.rank})"


def validate_psd(M, rank_tol_scale: float = 1e-12) -> HermitianPSD:
    """Validate ``M`` as a PSD weight and precompute everything derived from it.

    Eigenvalues below ``rank_tol = rank_tol_scale * n * max|lambda|`` are
    clamped to zero before forming the square roots and pseudoinverse.
    """
    M = np.array(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] == 0:
        raise DimensionMismatch(f"weight must be a nonempty square matrix, got shape {M.shape}")
    if not rank_tol_scale > 0:
        raise InvalidParam("rank_tol_scale must be positive")
    n = M.shape[0]
    scale = np.linalg.norm(M)
    asym = np.linalg.norm(M - M.conj().T)
    if asym > HERMITIAN_TOL * max(scale, np.finfo(float).tiny):
        raise NotHermitian(f"weight is not Hermitian (asymmetry {asym:.3e})")
    M = 0.5 * (M + M.conj().T)

    lam, U = np.linalg.eigh(M)
    lam, U = lam[::-1].copy(), U[:, ::-1].copy()
    lam_max = float(np.max(np.abs(lam)))
    if lam_max == 0.0:
        raise ZeroWeight("the zero weight has an empty unit sphere")
    rank_tol = rank_tol_scale * n * lam_max
    if lam[-1] < -rank_tol:
        raise NotPSD(f"weight has eigenvalue {lam[-1]:.3e} < -{rank_tol:.3e}")
    keep = lam > rank_tol
    r = int(np.count_nonzero(keep))
    if r == 0:
        raise ZeroWeight("all eigenvalues of the weight are below the rank threshold")
    lam = np.where(keep, lam, 0.0)

    root = np.sqrt(lam)
    inv = np.zeros_like(lam)
    inv[keep] = 1.0 / lam[keep]
    inv_root = np.zeros_like(lam)
    inv_root[keep] = 1.0 / root[keep]
    Uh = U.conj().T
    return HermitianPSD(
        matrix=M,
        eigenvalues=lam,
        eigenvectors=U,
        rank=r,
        sqrt=(U * root) @ Uh,
        pinv=(U * inv) @ Uh,
        pinv_sqrt=(U * inv_root) @ Uh,
        range_basis=U[:, :r],
        kernel_basis=U[:, r:],
        rank_tol=rank_tol,
    )


def as_weight(A) -> HermitianPSD:
    if isinstance(A, HermitianPSD):
        return A
    return validate_psd(A)


def as_operator(A: HermitianPSD, S) -> np.ndarray:
    S = np.asarray(S, dtype=complex)
    if S.shape != (A.dim, A.dim):
        raise DimensionMismatch(f"operator shape {S.shape} does not match weight dim {A.dim}")
    return S


def _vector(A: HermitianPSD, x) -> np.ndarray:
    x = np.asarray(x, dtype=complex)
    if x.shape != (A.dim,):
        raise DimensionMismatch(f"vector shape {x.shape} does not match weight dim {A.dim}")
    return x


def a_inner(A, x, z) -> complex:
    """Return ``<x, z>_A = <Ax, z>``, linear in ``x`` and conjugate-linear in ``z``."""
    A = as_weight(A)
    x, z = _vector(A, x), _vector(A, z)
    return complex(np.vdot(z, A.matrix @ x))


def a_norm(A, z) -> float:
    A = as_weight(A)
    return float(np.linalg.norm(A.sqrt @ _vector(A, z)))


def admits_a_adjoint(A, S) -> bool:
    """Check ``S(N(A)) ⊆ N(A)``, the finite-dimensional criterion for ``S ∈ B_A``."""
    A = as_weight(A)
    S = as_operator(A, S)
    if A.rank == A.dim:
        return True
    image = A.matrix @ S @ A.kernel_basis
    limit = A.rank_tol * np.linalg.norm(S, 2) * A.dim
    return bool(np.all(np.linalg.norm(image, axis=0) <= limit))


def _require_ba(A: HermitianPSD, S: np.ndarray) -> None:
    if not admits_a_adjoint(A, S):
        raise NotInBA("operator does not leave the null space of A invariant")


def a_adjoint(A, S) -> np.ndarray:
    """Distinguished A-adjoint ``A^+ S^* A``."""
    A = as_weight(A)
    S = as_operator(A, S)
    _require_ba(A, S)
    return A.pinv @ S.conj().T @ A.matrix


def re_part(A, S) -> np.ndarray:
    """``(S + S#)/2``."""
    A = as_weight(A)
    S = as_operator(A, S)
    return 0.5 * (S + a_adjoint(A, S))


def im_part(A, S) -> np.ndarray:
    """``(S - S#)/(2i)``."""
    A = as_weight(A)
    S = as_operator(A, S)
    return (S - a_adjoint(A, S)) / 2j


def is_a_selfadjoint(A, S, tol: float = 1e-10) -> bool:
    """True when ``AS`` is Hermitian (relative to ``||A|| ||S||``)."""
    A = as_weight(A)
    S = as_operator(A, S)
    AS = A.matrix @ S
    scale = max(np.linalg.norm(A.matrix, 2) * np.linalg.norm(S, 2), 1.0)
    return bool(np.linalg.norm(AS - AS.conj().T, 2) <= tol * scale)


@dataclass(frozen=True, eq=False)
class ReducedPair:
    """Compression of ``S`` to range(A) in A-orthonormal coordinates.

    With ``V`` the range basis and ``D = diag(sqrt(lambda))``,
    ``reduced = D V^H S V D^{-1}``.  For every ``z`` with ``||z||_A = 1``
    and ``y = D V^H z`` we have ``<Sz, z>_A = <reduced y, y>`` and
    ``||Sz||_A = ||reduced y||``, and ``y`` covers the whole unit sphere.
    """

    weight: HermitianPSD
    reduced: np.ndarray

    def lift(self, y) -> np.ndarray:
        """Map ``y`` in C^r to ``z = A^{+1/2} V y`` in C^n (so ``||z||_A = ||y||``)."""
        A = self.weight
        y = np.asarray(y, dtype=complex)
        return A.range_basis @ (y / np.sqrt(A.range_eigenvalues))

    def project(self, z) -> np.ndarray:
        """Map ``z`` in C^n to ``y = V^H A^{1/2} z``."""
        A = self.weight
        z = np.asarray(z, dtype=complex)
        return np.sqrt(A.range_eigenvalues) * (A.range_basis.conj().T @ z)


def reduce(A, S, check: bool = True) -> ReducedPair:
    A = as_weight(A)
    S = as_operator(A, S)
    if check:
        _require_ba(A, S)
    V = A.range_basis
    d = np.sqrt(A.range_eigenvalues)
    T = (V.conj().T @ S @ V) * d[:, None] / d[None, :]
    return ReducedPair(weight=A, reduced=T)

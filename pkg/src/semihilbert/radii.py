"""Scalar radii of an operator under a PSD weight.

All quantities are suprema or infima over the unit A-sphere.  They are
computed on the compression ``T = reduce(A, S).reduced`` where they become
the classical quantities of an ``r x r`` matrix:

* ``||S||_A = sigma_max(T)``, ``m_A(S) = sigma_min(T)``
* ``omega_A(S) = max_phi lambda_max(Re(e^{i phi} T))``
* ``c_A(S) = max(0, max_phi lambda_min(Re(e^{i phi} T)))``
* ``dw_A(S) = max_{|y|=1} sqrt(|<Ty, y>|^2 + ||Ty||^4)``

The Davis-Wielandt radius is non-convex; it is reported as an enclosure
(feasible lower value plus the analytic cap ``sqrt(omega^2 + ||S||^4)``).
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, replace

import numpy as np

from .core import (
    DimensionMismatch,
    InvalidParam,
    ToleranceFailure,
    as_weight,
    reduce,
)

__all__ = [
    "OptimizerConfig",
    "DwResult",
    "a_op_norm",
    "a_numerical_radius",
    "a_crawford",
    "a_min_modulus",
    "a_dw_radius",
    "numerical_radius",
    "crawford_number",
    "dw_radius",
    "dw_multistart",
    "dw_dense_grid",
    "dw_objective",
    "residual_inf",
    "mu_eta",
    "delta_inf",
    "mu_eta_reduced",
    "delta_inf_reduced",
    "kkk_defect",
    "delta_values",
    "random_unit_vectors",
]

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
_HERMITIAN_FAST = 1e-13


@dataclass(frozen=True)
class OptimizerConfig:
    """Knobs for every iterative or grid-based computation.

    ``th8_grid`` (angles tried by the theta-family bound in reports) and
    ``samples`` (dense sampling size for the refinement infima) extend the
    base set of fields.
    """

    restarts: int = 64
    max_iters: int = 500
    theta_grid: int = 2048
    refine_tol: float = 1e-12
    alpha_grid: int = 101
    seed: int = 0
    th8_grid: int = 32
    samples: int = 2048

    def __post_init__(self):
        for name in ("restarts", "max_iters", "theta_grid", "alpha_grid", "th8_grid", "samples"):
            if int(getattr(self, name)) < 1:
                raise InvalidParam(f"{name} must be positive")
        if not self.refine_tol > 0:
            raise InvalidParam("refine_tol must be positive")
        if self.seed < 0 or self.seed >= 2**64:
            raise InvalidParam("seed must be an unsigned 64-bit integer")

    def escalated(self, factor: int = 4) -> "OptimizerConfig":
        return replace(self, restarts=self.restarts * factor)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "OptimizerConfig":
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(data) - known
        if unknown:
            raise InvalidParam(f"unknown optimizer config keys: {sorted(unknown)}")
        return cls(**data)

    @classmethod
    def from_json(cls, path) -> "OptimizerConfig":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))


DEFAULT_CONFIG = OptimizerConfig()


def _cfg(cfg):
    return DEFAULT_CONFIG if cfg is None else cfg


@dataclass(frozen=True, eq=False)
class DwResult:
    value: float
    upper_cap: float
    witness: np.ndarray
    restarts_used: int
    converged: bool

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "upper_cap": self.upper_cap,
            "converged": self.converged,
            "restarts_used": self.restarts_used,
        }


# ---------------------------------------------------------------------------
# numerical range support function


def _hermitian_parts(T):
    H = 0.5 * (T + T.conj().T)
    K = (T - T.conj().T) / 2j
    return H, 0.5 * (K + K.conj().T)


def _is_hermitian(T) -> bool:
    scale = np.linalg.norm(T)
    return np.linalg.norm(T - T.conj().T) <= _HERMITIAN_FAST * max(scale, 1e-300)


def _golden_max(f, a, b, tol):
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    best = max((fc, c), (fd, d))
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = f(c)
            best = max(best, (fc, c))
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = f(d)
            best = max(best, (fd, d))
    return best


def _angle_scan(T, pick, cfg) -> float:
    """``max_phi pick(eig(Re(e^{i phi} T)))`` by grid scan plus golden refinement.

    ``pick`` is ``-1`` for the largest eigenvalue and ``0`` for the smallest.
    Every grid cell that could still hold a better value (Lipschitz bound
    ``||T||`` times half a step) and contains a local grid maximum is refined.
    """
    H, K = _hermitian_parts(T)
    N = cfg.theta_grid
    phi = 2.0 * np.pi * np.arange(N) / N
    pencil = np.cos(phi)[:, None, None] * H - np.sin(phi)[:, None, None] * K
    vals = np.linalg.eigvalsh(pencil)[:, pick]
    best = float(vals.max())
    h = 2.0 * np.pi / N
    lip = np.linalg.norm(T, 2)
    is_peak = (vals >= np.roll(vals, 1)) & (vals >= np.roll(vals, -1))
    cands = np.flatnonzero(is_peak & (vals >= best - lip * h))
    cands = cands[np.argsort(vals[cands])[::-1][:8]]

    def f(t):
        M = math.cos(t) * H - math.sin(t) * K
        return float(np.linalg.eigvalsh(M)[pick])

    for k in cands:
        val, _ = _golden_max(f, phi[k] - h, phi[k] + h, cfg.refine_tol)
        best = max(best, val)
    return best


def numerical_radius(T, cfg=None) -> float:
    """Classical numerical radius of a square matrix."""
    T = np.asarray(T, dtype=complex)
    if T.shape[0] == 1:
        return float(abs(T[0, 0]))
    if _is_hermitian(T):
        return float(np.max(np.abs(np.linalg.eigvalsh(0.5 * (T + T.conj().T)))))
    return max(_angle_scan(T, -1, _cfg(cfg)), 0.0)


def crawford_number(T, cfg=None) -> float:
    """Distance from the origin to the numerical range of ``T``."""
    T = np.asarray(T, dtype=complex)
    if T.shape[0] == 1:
        return float(abs(T[0, 0]))
    if _is_hermitian(T):
        lam = np.linalg.eigvalsh(0.5 * (T + T.conj().T))
        if lam[0] > 0:
            return float(lam[0])
        if lam[-1] < 0:
            return float(-lam[-1])
        return 0.0
    return max(_angle_scan(T, 0, _cfg(cfg)), 0.0)


def a_op_norm(A, S) -> float:
    """A-operator seminorm ``||S||_A``."""
    return float(np.linalg.norm(reduce(A, S).reduced, 2))


def a_numerical_radius(A, S, cfg=None) -> float:
    return numerical_radius(reduce(A, S).reduced, cfg)


def a_crawford(A, S, cfg=None) -> float:
    return crawford_number(reduce(A, S).reduced, cfg)


def a_min_modulus(A, S) -> float:
    """``m_A(S) = inf ||Sz||_A`` over the unit A-sphere."""
    T = reduce(A, S).reduced
    return float(np.linalg.svd(T, compute_uv=False)[-1])


# ---------------------------------------------------------------------------
# Davis-Wielandt radius


def random_unit_vectors(rng, m, r) -> np.ndarray:
    """``m`` uniform samples from the unit sphere of C^r, one per row."""
    Y = rng.standard_normal((m, r)) + 1j * rng.standard_normal((m, r))
    return Y / np.linalg.norm(Y, axis=1, keepdims=True)


def dw_objective(T, Y):
    """Row-wise ``|<Ty, y>|^2 + ||Ty||^4`` for unit rows ``y`` of ``Y``."""
    Y = np.atleast_2d(Y)
    TY = Y @ T.T
    a = np.einsum("ij,ij->i", Y.conj(), TY)
    p = np.einsum("ij,ij->i", TY.conj(), TY).real
    return np.abs(a) ** 2 + p**2


def _dw_value_and_grad(T, Th, Y):
    TY = Y @ T.T
    ThY = Y @ Th.T
    a = np.einsum("ij,ij->i", Y.conj(), TY)
    p = np.einsum("ij,ij->i", TY.conj(), TY).real
    f = np.abs(a) ** 2 + p**2
    G = 2.0 * (a.conj()[:, None] * TY + a[:, None] * ThY + 2.0 * p[:, None] * (TY @ Th.T))
    radial = np.einsum("ij,ij->i", Y.conj(), G).real
    return f, G - radial[:, None] * Y


def _fibonacci_sphere(m):
    k = np.arange(m) + 0.5
    z = 1.0 - 2.0 * k / m
    rho = np.sqrt(1.0 - z**2)
    ang = np.pi * (1.0 + 5.0**0.5) * k
    return np.stack([rho * np.cos(ang), rho * np.sin(ang), z], axis=1)


def _structured_starts(T, m=26):
    """Top eigenvectors of the support-function pencils plus the top singular vector.

    For a unit direction ``u`` in R^3 the largest eigenvector of
    ``u1 Re T + u2 Im T + u3 T^H T`` maximizes the linear functional
    ``u . (Re<Ty,y>, Im<Ty,y>, ||Ty||^2)``; the maximizer of the norm of that
    point is one of these for the right ``u``.
    """
    H, K = _hermitian_parts(T)
    G = T.conj().T @ T
    U = _fibonacci_sphere(m)
    W = U[:, 0, None, None] * H + U[:, 1, None, None] * K + U[:, 2, None, None] * G
    _, vecs = np.linalg.eigh(W)
    starts = vecs[:, :, -1]
    _, _, Vh = np.linalg.svd(T)
    return np.vstack([starts, Vh[:1].conj()])


def _mm_polish(T, y, iters=200):
    """Monotone fixed point ``y <- top eigenvector of sum_k p_k(y) M_k``.

    The objective is a convex function of ``y y^H``, so each step is an
    ascent step (linearize, then maximize the linear model on the sphere).
    """
    H, K = _hermitian_parts(T)
    G = T.conj().T @ T
    f_old = float(dw_objective(T, y)[0])
    for _ in range(iters):
        w = np.array([np.vdot(y, M @ y).real for M in (H, K, G)])
        _, vecs = np.linalg.eigh(w[0] * H + w[1] * K + w[2] * G)
        y_new = vecs[:, -1]
        f_new = float(dw_objective(T, y_new)[0])
        if f_new < f_old:
            break
        step = f_new - f_old
        y, f_old = y_new, f_new
        if step <= 1e-16 * max(f_new, 1e-300):
            break
    return y, f_old


def dw_multistart(T, cfg=None):
    """Multistart projected gradient ascent of the Davis-Wielandt objective.

    Starts are ``cfg.restarts`` uniform sphere samples (seeded by
    ``cfg.seed``) plus a few structured starts.  Each iteration takes the
    tangential part of the Euclidean gradient, backtracks until an Armijo
    condition holds, and renormalizes.  The best point is then polished by a
    monotone eigenvector iteration.

    Returns ``(f_best, y_best, n_starts, converged)``.
    """
    cfg = _cfg(cfg)
    T = np.asarray(T, dtype=complex)
    r = T.shape[0]
    if r == 1:
        y = np.ones(1, dtype=complex)
        return float(dw_objective(T, y)[0]), y, 1, True

    rng = np.random.default_rng(cfg.seed)
    Y = np.vstack([random_unit_vectors(rng, cfg.restarts, r), _structured_starts(T)])
    Th = T.conj().T
    nT = np.linalg.norm(T, 2)
    scale = max(nT**2 + nT**4, 1e-300)
    f, Gt = _dw_value_and_grad(T, Th, Y)
    step = np.full(len(Y), 1.0 / (8.0 * scale) if scale > 0 else 1.0)
    active = np.ones(len(Y), dtype=bool)
    gtol = 1e-7

    for _ in range(cfg.max_iters):
        gnorm2 = np.einsum("ij,ij->i", Gt.conj(), Gt).real
        active &= gnorm2 > (gtol * (scale + f)) ** 2
        if not active.any():
            break
        idx = np.flatnonzero(active)
        t = step[idx] * 2.0
        Yi, fi, Gi, gi = Y[idx], f[idx], Gt[idx], gnorm2[idx]
        accepted = np.zeros(len(idx), dtype=bool)
        Ynew = Yi.copy()
        fnew = fi.copy()
        for _ in range(60):
            pending = ~accepted
            if not pending.any():
                break
            cand = Yi[pending] + t[pending, None] * Gi[pending]
            cand /= np.linalg.norm(cand, axis=1, keepdims=True)
            fc = dw_objective(T, cand)
            ok = fc >= fi[pending] + 1e-4 * t[pending] * gi[pending]
            pidx = np.flatnonzero(pending)
            Ynew[pidx[ok]] = cand[ok]
            fnew[pidx[ok]] = fc[ok]
            accepted[pidx[ok]] = True
            t[pidx[~ok]] *= 0.5
        # rows whose step collapsed are stationary up to rounding
        active[idx[~accepted]] = False
        step[idx] = t
        Y[idx] = Ynew
        fi_new, Gi_new = _dw_value_and_grad(T, Th, Ynew)
        f[idx] = fi_new
        Gt[idx] = Gi_new

    order = np.argsort(f)[::-1][:4]
    best_f, best_y = -np.inf, None
    for k in order:
        y, fy = _mm_polish(T, Y[k])
        if fy > best_f:
            best_f, best_y = fy, y
    _, g = _dw_value_and_grad(T, Th, best_y[None, :])
    converged = bool(np.linalg.norm(g) <= 1e-6 * (scale + best_f))
    return float(best_f), best_y, len(Y), converged


def dw_dense_grid(T, n_t: int = 257, n_phi: int = 512, refine: int = 4):
    """Two-angle grid oracle for ``r <= 2``.

    The objective is invariant under a global phase, so the sphere of C^2 is
    covered by ``y = (cos t, e^{i phi} sin t)`` with ``t`` in ``[0, pi/2]``.
    Grid local maxima are refined with Nelder-Mead.  Returns ``(f_best, y)``.
    """
    T = np.asarray(T, dtype=complex)
    r = T.shape[0]
    if r == 1:
        y = np.ones(1, dtype=complex)
        return float(dw_objective(T, y)[0]), y
    if r != 2:
        raise InvalidParam("the dense two-angle oracle needs a 2 x 2 compression")

    def points(t, phi):
        t, phi = np.broadcast_arrays(np.asarray(t, float), np.asarray(phi, float))
        return np.stack([np.cos(t) + 0j, np.exp(1j * phi) * np.sin(t)], axis=-1)

    t = np.linspace(0.0, np.pi / 2, n_t)
    phi = 2.0 * np.pi * np.arange(n_phi) / n_phi
    tt, pp = np.meshgrid(t, phi, indexing="ij")
    F = dw_objective(T, points(tt, pp).reshape(-1, 2)).reshape(n_t, n_phi)

    pad = np.pad(F, ((1, 1), (0, 0)), mode="edge")
    peak = np.ones_like(F, dtype=bool)
    for dt in (-1, 0, 1):
        for dp in (-1, 0, 1):
            if dt == 0 and dp == 0:
                continue
            peak &= F >= np.roll(pad, -dp, axis=1)[1 + dt : 1 + dt + n_t]
    flat = np.flatnonzero(peak)
    flat = flat[np.argsort(F.ravel()[flat])[::-1][:refine]]

    from scipy.optimize import minimize

    best_f = float(F.max())
    i, j = np.unravel_index(int(np.argmax(F)), F.shape)
    best_x = (t[i], phi[j])
    fscale = max(best_f, 1e-300)
    for k in flat:
        i, j = np.unravel_index(k, F.shape)
        res = minimize(
            lambda x: -dw_objective(T, points(x[0], x[1])[None, :])[0],
            x0=[t[i], phi[j]],
            method="Nelder-Mead",
            options={"xatol": 1e-10, "fatol": 1e-14 * fscale, "maxiter": 2000},
        )
        if -res.fun > best_f:
            best_f, best_x = float(-res.fun), (res.x[0], res.x[1])
    return best_f, points(*best_x)


def dw_radius(T, cfg=None):
    """Classical Davis-Wielandt radius of ``T``; returns ``(value, y, starts, converged)``."""
    T = np.asarray(T, dtype=complex)
    f, y, starts, converged = dw_multistart(T, cfg)
    if T.shape[0] == 2:
        fg, yg = dw_dense_grid(T)
        if fg > f:
            f, y = fg, yg
    return math.sqrt(max(f, 0.0)), y, starts, converged


def a_dw_radius(A, S, cfg=None) -> DwResult:
    """A-Davis-Wielandt radius as a certified-from-below enclosure."""
    cfg = _cfg(cfg)
    pair = reduce(A, S)
    T = pair.reduced
    value, y, starts, converged = dw_radius(T, cfg)
    w = numerical_radius(T, cfg)
    nrm = float(np.linalg.norm(T, 2))
    cap = math.sqrt(w**2 + nrm**4)
    return DwResult(
        value=value,
        upper_cap=cap,
        witness=pair.lift(y),
        restarts_used=starts,
        converged=converged,
    )


# ---------------------------------------------------------------------------
# refinement infima


def residual_inf(A, u, v) -> float:
    """``inf_lambda ||u - lambda v||_A`` in closed form (A-orthogonal projection residual)."""
    A = as_weight(A)
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    if u.shape != (A.dim,) or v.shape != (A.dim,):
        raise DimensionMismatch("vector length does not match weight dimension")
    Au, Av = A.sqrt @ u, A.sqrt @ v
    nu2 = float(np.vdot(Au, Au).real)
    nv2 = float(np.vdot(Av, Av).real)
    if nv2 == 0.0:
        return math.sqrt(nu2)
    return math.sqrt(max(0.0, nu2 - abs(np.vdot(Av, Au)) ** 2 / nv2))


def _residual_rows(U, V):
    nu2 = np.einsum("ij,ij->i", U.conj(), U).real
    nv2 = np.einsum("ij,ij->i", V.conj(), V).real
    cross = np.abs(np.einsum("ij,ij->i", V.conj(), U)) ** 2
    safe = np.where(nv2 > 0, nv2, 1.0)
    return np.where(nv2 > 0, np.sqrt(np.maximum(0.0, nu2 - cross / safe)), np.sqrt(nu2))


def kkk_defect(T, Y):
    """Row-wise ``g - g^2 / (4 ||Ty||^2)`` with ``g = inf_lambda ||Ty - lambda y||^2``.

    Rows with ``Ty = 0`` give 0.
    """
    Y = np.atleast_2d(Y)
    TY = Y @ T.T
    p = np.einsum("ij,ij->i", TY.conj(), TY).real
    g = _residual_rows(TY, Y) ** 2
    safe = np.where(p > 0, p, 1.0)
    return np.where(p > 0, g - g**2 / (4.0 * safe), 0.0)


def delta_values(T, Y):
    """Row-wise refinement term with ``a = T^H T y``, ``b = T y``, ``c = y``.

    Returns ``(delta, bracket)`` where ``delta = (|b|/|a|) * bracket^2`` and
    ``bracket = |<a, c>| inf|c - lambda b| - inf|a - mu b| / 2``; rows with
    ``|a| |b| = 0`` have ``delta = 0`` and ``bracket = nan``.
    """
    Y = np.atleast_2d(Y)
    B = Y @ T.T
    Amat = B @ T.conj()
    na = np.linalg.norm(Amat, axis=1)
    nb = np.linalg.norm(B, axis=1)
    ac = np.abs(np.einsum("ij,ij->i", Y.conj(), Amat))
    bracket = ac * _residual_rows(Y, B) - 0.5 * _residual_rows(Amat, B)
    live = na * nb > 0
    ratio = np.where(live, nb / np.where(live, na, 1.0), 0.0)
    delta = np.where(live, ratio * bracket**2, 0.0)
    return delta, np.where(live, bracket, np.nan)


def _sphere_minimize(fun_rows, T, candidates, cfg, refine=4):
    """Minimize a row-vectorized function over the unit sphere of C^r."""
    vals = fun_rows(T, candidates)
    order = np.argsort(vals)[:refine]
    best = float(vals[order[0]])
    r = T.shape[0]
    scale = np.linalg.norm(T, 2) ** 2
    if r == 1 or best <= 1e-14 * max(scale, 1e-300):
        return best
    fscale = max(abs(best), 1e-300)
    from scipy.optimize import minimize

    def scalar(x):
        y = x[:r] + 1j * x[r:]
        nrm = np.linalg.norm(y)
        if nrm == 0:
            return np.inf
        return float(fun_rows(T, (y / nrm)[None, :])[0])

    for k in order:
        y0 = candidates[k]
        res = minimize(
            scalar,
            np.concatenate([y0.real, y0.imag]),
            method="Nelder-Mead",
            options={"xatol": 1e-10, "fatol": 1e-14 * fscale, "maxiter": 200 * 2 * r},
        )
        best = min(best, float(res.fun))
    return best


def _check_nonnegative(vals, scale, what):
    worst = float(np.min(vals))
    if worst < -1e-10 * max(scale, 1.0):
        raise ToleranceFailure(f"{what} sample is negative ({worst:.3e})")


def _kkk_inf(T, cfg, stream):
    r = T.shape[0]
    rng = np.random.default_rng([cfg.seed, stream])
    _, eigvecs = np.linalg.eig(T)
    eigvecs = (eigvecs / np.linalg.norm(eigvecs, axis=0)).T
    cands = np.vstack([eigvecs, random_unit_vectors(rng, cfg.samples, r)])
    _check_nonnegative(kkk_defect(T, cands), np.linalg.norm(T, 2) ** 2, "KKK defect")
    return max(_sphere_minimize(kkk_defect, T, cands, cfg), 0.0)


def mu_eta(A, S, cfg=None):
    """Refinement infima ``(mu, eta)`` for ``S`` and its A-adjoint.

    Dense sampling plus the eigenvectors of the compression as explicit
    candidates, refined by Nelder-Mead.  The returned values are upper
    approximations of the infima.
    """
    return mu_eta_reduced(reduce(A, S).reduced, cfg)


def mu_eta_reduced(T, cfg=None):
    """:func:`mu_eta` for a compression ``T`` given directly."""
    cfg = _cfg(cfg)
    T = np.asarray(T, dtype=complex)
    return _kkk_inf(T, cfg, 1), _kkk_inf(T.conj().T, cfg, 2)


def delta_inf(A, S, cfg=None) -> float:
    """``inf delta(S#S z, Sz, z)`` over the unit A-sphere (upper approximation).

    Shortcuts that give exactly zero: a singular compression (the zero
    branch is attained) and a sign change of the bracket across samples
    (the bracket is continuous on the connected sphere, so it vanishes
    somewhere).
    """
    return delta_inf_reduced(reduce(A, S).reduced, cfg)


def delta_inf_reduced(T, cfg=None) -> float:
    """:func:`delta_inf` for a compression ``T`` given directly."""
    cfg = _cfg(cfg)
    T = np.asarray(T, dtype=complex)
    r = T.shape[0]
    sv = np.linalg.svd(T, compute_uv=False)
    if sv[-1] <= 1e-14 * max(sv[0], 1e-300):
        return 0.0
    rng = np.random.default_rng([cfg.seed, 3])
    _, V = np.linalg.eig(T)
    _, _, Vh = np.linalg.svd(T)
    cands = np.vstack(
        [(V / np.linalg.norm(V, axis=0)).T, Vh.conj(), random_unit_vectors(rng, cfg.samples, r)]
    )
    delta, bracket = delta_values(T, cands)
    live = np.isfinite(bracket)
    if np.any(bracket[live] > 0) and np.any(bracket[live] < 0):
        return 0.0
    return max(_sphere_minimize(lambda T_, Y: delta_values(T_, Y)[0], T, cands, cfg), 0.0)


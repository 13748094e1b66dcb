"""Upper and lower bounds for the A-Davis-Wielandt radius.

Every bound is stated on ``dw^2`` (or a power of it).  The functions here
return the value on the ``dw`` scale so it can be compared directly with
:func:`semihilbert.radii.a_dw_radius`.

Reduction maps ``S#`` to ``T^H`` and products to products, so every
expression is assembled from the compression ``T`` and the quantities
``||X||_A``, ``omega_A(X)`` and ``c_A(X)`` become their classical
counterparts on the reduced matrices.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .core import InvalidParam, UnknownBoundId, reduce
from .radii import (
    DEFAULT_CONFIG,
    DwResult,
    OptimizerConfig,
    crawford_number,
    delta_inf_reduced,
    dw_radius,
    mu_eta_reduced,
    numerical_radius,
)

__all__ = [
    "BoundEntry",
    "BoundReport",
    "COMPETITORS",
    "UPPER_TOL",
    "bound_theo1",
    "bound_theo1_limit",
    "bound_delta_refined",
    "bounds_th3",
    "omega_equality_case",
    "bound_th11",
    "bound_th8",
    "lower_th10",
    "bound_th17",
    "bound_eq17",
    "bound_thh1",
    "bound_eq20",
    "bound_th22",
    "bound_eq23",
    "lower_crawford",
    "lower_crawford_corrected",
    "lower_th44",
    "competitor",
    "bound_report",
    "REPORT_COLUMNS",
]

UPPER_TOL = 1e-6
COMPETITORS = ("eq3", "eq10", "eq11", "eq18", "eq21", "eq25", "p03")
REPORT_COLUMNS = (
    "pair_id",
    "bound_id",
    "kind",
    "params",
    "value",
    "dw_lower",
    "dw_cap",
    "holds",
    "slack",
)


def _sqrt(x: float) -> float:
    return math.sqrt(max(x, 0.0))


def _opnorm(M) -> float:
    return float(np.linalg.norm(M, 2))


class _Pair:
    """Reduced matrices of ``(A, S)`` with memoized radii."""

    def __init__(self, A, S, cfg: OptimizerConfig | None):
        self.cfg = DEFAULT_CONFIG if cfg is None else cfg
        self.reduced = reduce(A, S)
        T = self.reduced.reduced
        self.T = T
        self.Ta = T.conj().T
        self.P = self.Ta @ T  # S#S
        self.Q = T @ self.Ta  # SS#
        self.H = 0.5 * (T + self.Ta)  # Re_A(S)
        self.K = (T - self.Ta) / 2j  # Im_A(S)
        self._memo: dict = {}

    def _get(self, key, fn):
        if key not in self._memo:
            self._memo[key] = fn()
        return self._memo[key]

    def w(self, key, M) -> float:
        return self._get(("w", key), lambda: numerical_radius(M, self.cfg))

    def c(self, key, M) -> float:
        return self._get(("c", key), lambda: crawford_number(M, self.cfg))

    @property
    def norm(self) -> float:
        return self._get("norm", lambda: _opnorm(self.T))

    @property
    def omega(self) -> float:
        return self.w("S", self.T)

    @property
    def mu_eta(self):
        return self._get("mu_eta", lambda: mu_eta_reduced(self.T, self.cfg))

    @property
    def delta(self) -> float:
        return self._get("delta", lambda: delta_inf_reduced(self.T, self.cfg))


def _ctx(A, S, cfg):
    return A if isinstance(A, _Pair) else _Pair(A, S, cfg)


# ---------------------------------------------------------------------------
# upper bounds


def _theo1_sq(p: _Pair, alpha) -> float:
    a = abs(alpha)
    w1 = p.w("P+S", p.P + p.T)
    w2 = p.w("S#S^2", p.P @ p.T)
    n3 = _opnorm(p.P @ p.P + p.P)
    return w1**2 + (2.0 / a) * w2 + max(1.0, abs(alpha - 1)) / a * n3


def bound_theo1(A, S, alpha=2.0, cfg=None) -> float:
    """Alpha-family upper bound; ``alpha`` is any nonzero complex number."""
    if alpha == 0:
        raise InvalidParam("alpha must be nonzero")
    return _sqrt(_theo1_sq(_ctx(A, S, cfg), complex(alpha)))


def bound_theo1_limit(A, S, cfg=None) -> float:
    """Limit ``|alpha| -> infinity`` of :func:`bound_theo1`."""
    p = _ctx(A, S, cfg)
    return _sqrt(p.w("P+S", p.P + p.T) ** 2 + _opnorm(p.P @ p.P + p.P))


def bound_delta_refined(A, S, cfg=None) -> float:
    p = _ctx(A, S, cfg)
    sq = (
        p.w("P+S", p.P + p.T) ** 2
        + p.w("S#S^2", p.P @ p.T)
        + 0.5 * _opnorm(p.P @ p.P + p.P)
        - 2.0 * p.delta
    )
    return _sqrt(sq)


def bounds_th3(A, S, cfg=None):
    """``(lower, upper)`` built from the A-real and A-imaginary parts."""
    p = _ctx(A, S, cfg)
    wr = p.w("Re+iP", p.H + 1j * p.P)
    wi = p.w("Im+iP", p.K + 1j * p.P)
    lower = max(wr, wi)
    upper = min(math.hypot(wr, _opnorm(p.K)), math.hypot(wi, _opnorm(p.H)))
    return lower, upper


def omega_equality_case(A, S, cfg=None, tol: float = 1e-8):
    """``||Re_A S||_A sqrt(1 + ||Re_A S||_A^2)`` when ``Re_A(S#)^2 = Im_A(S#)``, else ``None``.

    The premise is tested on the compressions, i.e. as an equality of
    operators modulo the A-seminorm.
    """
    p = _ctx(A, S, cfg)
    re_adj = p.H
    im_adj = -p.K
    scale = max(1.0, _opnorm(p.T) ** 2)
    if np.max(np.abs(re_adj @ re_adj - im_adj), initial=0.0) > tol * scale:
        return None
    r = _opnorm(p.H)
    return r * math.sqrt(1.0 + r * r)


def bound_th11(A, S, cfg=None) -> float:
    p = _ctx(A, S, cfg)
    s2 = p.norm**2
    corr = math.sqrt(p.c("P", p.P) * p.c("Q", p.Q))
    return _sqrt(s2 * s2 + 2.0 * s2 - corr)


def _th8_sq(p: _Pair, theta: float) -> float:
    e = complex(math.cos(theta), math.sin(theta))
    M = e * p.T + p.P
    w = numerical_radius(M, p.cfg)
    re = 0.5 * (e * p.T + (e * p.T).conj().T)
    return w**2 + 2.0 * p.norm**2 * _opnorm(re)


def _th8_screen(p: _Pair, thetas, n_phi=256):
    """Cheap screening values of the theta-family bound (coarse, no refinement)."""
    thetas = np.asarray(thetas, dtype=float)
    e = np.exp(1j * thetas)
    M = e[:, None, None] * p.T + p.P
    Mh = np.conj(np.swapaxes(M, 1, 2))
    H = 0.5 * (M + Mh)
    K = (M - Mh) / 2j
    phi = 2.0 * np.pi * np.arange(n_phi) / n_phi
    pencil = (
        np.cos(phi)[None, :, None, None] * H[:, None] - np.sin(phi)[None, :, None, None] * K[:, None]
    )
    w = np.linalg.eigvalsh(pencil)[..., -1].max(axis=1)
    R = 0.5 * (e[:, None, None] * p.T + np.conj(np.swapaxes(e[:, None, None] * p.T, 1, 2)))
    nr = np.abs(np.linalg.eigvalsh(R)).max(axis=1)
    return w**2 + 2.0 * p.norm**2 * nr


def bound_th8(A, S, theta=None, cfg=None) -> float:
    """Theta-family upper bound.

    ``theta`` may be a float (one instance), a sequence (minimum over the
    given angles) or ``None``.  With ``None`` the ``cfg.th8_grid`` uniform
    angles on ``[0, 2pi)`` plus ``0`` and ``pi`` are screened with a coarse
    numerical radius, and the bound is then evaluated accurately at the
    screened minimizer and at ``0`` and ``pi``.  Every returned number is an
    accurately evaluated instance of the bound.
    """
    p = _ctx(A, S, cfg)
    if theta is not None and np.ndim(theta) == 0:
        return _sqrt(_th8_sq(p, float(theta)))
    if theta is None:
        grid = 2.0 * np.pi * np.arange(p.cfg.th8_grid) / p.cfg.th8_grid
        grid = np.unique(np.concatenate([grid, [0.0, np.pi]]))
        best = float(grid[int(np.argmin(_th8_screen(p, grid)))])
        thetas = sorted({best, 0.0, math.pi})
    else:
        thetas = [float(t) for t in theta]
    return _sqrt(min(_th8_sq(p, t) for t in thetas))


def _th17_sq(p: _Pair, alpha: float) -> float:
    mu, eta = p.mu_eta
    M = alpha * p.P + (1.0 - alpha) * p.Q + p.P @ p.P
    return _opnorm(M) - (alpha * mu + (1.0 - alpha) * eta)


def bound_th17(A, S, alpha: float = 0.0, cfg=None) -> float:
    if not 0.0 <= alpha <= 1.0:
        raise InvalidParam("alpha must lie in [0, 1]")
    return _sqrt(_th17_sq(_ctx(A, S, cfg), float(alpha)))


def bound_eq17(A, S, cfg=None) -> float:
    return bound_th17(A, S, 0.0, cfg)


def _herm_norms(stack) -> np.ndarray:
    return np.abs(np.linalg.eigvalsh(stack)).max(axis=-1)


def bound_thh1(A, S, cfg=None) -> float:
    """``sqrt(min(beta, gamma))`` with both minima taken over a uniform alpha grid."""
    p = _ctx(A, S, cfg)
    mu, eta = p.mu_eta
    alphas = np.linspace(0.0, 1.0, p.cfg.alpha_grid)
    w2 = p.w("S^2", p.T @ p.T)
    PP = p.P @ p.P
    a = alphas[:, None, None]
    beta = _herm_norms(a / 4 * p.P + (1 - 3 * a / 4) * p.Q + PP) + alphas / 2 * w2 - (1 - alphas) * eta
    gamma = _herm_norms((1 - 3 * a / 4) * p.P + a / 4 * p.Q + PP) + alphas / 2 * w2 - (1 - alphas) * mu
    return _sqrt(min(beta.min(), gamma.min()))


def bound_eq20(A, S, cfg=None) -> float:
    p = _ctx(A, S, cfg)
    n = _opnorm(p.P + p.Q + 4.0 * p.P @ p.P)
    return _sqrt(0.25 * n + 0.5 * p.w("S^2", p.T @ p.T))


def bound_th22(A, S, n: int = 1, cfg=None) -> float:
    if int(n) != n or n < 1:
        raise InvalidParam("n must be a positive integer")
    n = int(n)
    p = _ctx(A, S, cfg)
    Pn = np.linalg.matrix_power(p.P, n)
    Qn = np.linalg.matrix_power(p.Q, n)
    P2n = Pn @ Pn
    prod = 4.0 ** (n - 1) * _opnorm(Pn + P2n) * _opnorm(Qn + P2n)
    return max(prod, 0.0) ** (1.0 / (4 * n))


def bound_eq23(A, S, cfg=None) -> float:
    return bound_th22(A, S, 1, cfg)


# ---------------------------------------------------------------------------
# lower bounds


def lower_th10(A, S, cfg=None) -> float:
    """Lower bound with ``omega_A(S +- S#S)``; a negative radicand is floored at 0."""
    return _sqrt(_th10_sq(_ctx(A, S, cfg)))


def _th10_sq(p: _Pair) -> float:
    top = max(p.w("P+S", p.P + p.T), p.w("S-P", p.T - p.P))
    return top**2 - 2.0 * p.norm**2 * _opnorm(p.H)


def lower_crawford(A, S, cfg=None) -> float:
    """Crawford-number lower bound, evaluated exactly as stated."""
    p = _ctx(A, S, cfg)
    c = p.c("S", p.T)
    return _sqrt(max(c**2 * (1 + p.norm**2), p.omega**2 * (1 + p.c("P", p.P) ** 2)))


def lower_crawford_corrected(A, S, cfg=None) -> float:
    """Variant with ``c_A(S#S)`` in place of its square in the second term.

    Valid because ``||Sz||^2 >= |<Sz, z>|^2`` and ``||Sz||^2 >= c_A(S#S)``
    on the unit A-sphere.
    """
    p = _ctx(A, S, cfg)
    c = p.c("S", p.T)
    return _sqrt(max(c**2 * (1 + p.norm**2), p.omega**2 * (1 + p.c("P", p.P))))


def lower_th44(A, S, cfg=None) -> float:
    p = _ctx(A, S, cfg)
    m = float(np.linalg.svd(p.T, compute_uv=False)[-1])
    c = p.c("S", p.T)
    return _sqrt(max((1 + m**2) * p.omega**2, (1 + p.norm**2) * c**2))


# ---------------------------------------------------------------------------
# prior-work bounds


def _competitor_sq(p: _Pair, bound_id: str) -> float:
    if bound_id in ("eq3", "eq10"):
        return 2.0 * max(p.omega * p.c("P", p.P), p.c("S", p.T) * p.norm**2)
    if bound_id == "eq11":
        s2 = p.norm**2
        return max(s2, s2 * s2) + p.w("S#S^2", p.P @ p.T)
    if bound_id == "eq18":
        PP = p.P @ p.P
        inner = p.w("P^2+P^4", PP + PP @ PP) + 2.0 * p.w("S#S^2", p.P @ p.T) ** 2
        return _sqrt(inner)
    if bound_id == "eq21":
        PP = p.P @ p.P
        return 0.5 * (p.w("P^2+P", PP + p.P) + p.w("P^2-P", PP - p.P)) + p.w("S#S^2", p.P @ p.T)
    if bound_id == "eq25":
        return _opnorm(p.P + p.P @ p.P)
    if bound_id == "p03":
        return p.w("S-P", p.T - p.P) ** 2 + 2.0 * p.norm**2 * p.omega
    raise UnknownBoundId(bound_id)


_COMPETITOR_KIND = {
    "eq3": "lower",
    "eq10": "lower",
    "eq11": "upper",
    "eq18": "upper",
    "eq21": "upper",
    "eq25": "upper",
    "p03": "upper",
}


def competitor(bound_id: str, A, S, cfg=None) -> float:
    """Prior-work bound ``bound_id`` on the ``dw`` scale."""
    if bound_id not in _COMPETITOR_KIND:
        raise UnknownBoundId(bound_id)
    return _sqrt(_competitor_sq(_ctx(A, S, cfg), bound_id))


# ---------------------------------------------------------------------------
# reports


@dataclass
class BoundEntry:
    bound_id: str
    kind: str
    value: float
    params: dict = field(default_factory=dict)
    holds: bool = True
    slack: float = 0.0
    flags: tuple = ()

    def to_dict(self) -> dict:
        return {
            "bound_id": self.bound_id,
            "kind": self.kind,
            "value": self.value,
            "params": self.params,
            "holds": self.holds,
            "slack": self.slack,
            "flags": list(self.flags),
        }


@dataclass
class BoundReport:
    dw: DwResult
    entries: list
    pair_id: str = ""
    escalated: bool = False

    @property
    def violations(self) -> list:
        return [e for e in self.entries if not e.holds]

    def entry(self, bound_id: str) -> BoundEntry:
        for e in self.entries:
            if e.bound_id == bound_id:
                return e
        raise UnknownBoundId(bound_id)

    def to_dict(self) -> dict:
        return {
            "pair_id": self.pair_id,
            "dw": self.dw.to_dict(),
            "escalated": self.escalated,
            "entries": [e.to_dict() for e in self.entries],
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    def csv_rows(self) -> list:
        rows = []
        for e in self.entries:
            rows.append(
                [
                    self.pair_id,
                    e.bound_id,
                    e.kind,
                    json.dumps(e.params, sort_keys=True),
                    _fmt(e.value),
                    _fmt(self.dw.value),
                    _fmt(self.dw.upper_cap),
                    "true" if e.holds else "false",
                    _fmt(e.slack),
                ]
            )
        return rows

    def to_csv(self, header: bool = True) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if header:
            w.writerow(REPORT_COLUMNS)
        w.writerows(self.csv_rows())
        return buf.getvalue()


def _fmt(x: float) -> str:
    return "%.17g" % x


def _entries(p: _Pair):
    """All bound values as ``(bound_id, kind, value, params, flags)`` tuples."""
    out = []
    add = lambda *t: out.append(t)  # noqa: E731

    add("theo1", "upper", bound_theo1(p, None, 2.0), {"alpha": 2.0}, ())
    add("theo1_limit", "upper", bound_theo1_limit(p, None), {}, ())
    add("delta_refined", "upper", bound_delta_refined(p, None), {}, ("optimizer-dependent",))
    lo3, up3 = bounds_th3(p, None)
    add("th3_lower", "lower", lo3, {}, ())
    add("th3_upper", "upper", up3, {}, ())
    add("th11", "upper", bound_th11(p, None), {}, ())
    add("th8", "upper", bound_th8(p, None), {"grid": p.cfg.th8_grid}, ("grid",))
    add("p02_plus", "upper", bound_th8(p, None, 0.0), {"theta": 0.0}, ())
    add("p02_minus", "upper", bound_th8(p, None, math.pi), {"theta": math.pi}, ())
    sq10 = _th10_sq(p)
    add("th10", "lower", _sqrt(sq10), {}, ("floored",) if sq10 < 0 else ())
    alphas = np.linspace(0.0, 1.0, p.cfg.alpha_grid)
    th17 = min(_th17_sq(p, float(a)) for a in alphas)
    add("th17", "upper", _sqrt(th17), {"alpha_grid": p.cfg.alpha_grid}, ("optimizer-dependent", "grid"))
    add("eq17", "upper", bound_eq17(p, None), {"alpha": 0.0}, ("optimizer-dependent",))
    add("thh1", "upper", bound_thh1(p, None), {"alpha_grid": p.cfg.alpha_grid}, ("optimizer-dependent", "grid"))
    add("eq20", "upper", bound_eq20(p, None), {}, ())
    for n in (1, 2, 3):
        add("eq23" if n == 1 else "th22", "upper", bound_th22(p, None, n), {"n": n}, ())
    add("crawford", "lower", lower_crawford(p, None), {}, ())
    add("crawford_corrected", "lower", lower_crawford_corrected(p, None), {}, ())
    add("th44", "lower", lower_th44(p, None), {}, ())
    for cid in COMPETITORS:
        add(cid, _COMPETITOR_KIND[cid], competitor(cid, p, None), {}, ("competitor",))
    add("sandwich_lower", "lower", max(p.omega, p.norm**2), {}, ())
    return out


def _judge(kind, value, dw_value, tol):
    if kind == "upper":
        holds = value >= dw_value - tol
    else:
        holds = value <= dw_value + tol
    return holds, abs(value**2 - dw_value**2)


def bound_report(A, S, cfg=None, pair_id: str = "", tol: float = UPPER_TOL) -> BoundReport:
    """Evaluate every bound and judge it against the computed dw enclosure.

    Lower-bound failures trigger one ``x4`` restart escalation of the dw
    optimizer before they are reported.
    """
    p = _ctx(A, S, cfg)
    raw = _entries(p)

    def run_dw(c):
        value, y, starts, converged = dw_radius(p.T, c)
        cap = math.sqrt(p.omega**2 + p.norm**4)
        return DwResult(value, cap, p.reduced.lift(y), starts, converged)

    dw = run_dw(p.cfg)
    escalated = False
    if any(k == "lower" and not _judge(k, v, dw.value, tol)[0] for _, k, v, _, _ in raw):
        more = run_dw(p.cfg.escalated(4))
        escalated = True
        if more.value > dw.value:
            dw = more

    entries = []
    for bid, kind, value, params, flags in raw:
        holds, slack = _judge(kind, value, dw.value, tol)
        entries.append(BoundEntry(bid, kind, float(value), params, bool(holds), float(slack), tuple(flags)))
    entries.append(
        BoundEntry(
            "sandwich_upper",
            "upper",
            dw.upper_cap,
            {},
            bool(dw.value <= dw.upper_cap + 1e-9),
            abs(dw.upper_cap**2 - dw.value**2),
            (),
        )
    )
    return BoundReport(dw=dw, entries=entries, pair_id=pair_id, escalated=escalated)

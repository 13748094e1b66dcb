"""Command-line interface.

Exit codes: 0 success, 1 violations or mismatches, 2 bad input or
configuration, 3 invalid weight or operator outside B_A, 4 optimizer did
not converge (output is still written).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import replace

import numpy as np

from .core import (
    NotHermitian,
    NotInBA,
    NotPSD,
    SemiHilbertError,
    ZeroWeight,
    a_adjoint,
)
from .jsonio import FormatError, load_matrices, matrix_to_json
from .radii import DEFAULT_CONFIG, OptimizerConfig

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_DOMAIN = 3
EXIT_NONCONVERGED = 4


def _json_out(obj) -> None:
    json.dump(obj, sys.stdout, indent=2, default=_default)
    sys.stdout.write("\n")


def _default(o):
    if isinstance(o, (np.floating, np.integer)):
        return o.item()
    if isinstance(o, np.bool_):
        return bool(o)
    raise TypeError(f"not serializable: {type(o).__name__}")


def _write(path, text: str) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(text)


def _optimizer_config(args) -> OptimizerConfig:
    cfg = OptimizerConfig.from_json(args.config) if args.config else DEFAULT_CONFIG
    overrides = {
        "restarts": args.restarts,
        "theta_grid": args.theta_grid,
        "alpha_grid": args.alpha_grid,
        "refine_tol": args.tol,
    }
    if getattr(args, "seed", None) is not None and args.command in ("compute", "bounds", "verify"):
        overrides["seed"] = args.seed
    return replace(cfg, **{k: v for k, v in overrides.items() if v is not None})


# ---------------------------------------------------------------------------
# subcommands


def cmd_compute(args) -> int:
    from .radii import a_crawford, a_dw_radius, a_min_modulus, a_numerical_radius, a_op_norm

    cfg = _optimizer_config(args)
    m = load_matrices(args.pair, ("A", "S"))
    A, S = m["A"], m["S"]
    dw = a_dw_radius(A, S, cfg)
    out = {
        "op_norm": a_op_norm(A, S),
        "omega": a_numerical_radius(A, S, cfg),
        "crawford": a_crawford(A, S, cfg),
        "min_modulus": a_min_modulus(A, S),
        "dw": dw.to_dict(),
        "S_adjoint": matrix_to_json(a_adjoint(A, S)),
    }
    _json_out(out)
    return EXIT_OK if dw.converged else EXIT_NONCONVERGED


def cmd_bounds(args) -> int:
    from .bounds import bound_report

    cfg = _optimizer_config(args)
    m = load_matrices(args.pair, ("A", "S"))
    rep = bound_report(m["A"], m["S"], cfg, pair_id=args.pair_id or "")
    _json_out(rep.to_dict())
    if args.out:
        _write(args.out, rep.to_csv())
    if rep.violations:
        return EXIT_FAIL
    return EXIT_OK if rep.dw.converged else EXIT_NONCONVERGED


def _verify_pair(A, S, cfg) -> dict:
    from .bounds import bound_report
    from .radii import a_numerical_radius

    rep = bound_report(A, S, cfg)
    Sa = a_adjoint(A, S)
    checks = {
        "omega_adjoint": abs(a_numerical_radius(A, S, cfg) - a_numerical_radius(A, Sa, cfg)) <= 1e-8,
        "adjoint_identity": bool(
            np.max(np.abs(np.asarray(A) @ Sa - S.conj().T @ np.asarray(A)))
            <= 1e-10 * max(1.0, float(np.linalg.norm(S, 2)) * float(np.linalg.norm(A, 2)))
        ),
    }
    return {
        "kind": "pair",
        "ok": not rep.violations and all(checks.values()),
        "violations": [e.to_dict() for e in rep.violations],
        "checks": checks,
        "dw": rep.dw.to_dict(),
    }


def _verify_offdiag(A, B, C, cfg) -> dict:
    from .blocks import bound_th310, bound_th312, bound_TT, dw_offdiag

    dw = dw_offdiag(A, B, C, cfg)
    values = {"TT": bound_TT(A, B, C, cfg), "th310": bound_th310(A, B, C, cfg), "th312": bound_th312(A, B, C, cfg)}
    holds = {k: v >= dw - 1e-6 for k, v in values.items()}
    return {"kind": "offdiag", "ok": all(holds.values()), "dw_lower": dw, "values": values, "holds": holds}


def _verify_triple(A, S, T, cfg, seed) -> dict:
    from .blocks import omega_block_equalities
    from .fuzz import random_a_unitary

    V = random_a_unitary(np.random.default_rng(seed), A)
    rep = omega_block_equalities(A, S, T, cfg, V=V)
    return {"kind": "equalities", **rep.to_dict()}


def cmd_verify(args) -> int:
    cfg = _optimizer_config(args)
    with open(args.file) as fh:
        try:
            keys = set(json.load(fh))
        except json.JSONDecodeError as exc:
            raise FormatError(f"{args.file}: invalid JSON ({exc})") from exc
    if {"B", "C"} <= keys:
        m = load_matrices(args.file, ("A", "B", "C"))
        out = _verify_offdiag(m["A"], m["B"], m["C"], cfg)
    elif "T" in keys:
        m = load_matrices(args.file, ("A", "S", "T"))
        out = _verify_triple(m["A"], m["S"], m["T"], cfg, cfg.seed)
    else:
        m = load_matrices(args.file, ("A", "S"))
        out = _verify_pair(m["A"], m["S"], cfg)
    _json_out(out)
    return EXIT_OK if out["ok"] else EXIT_FAIL


def cmd_fuzz(args) -> int:
    from .fuzz import FuzzConfig, run_fuzz

    ocfg = _optimizer_config(args)
    fcfg = FuzzConfig(
        seed=args.seed if args.seed is not None else 0,
        count=args.count,
        dims=tuple(args.dims),
        rank_deficit=tuple(args.rank_deficit),
        magnitude=args.magnitude,
        workers=args.workers,
    )
    t0 = time.perf_counter()
    result = run_fuzz(fcfg, ocfg)
    summary = result.summary()
    summary["seconds"] = round(time.perf_counter() - t0, 3)
    if args.lemma_samples:
        from .lemmas import run_lemma_suite

        lem = run_lemma_suite(args.lemma_samples, fcfg.seed)
        summary["lemmas"] = [r.to_dict() for r in lem]
        summary["lemma_violations"] = sum(r.violations for r in lem)
    if args.out:
        _write(args.out, result.to_csv())
    if args.summary:
        _write(args.summary, json.dumps(summary, indent=2))
    _json_out(summary)
    failed = summary["violations"] or summary.get("lemma_violations", 0)
    return EXIT_FAIL if failed else EXIT_OK


def cmd_lemmas(args) -> int:
    from .lemmas import LEMMA_IDS, check_kz_implied, run_lemma

    ids = args.only or list(LEMMA_IDS)
    results = [run_lemma(lid, args.samples, args.seed or 0) for lid in ids]
    if not args.only:
        results.append(check_kz_implied(args.samples, args.seed or 0))
    for r in results:
        sys.stdout.write(json.dumps(r.to_dict()) + "\n")
    return EXIT_OK if all(r.ok for r in results) else EXIT_FAIL


def cmd_reproduce(args) -> int:
    from .reproduce import reproduce, rows_to_csv

    rows = reproduce()
    text = rows_to_csv(rows)
    sys.stdout.write(text)
    if args.out:
        _write(args.out, text)
    bad = [r for r in rows if not r.ok]
    for r in bad:
        sys.stderr.write(f"mismatch: {r.remark_id} ({r.verdict})\n")
    return EXIT_FAIL if bad else EXIT_OK


# ---------------------------------------------------------------------------
# parser


def _int_list(text: str) -> list:
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected integers, got {text!r}") from exc


def _add_optimizer_flags(p) -> None:
    g = p.add_argument_group("optimizer")
    g.add_argument("--config", help="JSON file with optimizer settings (flags override it)")
    g.add_argument("--restarts", type=int, help="random restarts for the dw optimizer")
    g.add_argument("--theta-grid", type=int, help="angle grid size for omega and c")
    g.add_argument("--alpha-grid", type=int, help="alpha grid size for the alpha families")
    g.add_argument("--tol", type=float, help="angle refinement tolerance")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="semihilbert",
        description="A-numerical radius, A-Davis-Wielandt radius and their bounds for PSD-weighted matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="seminorm, radii and adjoint of one pair")
    p.add_argument("pair", help='pair JSON {"A": ..., "S": ...}')
    p.add_argument("--seed", type=int, help="optimizer seed")
    _add_optimizer_flags(p)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("bounds", help="bound report for one pair")
    p.add_argument("pair")
    p.add_argument("--seed", type=int)
    p.add_argument("--pair-id", default="")
    p.add_argument("--out", help="CSV output path")
    _add_optimizer_flags(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("verify", help="check a pair, an (A,S,T) triple or an (A,B,C) block file")
    p.add_argument("file")
    p.add_argument("--seed", type=int)
    _add_optimizer_flags(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("fuzz", help="bound reports over a seeded random corpus")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--dims", type=_int_list, default=[2, 3, 4])
    p.add_argument("--rank-deficit", type=_int_list, default=[0, 1])
    p.add_argument("--magnitude", type=float, default=1.0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--lemma-samples", type=int, default=0, help="also run the lemma suite")
    p.add_argument("--out", help="CSV of all report entries")
    p.add_argument("--summary", help="write the summary JSON here as well")
    _add_optimizer_flags(p)
    p.set_defaults(func=cmd_fuzz)

    p = sub.add_parser("lemmas", help="seeded slack checks of the auxiliary inequalities")
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--only", nargs="+", help="subset of lemma ids")
    p.set_defaults(func=cmd_lemmas)

    p = sub.add_parser("reproduce", help="regenerate the published numeric comparisons")
    p.add_argument("--out", help="also write the CSV here")
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (NotPSD, NotHermitian, ZeroWeight, NotInBA) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_DOMAIN
    except (SemiHilbertError, OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

"""JSON encoding of complex matrices and of pair/block input files.

A matrix is ``{"dim": n, "entries": [[[re, im], ...], ...]}`` in row-major
order.  A pair file is ``{"A": <matrix>, "S": <matrix>}``; block files use
keys ``A, B, C`` (off-diagonal bounds) or ``A, S, T`` (equalities).
"""

from __future__ import annotations

import json

import numpy as np

from .core import DimensionMismatch, SemiHilbertError

__all__ = [
    "FormatError",
    "matrix_to_json",
    "matrix_from_json",
    "load_matrices",
    "load_pair",
    "dump_pair",
]


class FormatError(SemiHilbertError):
    """Malformed matrix or pair JSON."""


def matrix_to_json(M) -> dict:
    M = np.asarray(M, dtype=complex)
    return {
        "dim": int(M.shape[0]),
        "entries": [[[float(z.real), float(z.imag)] for z in row] for row in M],
    }


def matrix_from_json(obj) -> np.ndarray:
    if not isinstance(obj, dict) or "entries" not in obj:
        raise FormatError("matrix must be an object with an 'entries' field")
    rows = obj["entries"]
    try:
        M = np.array([[complex(float(e[0]), float(e[1])) for e in row] for row in rows], dtype=complex)
    except (TypeError, ValueError, IndexError, KeyError) as exc:
        raise FormatError(f"bad matrix entry: {exc}") from exc
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] == 0:
        raise FormatError(f"matrix must be square and nonempty, got shape {M.shape}")
    if "dim" in obj and int(obj["dim"]) != M.shape[0]:
        raise DimensionMismatch(f"declared dim {obj['dim']} but entries are {M.shape[0]}x{M.shape[0]}")
    if not np.all(np.isfinite(M)):
        raise FormatError("matrix entries must be finite")
    return M


def load_matrices(path, keys) -> dict:
    """Read a JSON file and decode the listed matrix keys."""
    try:
        with open(path) as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from exc
    if not isinstance(data, dict):
        raise FormatError(f"{path}: top level must be an object")
    missing = [k for k in keys if k not in data]
    if missing:
        raise FormatError(f"{path}: missing keys {missing}")
    out = {k: matrix_from_json(data[k]) for k in keys}
    dims = {m.shape[0] for m in out.values()}
    if len(dims) != 1:
        raise DimensionMismatch(f"{path}: matrices have different dimensions {sorted(dims)}")
    return out


def load_pair(path):
    m = load_matrices(path, ("A", "S"))
    return m["A"], m["S"]


def dump_pair(path, A, S) -> None:
    with open(path, "w") as fh:
        json.dump({"A": matrix_to_json(A), "S": matrix_to_json(S)}, fh)

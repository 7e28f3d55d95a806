"""Exact linear algebra over a small field, backed by lookup tables.

The hot kernels (row reduction, reduction against a basis) live in the
compiled module ``chainring._gfcore`` when it was built, otherwise in the
NumPy fallback ``chainring._gfcore_py``.  Everything here is deterministic:
RREF is canonical for a fixed column order, so matrices double as dictionary
keys for spans.
"""

from __future__ import annotations

import os
from typing import NamedTuple, Optional

import numpy as np

if os.environ.get("CHAINRING_PURE_PYTHON"):
    from . import _gfcore_py as _impl
else:
    try:
        from . import _gfcore as _impl
    except ImportError:  # pragma: no cover - depends on build environment
        from . import _gfcore_py as _impl

BACKEND = _impl.BACKEND

DTYPE = np.int16


class GfTables(NamedTuple):
    """Arithmetic tables for one field; element i is the field element i."""

    q: int
    add: np.ndarray
    sub: np.ndarray
    mul: np.ndarray
    inv: np.ndarray
    neg: np.ndarray


def as_matrix(rows, ncols: int) -> np.ndarray:
    mat = np.array(rows, dtype=DTYPE).reshape(-1, ncols)
    return np.ascontiguousarray(mat)


def rref(mat: np.ndarray, tb: GfTables):
    """Canonical reduced row-echelon form.

    Returns ``(basis, pivots)`` with zero rows dropped; both are fresh arrays
    and ``basis`` is marked read-only so spans can be hashed by bytes.
    """
    work = np.ascontiguousarray(mat, dtype=DTYPE).copy()
    if work.ndim != 2:
        raise ValueError("rref expects a 2-D matrix")
    pivots = np.zeros(max(1, min(work.shape)), dtype=DTYPE)
    rank = _impl.rref(work, tb.add, tb.sub, tb.mul, tb.inv, pivots)
    basis = work[:rank].copy()
    basis.flags.writeable = False
    return basis, pivots[:rank].astype(np.int64)


def reduce_rows(rows: np.ndarray, basis: np.ndarray, pivots, tb: GfTables) -> np.ndarray:
    """Residuals of ``rows`` after reduction against an RREF basis."""
    work = np.ascontiguousarray(rows, dtype=DTYPE).copy()
    if basis.shape[0]:
        _impl.reduce_rows(
            work,
            np.ascontiguousarray(basis),
            np.asarray(pivots, dtype=DTYPE),
            tb.add,
            tb.sub,
            tb.mul,
        )
    return work


def in_span(vec: np.ndarray, basis: np.ndarray, pivots, tb: GfTables) -> bool:
    residual = reduce_rows(vec.reshape(1, -1), basis, pivots, tb)
    return not residual.any()


def matmul(a: np.ndarray, b: np.ndarray, tb: GfTables) -> np.ndarray:
    """Field matrix product; accumulates through the add table."""
    a = np.asarray(a, dtype=DTYPE)
    b = np.asarray(b, dtype=DTYPE)
    if a.shape[1] != b.shape[0]:
        raise ValueError("shape mismatch")
    out = np.zeros((a.shape[0], b.shape[1]), dtype=DTYPE)
    for k in range(a.shape[1]):
        colk = a[:, k]
        if not colk.any():
            continue
        out = tb.add[out, tb.mul[colk[:, None], b[k][None, :]]]
    return out


def matvec(a: np.ndarray, v: np.ndarray, tb: GfTables) -> np.ndarray:
    return matmul(a, np.asarray(v, dtype=DTYPE).reshape(-1, 1), tb).ravel()


def nullspace(mat: np.ndarray, tb: GfTables) -> np.ndarray:
    """Rows spanning the right kernel ``{x : mat @ x = 0}``."""
    ncols = mat.shape[1]
    basis, pivots = rref(mat, tb)
    free = [c for c in range(ncols) if c not in set(pivots.tolist())]
    out = np.zeros((len(free), ncols), dtype=DTYPE)
    for i, c in enumerate(free):
        out[i, c] = 1
        for j, pc in enumerate(pivots):
            out[i, pc] = tb.neg[basis[j, c]]
    return out


def solve(a: np.ndarray, y: np.ndarray, tb: GfTables) -> Optional[np.ndarray]:
    """One solution of ``a @ x = y`` with free variables set to zero."""
    a = np.asarray(a, dtype=DTYPE)
    y = np.asarray(y, dtype=DTYPE).reshape(-1, 1)
    aug = np.hstack([a, y])
    basis, pivots = rref(aug, tb)
    ncols = a.shape[1]
    if any(p == ncols for p in pivots):
        return None
    x = np.zeros(ncols, dtype=DTYPE)
    for j, pc in enumerate(pivots):
        x[pc] = basis[j, ncols]
    return x


def inverse(a: np.ndarray, tb: GfTables) -> np.ndarray:
    """Inverse of a square matrix; raises if singular."""
    n = a.shape[0]
    aug = np.hstack([np.asarray(a, dtype=DTYPE), np.eye(n, dtype=DTYPE)])
    basis, pivots = rref(aug, tb)
    if len(pivots) != n or any(p >= n for p in pivots):
        raise ValueError("matrix is singular")
    return basis[:, n:].copy()


def span_key(basis: np.ndarray) -> bytes:
    """Hashable canonical key for the row space of an RREF basis."""
    return basis.shape[0].to_bytes(4, "little") + basis.tobytes()

"""Bulk stripe kernels over uint16 symbol arrays.

The compiled extension is used when it was built; otherwise a numpy
implementation with the same results takes over.  Set QUINTPARITY_PURE=1 to
force the numpy path.
"""

from __future__ import annotations

import os

import numpy as np

from .code import CodeParams
from .galois import FieldTables

try:
    if os.environ.get("QUINTPARITY_PURE"):
        raise ImportError("numpy kernels forced")
    from ._kernels import gf_matmul_rows as _compiled
except ImportError:
    _compiled = None

BACKEND = "compiled" if _compiled is not None else "numpy"


def _tables(f: FieldTables) -> tuple[np.ndarray, np.ndarray]:
    cache = getattr(f, "_np_tables", None)
    if cache is None:
        cache = (np.asarray(f.exp, dtype=np.int32), np.asarray(f.log, dtype=np.int32))
        f._np_tables = cache
    return cache


def matmul_rows_numpy(f: FieldTables, a: np.ndarray, x: np.ndarray) -> np.ndarray:
    """out[s, i] = sum_j a[i, j] x[s, j], vectorized over the stripes s."""
    exp, log = _tables(f)
    a = np.asarray(a, dtype=np.uint16)
    x = np.asarray(x, dtype=np.uint16)
    out = np.zeros((x.shape[0], a.shape[0]), dtype=np.uint16)
    for j in range(a.shape[1]):
        col = x[:, j]
        nz = col != 0
        if not nz.any():
            continue
        lx = log[col[nz]]
        for i in range(a.shape[0]):
            c = int(a[i, j])
            if c:
                out[nz, i] ^= exp[lx + log[c]].astype(np.uint16)
    return out


def matmul_rows(f: FieldTables, a, x, backend: str | None = None) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=np.uint16)
    x = np.ascontiguousarray(x, dtype=np.uint16)
    if x.ndim != 2 or a.ndim != 2 or a.shape[1] != x.shape[1]:
        raise ValueError(f"shape mismatch: matrix {a.shape}, stripes {x.shape}")
    backend = backend or BACKEND
    if backend == "compiled":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not available")
        exp, log = _tables(f)
        return _compiled(exp, log, a, x)
    return matmul_rows_numpy(f, a, x)


def parity_matrix(params: CodeParams) -> np.ndarray:
    return np.array(params.rows, dtype=np.uint16).reshape(5, params.k)


def encode_many(params: CodeParams, data, backend: str | None = None) -> np.ndarray:
    """Parity for each row of ``data`` (shape stripes x k); returns stripes x 5."""
    return matmul_rows(params.field, parity_matrix(params), data, backend)


def syndrome_many(params: CodeParams, stripes, backend: str | None = None) -> np.ndarray:
    """Syndromes of each row of ``stripes`` (shape stripes x (k + 5))."""
    stripes = np.asarray(stripes, dtype=np.uint16)
    k = params.k
    return encode_many(params, stripes[:, :k], backend) ^ stripes[:, k:]

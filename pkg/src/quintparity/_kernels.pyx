# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled bulk kernel: many stripes through one small GF(2^m) matrix."""

import numpy as np
cimport numpy as cnp

ctypedef cnp.uint16_t sym_t
ctypedef cnp.int32_t idx_t


def gf_matmul_rows(const idx_t[::1] exp, const idx_t[::1] log,
                   const sym_t[:, ::1] a, const sym_t[:, ::1] x):
    """out[s, i] = sum_j a[i, j] * x[s, j] over GF(2^m)."""
    cdef Py_ssize_t nrow = a.shape[0], ncol = a.shape[1], ns = x.shape[0]
    cdef Py_ssize_t s, i, j
    cdef idx_t la
    cdef sym_t v, acc
    out_arr = np.zeros((ns, nrow), dtype=np.uint16)
    cdef sym_t[:, ::1] out = out_arr
    # log of each matrix entry, -1 for zero
    cdef idx_t[:, ::1] alog = np.full((nrow, ncol), -1, dtype=np.int32)
    for i in range(nrow):
        for j in range(ncol):
            if a[i, j]:
                alog[i, j] = log[a[i, j]]
    with nogil:
        for s in range(ns):
            for i in range(nrow):
                acc = 0
                for j in range(ncol):
                    la = alog[i, j]
                    v = x[s, j]
                    if la >= 0 and v:
                        acc ^= <sym_t>exp[la + log[v]]
                out[s, i] = acc
    return out_arr

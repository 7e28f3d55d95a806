# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for exact linear algebra over small fields.

Same contract as chainring._gfcore_py; arithmetic is table-driven so any
field with elements encoded as 0..q-1 works.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

BACKEND = "cython"


def rref(cnp.int16_t[:, ::1] mat,
         const cnp.int16_t[:, ::1] addt,
         const cnp.int16_t[:, ::1] subt,
         const cnp.int16_t[:, ::1] mult,
         const cnp.int16_t[::1] invt,
         cnp.int16_t[::1] pivots_out):
    cdef Py_ssize_t nrows = mat.shape[0]
    cdef Py_ssize_t ncols = mat.shape[1]
    cdef Py_ssize_t rank = 0
    cdef Py_ssize_t col, row, k, pivot
    cdef cnp.int16_t scale, factor, tmp
    for col in range(ncols):
        if rank == nrows:
            break
        pivot = -1
        for row in range(rank, nrows):
            if mat[row, col] != 0:
                pivot = row
                break
        if pivot < 0:
            continue
        if pivot != rank:
            for k in range(ncols):
                tmp = mat[rank, k]
                mat[rank, k] = mat[pivot, k]
                mat[pivot, k] = tmp
        scale = invt[mat[rank, col]]
        if scale != 1:
            for k in range(ncols):
                mat[rank, k] = mult[scale, mat[rank, k]]
        for row in range(nrows):
            if row == rank:
                continue
            factor = mat[row, col]
            if factor == 0:
                continue
            for k in range(ncols):
                mat[row, k] = subt[mat[row, k], mult[factor, mat[rank, k]]]
        pivots_out[rank] = <cnp.int16_t> col
        rank += 1
    return rank


def reduce_rows(cnp.int16_t[:, ::1] rows,
                const cnp.int16_t[:, ::1] basis,
                const cnp.int16_t[::1] pivots,
                const cnp.int16_t[:, ::1] addt,
                const cnp.int16_t[:, ::1] subt,
                const cnp.int16_t[:, ::1] mult):
    cdef Py_ssize_t nrows = rows.shape[0]
    cdef Py_ssize_t ncols = rows.shape[1]
    cdef Py_ssize_t nbasis = basis.shape[0]
    cdef Py_ssize_t i, j, k, col
    cdef cnp.int16_t factor
    for i in range(nrows):
        for j in range(nbasis):
            col = pivots[j]
            factor = rows[i, col]
            if factor == 0:
                continue
            for k in range(ncols):
                rows[i, k] = subt[rows[i, k], mult[factor, basis[j, k]]]

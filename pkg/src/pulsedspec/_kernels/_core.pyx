# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled correlation sweep kernels (see py_backend for the reference)."""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def accumulate_correlation(object transfer_obj, object seeds_obj, Py_ssize_t readout):
    transfer_arr = np.ascontiguousarray(transfer_obj, dtype=np.complex128)
    seeds_arr = np.ascontiguousarray(seeds_obj, dtype=np.complex128)
    cdef double complex[:, :, ::1] transfer = transfer_arr
    cdef double complex[:, ::1] seeds = seeds_arr
    cdef Py_ssize_t n = transfer.shape[0]
    if transfer.shape[1] != 4 or transfer.shape[2] != 4:
        raise ValueError("transfer must have shape (n, 4, 4)")
    if seeds.shape[0] != n + 1 or seeds.shape[1] != 4:
        raise ValueError("seeds must have shape (n + 1, 4)")
    if readout < 0 or readout > 3:
        raise ValueError("readout must be in 0..3")

    s_arr = np.empty((n + 1, 4), dtype=np.complex128)
    c_arr = np.zeros(n + 1, dtype=np.complex128)
    cdef double complex[:, ::1] s = s_arr
    cdef double complex[::1] c = c_arr
    cdef double complex a00, a01, a02, a03, a10, a11, a12, a13
    cdef double complex a20, a21, a22, a23, a30, a31, a32, a33
    cdef double complex s0, s1, s2, s3
    cdef Py_ssize_t k, i

    for i in range(4):
        s[0, i] = seeds[0, i]
    c[0] = seeds[0, readout]
    for k in range(n):
        a00 = transfer[k, 0, 0]; a01 = transfer[k, 0, 1]
        a02 = transfer[k, 0, 2]; a03 = transfer[k, 0, 3]
        a10 = transfer[k, 1, 0]; a11 = transfer[k, 1, 1]
        a12 = transfer[k, 1, 2]; a13 = transfer[k, 1, 3]
        a20 = transfer[k, 2, 0]; a21 = transfer[k, 2, 1]
        a22 = transfer[k, 2, 2]; a23 = transfer[k, 2, 3]
        a30 = transfer[k, 3, 0]; a31 = transfer[k, 3, 1]
        a32 = transfer[k, 3, 2]; a33 = transfer[k, 3, 3]
        for i in range(k + 1):
            s0 = s[i, 0]; s1 = s[i, 1]; s2 = s[i, 2]; s3 = s[i, 3]
            s[i, 0] = a00 * s0 + a01 * s1 + a02 * s2 + a03 * s3
            s[i, 1] = a10 * s0 + a11 * s1 + a12 * s2 + a13 * s3
            s[i, 2] = a20 * s0 + a21 * s1 + a22 * s2 + a23 * s3
            s[i, 3] = a30 * s0 + a31 * s1 + a32 * s2 + a33 * s3
            c[k + 1 - i] = c[k + 1 - i] + s[i, readout]
        for i in range(4):
            s[k + 1, i] = seeds[k + 1, i]
        c[0] = c[0] + seeds[k + 1, readout]
    return c_arr


def correlation_field(object transfer_obj, object seeds_obj, Py_ssize_t readout):
    transfer_arr = np.ascontiguousarray(transfer_obj, dtype=np.complex128)
    seeds_arr = np.ascontiguousarray(seeds_obj, dtype=np.complex128)
    cdef double complex[:, :, ::1] transfer = transfer_arr
    cdef double complex[:, ::1] seeds = seeds_arr
    cdef Py_ssize_t n = transfer.shape[0]
    if transfer.shape[1] != 4 or transfer.shape[2] != 4:
        raise ValueError("transfer must have shape (n, 4, 4)")
    if seeds.shape[0] != n + 1 or seeds.shape[1] != 4:
        raise ValueError("seeds must have shape (n + 1, 4)")
    if readout < 0 or readout > 3:
        raise ValueError("readout must be in 0..3")

    s_arr = np.empty((n + 1, 4), dtype=np.complex128)
    f_arr = np.zeros((n + 1, n + 1), dtype=np.complex128)
    cdef double complex[:, ::1] s = s_arr
    cdef double complex[:, ::1] f = f_arr
    cdef double complex a00, a01, a02, a03, a10, a11, a12, a13
    cdef double complex a20, a21, a22, a23, a30, a31, a32, a33
    cdef double complex s0, s1, s2, s3
    cdef Py_ssize_t k, i

    for i in range(4):
        s[0, i] = seeds[0, i]
    for i in range(n + 1):
        f[i, 0] = seeds[i, readout]
    for k in range(n):
        a00 = transfer[k, 0, 0]; a01 = transfer[k, 0, 1]
        a02 = transfer[k, 0, 2]; a03 = transfer[k, 0, 3]
        a10 = transfer[k, 1, 0]; a11 = transfer[k, 1, 1]
        a12 = transfer[k, 1, 2]; a13 = transfer[k, 1, 3]
        a20 = transfer[k, 2, 0]; a21 = transfer[k, 2, 1]
        a22 = transfer[k, 2, 2]; a23 = transfer[k, 2, 3]
        a30 = transfer[k, 3, 0]; a31 = transfer[k, 3, 1]
        a32 = transfer[k, 3, 2]; a33 = transfer[k, 3, 3]
        for i in range(k + 1):
            s0 = s[i, 0]; s1 = s[i, 1]; s2 = s[i, 2]; s3 = s[i, 3]
            s[i, 0] = a00 * s0 + a01 * s1 + a02 * s2 + a03 * s3
            s[i, 1] = a10 * s0 + a11 * s1 + a12 * s2 + a13 * s3
            s[i, 2] = a20 * s0 + a21 * s1 + a22 * s2 + a23 * s3
            s[i, 3] = a30 * s0 + a31 * s1 + a32 * s2 + a33 * s3
            f[i, k + 1 - i] = s[i, readout]
        for i in range(4):
            s[k + 1, i] = seeds[k + 1, i]
    return f_arr

# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled direct Toeplitz summation.

``out[i] = sum_j a[j] * kernel_rev[width - 1 - i + j]`` accumulated with ``j``
ascending for every ``i``. The loop runs over blocks of outputs (stored in
reverse, ``q = width - 1 - i``) with ``j`` outermost, so the innermost loop is
a contiguous axpy the compiler vectorizes without reassociating any sum.
"""

import numpy as np

DEF BLOCK = 512


def toeplitz_direct(const double[::1] a_re, const double[::1] a_im,
                    const double[::1] kernel_rev, Py_ssize_t width):
    cdef Py_ssize_t na = a_re.shape[0]
    cdef Py_ssize_t q0, q1, q, j
    cdef double ar, ai
    cdef const double* kp
    cdef double* rp
    cdef double* ip
    if a_im.shape[0] != na:
        raise ValueError("a_re and a_im differ in length")
    if kernel_rev.shape[0] < width + na - 1:
        raise ValueError("kernel too short for requested width")
    rev_re = np.zeros(width)
    rev_im = np.zeros(width)
    cdef double[::1] rr = rev_re
    cdef double[::1] ri = rev_im
    if width == 0 or na == 0:
        return rev_re, rev_im
    with nogil:
        for q0 in range(0, width, BLOCK):
            q1 = min(q0 + BLOCK, width)
            rp = &rr[q0]
            ip = &ri[q0]
            for j in range(na):
                ar = a_re[j]
                ai = a_im[j]
                kp = &kernel_rev[q0 + j]
                for q in range(q1 - q0):
                    rp[q] = rp[q] + ar * kp[q]
                    ip[q] = ip[q] + ai * kp[q]
    return rev_re[::-1].copy(), rev_im[::-1].copy()

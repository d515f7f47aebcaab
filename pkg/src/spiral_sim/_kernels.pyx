# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled tick kernel. Must stay bit-identical to ``_fallback.step_counts``."""

cimport cython
from libc.stdint cimport int64_t


def step_counts(w_old_, w_new_, drive_, index, double beta, double threshold):
    cdef const double[::1] w_old = w_old_
    cdef double[::1] w_new = w_new_
    cdef const double[::1] drive = drive_
    # CSR rows list the same neighbours, in the same order, as the padded table
    cdef const int64_t[::1] indptr = index.indptr
    cdef const int64_t[::1] indices = index.indices
    cdef Py_ssize_t n = w_old.shape[0]
    cdef Py_ssize_t i, c
    cdef double acc, x
    cdef Py_ssize_t silent = 0, new_silent = 0, new_speaking = 0
    cdef bint was_silent, is_silent

    with nogil:
        for i in range(n):
            acc = 0.0
            for c in range(indptr[i], indptr[i + 1]):
                acc = acc + w_old[indices[c]]
            x = w_old[i] + drive[i] + beta * acc
            w_new[i] = x
            was_silent = w_old[i] <= threshold
            is_silent = x <= threshold
            silent += is_silent
            new_silent += is_silent and not was_silent
            new_speaking += was_silent and not is_silent
    return silent, new_silent, new_speaking

# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Z2 column reduction over CSC arrays.

Same contract as reduction_py.reduce_columns. Reduced pivot columns are
kept as sorted malloc'd row arrays; column addition is a symmetric
difference merge of two sorted arrays.
"""

from libc.stdlib cimport free, malloc
from libc.string cimport memcpy

import numpy as np


cdef inline long long _sym_diff(int* a, long long na, int* b, long long nb,
                                int* out) noexcept nogil:
    # out = a XOR b over sorted row arrays; returns length of out
    cdef long long i = 0, j = 0, k = 0
    while i < na and j < nb:
        if a[i] < b[j]:
            out[k] = a[i]; i += 1; k += 1
        elif a[i] > b[j]:
            out[k] = b[j]; j += 1; k += 1
        else:
            i += 1; j += 1
    while i < na:
        out[k] = a[i]; i += 1; k += 1
    while j < nb:
        out[k] = b[j]; j += 1; k += 1
    return k


def reduce_columns(col_ptr, rows):
    """Reduce a Z2 boundary matrix in CSC layout; see reduction_py."""
    col_ptr = np.ascontiguousarray(col_ptr, dtype=np.int64)
    rows = np.ascontiguousarray(rows, dtype=np.int32)
    cdef long long[::1] cp = col_ptr
    cdef int[::1] rr = rows
    cdef long long m = cp.shape[0] - 1

    lows_arr = np.full(m, -1, dtype=np.int32)
    cdef int[::1] lows = lows_arr
    pivot_owner_arr = np.full(m, -1, dtype=np.int64)
    cdef long long[::1] pivot_owner = pivot_owner_arr

    cdef int** stored = <int**> malloc(m * sizeof(int*))
    cdef long long* stored_len = <long long*> malloc(m * sizeof(long long))
    cdef int* work = <int*> malloc(m * sizeof(int))
    cdef int* buf = <int*> malloc(m * sizeof(int))
    if stored == NULL or stored_len == NULL or work == NULL or buf == NULL:
        free(stored); free(stored_len); free(work); free(buf)
        raise MemoryError()

    cdef long long j, n, low, owner, k
    cdef int* tmp
    cdef int* keep
    try:
        with nogil:
            for j in range(m):
                stored[j] = NULL
                stored_len[j] = 0
            for j in range(m):
                n = cp[j + 1] - cp[j]
                for k in range(n):
                    work[k] = rr[cp[j] + k]
                while n > 0:
                    low = work[n - 1]
                    owner = pivot_owner[low]
                    if owner < 0:
                        pivot_owner[low] = j
                        lows[j] = <int> low
                        break
                    n = _sym_diff(work, n, stored[owner], stored_len[owner], buf)
                    tmp = work; work = buf; buf = tmp
                if n > 0:
                    keep = <int*> malloc(n * sizeof(int))
                    if keep == NULL:
                        with gil:
                            raise MemoryError()
                    memcpy(keep, work, n * sizeof(int))
                    stored[j] = keep
                    stored_len[j] = n
    finally:
        for j in range(m):
            if stored[j] != NULL:
                free(stored[j])
        free(stored)
        free(stored_len)
        free(work)
        free(buf)
    return lows_arr

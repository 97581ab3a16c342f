# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled subset-lattice kernels.

Every function here has a twin with the same signature in ``_pykernels``;
``symdiv._kernels`` picks one at import time.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport INFINITY, fabs

cnp.import_array()


cdef inline double _slack_for(double rhs, double slack) nogil:
    cdef double a = fabs(rhs)
    return slack * (a if a > 1.0 else 1.0)


def d2_first_violation(const double[::1] values, int n, double slack):
    cdef Py_ssize_t size = (<Py_ssize_t>1) << n
    cdef Py_ssize_t a, b, c
    cdef double lhs_ab, rhs
    for a in range(size):
        for b in range(1, size):
            lhs_ab = values[a | b]
            for c in range(size):
                rhs = values[a | c]
                if lhs_ab + values[b | c] < rhs - _slack_for(rhs, slack):
                    return (int(a), int(b), int(c))
    return None


def monotone_first_violation(const double[::1] values, int n, double slack):
    cdef Py_ssize_t size = (<Py_ssize_t>1) << n
    cdef Py_ssize_t a, bit
    cdef int i
    for a in range(size):
        for i in range(n):
            bit = (<Py_ssize_t>1) << i
            if a & bit:
                continue
            if values[a | bit] < values[a] - _slack_for(values[a], slack):
                return (int(a), int(bit), 0)
    return None


def singleton_d2_first_violation(const double[::1] values, int n, double slack):
    cdef Py_ssize_t size = (<Py_ssize_t>1) << n
    cdef Py_ssize_t a, c, bit
    cdef int i
    cdef double lhs_ab, rhs
    for a in range(size):
        for i in range(n):
            bit = (<Py_ssize_t>1) << i
            lhs_ab = values[a | bit]
            for c in range(size):
                rhs = values[a | c]
                if lhs_ab + values[bit | c] < rhs - _slack_for(rhs, slack):
                    return (int(a), int(bit), int(c))
    return None


def superset_sum(double[::1] arr, int n):
    """In-place zeta transform: arr[S] <- sum of arr[T] over T containing S."""
    cdef Py_ssize_t size = (<Py_ssize_t>1) << n
    cdef Py_ssize_t mask, bit
    cdef int i
    for i in range(n):
        bit = (<Py_ssize_t>1) << i
        for mask in range(size):
            if not (mask & bit):
                arr[mask] += arr[mask | bit]


def tsp_half_tours(const double[:, ::1] dist, int n):
    cdef Py_ssize_t size = (<Py_ssize_t>1) << n
    cdef cnp.ndarray[cnp.float64_t, ndim=2] dp_arr = np.full((size, n), INFINITY)
    cdef double[:, ::1] dp = dp_arr
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out_arr = np.zeros(size)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t mask, prev
    cdef int s, j, i
    cdef double best, cand
    for s in range(n):
        dp[(<Py_ssize_t>1) << s, s] = 0.0
    for mask in range(1, size):
        s = 0
        while not (mask >> s) & 1:
            s += 1
        if mask == ((<Py_ssize_t>1) << s):
            continue
        for j in range(s + 1, n):
            if not (mask >> j) & 1:
                continue
            prev = mask ^ ((<Py_ssize_t>1) << j)
            best = INFINITY
            for i in range(s, n):
                if (prev >> i) & 1:
                    cand = dp[prev, i] + dist[i, j]
                    if cand < best:
                        best = cand
            dp[mask, j] = best
        best = INFINITY
        for j in range(s + 1, n):
            if (mask >> j) & 1:
                cand = dp[mask, j] + dist[j, s]
                if cand < best:
                    best = cand
        out[mask] = 0.5 * best
    return out_arr


def steiner_values(const double[:, ::1] dist, int n):
    cdef Py_ssize_t size = (<Py_ssize_t>1) << n
    cdef cnp.ndarray[cnp.float64_t, ndim=2] st_arr = np.full((size, n), INFINITY)
    cdef double[:, ::1] st = st_arr
    cdef cnp.ndarray[cnp.float64_t, ndim=1] merge_arr = np.empty(n)
    cdef double[::1] merge = merge_arr
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out_arr = np.zeros(size)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t d, e, low, rest
    cdef int t, v, u
    cdef double best, cand
    for t in range(n):
        for v in range(n):
            st[(<Py_ssize_t>1) << t, v] = dist[t, v]
    for d in range(1, size):
        low = d & -d
        if d == low:
            continue
        rest = d ^ low
        for v in range(n):
            merge[v] = INFINITY
        # split d into e (holding the lowest terminal) and d ^ e, both non-empty
        e = rest
        while True:
            e = (e - 1) & rest
            for v in range(n):
                cand = st[e | low, v] + st[d ^ (e | low), v]
                if cand < merge[v]:
                    merge[v] = cand
            if e == 0:
                break
        for v in range(n):
            best = INFINITY
            for u in range(n):
                cand = dist[v, u] + merge[u]
                if cand < best:
                    best = cand
            st[d, v] = best
        t = 0
        while not (d >> t) & 1:
            t += 1
        out[d] = st[d, t]
    return out_arr

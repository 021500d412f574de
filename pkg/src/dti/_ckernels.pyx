# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels. Same contract as ``dti._pykernels``; exponents must fit int64."""

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport calloc, malloc, free

cnp.import_array()

BACKEND = "cython"


cdef struct DPState:
    int L
    int m
    int p
    int *total
    int *bounds      # m x L, row-major
    signed char *memo  # L x 2^m: 0 unknown, 1 feasible, 2 infeasible
    int *choice      # L x m
    int *next_mask   # L
    int *caps        # L x m scratch
    int *suffix      # L x (m+1) scratch


cdef bint _feasible(DPState *s, int pos, int mask) nogil:
    cdef long idx
    cdef bint ok
    if pos < 0:
        return True
    idx = <long>pos * (1 << s.m) + mask
    if s.memo[idx] == 0:
        ok = _assign(s, pos, mask)
        s.memo[idx] = 1 if ok else 2
    return s.memo[idx] == 1


cdef bint _assign(DPState *s, int pos, int mask) nogil:
    cdef int i
    cdef int m = s.m
    cdef int *caps = s.caps + pos * m
    cdef int *suffix = s.suffix + pos * (m + 1)
    for i in range(m):
        if (mask >> i) & 1:
            caps[i] = s.bounds[i * s.L + pos]
        else:
            caps[i] = s.p - 1
    suffix[m] = 0
    for i in range(m - 1, -1, -1):
        suffix[i] = suffix[i + 1] + caps[i]
    return _rec(s, pos, mask, 0, s.total[pos], 0)


cdef bint _rec(DPState *s, int pos, int mask, int i, int remaining, int nm) nogil:
    cdef int m = s.m
    cdef int *caps = s.caps + pos * m
    cdef int *suffix = s.suffix + pos * (m + 1)
    cdef int hi, lo, v, nm2
    if i == m:
        if remaining != 0:
            return False
        s.next_mask[pos] = nm
        return _feasible(s, pos - 1, nm)
    hi = caps[i] if caps[i] < remaining else remaining
    lo = remaining - suffix[i + 1]
    if lo < 0:
        lo = 0
    v = hi
    while v >= lo:
        s.choice[pos * m + i] = v
        nm2 = nm
        if (mask >> i) & 1 and v == caps[i]:
            nm2 = nm | (1 << i)
        if _rec(s, pos, mask, i + 1, remaining - v, nm2):
            return True
        v -= 1
    return False


def carryfree_digits(total, bounds, int p):
    cdef int L = len(total)
    cdef int m = len(bounds)
    cdef int i, pos, mask
    cdef DPState s
    cdef bint ok
    s.L = L
    s.m = m
    s.p = p
    s.total = <int *>malloc(max(L, 1) * sizeof(int))
    s.bounds = <int *>malloc(max(L * m, 1) * sizeof(int))
    s.memo = <signed char *>calloc(max(L, 1) * (1 << m), sizeof(signed char))
    s.choice = <int *>calloc(max(L * m, 1), sizeof(int))
    s.next_mask = <int *>calloc(max(L, 1), sizeof(int))
    s.caps = <int *>calloc(max(L * m, 1), sizeof(int))
    s.suffix = <int *>calloc(max(L * (m + 1), 1), sizeof(int))
    try:
        for pos in range(L):
            s.total[pos] = total[pos]
        for i in range(m):
            row = bounds[i]
            for pos in range(L):
                s.bounds[i * L + pos] = row[pos]
        with nogil:
            ok = _feasible(&s, L - 1, (1 << m) - 1)
            if ok:
                mask = (1 << m) - 1
                for pos in range(L - 1, -1, -1):
                    _assign(&s, pos, mask)
                    mask = s.next_mask[pos]
        if not ok:
            return None
        return [[s.choice[pos * m + i] for pos in range(L)] for i in range(m)]
    finally:
        free(s.total)
        free(s.bounds)
        free(s.memo)
        free(s.choice)
        free(s.next_mask)
        free(s.caps)
        free(s.suffix)


cdef inline bint _divides(const cnp.int64_t[:, ::1] a, Py_ssize_t i,
                          const cnp.int64_t[:, ::1] b, Py_ssize_t j,
                          Py_ssize_t n) nogil:
    cdef Py_ssize_t k
    for k in range(n):
        if a[i, k] > b[j, k]:
            return False
    return True


cdef list _minimal_of_array(cnp.int64_t[:, ::1] arr):
    """Antichain of the rows; rows are swept in order of total degree."""
    cdef Py_ssize_t N = arr.shape[0], n = arr.shape[1]
    if N == 0:
        return []
    order_np = np.argsort(np.asarray(arr).sum(axis=1), kind="stable")
    cdef cnp.int64_t[::1] order = order_np.astype(np.int64)
    cdef cnp.int64_t[::1] kept = np.empty(N, dtype=np.int64)
    cdef Py_ssize_t nk = 0, i, j, r
    cdef bint dominated
    with nogil:
        for i in range(N):
            r = order[i]
            dominated = False
            for j in range(nk):
                # equal rows count as dividing, which drops duplicates
                if _divides(arr, kept[j], arr, r, n):
                    dominated = True
                    break
            if not dominated:
                kept[nk] = r
                nk += 1
    out = [tuple(int(arr[kept[j], k]) for k in range(n)) for j in range(nk)]
    out.sort()
    return out


def minimal_rows(rows):
    """Minimal elements of a set of exponent vectors, sorted lexicographically."""
    if len(rows) == 0:
        return []
    return _minimal_of_array(np.ascontiguousarray(rows, dtype=np.int64))


def lcm_minimal(X, Y):
    """Minimal elements of ``{lcm(x, y)}``: generators of an intersection."""
    if len(X) == 0 or len(Y) == 0:
        return []
    a = np.asarray(X, dtype=np.int64)
    b = np.asarray(Y, dtype=np.int64)
    lcm = np.ascontiguousarray(
        np.maximum(a[:, None, :], b[None, :, :]).reshape(-1, a.shape[1])
    )
    return _minimal_of_array(lcm)


def divisible_mask(points, gens):
    """For each point, whether some generator divides it."""
    npts = len(points)
    if npts == 0:
        return []
    if len(gens) == 0:
        return [False] * npts
    cdef cnp.int64_t[:, ::1] P = np.ascontiguousarray(points, dtype=np.int64)
    cdef cnp.int64_t[:, ::1] G = np.ascontiguousarray(gens, dtype=np.int64)
    cdef Py_ssize_t N = P.shape[0], M = G.shape[0], n = P.shape[1], i, j
    cdef cnp.uint8_t[::1] out = np.zeros(N, dtype=np.uint8)
    with nogil:
        for i in range(N):
            for j in range(M):
                if _divides(G, j, P, i, n):
                    out[i] = 1
                    break
    return [bool(v) for v in out]

# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled orbit kernels (see ``_pykernels`` for the reference version)."""

import numpy as np
cimport numpy as cnp

from libc.stdlib cimport malloc, free

cnp.import_array()

# MAXDEPTH exceeds the longest Weyl element of any supported type (63 for E7)
cdef enum:
    MAXRANK = 16
    MAXDEPTH = 160


cdef int _check(long long[:, ::1] alpha, long long[::1] dom) except -1:
    cdef Py_ssize_t r = dom.shape[0]
    if r > MAXRANK or alpha.shape[0] != r or alpha.shape[1] != r:
        raise ValueError("bad cartan/weight shape")
    for i in range(r):
        if dom[i] < 0:
            raise ValueError("orbit walk must start at a dominant weight")
    return 0


cdef Py_ssize_t _walk(long long[:, ::1] alpha, long long[::1] dom,
                      long long[:, ::1] acc, long long[:, ::1] pts,
                      bint want_acc, bint want_pts) except -1:
    cdef Py_ssize_t r = dom.shape[0]
    cdef long long *stack = <long long *> malloc(MAXDEPTH * MAXRANK * sizeof(long long))
    cdef int *nexti = <int *> malloc(MAXDEPTH * sizeof(int))
    cdef Py_ssize_t depth = 0, count = 0, i, j, k, a, b
    cdef long long c, ma
    cdef long long *mu
    cdef long long *nu
    cdef bint ok
    if stack == NULL or nexti == NULL:
        free(stack)
        free(nexti)
        raise MemoryError()
    try:
        for k in range(r):
            stack[k] = dom[k]
        nexti[0] = -1
        while depth >= 0:
            mu = stack + depth * MAXRANK
            if nexti[depth] == -1:
                # first time at this node
                if want_acc:
                    for a in range(r):
                        ma = mu[a]
                        if ma != 0:
                            for b in range(r):
                                acc[a, b] += ma * mu[b]
                if want_pts:
                    for k in range(r):
                        pts[count, k] = mu[k]
                count += 1
                nexti[depth] = 0
            i = nexti[depth]
            while i < r:
                c = mu[i]
                if c > 0:
                    ok = True
                    for j in range(i):
                        if mu[j] - c * alpha[i, j] < 0:
                            ok = False
                            break
                    if ok:
                        break
                i += 1
            if i >= r:
                depth -= 1
                continue
            nexti[depth] = i + 1
            if depth + 1 >= MAXDEPTH:
                raise RuntimeError("orbit walk exceeded maximum depth")
            nu = stack + (depth + 1) * MAXRANK
            for k in range(r):
                nu[k] = mu[k] - c * alpha[i, k]
            depth += 1
            nexti[depth] = -1
    finally:
        free(stack)
        free(nexti)
    return count


def orbit_stats(cartan, dominant):
    """Return ``(size, S)`` with ``S = sum of outer products theta theta^T``."""
    cdef long long[:, ::1] alpha = np.ascontiguousarray(cartan, dtype=np.int64)
    cdef long long[::1] dom = np.ascontiguousarray(dominant, dtype=np.int64)
    _check(alpha, dom)
    r = dom.shape[0]
    acc = np.zeros((r, r), dtype=np.int64)
    dummy = np.zeros((1, 1), dtype=np.int64)
    n = _walk(alpha, dom, acc, dummy, True, False)
    return n, acc


def orbit_points(cartan, dominant):
    """All orbit elements as an ``(size, rank)`` int64 array (walk order)."""
    cdef long long[:, ::1] alpha = np.ascontiguousarray(cartan, dtype=np.int64)
    cdef long long[::1] dom = np.ascontiguousarray(dominant, dtype=np.int64)
    _check(alpha, dom)
    r = dom.shape[0]
    dummy = np.zeros((1, 1), dtype=np.int64)
    n = _walk(alpha, dom, dummy, dummy, False, False)
    pts = np.empty((n, r), dtype=np.int64)
    _walk(alpha, dom, dummy, pts, False, True)
    return pts


def dominant_batch(cartan, weights):
    """Dominant representative of each row of ``weights``."""
    cdef long long[:, ::1] alpha = np.ascontiguousarray(cartan, dtype=np.int64)
    w = np.array(weights, dtype=np.int64, order="C", copy=True)
    cdef long long[:, ::1] mu = w
    cdef Py_ssize_t n = mu.shape[0], r = mu.shape[1], t, i, k
    cdef long long c
    cdef bint moved
    if alpha.shape[0] != r:
        raise ValueError("bad cartan/weight shape")
    for t in range(n):
        moved = True
        while moved:
            moved = False
            for i in range(r):
                c = mu[t, i]
                if c < 0:
                    for k in range(r):
                        mu[t, k] -= c * alpha[i, k]
                    moved = True
                    break
    return w

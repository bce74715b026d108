# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled float screening kernels.

Floats here only rank candidates; every verdict that leaves the package is
re-decided in exact arithmetic.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, fabs
from libc.stdlib cimport malloc, free

cnp.import_array()

cdef double EPS = 1e-12
cdef int MAXIT = 200


def point_segment_min_dist(Q, A, B):
    cdef double[:, ::1] q = np.ascontiguousarray(Q, dtype=np.float64)
    cdef double[:, ::1] a = np.ascontiguousarray(A, dtype=np.float64)
    cdef double[:, ::1] b = np.ascontiguousarray(B, dtype=np.float64)
    cdef Py_ssize_t nq = q.shape[0], ns = a.shape[0], d = q.shape[1]
    out_arr = np.empty(nq)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t r, i, c
    cdef double best, dd, wd, t, diff, acc
    for r in range(nq):
        best = 1e300
        for i in range(ns):
            dd = 0.0
            wd = 0.0
            for c in range(d):
                diff = b[i, c] - a[i, c]
                dd += diff * diff
                wd += (q[r, c] - a[i, c]) * diff
            t = wd / dd if dd > 0 else 0.0
            if t < 0.0:
                t = 0.0
            elif t > 1.0:
                t = 1.0
            acc = 0.0
            for c in range(d):
                diff = q[r, c] - a[i, c] - t * (b[i, c] - a[i, c])
                acc += diff * diff
            if acc < best:
                best = acc
        out[r] = sqrt(best)
    return out_arr


cdef int _solve(double* K, double* rhs, int n) nogil:
    # Gaussian elimination with partial pivoting, in place; 0 on success
    cdef int i, j, k, piv
    cdef double m, tmp
    for k in range(n):
        piv = k
        for i in range(k + 1, n):
            if fabs(K[i * n + k]) > fabs(K[piv * n + k]):
                piv = i
        if fabs(K[piv * n + k]) < 1e-14:
            return 1
        if piv != k:
            for j in range(n):
                tmp = K[k * n + j]
                K[k * n + j] = K[piv * n + j]
                K[piv * n + j] = tmp
            tmp = rhs[k]
            rhs[k] = rhs[piv]
            rhs[piv] = tmp
        for i in range(k + 1, n):
            m = K[i * n + k] / K[k * n + k]
            if m != 0.0:
                for j in range(k, n):
                    K[i * n + j] -= m * K[k * n + j]
                rhs[i] -= m * rhs[k]
    for k in range(n - 1, -1, -1):
        tmp = rhs[k]
        for j in range(k + 1, n):
            tmp -= K[k * n + j] * rhs[j]
        rhs[k] = tmp / K[k * n + k]
    return 0


cdef double _dot(double[:, ::1] P, Py_ssize_t i, Py_ssize_t j) nogil:
    cdef Py_ssize_t c
    cdef double acc = 0.0
    for c in range(P.shape[1]):
        acc += P[i, c] * P[j, c]
    return acc


cdef double _min_norm_sq(double[:, ::1] P, long long* sel, int n,
                         int* S, double* w, double* v, double* x, double* K) nogil:
    cdef Py_ssize_t d = P.shape[1]
    cdef int s, i, k, c, j, pos, block, it, it2, found, ok, keep
    cdef double xx, val, bestv, theta, ratio, den, scale, tot, nrm
    scale = 1.0
    j = 0
    bestv = 1e300
    for i in range(n):
        nrm = _dot(P, sel[i], sel[i])
        if nrm > scale:
            scale = nrm
        if nrm < bestv:
            bestv = nrm
            j = i
    s = 1
    S[0] = j
    w[0] = 1.0
    for c in range(d):
        x[c] = P[sel[j], c]
    for it in range(MAXIT):
        xx = 0.0
        for c in range(d):
            xx += x[c] * x[c]
        if xx <= EPS * scale:
            return 0.0
        j = -1
        bestv = 1e300
        for i in range(n):
            val = 0.0
            for c in range(d):
                val += x[c] * P[sel[i], c]
            if val < bestv:
                bestv = val
                j = i
        if bestv > xx - EPS * scale:
            break
        found = 0
        for k in range(s):
            if S[k] == j:
                found = 1
        if found:
            break
        S[s] = j
        w[s] = 0.0
        s += 1
        for it2 in range(MAXIT):
            # KKT system [G 1; 1 0] for the affine minimizer
            for i in range(s):
                for k in range(s):
                    K[i * (s + 1) + k] = _dot(P, sel[S[i]], sel[S[k]])
                K[i * (s + 1) + s] = 1.0
                K[s * (s + 1) + i] = 1.0
                v[i] = 0.0
            K[s * (s + 1) + s] = 0.0
            v[s] = 1.0
            if _solve(K, v, s + 1) != 0:
                return xx
            ok = 1
            for i in range(s):
                if v[i] <= EPS:
                    ok = 0
            if ok:
                for i in range(s):
                    w[i] = v[i]
                for c in range(d):
                    x[c] = 0.0
                    for i in range(s):
                        x[c] += w[i] * P[sel[S[i]], c]
                break
            theta = 2.0
            block = -1
            for pos in range(s):
                if v[pos] <= EPS:
                    den = w[pos] - v[pos]
                    ratio = w[pos] / den if den > 0 else 0.0
                    if ratio < theta:
                        theta = ratio
                        block = pos
            keep = 0
            tot = 0.0
            for pos in range(s):
                val = theta * v[pos] + (1.0 - theta) * w[pos]
                if pos != block and val > EPS:
                    S[keep] = S[pos]
                    w[keep] = val
                    tot += val
                    keep += 1
            s = keep
            for i in range(s):
                w[i] /= tot
            for c in range(d):
                x[c] = 0.0
                for i in range(s):
                    x[c] += w[i] * P[sel[S[i]], c]
    xx = 0.0
    for c in range(d):
        xx += x[c] * x[c]
    return xx


def batch_min_norm_sq(P, idx, counts):
    cdef double[:, ::1] p = np.ascontiguousarray(P, dtype=np.float64)
    cdef long long[:, ::1] ix = np.ascontiguousarray(idx, dtype=np.int64)
    cdef long long[::1] cnt = np.ascontiguousarray(counts, dtype=np.int64)
    cdef Py_ssize_t M = ix.shape[0], kmax = ix.shape[1], d = p.shape[1]
    out_arr = np.empty(M)
    cdef double[::1] out = out_arr
    cdef int cap = <int>(kmax + 2)
    cdef int* S = <int*>malloc(cap * sizeof(int))
    cdef double* w = <double*>malloc(cap * sizeof(double))
    cdef double* v = <double*>malloc(cap * sizeof(double))
    cdef double* x = <double*>malloc((d + 1) * sizeof(double))
    cdef double* K = <double*>malloc(cap * cap * sizeof(double))
    cdef Py_ssize_t m
    try:
        with nogil:
            for m in range(M):
                out[m] = _min_norm_sq(p, &ix[m, 0], <int>cnt[m], S, w, v, x, K)
    finally:
        free(S)
        free(w)
        free(v)
        free(x)
        free(K)
    return out_arr

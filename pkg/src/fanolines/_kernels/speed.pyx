# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; contracts match fanolines._kernels.ref exactly."""

import numpy as np


def count_zero_groups(short[:, ::1] L, short[:, ::1] C, int group, int p):
    cdef Py_ssize_t nrows = L.shape[0]
    cdef Py_ssize_t K = L.shape[1]
    cdef Py_ssize_t B = C.shape[1]
    cdef Py_ssize_t ngroups = nrows // group
    out_np = np.zeros(B, dtype=np.int64)
    cdef long long[::1] out = out_np
    cdef Py_ssize_t b, g, i, k, row
    cdef long long acc
    cdef long long cnt
    cdef bint ok
    for b in range(B):
        cnt = 0
        for g in range(ngroups):
            ok = True
            row = g * group
            for i in range(group):
                acc = 0
                for k in range(K):
                    acc += L[row + i, k] * C[k, b]
                if acc % p != 0:
                    ok = False
                    break
            if ok:
                cnt += 1
        out[b] = cnt
    return out_np


def eval_form_at_points(short[:, ::1] exps, short[::1] coeffs, short[:, ::1] pts,
                        short[:, ::1] pow_tab, short[:, ::1] mul_tab,
                        short[:, ::1] add_tab):
    cdef Py_ssize_t T = exps.shape[0]
    cdef Py_ssize_t V = exps.shape[1]
    cdef Py_ssize_t N = pts.shape[0]
    out_np = np.zeros(N, dtype=np.int16)
    cdef short[::1] out = out_np
    cdef Py_ssize_t n, t, v
    cdef short val, acc, e
    for n in range(N):
        acc = 0
        for t in range(T):
            val = coeffs[t]
            for v in range(V):
                e = exps[t, v]
                if e:
                    val = mul_tab[val, pow_tab[pts[n, v], e]]
                    if val == 0:
                        break
            acc = add_tab[acc, val]
        out[n] = acc
    return out_np

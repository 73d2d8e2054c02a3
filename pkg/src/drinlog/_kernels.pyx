# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: same contracts as drinlog._kernels_py."""

import numpy as np
cimport numpy as cnp

cnp.import_array()

BACKEND = "cython"

_DIRECT_CONV_LIMIT = 1 << 22


def pmul(a, b, long p):
    cdef cnp.ndarray[cnp.int64_t, ndim=1] A = np.ascontiguousarray(a, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] B = np.ascontiguousarray(b, dtype=np.int64)
    cdef Py_ssize_t la = A.shape[0], lb = B.shape[0]
    if la == 0 or lb == 0:
        return np.zeros(0, dtype=np.int64)
    if la * lb > _DIRECT_CONV_LIMIT:
        from drinlog._kernels_py import _kronecker_mul
        return _kronecker_mul(np.asarray(a), np.asarray(b), p)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] out = np.zeros(la + lb - 1, dtype=np.int64)
    cdef Py_ssize_t i, j
    cdef long ai
    for i in range(la):
        ai = A[i]
        if ai:
            for j in range(lb):
                out[i + j] += ai * B[j]
    out %= p
    return out


def pdivmod(num, den, long p):
    cdef cnp.ndarray[cnp.int64_t, ndim=1] D = np.ascontiguousarray(den, dtype=np.int64)
    cdef Py_ssize_t dd = D.shape[0] - 1
    while dd >= 0 and D[dd] == 0:
        dd -= 1
    if dd < 0:
        raise ZeroDivisionError("polynomial division by zero")
    cdef long lead_inv = pow(int(D[dd]), p - 2, p)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] R = np.array(num, dtype=np.int64)
    cdef Py_ssize_t dn = R.shape[0] - 1
    while dn >= 0 and R[dn] == 0:
        dn -= 1
    if dn < dd:
        return np.zeros(1, dtype=np.int64), R[: max(dn + 1, 1)].copy()
    cdef cnp.ndarray[cnp.int64_t, ndim=1] Q = np.zeros(dn - dd + 1, dtype=np.int64)
    cdef Py_ssize_t t, j
    cdef long c
    for t in range(dn - dd, -1, -1):
        c = (R[t + dd] * lead_inv) % p
        if c < 0:
            c += p
        if c:
            Q[t] = c
            for j in range(dd + 1):
                R[t + j] = ((R[t + j] - c * D[j]) % p + p) % p
    rem = R[:dd].copy() if dd > 0 else np.zeros(1, dtype=np.int64)
    return Q, rem


def sblock_kernel(M, digits, mu, long p, pairs, chunk=256):
    cdef cnp.ndarray[cnp.int64_t, ndim=1] Ma = np.ascontiguousarray(M, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=2] Dg = np.ascontiguousarray(digits, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=2] Mu = np.ascontiguousarray(mu, dtype=np.int64)
    cdef Py_ssize_t B = Dg.shape[0], ncols = Dg.shape[1]
    cdef Py_ssize_t i = ncols - 1
    cdef Py_ssize_t L = Ma.shape[0], Lq = L - i, mw = Mu.shape[1]
    cdef Py_ssize_t Lw = Lq + mw - 1
    cdef cnp.ndarray[cnp.int64_t, ndim=2] U = np.zeros((ncols, Lw), dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=2] V = np.zeros((max(len(pairs), 1), Lw), dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=2] P = (
        np.ascontiguousarray(pairs, dtype=np.int64).reshape(len(pairs), 2)
        if len(pairs) else np.zeros((0, 2), dtype=np.int64))
    cdef Py_ssize_t npairs = P.shape[0]
    cdef cnp.ndarray[cnp.int64_t, ndim=1] Q = np.zeros(Lq, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] W = np.zeros(Lw, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] carry = np.zeros(max(i, 1), dtype=np.int64)
    cdef Py_ssize_t b, t, j, s, tp
    cdef long c, w, d1, d2
    for b in range(B):
        # synthetic division M // a_b (exact), top down through a length-i window
        for j in range(i):
            carry[j] = Ma[Lq + j]
        for t in range(Lq - 1, -1, -1):
            if i > 0:
                c = carry[i - 1]
                for j in range(i - 1, 0, -1):
                    carry[j] = carry[j - 1]
                carry[0] = Ma[t]
                for j in range(i):
                    carry[j] = ((carry[j] - c * Dg[b, j]) % p + p) % p
            else:
                c = Ma[t] % p
            Q[t] = c
        # W = mu_b * Q
        for t in range(Lw):
            W[t] = 0
        for s in range(mw):
            c = Mu[b, s]
            if c:
                for t in range(Lq):
                    W[s + t] += c * Q[t]
        for t in range(Lw):
            W[t] %= p
        for j in range(ncols):
            w = Dg[b, j]
            if w:
                for t in range(Lw):
                    U[j, t] = (U[j, t] + w * W[t]) % p
        for tp in range(npairs):
            d1 = Dg[b, P[tp, 0]]
            d2 = Dg[b, P[tp, 1]]
            if d1 and d2:
                w = (d1 * d2) % p
                for t in range(Lw):
                    V[tp, t] = (V[tp, t] + w * W[t]) % p
    return U, V[: npairs]

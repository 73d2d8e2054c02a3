"""Pure-numpy kernels for dense polynomial arithmetic over a prime field.

Coefficient arrays are int64, ascending degree, values already reduced into
[0, p).  The compiled Cython module (drinlog._kernels) implements the same
signatures with tight C loops; this module is the fallback and the reference.
"""

from __future__ import annotations

import numpy as np

BACKEND = "numpy"

_DIRECT_CONV_LIMIT = 1 << 22  # len(a)*len(b) above this switches to Kronecker


def pmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Exact product of two coefficient arrays mod p."""
    if len(a) == 0 or len(b) == 0:
        return np.zeros(0, dtype=np.int64)
    if len(a) * len(b) <= _DIRECT_CONV_LIMIT:
        return np.convolve(a, b) % p
    return _kronecker_mul(a, b, p)


def _kronecker_mul(a, b, p):
    # pack coefficients into 8-byte limbs of one big integer each; the integer
    # product then reads off the convolution exactly (coefficients stay below
    # p^2 * min(len) << 2^63).
    ia = int.from_bytes(a.astype("<u8").tobytes(), "little")
    ib = int.from_bytes(b.astype("<u8").tobytes(), "little")
    nout = len(a) + len(b) - 1
    raw = (ia * ib).to_bytes(8 * (nout + 1), "little")
    out = np.frombuffer(raw, dtype="<u8", count=nout).astype(np.int64)
    return out % p


def pdivmod(num: np.ndarray, den: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Quotient and remainder of coefficient arrays mod p.  den need not be monic."""
    den = np.asarray(den, dtype=np.int64)
    dd = len(den) - 1
    while dd >= 0 and den[dd] == 0:
        dd -= 1
    if dd < 0:
        raise ZeroDivisionError("polynomial division by zero")
    lead_inv = pow(int(den[dd]), p - 2, p)
    num = np.asarray(num, dtype=np.int64).copy()
    dn = len(num) - 1
    while dn >= 0 and num[dn] == 0:
        dn -= 1
    if dn < dd:
        return np.zeros(1, dtype=np.int64), num[: max(dn + 1, 1)].copy()
    q = np.zeros(dn - dd + 1, dtype=np.int64)
    for t in range(dn - dd, -1, -1):
        c = (num[t + dd] * lead_inv) % p
        if c:
            q[t] = c
            num[t : t + dd + 1] = (num[t : t + dd + 1] - c * den[: dd + 1]) % p
    rem = num[:dd] if dd > 0 else np.zeros(1, dtype=np.int64)
    return q, rem.copy()


def sblock_kernel(M, digits, mu, p, pairs, chunk=256):
    """Digit-weighted sums of mu(a) * (M // a) over a batch of monic polynomials.

    M:      int64[L], dense dividend (every a in the batch divides it exactly)
    digits: int64[B, i+1] coefficients of each monic a (last column all 1)
    mu:     int64[B, mw]  multiplier polynomial attached to each a
    pairs:  list of (j1, j2) digit-index pairs wanted, or [] for none

    Returns (U, V):
      U[j]     = sum_a digits[a, j]            * mu_a * (M // a)   (int64[i+1, Lw])
      V[t]     = sum_a digits[a,j1]*digits[a,j2] * mu_a * (M // a) for pairs[t]
    with Lw = len(M) - i + mw - 1, all coefficients reduced mod p.
    """
    M = np.asarray(M, dtype=np.int64)
    digits = np.asarray(digits, dtype=np.int64)
    mu = np.asarray(mu, dtype=np.int64)
    B, ncols = digits.shape
    i = ncols - 1
    L = len(M)
    Lq = L - i
    mw = mu.shape[1]
    Lw = Lq + mw - 1
    U = np.zeros((ncols, Lw), dtype=np.int64)
    V = np.zeros((len(pairs), Lw), dtype=np.int64)
    for lo in range(0, B, chunk):
        dch = digits[lo : lo + chunk]
        mch = mu[lo : lo + chunk]
        nb = dch.shape[0]
        # batched synthetic division: quotients of M by each monic a, top down
        Qs = np.zeros((nb, Lq), dtype=np.int64)
        carry = np.repeat(M[None, Lq : Lq + i].copy(), nb, axis=0) if i > 0 else None
        for t in range(Lq - 1, -1, -1):
            if i > 0:
                c = carry[:, -1] % p
                carry[:, 1:] = carry[:, :-1]
                carry[:, 0] = M[t]
                carry -= c[:, None] * dch[:, :i]
                carry %= p
            else:
                c = np.full(nb, M[t] % p, dtype=np.int64)
            Qs[:, t] = c
        # w_a = mu_a * quotient_a
        Ws = np.zeros((nb, Lw), dtype=np.int64)
        for s in range(mw):
            col = mch[:, s]
            if np.any(col):
                Ws[:, s : s + Lq] += col[:, None] * Qs
        Ws %= p
        for j in range(ncols):
            w = dch[:, j]
            if np.any(w):
                U[j] += w @ Ws
        for t, (j1, j2) in enumerate(pairs):
            w = (dch[:, j1] * dch[:, j2]) % p
            if np.any(w):
                V[t] += w @ Ws
        U %= p
        V %= p
    return U % p, V % p

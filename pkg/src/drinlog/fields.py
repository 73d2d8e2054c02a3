"""Finite-field contexts for coefficient arithmetic.

A FieldCtx models the working coefficient field F_{q^k} where q = p^n.
Elements are stored as integer indices in [0, q^k): the base-p digits of an
index are the coordinates of the element in the power basis of a fixed
generator of the field over F_p.  Index 0 is zero, indices 0..p-1 are the
prime-subfield constants.  Multiplication goes through discrete-log/exp
tables, addition through digit vectors, so everything vectorizes over numpy
index arrays.

The defining modulus of F_{p^m} (m = n*k) is the lexicographically smallest
monic irreducible of degree m over F_p (coefficients compared from the
constant term up), so contexts are reproducible bit for bit.  The same rule
generates the small built-in table below; build_field checks against it.
"""

from __future__ import annotations

import numpy as np

# (p, m) -> non-leading coefficients c_0..c_{m-1} of the default modulus
# x^m + c_{m-1} x^{m-1} + ... + c_0, generated by the smallest-lex rule.
MODULUS_TABLE = {
    (2, 1): (0,), (2, 2): (1, 1), (2, 3): (1, 1, 0), (2, 4): (1, 1, 0, 0),
    (3, 1): (0,), (3, 2): (1, 0), (3, 3): (1, 2, 0),
    (5, 1): (0,), (5, 2): (2, 0), (5, 3): (1, 1, 0),
    (7, 1): (0,), (7, 2): (1, 0),
}

FIELD_SIZE_CAP = 10 ** 4  # largest q^k we tabulate; beyond this we refuse


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def factor_prime_power(q: int) -> tuple[int, int]:
    """Write q = p^n with p prime, or raise ValueError."""
    for p in range(2, q + 1):
        if q % p == 0:
            n = 0
            m = q
            while m % p == 0:
                m //= p
                n += 1
            if m == 1 and _is_prime(p):
                return p, n
            raise ValueError(f"{q} is not a prime power")
    raise ValueError(f"{q} is not a prime power")


def _poly_mulmod(a, b, mod, p):
    """Product of digit tuples a*b reduced mod the monic digit tuple `mod`, over F_p."""
    m = len(mod) - 1
    res = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                res[i + j] = (res[i + j] + ai * bj) % p
    for d in range(len(res) - 1, m - 1, -1):
        c = res[d]
        if c:
            res[d] = 0
            for j in range(m):
                res[d - m + j] = (res[d - m + j] - c * mod[j]) % p
    res = res[:m]
    return tuple(res + [0] * (m - len(res)))


def _smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Lex-smallest (constant term varies fastest) monic irreducible of degree m over F_p."""
    if m == 1:
        return (0,)
    for code in range(p ** m):
        low = tuple((code // p ** j) % p for j in range(m))
        mod = low + (1,)
        # f irreducible iff x^(p^m) == x mod f and gcd-free at proper subfield degrees,
        # checked via x^(p^(m/l)) != x for prime l | m.
        def xpow(e_levels):
            t = (0, 1) + (0,) * (m - 2) if m >= 2 else (0,)
            for _ in range(e_levels):
                t = _frob_once(t, mod, p)
            return t
        x = tuple([0, 1] + [0] * (m - 2))
        if xpow(m) != x:
            continue
        ok = True
        for l in range(2, m + 1):
            if m % l == 0 and _is_prime(l):
                if xpow(m // l) == x:
                    ok = False
                    break
        if ok:
            return low
    raise RuntimeError("no irreducible found")  # unreachable


def _frob_once(t, mod, p):
    """t^p mod `mod` by square-and-multiply over digit tuples."""
    result = (1,) + (0,) * (len(mod) - 2)
    base = t
    e = p
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, mod, p)
        base = _poly_mulmod(base, base, mod, p)
        e >>= 1
    return result


def _int_factor(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class FieldCtx:
    """Arithmetic context for F_{q^k}, q = p^n."""

    def __init__(self, p: int, n: int = 1, k: int = 1):
        if not _is_prime(p):
            raise ValueError(f"p={p} is not prime")
        self.p, self.n, self.k = p, n, k
        self.q = p ** n
        self.m = n * k
        self.Q = p ** self.m
        if self.Q > FIELD_SIZE_CAP:
            raise ValueError(f"field size {self.Q} exceeds cap {FIELD_SIZE_CAP}")
        self.modulus_low = MODULUS_TABLE.get((p, self.m)) or _smallest_irreducible(p, self.m)
        self._build_tables()
        self._base_elems = None

    # -- construction of add/mul structure ------------------------------------

    def _build_tables(self):
        p, m, Q = self.p, self.m, self.Q
        self.prime_scalar = (m == 1)
        idx = np.arange(Q, dtype=np.int64)
        vec = np.empty((Q, m), dtype=np.int64)
        t = idx.copy()
        for j in range(m):
            vec[:, j] = t % p
            t //= p
        self._vec = vec
        self._pows = p ** np.arange(m, dtype=np.int64)
        if m == 1:
            self._log = None
            return
        mod = self.modulus_low + (1,)
        # discrete log/exp tables on a fixed generator (smallest index of full order)
        fac = _int_factor(Q - 1)
        gen = None
        for cand in range(1, Q):
            c = tuple(int(v) for v in vec[cand])
            if all(self._tuple_pow(c, (Q - 1) // l, mod) != self._one_tuple() for l in fac):
                gen = cand
                break
        assert gen is not None
        exp = np.empty(Q - 1, dtype=np.int64)
        log = np.full(Q, -1, dtype=np.int64)
        cur = self._one_tuple()
        g = tuple(int(v) for v in vec[gen])
        for t_ in range(Q - 1):
            ci = int(sum(int(c) * int(pw) for c, pw in zip(cur, self._pows)))
            exp[t_] = ci
            log[ci] = t_
            cur = _poly_mulmod(cur, g, mod, self.p)
        self._exp, self._log = exp, log
        self.generator = gen

    def _one_tuple(self):
        return (1,) + (0,) * (self.m - 1)

    def _tuple_pow(self, t, e, mod):
        result = self._one_tuple()
        base = t
        while e:
            if e & 1:
                result = _poly_mulmod(result, base, mod, self.p)
            base = _poly_mulmod(base, base, mod, self.p)
            e >>= 1
        return result

    # -- vectorized scalar ops on index arrays --------------------------------

    def add(self, a, b):
        if self.prime_scalar:
            return (a + b) % self.p
        return (self._vec[a] + self._vec[b]) % self.p @ self._pows

    def sub(self, a, b):
        if self.prime_scalar:
            return (a - b) % self.p
        return (self._vec[a] - self._vec[b]) % self.p @ self._pows

    def neg(self, a):
        if self.prime_scalar:
            return (-a) % self.p
        return (-self._vec[a]) % self.p @ self._pows

    def mul(self, a, b):
        if self.prime_scalar:
            return (a * b) % self.p
        a = np.asarray(a)
        b = np.asarray(b)
        la, lb = self._log[a], self._log[b]
        out = self._exp[(np.maximum(la, 0) + np.maximum(lb, 0)) % (self.Q - 1)]
        return np.where((la < 0) | (lb < 0), 0, out)

    def inv(self, a):
        if np.any(np.asarray(a) == 0):
            raise ZeroDivisionError("inverse of zero in field")
        if self.prime_scalar:
            p = self.p
            return np.vectorize(lambda x: pow(int(x), p - 2, p), otypes=[np.int64])(a)
        return self._exp[(-self._log[a]) % (self.Q - 1)]

    def pow_int(self, a, e: int):
        """a**e elementwise (e >= 0)."""
        if self.prime_scalar:
            p = self.p
            return np.vectorize(lambda x: pow(int(x), e, p), otypes=[np.int64])(a)
        a = np.asarray(a)
        if e == 0:
            return np.ones_like(a)
        la = self._log[a]
        out = self._exp[(np.maximum(la, 0) * (e % (self.Q - 1))) % (self.Q - 1)]
        return np.where(la < 0, 0, out)

    def frob(self, a, i: int = 1):
        """a^(q^i) elementwise (the q-power Frobenius iterated i times)."""
        return self.pow_int(a, pow(self.q, i, self.Q - 1) if self.Q > 2 else 1)

    # -- base subfield F_q inside F_{q^k} -------------------------------------

    def base_elems(self) -> np.ndarray:
        """Indices of the F_q-subfield elements, in increasing index order."""
        if self._base_elems is None:
            if self.k == 1:
                self._base_elems = np.arange(self.Q, dtype=np.int64)
            else:
                idx = np.arange(self.Q, dtype=np.int64)
                fixed = idx[self.frob(idx, 1) == idx]
                assert len(fixed) == self.q
                self._base_elems = np.sort(fixed)
        return self._base_elems

    def embed_base(self, c):
        """Map base-field code(s) 0..q-1 to working-field indices."""
        return self.base_elems()[c]

    def base_ctx(self) -> "FieldCtx":
        """The context of F_q itself (k = 1)."""
        if self.k == 1:
            return self
        return FieldCtx(self.p, self.n, 1)

    def __repr__(self):
        return f"FieldCtx(p={self.p}, n={self.n}, k={self.k})"

    def __eq__(self, other):
        return (isinstance(other, FieldCtx)
                and (self.p, self.n, self.k) == (other.p, other.n, other.k))

    def __hash__(self):
        return hash((self.p, self.n, self.k))


_CTX_CACHE: dict[tuple[int, int, int], FieldCtx] = {}


def build_field(q: int, k: int = 1) -> FieldCtx:
    """Context for F_{q^k}; q any prime power.  Cached."""
    p, n = factor_prime_power(q)
    key = (p, n, k)
    if key not in _CTX_CACHE:
        _CTX_CACHE[key] = FieldCtx(p, n, k)
    return _CTX_CACHE[key]

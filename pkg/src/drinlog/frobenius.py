"""Frobenius data of a Drinfeld module at a prime f of A.

For a monic irreducible f of degree d, the reduction of phi mod f has rank
r0 = max { j : f does not divide kappa_j }.  The Frobenius tau^d acting on
the reduction satisfies a monic characteristic polynomial

    P_f(x) = x^r0 + a_{r0-1} x^{r0-1} + ... + a_0,      a_0 = c_f^{-1} f,

whose coefficients come out of the bracket recursion

    b_l = <f>_{l d} - sum_{j<l} <b_j>_{(l-j) d}   (mod f,  canonical rep),

with a_l = -b_l / c_f and c_f = -b_{r0} a nonzero constant.  The module of
points over F_f = A/(f) has monic Fitting generator f - (b_1 + ... + b_r0);
an independent route to that generator (used as a cross-check) is the
characteristic polynomial of the theta-action matrix on F_f.

The Hasse invariant is mu(f) = b_1 = <f>_d mod f; a vectorized batch
version handles whole families of primes of one degree at once for sieves.
"""

from __future__ import annotations

import numpy as np

from drinlog.fields import FieldCtx
from drinlog.poly import APoly, canonical_rep, inv_mod
from drinlog.twisted import phi_of


def reduction_rank(module, f: APoly) -> int:
    for j in range(module.r, 0, -1):
        if not (module.kappa[j - 1] % f).is_zero():
            return j
    return 0


class FrobeniusData:
    __slots__ = ("f", "d", "r0", "b", "c_f", "charpoly")

    def __init__(self, f, d, r0, b, c_f, charpoly):
        self.f, self.d, self.r0 = f, d, r0
        self.b, self.c_f = b, c_f
        self.charpoly = charpoly  # a_0..a_r0 ascending, in A

    def charpoly_at_one(self) -> APoly:
        acc = APoly.zero(self.f.ctx)
        for a in self.charpoly:
            acc = acc + a
        return acc

    def unit_count(self) -> APoly:
        """Monic generator of the Fitting ideal of the points over A/(f)."""
        if self.r0 == 0:
            return self.f
        acc = self.f
        for bl in self.b:
            acc = acc - bl
        return acc

    def inverted_charpoly(self) -> list[APoly]:
        """Coefficients of x^r0 * P_f(1/x), ascending."""
        return list(reversed(self.charpoly))

    def dual_factor(self) -> list[APoly]:
        """Coefficients of P_f(x) / P_f(0) as numerators over the constant...
        returned as (list of APoly, APoly denominator) pair collapsed: since
        P_f(0) = c_f^{-1} f, this is [c_f * a_l / f]; kept symbolic by the
        caller (lvalues) instead, so here we just expose charpoly."""
        return self.charpoly


def frobenius_data(module, f: APoly, check: bool = True) -> FrobeniusData:
    if not f.is_monic():
        raise ValueError("prime must be monic")
    ctx = module.ctx
    d = f.deg()
    r0 = reduction_rank(module, f)
    if r0 == 0:
        return FrobeniusData(f, d, 0, [], None, [f])
    phif = phi_of(module, f, f)
    b: list[APoly] = []
    for l in range(1, r0 + 1):
        acc = phif.coeff(l * d)
        for j in range(1, l):
            acc = acc - phi_of(module, b[j - 1], f).coeff((l - j) * d)
        bl = canonical_rep(acc, f)
        if check and not bl.is_zero() and bl.deg() * r0 > (r0 - l) * d:
            raise AssertionError(f"bracket coefficient b_{l} exceeds its degree bound")
        b.append(bl)
    if not b[-1].is_const() or b[-1].is_zero():
        raise AssertionError("top bracket coefficient is not a nonzero constant")
    c_f = int(ctx.neg(b[-1].lead()))
    ci = int(ctx.inv(c_f))
    cp = [f.scale(ci)]
    cp += [b[l - 1].scale(int(ctx.neg(ci))) for l in range(1, r0)]
    cp.append(APoly.one(ctx))
    if check:
        _check_bracket_congruences(module, f, b, phif)
    return FrobeniusData(f, d, r0, b, c_f, cp)


def _check_bracket_congruences(module, f: APoly, b: list[APoly], phif):
    """<f>_k = sum_l <b_l>_{k - l*d} mod f for all k <= r0*d, and
    <f>_k = 0 mod f for k < d."""
    d = f.deg()
    r0 = len(b)
    phib = [phi_of(module, bl, f) for bl in b]
    for k in range(r0 * d + 1):
        lhs = phif.coeff(k)
        rhs = APoly.zero(module.ctx)
        for l in range(1, r0 + 1):
            if k - l * d >= 0:
                rhs = rhs + phib[l - 1].coeff(k - l * d)
        if not (lhs - rhs).is_zero():
            raise AssertionError(f"bracket congruence fails at tau^{k}")


# -- Hasse invariants ---------------------------------------------------------


def hasse_mu_prime(module, f: APoly) -> APoly:
    """mu(f) = <f>_d mod f (canonical representative of degree < d)."""
    return canonical_rep(phi_of(module, f, f).coeff(f.deg()), f)


_BATCH_LADDER_CAP = 1 << 20


def hasse_mu_batch(module, ctx: FieldCtx, F: np.ndarray) -> np.ndarray:
    """Hasse invariants for many monic primes of one degree at once.

    F has shape [N, d+1], ascending coefficients (indices in ctx), monic.
    Returns [N, d]: the canonical representative of <f>_d mod f per row.
    All arithmetic is vectorized across the family; the tau-expansion of
    phi_{theta^j} is tracked mod f only up to tau^d, which is all the
    bracket <f>_d = sum_j f_j <theta^j>_d needs.
    """
    q = ctx.q
    N, dp1 = F.shape
    d = dp1 - 1
    r = module.r
    if not np.all(F[:, d] == 1):
        raise ValueError("rows must be monic")
    low = F[:, :d]  # theta^d = -low in A/(f)

    def shift_reduce(c):
        # theta * c mod f, c shape [N, d]
        top = c[:, d - 1]
        out = np.zeros_like(c)
        out[:, 1:] = c[:, : d - 1]
        return ctx.sub(out, ctx.mul(top[:, None], low))

    # powers theta^(s * q^t) mod f for t = 1..r, s = 0..d-1
    need = {s * q ** t for t in range(1, r + 1) for s in range(d)}
    top_need = max(need)
    if top_need * N > _BATCH_LADDER_CAP * 64:
        raise MemoryError("ladder too large; use hasse_mu_prime per prime")
    pows: dict[int, np.ndarray] = {}
    cur = np.zeros((N, d), dtype=np.int64)
    cur[:, 0] = 1
    j = 0
    if 0 in need:
        pows[0] = cur.copy()
    while j < top_need:
        cur = shift_reduce(cur)
        j += 1
        if j in need:
            pows[j] = cur.copy()
    ptab = [None] + [np.stack([pows[s * q ** t] for s in range(d)], axis=1)
                     for t in range(1, r + 1)]  # ptab[t]: [N, d, d]

    def frob_mod(c, t):
        # c(theta)^(q^t) mod f = sum_s c_s^(q^t) theta^(s q^t)
        cf = ctx.frob(c, t)
        acc = np.zeros_like(c)
        for s in range(d):
            acc = ctx.add(acc, ctx.mul(cf[:, s][:, None], ptab[t][:, s, :]))
        return acc

    kap = [k.c for k in module.kappa]  # small fixed coefficient arrays

    def kappa_mul(t, c):
        # kappa_t * c mod f
        acc = np.zeros_like(c)
        cur = c
        for s, v in enumerate(kap[t - 1]):
            if s:
                cur = shift_reduce(cur)
            if v:
                acc = ctx.add(acc, ctx.mul(np.int64(v), cur))
        return acc

    # tau-coefficients of phi_{theta^j} mod f, truncated at tau^d
    coeffs = [np.zeros((N, d), dtype=np.int64) for _ in range(d + 1)]
    coeffs[0][:, 0] = 1
    bracket = ctx.mul(F[:, 0][:, None], coeffs[d])  # j = 0 term (zero)
    for j in range(1, d + 1):
        nxt = [shift_reduce(coeffs[k]) for k in range(d + 1)]
        for k in range(d + 1):
            for t in range(1, min(k, r) + 1):
                nxt[k] = ctx.add(nxt[k], kappa_mul(t, frob_mod(coeffs[k - t], t)))
        coeffs = nxt
        bracket = ctx.add(bracket, ctx.mul(F[:, j][:, None], coeffs[d]))
    return bracket


# -- independent unit-count oracle --------------------------------------------


def theta_action_matrix(module, f: APoly) -> list[list[int]]:
    """Matrix (over the coefficient field) of x -> phi_theta(x) on A/(f)
    with respect to the basis 1, theta, ..., theta^(d-1); columns are images."""
    ctx = module.ctx
    d = f.deg()
    cols = []
    for j in range(d):
        bj = APoly.theta(ctx, j) if j else APoly.one(ctx)
        img = (APoly.theta(ctx) * bj) % f
        for t, k in enumerate(module.kappa, start=1):
            if not k.is_zero():
                img = img + (k * bj.pow(ctx.q ** t)) % f
        img = img % f
        col = [0] * d
        for s, v in enumerate(img.c):
            col[s] = int(v)
        cols.append(col)
    return [[cols[j][i] for j in range(d)] for i in range(d)]


def charpoly_berkowitz(M: list[list[int]], ctx: FieldCtx) -> APoly:
    """det(theta*I - M) as a monic element of A, division-free."""
    n = len(M)
    add, mul, neg = ctx.add, ctx.mul, ctx.neg
    p = [1]  # ascending from the leading coefficient
    for i in range(1, n + 1):
        a = M[i - 1][i - 1]
        row = M[i - 1][:i - 1]
        col = [M[j][i - 1] for j in range(i - 1)]
        # Toeplitz column: 1, -a, -row.col, -row.M.col, ...
        t = [1, int(neg(a))]
        v = col
        for _ in range(i - 1):
            dot = 0
            for x, y in zip(row, v):
                dot = int(add(dot, mul(x, y)))
            t.append(int(neg(dot)))
            v = [int(
                sum_fold(ctx, [mul(M[s][u], v[u]) for u in range(i - 1)])
            ) for s in range(i - 1)]
        q = [0] * (i + 1)
        for u, pu in enumerate(p):
            for s in range(u, min(u + len(t), i + 1)):
                q[s] = int(add(q[s], mul(t[s - u], pu)))
        p = q
    return APoly(ctx, list(reversed(p)))


def sum_fold(ctx, vals):
    acc = 0
    for v in vals:
        acc = int(ctx.add(acc, v))
    return acc


def unit_count_linear_algebra(module, f: APoly) -> APoly:
    """Monic Fitting generator of the points over A/(f), via the
    characteristic polynomial of the theta-action matrix."""
    return charpoly_berkowitz(theta_action_matrix(module, f), module.ctx)


def unit_count(module, f: APoly) -> APoly:
    """Monic Fitting generator, via the Frobenius characteristic polynomial."""
    return frobenius_data(module, f, check=False).unit_count()

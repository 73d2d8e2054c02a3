"""Hasse-invariant sieve and log-algebraic polynomial computation.

mu is the multiplicative function on monic polynomials determined by
mu(prime f) = <f>_deg f mod f (the Hasse invariant of the reduction) and a
linear recursion on prime powers driven by the Frobenius bracket
coefficients b_l.  The degree-i block sum of a module phi at an integral
x-polynomial beta is

    S_i(beta) = sum_{a monic, deg a = i} mu(a) * beta(C_a(x)) / a,

with C_a the Carlitz action.  The generating identity sum_i S_i =
log_phi(sum_i E_i) determines x-polynomials E_i over A, zero beyond
i_max = floor(r * (J(beta) + d0/(q-1))); they are the graded pieces of the
log-algebraic polynomial  E_phi(beta, z) = sum_i E_i(x) z^(q^i).

Everything is exact.  All block numerators share the denominator
M_i = prod_{l<=i} (theta^(q^l) - theta)^floor(i/l)  (every monic of degree
i divides M_i), which the log-coefficient denominators also divide, so the
E recursion stays inside A with one exact division per coefficient.  Large
instances (q^i beyond the enumeration cap) run through a residue pipeline
modulo irreducibles of medium degree with CRT reconstruction and
verification on independently chosen extra moduli.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from drinlog.fields import FieldCtx
from drinlog.laurent import ResourceLimit
from drinlog.poly import (APoly, RatFunc, XPoly, canonical_rep, ext_gcd,
                          inv_mod, is_irreducible, modexp, monic_digit_block,
                          monic_of_degree)
from drinlog.drinfeld import _carlitz_theta_pows, carlitz_act, j0_upper
from drinlog.frobenius import frobenius_data, hasse_mu_batch
from drinlog import _core

EXACT_ENUM_CAP = 20_000     # largest q^i the dense kernel path will enumerate
DIRECT_ENUM_CAP = 4_000     # largest q^i the per-element fallback will enumerate
REDUCE_CAP = 2_000          # reduce public RatFuncs only below this denominator degree


def _floor_frac(x: Fraction) -> int:
    return x.numerator // x.denominator


# -- mu sieve ------------------------------------------------------------------


class MuTable:
    """mu(a) for every monic a of degree <= dmax, as per-degree index tables.

    Rows are coefficient arrays (ascending, width w); the index of a monic of
    degree d is sum_j a_j q^j over j < d.  Built by a smallest-prime-factor
    sieve: batched Hasse invariants at the primes, multiplicativity across
    coprime parts, and the b_l recursion on prime powers.
    """

    def __init__(self, module, dmax: int):
        self.module = module
        self.ctx = module.ctx
        self.dmax = dmax
        ctx = self.ctx
        q = ctx.q
        r = module.r
        self.w = ((r - 1) * dmax) // r + 1
        self.qpow = q ** np.arange(dmax + 1, dtype=np.int64)
        self.blocks = [monic_digit_block(ctx, d) for d in range(dmax + 1)]
        # smallest prime factor (degree, index) and the matching cofactor
        spfd = [np.full(q ** d, -1, dtype=np.int64) for d in range(dmax + 1)]
        spfi = [np.zeros(q ** d, dtype=np.int64) for d in range(dmax + 1)]
        cofd = [np.zeros(q ** d, dtype=np.int64) for d in range(dmax + 1)]
        cofi = [np.zeros(q ** d, dtype=np.int64) for d in range(dmax + 1)]
        for df in range(1, dmax):
            prime_rows = np.nonzero(spfd[df] < 0)[0]
            for fidx in prime_rows:
                fc = self.blocks[df][fidx]
                for dg in range(1, dmax - df + 1):
                    d = df + dg
                    G = self.blocks[dg]
                    H = np.zeros((len(G), d + 1), dtype=np.int64)
                    for s in range(df + 1):
                        v = fc[s]
                        if v:
                            H[:, s : s + dg + 1] = ctx.add(H[:, s : s + dg + 1],
                                                           ctx.mul(np.int64(v), G))
                    P = H[:, :d] @ self.qpow[:d]
                    fresh = spfd[d][P] < 0
                    tgt = P[fresh]
                    spfd[d][tgt] = df
                    spfi[d][tgt] = fidx
                    cofd[d][tgt] = dg
                    cofi[d][tgt] = np.nonzero(fresh)[0]
        self._spfd, self._spfi = spfd, spfi
        self._cofd, self._cofi = cofd, cofi
        self.mu = [np.zeros((q ** d, self.w), dtype=np.int64) for d in range(dmax + 1)]
        self.mu[0][0, 0] = 1
        self._pp_cache: dict = {}
        for d in range(1, dmax + 1):
            self._fill_degree(d)
        self._check_degree_bounds()

    def primes(self, d: int) -> np.ndarray:
        return np.nonzero(self._spfd[d] < 0)[0]

    def mu_rows(self, d: int) -> np.ndarray:
        return self.mu[d]

    def mu_of(self, a: APoly) -> APoly:
        if not a.is_monic():
            raise ValueError("mu is defined on monic polynomials")
        d = a.deg()
        idx = int(a.c[:d] @ self.qpow[:d]) if d else 0
        return APoly(self.ctx, self.mu[d][idx])

    def _conv_rows(self, A, B, out, sel):
        # out[sel] = A (*) B rowwise, exact in width w
        ctx = self.ctx
        w = self.w
        acc = np.zeros((len(A), w), dtype=np.int64)
        for s in range(w):
            col = A[:, s]
            if np.any(col):
                hi = w - s
                acc[:, s:] = ctx.add(acc[:, s:], ctx.mul(col[:, None], B[:, :hi]))
        out[sel] = acc

    def _prime_power_mu(self, df: int, fidx: int, e: int) -> np.ndarray:
        key = (df, fidx)
        lst = self._pp_cache.get(key)
        if lst is None:
            f = APoly(self.ctx, np.append(self.blocks[df][fidx][:df], 1))
            fd = frobenius_data(self.module, f, check=False)
            pw = [APoly.one(self.ctx)]
            for m in range(1, self.dmax // df + 1):
                if fd.r0 == 0:
                    pw.append(APoly.zero(self.ctx))
                    continue
                acc = APoly.zero(self.ctx)
                fpow = APoly.one(self.ctx)
                for l in range(1, min(m, fd.r0) + 1):
                    acc = acc + fd.b[l - 1] * fpow * pw[m - l]
                    fpow = fpow * f
                pw.append(acc)
            lst = []
            for v in pw:
                row = np.zeros(self.w, dtype=np.int64)
                row[: len(v.c)] = v.c
                lst.append(row)
            self._pp_cache[key] = lst
        return lst[e]

    def _fill_degree(self, d: int):
        ctx = self.ctx
        out = self.mu[d]
        pr = self.primes(d)
        if len(pr):
            B = hasse_mu_batch(self.module, ctx, self.blocks[d][pr])
            k = min(d, self.w)
            if B.shape[1] > k and np.any(B[:, k:]):
                raise AssertionError(f"Hasse invariant exceeds mu width at degree {d}")
            out[pr, :k] = B[:, :k]
        comp = np.nonzero(self._spfd[d] >= 0)[0]
        if not len(comp):
            return
        fd = self._spfd[d][comp]
        fi = self._spfi[d][comp]
        gd = self._cofd[d][comp]
        gi = self._cofi[d][comp]
        # coprime case: spf of the cofactor differs from f
        sgd = np.empty(len(comp), dtype=np.int64)
        sgi = np.empty(len(comp), dtype=np.int64)
        for dv in np.unique(gd):
            m = gd == dv
            sgd[m] = self._spfd[dv][gi[m]]
            sgi[m] = self._spfi[dv][gi[m]]
        gprime = sgd < 0
        coprime = np.where(gprime,
                           (gd != fd) | (gi != fi),
                           (sgd != fd) | (sgi != fi))
        for dfv in np.unique(fd[coprime]):
            for dgv in np.unique(gd[coprime & (fd == dfv)]):
                m = coprime & (fd == dfv) & (gd == dgv)
                self._conv_rows(self.mu[dfv][fi[m]], self.mu[dgv][gi[m]],
                                out, comp[m])
        # prime-power-times-coprime case, walked per element
        for t in np.nonzero(~coprime)[0]:
            dfv, fiv = int(fd[t]), int(fi[t])
            e = 1
            cd, ci = int(gd[t]), int(gi[t])
            while True:
                if self._spfd[cd][ci] < 0:  # cofactor is prime
                    if cd == dfv and ci == fiv:
                        e += 1
                        cd, ci = 0, 0
                    break
                if self._spfd[cd][ci] == dfv and self._spfi[cd][ci] == fiv:
                    e += 1
                    cd, ci = int(self._cofd[cd][ci]), int(self._cofi[cd][ci])
                else:
                    break
            row_pp = self._prime_power_mu(dfv, fiv, e)
            row_m = self.mu[cd][ci]
            self._conv_rows(row_pp[None, :], row_m[None, :], out, comp[t : t + 1])

    def _check_degree_bounds(self):
        r = self.module.r
        for d in range(self.dmax + 1):
            top = ((r - 1) * d) // r
            if self.w > top + 1 and np.any(self.mu[d][:, top + 1 :]):
                raise AssertionError(f"mu exceeds its degree bound at degree {d}")


def mu_sieve(module, dmax: int) -> MuTable:
    return MuTable(module, dmax)


# -- block sums ----------------------------------------------------------------


def common_denominator(ctx: FieldCtx, i: int) -> APoly:
    """M_i: every monic of degree i divides it; so do the first i log
    denominators (theta - theta^(q^l)) up to sign."""
    acc = APoly.one(ctx)
    for l in range(1, i + 1):
        f = APoly.theta(ctx, ctx.q ** l) - APoly.theta(ctx)
        for _ in range(i // l):
            acc = acc * f
    return acc


def _bracket(ctx: FieldCtx, j: int, k: int) -> APoly:
    """Carlitz <theta^j>_k."""
    pows = _carlitz_theta_pows(ctx, j)
    return pows[j].coeff(k)


def _beta_entries(beta: XPoly) -> list[tuple[int, APoly]]:
    out = []
    for m, c in beta.coeffs():
        if not c.is_integral():
            raise ValueError("beta must have coefficients in A")
        out.append((m, c.num))
    return out


def block_numerator(module, beta: XPoly, i: int, mt: MuTable,
                    M: APoly | None = None) -> dict[int, APoly]:
    """x-coefficients of M_i * S_i(beta), all in A; kernel-accelerated."""
    ctx = module.ctx
    q = ctx.q
    entries = _beta_entries(beta)
    if i == 0:
        return {m: c for m, c in entries}
    if M is None:
        M = common_denominator(ctx, i)
    if ctx.m == 1 and q ** i <= EXACT_ENUM_CAP and beta.deg_x() <= 2:
        return _block_numerator_kernel(module, entries, i, mt, M)
    if q ** i > DIRECT_ENUM_CAP:
        raise ResourceLimit(f"block sum at degree {i} needs q^{i} = {q**i} terms")
    return _block_numerator_direct(module, beta, i, mt, M)


def _block_numerator_kernel(module, entries, i, mt, M):
    ctx = module.ctx
    q = ctx.q
    digits = mt.blocks[i]
    mu = mt.mu_rows(i)
    want_pairs = any(m == 2 for m, _ in entries)
    pairs = [(j1, j2) for j1 in range(i + 1) for j2 in range(j1, i + 1)] if want_pairs else []
    U, V = _core.sblock_kernel(M.c, digits, mu, ctx.p, pairs)
    Upoly = [APoly(ctx, row) for row in U]
    num: dict[int, APoly] = {}

    def bump(e, v):
        if not v.is_zero():
            num[e] = num.get(e, APoly.zero(ctx)) + v

    for m, c in entries:
        if m == 0:
            bump(0, c * Upoly[i])
        elif m == 1:
            for k in range(i + 1):
                acc = APoly.zero(ctx)
                for j in range(k, i + 1):
                    b = _bracket(ctx, j, k)
                    if not b.is_zero():
                        acc = acc + b * Upoly[j]
                bump(q ** k, c * acc)
        elif m == 2:
            pidx = {pr: t for t, pr in enumerate(pairs)}
            Vpoly = [APoly(ctx, row) for row in V]
            for k1 in range(i + 1):
                # fold one bracket index first: P[j2] = sum_j1 B[j1,k1] V[j1,j2]
                P = [APoly.zero(ctx) for _ in range(i + 1)]
                for j1 in range(k1, i + 1):
                    b1 = _bracket(ctx, j1, k1)
                    if b1.is_zero():
                        continue
                    for j2 in range(i + 1):
                        vp = Vpoly[pidx[(min(j1, j2), max(j1, j2))]]
                        P[j2] = P[j2] + b1 * vp
                for k2 in range(i + 1):
                    acc = APoly.zero(ctx)
                    for j2 in range(k2, i + 1):
                        b2 = _bracket(ctx, j2, k2)
                        if not b2.is_zero():
                            acc = acc + b2 * P[j2]
                    bump(q ** k1 + q ** k2, c * acc)
        else:
            raise ResourceLimit("kernel path only covers x-degree <= 2")
    return num


def _block_numerator_direct(module, beta, i, mt, M):
    ctx = module.ctx
    num: dict[int, APoly] = {}
    for a in monic_of_degree(ctx, i):
        mua = mt.mu_of(a)
        if mua.is_zero():
            continue
        quot = M.divexact(a)
        twisted = beta.subst(carlitz_act(ctx, a))
        for m, c in twisted.coeffs():
            if not c.is_integral():
                raise AssertionError("Carlitz-twisted beta left A[x]")
            v = c.num * mua * quot
            if not v.is_zero():
                num[m] = num.get(m, APoly.zero(ctx)) + v
    return {m: v for m, v in num.items() if not v.is_zero()}


def block_sum(module, beta: XPoly, i: int, mt: MuTable | None = None) -> XPoly:
    """S_i(beta) as an x-polynomial with coefficients in K."""
    ctx = module.ctx
    if mt is None:
        mt = MuTable(module, i)
    M = common_denominator(ctx, i)
    num = block_numerator(module, beta, i, mt, M)
    reduce = M.deg() <= REDUCE_CAP
    return XPoly(ctx, {m: RatFunc(v, M, reduce=reduce) for m, v in num.items()})


def block_sum_direct(module, beta: XPoly, i: int, mt: MuTable | None = None) -> XPoly:
    """Reference enumeration of S_i(beta); independent of the kernel path."""
    ctx = module.ctx
    if mt is None:
        mt = MuTable(module, i)
    acc = XPoly.zero(ctx)
    for a in monic_of_degree(ctx, i):
        mua = RatFunc(mt.mu_of(a), a)
        if mua.is_zero():
            continue
        acc = acc + beta.subst(carlitz_act(ctx, a)) * mua
    return acc


def block_sum_coprime(module, beta: XPoly, i: int, f: APoly,
                      mt: MuTable | None = None) -> XPoly:
    """S_i(beta) restricted to terms with a coprime to f."""
    ctx = module.ctx
    if mt is None:
        mt = MuTable(module, i)
    acc = XPoly.zero(ctx)
    for a in monic_of_degree(ctx, i):
        if (a % f).is_zero():
            continue
        mua = RatFunc(mt.mu_of(a), a)
        if mua.is_zero():
            continue
        acc = acc + beta.subst(carlitz_act(ctx, a)) * mua
    return acc


# -- log-algebraic polynomials -------------------------------------------------


def vanishing_index(module, beta: XPoly) -> int:
    """i_max: blocks E_i vanish beyond it."""
    q = module.ctx.q
    return _floor_frac(module.r * (j0_upper(beta) + Fraction(module.d0, q - 1)))


def log_algebraic_poly(module, beta: XPoly, margin: int = 2,
                       seed: int = 20260826) -> list[XPoly]:
    """E_0..E_imax in A[x]; raises if integrality or vanishing fails.

    The identity sum S_i = log(sum E_i) is inverted blockwise:
    E_i = S_i - sum_{j>=1} beta_j E_{i-j}^(q^j) with beta_j the logarithm
    coefficients.  Exact throughout; heavy instances go through the
    residue/CRT pipeline.
    """
    ctx = module.ctx
    q = ctx.q
    i_max = vanishing_index(module, beta)
    n = i_max + margin
    if ctx.m == 1 and q ** n > EXACT_ENUM_CAP and beta.deg_x() <= 2:
        E = _log_algebraic_modular(module, beta, i_max, margin, seed)
    else:
        E = _log_algebraic_exact(module, beta, n)
    for i in range(i_max + 1, n + 1):
        if i < len(E) and not E[i].is_zero():
            raise AssertionError(f"E_{i} fails to vanish beyond the cutoff")
    out = E[: i_max + 1]
    while len(out) > 1 and out[-1].is_zero():
        out.pop()
    return out


def _log_algebraic_exact(module, beta: XPoly, n: int) -> list[XPoly]:
    ctx = module.ctx
    q = ctx.q
    mt = MuTable(module, n)
    Bnum = module.log_numerators(n)
    # L_j = prod_{l<=j} (theta - theta^(q^l)); each divides every M_i, i >= j
    L = [APoly.one(ctx)]
    for l in range(1, n + 1):
        L.append(L[-1] * (APoly.theta(ctx) - APoly.theta(ctx, q ** l)))
    E: list[dict[int, APoly]] = []
    for i in range(n + 1):
        M = common_denominator(ctx, i)
        num = block_numerator(module, beta, i, mt, M)
        for j in range(1, i + 1):
            scale = Bnum[j] * M.divexact(L[j])
            if scale.is_zero():
                continue
            for m, c in E[i - j].items():
                v = c.frob(j) * scale
                e = m * q ** j
                num[e] = num.get(e, APoly.zero(ctx)) - v
        Ei: dict[int, APoly] = {}
        for m, v in num.items():
            if v.is_zero():
                continue
            c, rem = divmod(v, M)
            if not rem.is_zero():
                raise AssertionError(f"E_{i} is not integral")
            Ei[m] = c
        E.append(Ei)
    return [XPoly(ctx, {m: RatFunc(c) for m, c in Ei.items()}) for Ei in E]


# -- residue pipeline for heavy instances --------------------------------------


class _Residue:
    """Arithmetic helpers modulo one irreducible g, vectorized across rows."""

    def __init__(self, ctx: FieldCtx, g: APoly):
        self.ctx = ctx
        self.g = g
        self.delta = g.deg()
        p = ctx.p
        # theta^(delta + j) mod g for reduction of products
        self.red = np.zeros((self.delta - 1, self.delta), dtype=np.int64)
        cur = (APoly.theta(ctx, self.delta)) % g
        for j in range(self.delta - 1):
            row = np.zeros(self.delta, dtype=np.int64)
            row[: len(cur.c)] = cur.c
            self.red[j] = row
            cur = (cur.shift(1)) % g

    def mulmod(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        p = self.ctx.p
        d = self.delta
        n = len(A)
        full = np.zeros((n, 2 * d - 1), dtype=np.int64)
        for s in range(d):
            col = A[:, s]
            full[:, s : s + d] += col[:, None] * B
            if s % 8 == 7:
                full %= p
        full %= p
        low = full[:, :d].copy()
        for j in range(d - 1):
            col = full[:, d + j]
            low = (low + col[:, None] * self.red[j]) % p
        return low

    def to_row(self, a: APoly) -> np.ndarray:
        a = a % self.g
        row = np.zeros(self.delta, dtype=np.int64)
        row[: len(a.c)] = a.c
        return row

    def to_poly(self, row: np.ndarray) -> APoly:
        return APoly(self.ctx, row)

    def inv_rows(self, A: np.ndarray) -> np.ndarray:
        """Batch inverse via a product tree (vectorized pair multiplies)."""
        n = len(A)
        levels = [A]
        cur = A
        while len(cur) > 1:
            m = len(cur)
            half = m // 2
            nxt = self.mulmod(cur[0 : 2 * half : 2], cur[1 : 2 * half : 2])
            if m % 2:
                nxt = np.vstack([nxt, cur[-1:]])
            levels.append(nxt)
            cur = nxt
        root = self.to_poly(cur[0])
        inv_root = inv_mod(root, self.g)
        inv = self.to_row(inv_root)[None, :]
        for lev in range(len(levels) - 2, -1, -1):
            src = levels[lev]
            m = len(src)
            half = m // 2
            out = np.zeros_like(src)
            if half:
                out[0 : 2 * half : 2] = self.mulmod(inv[:half], src[1 : 2 * half : 2])
                out[1 : 2 * half : 2] = self.mulmod(inv[:half], src[0 : 2 * half : 2])
            if m % 2:
                out[-1] = inv[half]
            inv = out
        return inv


def _modular_E(module, entries, n: int, mt: MuTable, res: _Residue):
    """E_0..E_n with coefficients reduced mod res.g, as dicts of APoly."""
    ctx = module.ctx
    q = ctx.q
    g = res.g
    Bnum = module.log_numerators(n)
    Linv = []
    L = APoly.one(ctx)
    for l in range(0, n + 1):
        if l:
            L = (L * ((APoly.theta(ctx) - modexp(APoly.theta(ctx), q ** l, g)) % g)) % g
        Linv.append(inv_mod(L % g, g) if not (L % g).is_zero() else None)
    E: list[dict[int, APoly]] = []
    for i in range(n + 1):
        num = _modular_block_numerator(module, entries, i, mt, res)
        Minv = _modular_Minv(ctx, i, g)
        Si = {m: (c * Minv) % g for m, c in num.items()}
        for j in range(1, i + 1):
            bj = ((Bnum[j] % g) * Linv[j]) % g
            if bj.is_zero():
                continue
            h = modexp(APoly.theta(ctx), q ** j, g)
            for m, c in E[i - j].items():
                v = (_compose_mod(c, h, g) * bj) % g
                e = m * q ** j
                Si[e] = (Si.get(e, APoly.zero(ctx)) - v) % g
        E.append({m: c for m, c in Si.items() if not c.is_zero()})
    return E


def _compose_mod(c: APoly, h: APoly, g: APoly) -> APoly:
    """c(h) mod g (Horner); computes Frobenius images of residues."""
    acc = APoly.zero(c.ctx)
    for v in c.c[::-1]:
        acc = (acc * h) % g
        if v:
            acc = acc + APoly.const(c.ctx, int(v))
    return acc


def _modular_Minv(ctx, i, g) -> APoly:
    acc = APoly.one(ctx)
    for l in range(1, i + 1):
        f = (modexp(APoly.theta(ctx), ctx.q ** l, g) - APoly.theta(ctx)) % g
        fe = modexp(f, i // l, g) if i // l > 1 else f
        acc = (acc * fe) % g
    return inv_mod(acc, g)


def _modular_block_numerator(module, entries, i, mt, res: _Residue):
    """x-coefficients of M_i S_i(beta) mod g, via batch inverses of the a's."""
    ctx = module.ctx
    q = ctx.q
    p = ctx.p
    g = res.g
    if i == 0:
        Mi = APoly.one(ctx)
        return {m: (c * Mi) % g for m, c in entries}
    if res.delta <= i:
        raise ValueError("residue modulus must exceed the block degree")
    digits = mt.blocks[i]
    N = len(digits)
    arows = np.zeros((N, res.delta), dtype=np.int64)
    arows[:, : i + 1] = digits
    ainv = res.inv_rows(arows)
    # W_a = mu(a) * (M_i mod g) * a^(-1)
    Mi_row = res.to_row(_modular_M(ctx, i, g))
    murows = np.zeros((N, res.delta), dtype=np.int64)
    murows[:, : mt.w] = mt.mu_rows(i)
    W = res.mulmod(res.mulmod(murows, ainv), np.repeat(Mi_row[None, :], N, axis=0))
    U = [(digits[:, j][:, None] * W).sum(axis=0) % p for j in range(i + 1)]
    want_pairs = any(m == 2 for m, _ in entries)
    num: dict[int, APoly] = {}

    def bump(e, row):
        v = APoly(ctx, row) if isinstance(row, np.ndarray) else row
        if not v.is_zero():
            num[e] = (num.get(e, APoly.zero(ctx)) + v) % g

    for m, c in entries:
        cg = c % g
        if m == 0:
            bump(0, (cg * APoly(ctx, U[i])) % g)
        elif m == 1:
            for k in range(i + 1):
                acc = APoly.zero(ctx)
                for j in range(k, i + 1):
                    b = _bracket(ctx, j, k) % g
                    if not b.is_zero():
                        acc = (acc + b * APoly(ctx, U[j])) % g
                bump(q ** k, (cg * acc) % g)
        elif m == 2:
            for k1 in range(i + 1):
                # fold bracket k1 into the row weights first
                wrow = np.zeros((N, res.delta), dtype=np.int64)
                for j1 in range(k1, i + 1):
                    b1 = res.to_row(_bracket(ctx, j1, k1))
                    if not b1.any():
                        continue
                    prod = res.mulmod(np.repeat(b1[None, :], N, axis=0), W)
                    wrow = (wrow + digits[:, j1][:, None] * prod) % p
                for k2 in range(k1, i + 1):
                    acc = APoly.zero(ctx)
                    for j2 in range(k2, i + 1):
                        b2 = _bracket(ctx, j2, k2) % g
                        if b2.is_zero():
                            continue
                        col = (digits[:, j2][:, None] * wrow).sum(axis=0) % p
                        acc = (acc + b2 * APoly(ctx, col)) % g
                    v = (cg * acc) % g
                    if k2 > k1:
                        v = v.scale(2 % p)
                    bump(q ** k1 + q ** k2, v)
        else:
            raise ResourceLimit("residue path only covers x-degree <= 2")
    return num


def _modular_M(ctx, i, g) -> APoly:
    acc = APoly.one(ctx)
    for l in range(1, i + 1):
        f = (modexp(APoly.theta(ctx), ctx.q ** l, g) - APoly.theta(ctx)) % g
        acc = (acc * modexp(f, i // l, g)) % g if i // l > 1 else (acc * f) % g
    return acc


def _find_moduli(ctx, delta: int, count: int, seed: int, avoid: set) -> list[APoly]:
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        c = rng.integers(0, ctx.q, size=delta)
        g = APoly(ctx, list(c) + [1])
        key = g.key()
        if key in avoid:
            continue
        if is_irreducible(g):
            avoid.add(key)
            out.append(g)
    return out


def _crt_pair(r1: APoly, g1: APoly, r2: APoly, g2: APoly) -> tuple[APoly, APoly]:
    d, u, v = ext_gcd(g1, g2)
    if not d.is_one():
        raise ValueError("moduli not coprime")
    # x = r1 + g1 * u * (r2 - r1) mod g1 g2
    g12 = g1 * g2
    x = (r1 + g1 * ((u * (r2 - r1)) % g2)) % g12
    return x, g12


def _log_algebraic_modular(module, beta: XPoly, i_max: int, margin: int,
                           seed: int) -> list[XPoly]:
    ctx = module.ctx
    n = i_max + margin
    entries = _beta_entries(beta)
    mt = MuTable(module, n)
    delta = max(16, n + 2)
    avoid: set = set()
    residues: list[tuple[APoly, list[dict[int, APoly]]]] = []
    attempts = 0
    while True:
        attempts += 1
        if attempts > 8:
            raise ResourceLimit("residue reconstruction failed to stabilize")
        for g in _find_moduli(ctx, delta, 2, seed + attempts, avoid):
            residues.append((g, _modular_E(module, entries, n,
                                           mt, _Residue(ctx, g))))
        # CRT-reconstruct every coefficient from all gathered moduli
        E: list[dict[int, APoly]] = []
        for i in range(n + 1):
            keys = set()
            for _, Eres in residues:
                keys |= set(Eres[i].keys())
            Ei = {}
            for m in keys:
                x, gacc = APoly.zero(ctx), APoly.one(ctx)
                for g, Eres in residues:
                    rm = Eres[i].get(m, APoly.zero(ctx))
                    x, gacc = _crt_pair(x, gacc, rm, g) if not gacc.is_one() \
                        else (rm, g)
                if not x.is_zero():
                    Ei[m] = x
            E.append(Ei)
        # verify on two fresh moduli; they are not part of the reconstruction
        ok = True
        room = max(d.deg() for Ei in E for d in Ei.values()) if any(E) else 0
        total = sum(g.deg() for g, _ in residues)
        if room > total - delta:
            ok = False  # reconstruction may have wrapped; add moduli
        if ok:
            for g in _find_moduli(ctx, delta, 2, seed + 7919 * attempts, set(avoid)):
                Echk = _modular_E(module, entries, n, mt, _Residue(ctx, g))
                for i in range(n + 1):
                    for m in set(E[i]) | set(Echk[i]):
                        lhs = E[i].get(m, APoly.zero(ctx)) % g
                        rhs = Echk[i].get(m, APoly.zero(ctx))
                        if not (lhs - rhs).is_zero():
                            ok = False
            if ok:
                return [XPoly(ctx, {m: RatFunc(c) for m, c in Ei.items()})
                        for Ei in E]


def e_block(module, beta: XPoly, i: int, mt: MuTable | None = None) -> XPoly:
    """E_i computed directly from the exponential identity
    E_i = sum_{j<=i} alpha_j * S_{i-j}^(q^j); an independent cross-check
    against the blockwise log-inversion used by log_algebraic_poly."""
    ctx = module.ctx
    if mt is None:
        mt = MuTable(module, i)
    alphas = module.exp_coeffs(i)
    acc = XPoly.zero(ctx)
    for j in range(i + 1):
        if alphas[j].is_zero():
            continue
        S = block_sum(module, beta, i - j, mt)
        acc = acc + XPoly(ctx, {0: alphas[j]}) * S.frob(j)
    return acc

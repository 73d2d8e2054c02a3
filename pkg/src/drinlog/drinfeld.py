"""Drinfeld modules over A = F_q[theta] and their exponential / logarithm.

A rank-r module is determined by phi_theta = theta + kappa_1 tau + ... +
kappa_r tau^r with kappa_r != 0.  The exponential and logarithm are the
F_q-linear power series exp(z) = sum alpha_i z^(q^i), log(z) = sum
beta_i z^(q^i) determined by exp(theta z) = phi_theta(exp(z)) and
log(phi_theta(z)) = theta log(z).

alpha_i and beta_i are kept in factored form N_i / prod(theta^(q^i) -
theta^(q^l)): the denominators are sparse binomials, so the coefficients
embed cheaply into Laurent series even when q^i is astronomically large.
"""

from __future__ import annotations

import math
from fractions import Fraction

from drinlog.fields import FieldCtx, build_field
from drinlog.laurent import LaurentSeries, PrecisionError
from drinlog.poly import APoly, RatFunc, XPoly
from drinlog.twisted import TwistedPoly


_NEG_HUGE = -(10 ** 30)


def _ceil_frac(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


class DrinfeldModule:
    def __init__(self, ctx: FieldCtx, kappa: list[APoly]):
        if not kappa or kappa[-1].is_zero():
            raise ValueError("top coefficient kappa_r must be nonzero")
        self.ctx = ctx
        self.kappa = list(kappa)
        self.r = len(kappa)
        self.d0 = max(k.deg() for k in kappa if not k.is_zero())
        self._phicaches: dict = {}
        self._exp_nums: list[APoly] = [APoly.one(ctx)]
        self._log_nums: list[APoly] = [APoly.one(ctx)]
        self._abar: list[int] = [0]

    @classmethod
    def carlitz(cls, ctx: FieldCtx) -> "DrinfeldModule":
        return cls(ctx, [APoly.one(ctx)])

    @property
    def is_carlitz(self) -> bool:
        return self.r == 1 and self.kappa[0].is_one()

    def phi_theta(self, modulus: APoly | None = None) -> TwistedPoly:
        coeffs = [APoly.theta(self.ctx)] + self.kappa
        return TwistedPoly(self.ctx, coeffs, modulus)

    def _phi_pow_cache(self, modulus: APoly | None):
        key = None if modulus is None else bytes(modulus.c.tobytes())
        cache = self._phicaches.get(key)
        if cache is None:
            base = self.phi_theta(modulus)
            one = TwistedPoly.const(APoly.one(self.ctx), modulus, base._fc)
            cache = {"base": base, "pows": [one]}
            self._phicaches[key] = cache
        return cache

    # -- exponential coefficients ---------------------------------------------

    def _den_factor(self, i: int, l: int) -> APoly:
        # theta^(q^i) - theta^(q^l)
        ctx = self.ctx
        return APoly.theta(ctx, ctx.q ** i) - APoly.theta(ctx, ctx.q ** l)

    def exp_numerators(self, n: int) -> list[APoly]:
        """N_i with alpha_i = N_i / prod_{l<i} (theta^(q^i) - theta^(q^l))."""
        nums = self._exp_nums
        ctx = self.ctx
        while len(nums) <= n:
            i = len(nums)
            acc = APoly.zero(ctx)
            for t in range(1, min(i, self.r) + 1):
                term = self.kappa[t - 1] * nums[i - t].frob(t)
                for l in range(1, t):
                    term = term * self._den_factor(i, l)
                acc = acc + term
            nums.append(acc)
        return nums[: n + 1]

    def alpha_size_bound(self, i: int) -> int:
        """Certified upper bound for log_q |alpha_i|, from the ultrametric
        inequality applied to the defining recursion (no reduction needed)."""
        ab = self._abar
        q = self.ctx.q
        while len(ab) <= i:
            m = len(ab)
            cands = [self.kappa[t - 1].deg() + q ** t * ab[m - t]
                     for t in range(1, min(m, self.r) + 1)
                     if not self.kappa[t - 1].is_zero()]
            ab.append(max(cands) - q ** m if cands else _NEG_HUGE)
        return ab[i]

    def beta_size_bound(self, i: int) -> int:
        """Certified upper bound for log_q |beta_i| (logarithm coefficients),
        from the ultrametric inequality on the defining recursion."""
        bb = getattr(self, "_bbar", None)
        if bb is None:
            bb = self._bbar = [0]
        q = self.ctx.q
        while len(bb) <= i:
            m = len(bb)
            cands = [bb[m - t] + q ** (m - t) * self.kappa[t - 1].deg()
                     for t in range(1, min(m, self.r) + 1)
                     if not self.kappa[t - 1].is_zero()]
            bb.append(max(cands) - q ** m if cands else _NEG_HUGE)
        return bb[i]

    def exp_coeffs(self, n: int) -> list[RatFunc]:
        """Reduced alpha_0..alpha_n; only sensible for small n."""
        nums = self.exp_numerators(n)
        out = []
        for i, ni in enumerate(nums):
            den = APoly.one(self.ctx)
            for l in range(i):
                den = den * self._den_factor(i, l)
            out.append(RatFunc(ni, den))
        return out

    def log_numerators(self, n: int) -> list[APoly]:
        """B_i with beta_i = B_i / prod_{l=1}^{i} (theta - theta^(q^l))."""
        nums = self._log_nums
        ctx = self.ctx
        while len(nums) <= n:
            i = len(nums)
            acc = APoly.zero(ctx)
            for j in range(1, min(i, self.r) + 1):
                term = nums[i - j] * self.kappa[j - 1].frob(i - j)
                for l in range(i - j + 1, i):
                    term = term * (APoly.theta(ctx) - APoly.theta(ctx, ctx.q ** l))
                acc = acc + term
            nums.append(acc)
        return nums[: n + 1]

    def log_coeffs(self, n: int) -> list[RatFunc]:
        nums = self.log_numerators(n)
        out = []
        for i, bi in enumerate(nums):
            den = APoly.one(self.ctx)
            for l in range(1, i + 1):
                den = den * (APoly.theta(self.ctx) - APoly.theta(self.ctx, self.ctx.q ** l))
            out.append(RatFunc(bi, den))
        return out

    # -- Laurent-side coefficients --------------------------------------------

    def _emb_alpha(self, i: int, ctx, e, s, floor: int) -> LaurentSeries:
        ni = self.exp_numerators(i)[i]
        if ni.is_zero():
            return LaurentSeries.zero(ctx, e, s)
        acc = LaurentSeries.from_apoly(ni, ctx, e, s)
        q = self.ctx.q
        for l in range(i):
            fac = LaurentSeries.from_apoly(self._den_factor(i, l), ctx, e, s)
            # keep the running inverse floor below the final target
            sz = max(acc.c) if acc.c else 0
            acc = acc * fac.inv(floor - max(sz, 0) - (q ** i) * e)
        return acc.truncate(floor)

    def log_coeffs_laurent(self, n: int, ctx, e, s, floor: int) -> list[LaurentSeries]:
        """beta_0..beta_n as series with error floors at (or drifting near) `floor`.

        This walks the defining recursion directly on truncated series: no
        Frobenius is ever applied to a beta, so error floors do not amplify.
        Callers must inspect .err on the results when d0 >= q.
        """
        q = self.ctx.q
        out = [LaurentSeries.one(ctx, e, s).truncate(floor)]
        kemb = [LaurentSeries.from_apoly(k, ctx, e, s) for k in self.kappa]
        th = LaurentSeries.from_apoly(APoly.theta(self.ctx), ctx, e, s)
        for i in range(1, n + 1):
            acc = LaurentSeries(ctx, e, s, {}, floor)
            for j in range(1, min(i, self.r) + 1):
                acc = acc + (out[i - j] * kemb[j - 1].frob(i - j)).truncate(floor)
            den = th - th.frob(i)  # theta - theta^(q^i), exact two-term series
            sz = max(acc.c) if acc.c else 0
            out.append((acc * den.inv(floor - max(sz, 0) - q ** i * e)).truncate(floor))
        return out

    def log_coeffs_laurent_multi(self, floors: list[int], ctx, e, s) -> list[LaurentSeries]:
        """beta_0..beta_n with a separate truncation floor per index.

        `floors[i]` is the floor (in w-exponent units) applied to beta_i.  The
        caller is responsible for choosing floors compatible with the forward
        error propagation of the recursion; achieved errors are certified in
        the .err fields regardless, so a bad choice costs precision, never
        soundness.
        """
        q = self.ctx.q
        n = len(floors) - 1
        out = [LaurentSeries.one(ctx, e, s).truncate(floors[0])]
        kemb = [LaurentSeries.from_apoly(k, ctx, e, s) for k in self.kappa]
        th = LaurentSeries.from_apoly(APoly.theta(self.ctx), ctx, e, s)
        for i in range(1, n + 1):
            fl = floors[i]
            acc = LaurentSeries(ctx, e, s, {}, fl)
            for j in range(1, min(i, self.r) + 1):
                acc = acc + (out[i - j] * kemb[j - 1].frob(i - j)).truncate(fl)
            den = th - th.frob(i)  # theta - theta^(q^i), exact two-term series
            sz = max(acc.c) if acc.c else 0
            out.append((acc * den.inv(fl - max(sz, 0) - q ** i * e)).truncate(fl))
        return out

    # -- evaluation -----------------------------------------------------------

    def exp_tail_cutoff(self, ub: Fraction, e: int, target: int) -> tuple[int, int]:
        """Certified cutoff for sum_j alpha_j u^(q^j) with log_q |u| <= ub.

        Returns (cut, tail_floor) such that the combined size of all terms
        with j > cut is at most q^(tail_floor / e) and tail_floor < target.
        Certification: with abar_i >= log|alpha_i| the term sizes obey
        h_i := abar_i/q^i + ub; once a window of r consecutive h_i sits at
        -delta < 0 (and q^cut >= d0), every later h_i <= -delta by induction,
        so the terms past the window are below -delta * q^(window end + 1).
        """
        q = self.ctx.q
        cut = self.r
        while True:
            win = [Fraction(self.alpha_size_bound(i), q ** i) + ub
                   for i in range(cut + 1, cut + self.r + 1)]
            delta = -max(win)
            if delta > 0 and q ** cut >= self.d0:
                in_window = max(self.alpha_size_bound(i) + q ** i * ub
                                for i in range(cut + 1, cut + self.r + 1))
                tail_log = max(in_window, -delta * q ** (cut + self.r + 1))
                if tail_log * e < target:
                    return cut, _ceil_frac(tail_log * e)
            cut += 1
            if cut > 10_000:
                raise PrecisionError("exponential cutoff search failed")

    def exp_eval(self, u: LaurentSeries, prec: int) -> LaurentSeries:
        """exp_phi(u) with certified absolute error <= q^(-prec).

        Valid for any size of u: the term bounds |alpha_i u^(q^i)| <=
        q^(q^i (d0/(q-1) - i/r + log|u|)) decay doubly exponentially once i
        passes r(d0/(q-1) + log|u|), which determines the cutoff.
        """
        ctx, e, s = u.ctx, u.e, u.s
        ub = u.abs_bound()
        if ub is None:
            return LaurentSeries.zero(ctx, e, s)
        q = self.ctx.q
        target = -prec * e
        cut, tail_floor = self.exp_tail_cutoff(ub, e, target)
        acc = LaurentSeries(ctx, e, s, {}, max(target - e, tail_floor))
        for j in range(cut + 1):
            su = _ceil_frac(q ** j * ub * e)
            aj = self._emb_alpha(j, ctx, e, s, target - e - max(su, 0))
            acc = acc + (aj * u.frob(j)).truncate(target)
        return acc.truncate(max(target, tail_floor))


# -- Carlitz action on the x-side ---------------------------------------------

_carlitz_cache: dict = {}


def _carlitz_theta_pows(ctx: FieldCtx, j: int) -> list[TwistedPoly]:
    key = (ctx.p, ctx.n, ctx.k)
    pows = _carlitz_cache.get(key)
    if pows is None:
        pows = [TwistedPoly.const(APoly.one(ctx))]
        _carlitz_cache[key] = pows
    base = TwistedPoly(ctx, [APoly.theta(ctx), APoly.one(ctx)])
    while len(pows) <= j:
        pows.append(pows[-1] * base)
    return pows


def carlitz_act(ctx: FieldCtx, a: APoly) -> XPoly:
    """C_a(x) = sum_k <a>_k x^(q^k) for the Carlitz module; F_q-linear in a."""
    pows = _carlitz_theta_pows(ctx, max(a.deg(), 0))
    q = ctx.q
    out = XPoly.zero(ctx)
    for j, v in enumerate(a.c):
        if v:
            for k, c in enumerate(pows[j].coeffs):
                if not c.is_zero():
                    out = out + XPoly(ctx, {q ** k: RatFunc(c.scale(int(v)))})
    return out


def star(a: APoly, beta: XPoly) -> XPoly:
    """beta composed with the Carlitz action of a: (a * beta)(x) = beta(C_a(x))."""
    return beta.subst(carlitz_act(beta.ctx, a))


def j0_upper(beta: XPoly) -> Fraction:
    """Upper bound for log_q |beta(v)| over arguments with |v| <= q^(1/(q-1)).

    For beta = sum c_i x^i this is max(deg c_i + i/(q-1)).
    """
    q = beta.ctx.q
    best = Fraction(0)
    for i, c in beta.coeffs():
        if not c.is_zero():
            best = max(best, Fraction(c.deg_bound()) + Fraction(i, q - 1))
    return best

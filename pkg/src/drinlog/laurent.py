"""Truncated Laurent series at the infinite place of F_q(theta).

A LaurentSeries is a finite sum of terms c * w^m where w is a fixed root of
w^e = s * theta (s a base-field scalar).  For e = 1, s = 1 this is the plain
completion F_{q^k}((1/theta)); for e = q - 1, s = -1 the uniformizing root w
is the ramified element zeta with zeta^(q-1) = -theta, which generates the
field where torsion evaluations live.  |w^m| = q^(m/e).

`err` is an absolute error floor: the stored terms differ from the value
represented by at most q^(err/e); exact values carry err = None.  Stored
exponents are always strictly above the floor.  Exponents are arbitrary
Python ints, so doubly-exponential degree spreads stay cheap (sparse dicts).
"""

from __future__ import annotations

from fractions import Fraction

from drinlog.fields import FieldCtx
from drinlog.poly import APoly, RatFunc

_NEG_INF = None

TERM_CAP = 2_000_000  # safety valve against runaway dense windows


class PrecisionError(ArithmeticError):
    pass


class ResourceLimit(RuntimeError):
    pass


class LaurentSeries:
    __slots__ = ("ctx", "e", "s", "c", "err")

    def __init__(self, ctx: FieldCtx, e: int, s: int, c: dict[int, int], err: int | None):
        self.ctx, self.e, self.s = ctx, e, int(s)
        if err is not None:
            c = {m: v for m, v in c.items() if m > err and v}
        else:
            c = {m: v for m, v in c.items() if v}
        if len(c) > TERM_CAP:
            raise ResourceLimit(f"laurent series with {len(c)} terms exceeds cap")
        self.c = c
        self.err = err

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, ctx, e=1, s=1):
        return cls(ctx, e, s, {}, None)

    @classmethod
    def one(cls, ctx, e=1, s=1):
        return cls(ctx, e, s, {0: 1}, None)

    @classmethod
    def from_apoly(cls, a: APoly, ctx: FieldCtx | None = None, e: int = 1, s: int = 1):
        """Exact embedding of a polynomial in theta; theta = s^(-1) w^e."""
        ctx = ctx or a.ctx
        sinv = int(ctx.inv(int(ctx.embed_base(s)))) if s != 1 else 1
        c = {}
        acc = 1
        for j, v in enumerate(a.c):
            if v:
                vv = int(ctx.embed_base(int(v))) if ctx != a.ctx else int(v)
                c[j * e] = int(ctx.mul(vv, acc))
            if j < len(a.c) - 1:
                acc = int(ctx.mul(acc, sinv))
        return cls(ctx, e, s, c, None)

    # -- queries --------------------------------------------------------------

    def is_exact(self):
        return self.err is None

    def terms(self):
        return sorted(self.c.items(), reverse=True)

    def size_exp(self) -> Fraction | None:
        """log_q of the size of the stored terms; None if no terms."""
        if not self.c:
            return None
        return Fraction(max(self.c), self.e)

    def abs_bound(self) -> Fraction | None:
        """Certified upper bound for log_q |value|; None means value is exactly 0."""
        v = max(self.c) if self.c else None
        if self.err is None:
            return None if v is None else Fraction(v, self.e)
        m = self.err if v is None else max(v, self.err)
        return Fraction(m, self.e)

    def err_exp(self) -> Fraction | None:
        return None if self.err is None else Fraction(self.err, self.e)

    def _compat(self, other):
        if (self.ctx, self.e, self.s) != (other.ctx, other.e, other.s):
            raise ValueError("laurent series from different fields")

    # -- ring ops -------------------------------------------------------------

    @staticmethod
    def _join_err(e1, e2):
        if e1 is None:
            return e2
        if e2 is None:
            return e1
        return max(e1, e2)

    def __add__(self, other):
        self._compat(other)
        ctx = self.ctx
        c = dict(self.c)
        for m, v in other.c.items():
            if m in c:
                w = int(ctx.add(c[m], v))
                if w:
                    c[m] = w
                else:
                    del c[m]
            else:
                c[m] = v
        return LaurentSeries(ctx, self.e, self.s, c, self._join_err(self.err, other.err))

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        ctx = self.ctx
        return LaurentSeries(ctx, self.e, self.s, {m: int(ctx.neg(v)) for m, v in self.c.items()}, self.err)

    def scale(self, v: int):
        ctx = self.ctx
        if v == 0:
            return LaurentSeries(ctx, self.e, self.s, {}, self.err)
        return LaurentSeries(ctx, self.e, self.s,
                             {m: int(ctx.mul(w, v)) for m, w in self.c.items()}, self.err)

    def shift(self, m: int):
        """Multiply by w^m."""
        return LaurentSeries(self.ctx, self.e, self.s,
                             {k + m: v for k, v in self.c.items()},
                             None if self.err is None else self.err + m)

    def __mul__(self, other):
        self._compat(other)
        ctx = self.ctx
        # error floor of the product: |a||db| + |b||da| + |da||db|
        err = None
        sa = max(self.c) if self.c else self.err
        sb = max(other.c) if other.c else other.err
        if self.err is not None and sb is not None:
            err = self.err + max(sb, other.err if other.err is not None else sb)
        if other.err is not None and sa is not None:
            e2 = other.err + max(sa, self.err if self.err is not None else sa)
            err = e2 if err is None else max(err, e2)
        if len(self.c) * len(other.c) > 16 * TERM_CAP:
            raise ResourceLimit("laurent product too large")
        a, b = (self.c, other.c) if len(self.c) <= len(other.c) else (other.c, self.c)
        out: dict[int, int] = {}
        for m1, v1 in a.items():
            for m2, v2 in b.items():
                m = m1 + m2
                if err is not None and m <= err:
                    continue
                w = int(ctx.mul(v1, v2))
                if m in out:
                    t = int(ctx.add(out[m], w))
                    if t:
                        out[m] = t
                    else:
                        del out[m]
                elif w:
                    out[m] = w
        return LaurentSeries(ctx, self.e, self.s, out, err)

    def frob(self, i: int = 1):
        """q^i-th power; exact on both terms and the error floor (char p)."""
        if i == 0:
            return self
        ctx = self.ctx
        step = ctx.q ** i
        return LaurentSeries(ctx, self.e, self.s,
                             {m * step: int(ctx.frob(v, i)) for m, v in self.c.items()},
                             None if self.err is None else self.err * step)

    def truncate(self, err: int):
        e2 = err if self.err is None else max(err, self.err)
        return LaurentSeries(self.ctx, self.e, self.s, dict(self.c), e2)

    def inv(self, err: int):
        """Reciprocal with result error floor `err` (units of 1/e)."""
        if not self.c:
            raise PrecisionError("cannot invert a series with no known leading term")
        ctx = self.ctx
        v = max(self.c)
        if self.err is not None and self.err >= v:
            raise PrecisionError("leading term not separated from the error floor")
        lead = self.c[v]
        li = int(ctx.inv(lead))
        # self = lead*w^v * (1 - u), |u| < 1
        u = {m - v: int(ctx.neg(ctx.mul(v2, li))) for m, v2 in self.c.items() if m != v}
        # error of normalized remainder
        uerr = None if self.err is None else self.err - v
        useries = LaurentSeries(ctx, self.e, self.s, u, uerr)
        if not u and uerr is None:
            # exact monomial: exact inverse
            return LaurentSeries(ctx, self.e, self.s, {-v: li}, None)
        target = err + v  # accumulate 1/(1-u) to this floor
        acc = LaurentSeries.one(ctx, self.e, self.s).truncate(target)
        term = LaurentSeries.one(ctx, self.e, self.s)
        top = useries.size_exp()
        if top is None and useries.err is None:
            pass  # exactly a monomial
        else:
            n = 0
            while True:
                term = (term * useries).truncate(target)
                n += 1
                if not term.c:
                    break
                acc = acc + term
                if n > 10 ** 6:
                    raise ResourceLimit("inversion failed to converge")
        out = acc.shift(-v).scale(li)
        return out.truncate(err)

    def eval_frob_series(self, coeffs: list["LaurentSeries"], err: int):
        """sum_j coeffs[j] * self^(q^j); caller guarantees the list covers the tail."""
        acc = LaurentSeries(self.ctx, self.e, self.s, {}, err)
        for j, cf in enumerate(coeffs):
            acc = acc + (cf * self.frob(j)).truncate(err)
        return acc

    # -- distances / decomposition --------------------------------------------

    def dist_bound(self, other) -> Fraction | None:
        """Certified upper bound for log_q |self - other| (None = provably equal...
        i.e. both exact and identical)."""
        return (self - other).abs_bound()

    def nearest_A(self):
        """Split off the best polynomial part: returns (APoly over the base field,
        log_q distance bound as Fraction or None)."""
        ctx = self.ctx
        base = ctx.base_ctx()
        coeffs: dict[int, int] = {}
        rest = []
        code_of = {int(v): i for i, v in enumerate(ctx.base_elems())}
        s_idx = int(ctx.embed_base(self.s))
        for m, v in self.c.items():
            if m >= 0 and m % self.e == 0:
                j = m // self.e
                # the term is c*w^(j*e) = c * s^j * theta^j
                cv = int(ctx.mul(v, int(ctx.pow_int(s_idx, j))))
                if cv in code_of:
                    coeffs[j] = code_of[cv]
                    continue
            rest.append(m)
        d = max(coeffs) if coeffs else 0
        arr = [0] * (d + 1)
        for j, v in coeffs.items():
            arr[j] = v
        a = APoly(base, arr)
        dm = max(rest) if rest else None
        if self.err is not None:
            dm = self.err if dm is None else max(dm, self.err)
        return a, (None if dm is None else Fraction(dm, self.e))

    # -- output ---------------------------------------------------------------

    def __repr__(self):
        ts = self.terms()
        parts = [f"{v}*w^{m}" for m, v in ts[:8]]
        if len(ts) > 8:
            parts.append("...")
        tail = "" if self.err is None else f" + O(w^{self.err})"
        base = " + ".join(parts) if parts else "0"
        return f"Laurent[e={self.e}]({base}{tail})"

    def to_json(self, max_terms: int = 10 ** 9):
        return {
            "e": self.e,
            "terms": [[m, int(v)] for m, v in self.terms()[:max_terms]],
            "err_exp": self.err,
        }


def embed_ratfunc(r: RatFunc, prec: int, ctx: FieldCtx | None = None,
                  e: int = 1, s: int = 1) -> LaurentSeries:
    """Embed num/den with absolute error <= q^(-prec) (floor = -prec*e)."""
    ctx = ctx or r.ctx
    floor = -prec * e
    num = LaurentSeries.from_apoly(r.num, ctx, e, s)
    if r.den.is_one():
        return num
    den = LaurentSeries.from_apoly(r.den, ctx, e, s)
    # err(num * den^-1) <= |num| * err(den^-1), so push the inverse floor down
    shift = max(max(num.c), 0) if num.c else 0
    return (num * den.inv(floor - shift)).truncate(floor)


def ramified_root_theta(ctx: FieldCtx) -> LaurentSeries:
    """The canonical (q-1)-th root zeta of -theta as an exact one-term series."""
    q = ctx.q
    e = q - 1
    s = (-1) % ctx.p  # index of the scalar -1
    return LaurentSeries(ctx, e, s, {1: 1}, None)

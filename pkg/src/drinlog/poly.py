"""Exact polynomial and rational-function arithmetic over F_q[theta].

APoly   -- dense polynomial over a FieldCtx (coefficient indices, ascending)
RatFunc -- reduced fraction of APolys with monic denominator
XPoly   -- sparse polynomial in the extra variable x with RatFunc coefficients

Plus: monic enumeration, irreducibility, factorization of monics, canonical
representatives mod f, and the text grammar used by the CLI ("T" is theta,
"u" the extension-field generator).
"""

from __future__ import annotations

import numpy as np

from drinlog import _core
from drinlog.fields import FieldCtx, build_field


def _normalize(c: np.ndarray) -> np.ndarray:
    d = len(c) - 1
    while d > 0 and c[d] == 0:
        d -= 1
    return np.ascontiguousarray(c[: d + 1])


class APoly:
    __slots__ = ("ctx", "c")

    def __init__(self, ctx: FieldCtx, coeffs):
        self.ctx = ctx
        c = np.asarray(coeffs, dtype=np.int64)
        if c.ndim != 1 or len(c) == 0:
            c = np.zeros(1, dtype=np.int64)
        self.c = _normalize(c)

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, ctx):
        return cls(ctx, [0])

    @classmethod
    def one(cls, ctx):
        return cls(ctx, [1])

    @classmethod
    def const(cls, ctx, v: int):
        return cls(ctx, [v])

    @classmethod
    def theta(cls, ctx, power: int = 1):
        c = np.zeros(power + 1, dtype=np.int64)
        c[power] = 1
        return cls(ctx, c)

    # -- basic queries --------------------------------------------------------

    def deg(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return -1 if self.is_zero() else len(self.c) - 1

    def is_zero(self) -> bool:
        return len(self.c) == 1 and self.c[0] == 0

    def is_one(self) -> bool:
        return len(self.c) == 1 and self.c[0] == 1

    def is_const(self) -> bool:
        return len(self.c) == 1

    def lead(self) -> int:
        return int(self.c[-1])

    def is_monic(self) -> bool:
        return self.lead() == 1

    def __eq__(self, other):
        return (isinstance(other, APoly) and self.ctx == other.ctx
                and len(self.c) == len(other.c) and bool(np.all(self.c == other.c)))

    def __hash__(self):
        return hash((self.ctx, self.c.tobytes()))

    def key(self):
        """Sort key: (degree, coefficient tuple from the top down)."""
        return (self.deg(), tuple(int(v) for v in self.c[::-1]))

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        out = a.copy()
        out[: len(b)] = self.ctx.add(out[: len(b)], b)
        return APoly(self.ctx, out)

    def __sub__(self, other):
        la, lb = len(self.c), len(other.c)
        n = max(la, lb)
        a = np.zeros(n, dtype=np.int64)
        a[:la] = self.c
        b = np.zeros(n, dtype=np.int64)
        b[:lb] = other.c
        return APoly(self.ctx, self.ctx.sub(a, b))

    def __neg__(self):
        return APoly(self.ctx, self.ctx.neg(self.c))

    def __mul__(self, other):
        if isinstance(other, RatFunc):
            return RatFunc(self, APoly.one(self.ctx)) * other
        ctx = self.ctx
        if self.is_zero() or other.is_zero():
            return APoly.zero(ctx)
        if ctx.prime_scalar:
            return APoly(ctx, _core.pmul(self.c, other.c, ctx.p))
        a, b = self.c, other.c
        if len(a) > len(b):
            a, b = b, a
        out = np.zeros(len(a) + len(b) - 1, dtype=np.int64)
        for i, ai in enumerate(a):
            if ai:
                out[i : i + len(b)] = ctx.add(out[i : i + len(b)], ctx.mul(int(ai), b))
        return APoly(ctx, out)

    def scale(self, v: int):
        return APoly(self.ctx, self.ctx.mul(self.c, int(v)))

    def __divmod__(self, other):
        ctx = self.ctx
        if ctx.prime_scalar:
            q, r = _core.pdivmod(self.c, other.c, ctx.p)
            return APoly(ctx, q), APoly(ctx, r)
        return self._generic_divmod(other)

    def _generic_divmod(self, other):
        ctx = self.ctx
        dd = other.deg()
        if dd < 0:
            raise ZeroDivisionError("polynomial division by zero")
        lead_inv = int(ctx.inv(other.lead()))
        rem = self.c.copy()
        dn = self.deg()
        if dn < dd:
            return APoly.zero(ctx), APoly(ctx, rem)
        q = np.zeros(dn - dd + 1, dtype=np.int64)
        for t in range(dn - dd, -1, -1):
            c = ctx.mul(int(rem[t + dd]), lead_inv)
            if c:
                q[t] = c
                rem[t : t + dd + 1] = ctx.sub(rem[t : t + dd + 1], ctx.mul(int(c), other.c))
        return APoly(ctx, q), APoly(ctx, rem[:dd] if dd else [0])

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def divexact(self, other):
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return q

    def monic(self) -> "APoly":
        if self.is_zero() or self.is_monic():
            return self
        return self.scale(int(self.ctx.inv(self.lead())))

    def pow(self, e: int) -> "APoly":
        result = APoly.one(self.ctx)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def frob(self, i: int) -> "APoly":
        """self^(q^i): coefficient Frobenius plus exponent spread by q^i."""
        if i == 0 or self.is_zero():
            return self
        ctx = self.ctx
        step = ctx.q ** i
        out = np.zeros((len(self.c) - 1) * step + 1, dtype=np.int64)
        out[::step] = self.c if ctx.m == 1 else ctx.frob(self.c, i)
        return APoly(ctx, out)

    def eval_scalar(self, v: int) -> int:
        """Evaluate at a field element (index), Horner."""
        ctx = self.ctx
        acc = 0
        for coef in self.c[::-1]:
            acc = int(ctx.add(ctx.mul(acc, int(v)), int(coef)))
        return acc

    def shift(self, k: int) -> "APoly":
        """Multiply by theta^k."""
        if self.is_zero():
            return self
        out = np.zeros(len(self.c) + k, dtype=np.int64)
        out[k:] = self.c
        return APoly(self.ctx, out)

    def to_ctx(self, ctx: FieldCtx) -> "APoly":
        """Re-embed base-field coefficients into a larger working context."""
        if ctx == self.ctx:
            return self
        return APoly(ctx, ctx.embed_base(self.c))

    def __repr__(self):
        return f"APoly({format_poly(self)})"


def poly_gcd(a: APoly, b: APoly) -> APoly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def ext_gcd(a: APoly, b: APoly):
    """(g, s, t) with s*a + t*b = g, g monic (or zero)."""
    ctx = a.ctx
    r0, r1 = a, b
    s0, s1 = APoly.one(ctx), APoly.zero(ctx)
    t0, t1 = APoly.zero(ctx), APoly.one(ctx)
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    li = int(ctx.inv(r0.lead()))
    return r0.scale(li), s0.scale(li), t0.scale(li)


def inv_mod(a: APoly, f: APoly) -> APoly:
    g, s, _ = ext_gcd(a % f, f)
    if not g.is_one():
        raise ZeroDivisionError("element not invertible mod f")
    return s % f


def modexp(base: APoly, e: int, f: APoly) -> APoly:
    result = APoly.one(base.ctx)
    base = base % f
    while e:
        if e & 1:
            result = (result * base) % f
        base = (base * base) % f
        e >>= 1
    return result


def canonical_rep(a, f: APoly) -> APoly:
    """Unique representative of degree < deg f of a (APoly or RatFunc) mod f."""
    if isinstance(a, RatFunc):
        return (a.num % f) * inv_mod(a.den, f) % f
    return a % f


def is_irreducible(f: APoly) -> bool:
    """Rabin test over F_q (q = ctx.q; the context must be the base field)."""
    d = f.deg()
    if d <= 0:
        return False
    if not f.is_monic():
        f = f.monic()
    q = f.ctx.q
    x = APoly.theta(f.ctx)
    if modexp(x, q ** d, f) != (x % f):
        return False
    for l in range(2, d + 1):
        if d % l == 0 and _is_prime_int(l):
            g = poly_gcd(modexp(x, q ** (d // l), f) - x, f)
            if not g.is_one():
                return False
    return True


def _is_prime_int(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def monic_of_degree(ctx: FieldCtx, d: int):
    """All monic degree-d polynomials, constant coefficient varying fastest."""
    q = ctx.q
    for code in range(q ** d):
        c = np.empty(d + 1, dtype=np.int64)
        t = code
        for j in range(d):
            c[j] = t % q
            t //= q
        c[d] = 1
        yield APoly(ctx, c)


def monic_digit_block(ctx: FieldCtx, d: int) -> np.ndarray:
    """int64[q^d, d+1] coefficient rows of all monic degree-d polys, same order."""
    q = ctx.q
    B = q ** d
    out = np.empty((B, d + 1), dtype=np.int64)
    idx = np.arange(B, dtype=np.int64)
    for j in range(d):
        out[:, j] = idx % q
        idx //= q
    out[:, d] = 1
    return out


def irreducibles_of_degree(ctx: FieldCtx, d: int) -> list[APoly]:
    return [f for f in monic_of_degree(ctx, d) if is_irreducible(f)]


def factor_monic(f: APoly, seed: int = 12345) -> list[tuple[APoly, int]]:
    """Factor a monic polynomial into (prime, multiplicity), sorted by key().

    Squarefree + distinct-degree + Cantor-Zassenhaus splitting; the randomized
    split uses a local seeded generator, and the sort makes output order
    independent of it.
    """
    ctx = f.ctx
    if f.deg() <= 0:
        return []
    rng = np.random.default_rng(seed)
    q = ctx.q
    out: dict[bytes, list] = {}

    def record(p_, m_):
        k = p_.c.tobytes()
        if k in out:
            out[k][1] += m_
        else:
            out[k] = [p_, m_]

    def split_equal_degree(g, d):
        # g = product of distinct primes of degree d
        if g.deg() == d:
            record(g, 1)
            return
        while True:
            rc = rng.integers(0, q, size=g.deg())
            rc[-1] = max(rc[-1], 1)
            r = APoly(ctx, rc)
            if q % 2 == 1:
                h = modexp(r, (q ** d - 1) // 2, g) - APoly.one(ctx)
            else:
                # trace map for characteristic 2
                h = APoly.zero(ctx)
                t = r % g
                for _ in range(d * ctx.n):
                    h = (h + t) % g
                    t = (t * t) % g
            w = poly_gcd(h, g)
            if 0 < w.deg() < g.deg():
                split_equal_degree(w, d)
                split_equal_degree(g.divexact(w), d)
                return

    def factor_squarefree(g):
        # distinct-degree stage
        d = 1
        x = APoly.theta(ctx)
        h = x % g
        while g.deg() >= 2 * d:
            h = modexp(h, q, g)
            w = poly_gcd(h - x, g)
            if w.deg() > 0:
                split_equal_degree(w, d)
                g = g.divexact(w)
                h = h % g
            d += 1
        if g.deg() > 0:
            record(g, 1)

    # squarefree part first, then exact multiplicities by trial division
    dg = APoly(ctx, _derivative(f))
    if dg.is_zero():
        p = ctx.p
        root = APoly(ctx, np.array(
            [int(ctx.pow_int(int(v), ctx.Q // p)) for v in f.c[::p]], dtype=np.int64))
        inner = factor_monic(root, seed)
        return sorted([(pr, m * p) for pr, m in inner], key=lambda t: t[0].key())
    w = poly_gcd(f, dg)
    factor_squarefree(f.divexact(w))
    result = []
    for _, (pr, _m) in out.items():
        g = f
        m = 0
        while True:
            qq, rr = divmod(g, pr)
            if rr.is_zero():
                g, m = qq, m + 1
            else:
                break
        result.append((pr, m))
    result.sort(key=lambda t: t[0].key())
    # verify we recovered everything (w may hide repeated-prime content)
    total = APoly.one(ctx)
    for pr, m in result:
        total = total * pr.pow(m)
    if total != f.monic():
        missing = f.monic().divexact(total)
        for pr, m in factor_monic(missing, seed + 1):
            merged = False
            for t, (pr2, m2) in enumerate(result):
                if pr2 == pr:
                    result[t] = (pr2, m2 + m)
                    merged = True
            if not merged:
                result.append((pr, m))
        result.sort(key=lambda t: t[0].key())
    return result


def _derivative(g: APoly) -> np.ndarray:
    ctx = g.ctx
    if g.deg() <= 0:
        return np.zeros(1, dtype=np.int64)
    out = np.zeros(max(g.deg(), 1), dtype=np.int64)
    for j in range(1, g.deg() + 1):
        out[j - 1] = ctx.mul(int(g.c[j]), j % ctx.p)
    return out


# -- rational functions -------------------------------------------------------

class RatFunc:
    """num/den with den monic and gcd(num, den) = 1."""

    __slots__ = ("num", "den")

    def __init__(self, num: APoly, den: APoly | None = None, reduce: bool = True):
        ctx = num.ctx
        if den is None:
            den = APoly.one(ctx)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            den = APoly.one(ctx)
        elif reduce:
            g = poly_gcd(num, den)
            if g.deg() > 0:
                num = num.divexact(g)
                den = den.divexact(g)
            li = den.lead()
            if li != 1:
                inv = int(ctx.inv(li))
                num = num.scale(inv)
                den = den.scale(inv)
        self.num, self.den = num, den

    @classmethod
    def zero(cls, ctx):
        return cls(APoly.zero(ctx))

    @classmethod
    def one(cls, ctx):
        return cls(APoly.one(ctx))

    @property
    def ctx(self):
        return self.num.ctx

    def is_zero(self):
        return self.num.is_zero()

    def is_integral(self):
        return self.den.is_one()

    def deg_bound(self):
        """deg num - deg den (the infinity-adic size exponent)."""
        return self.num.deg() - self.den.deg()

    def __eq__(self, other):
        if isinstance(other, APoly):
            other = RatFunc(other)
        return isinstance(other, RatFunc) and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        if isinstance(other, APoly):
            other = RatFunc(other)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other):
        if isinstance(other, APoly):
            other = RatFunc(other)
        return RatFunc(self.num * other.den - other.num * self.den, self.den * other.den)

    def __neg__(self):
        return RatFunc(-self.num, self.den, reduce=False)

    def __mul__(self, other):
        if isinstance(other, APoly):
            other = RatFunc(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        if isinstance(other, APoly):
            other = RatFunc(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def scale(self, v: int):
        return RatFunc(self.num.scale(v), self.den, reduce=False)

    def frob(self, i: int):
        return RatFunc(self.num.frob(i), self.den.frob(i), reduce=False)

    def __repr__(self):
        if self.is_integral():
            return f"RatFunc({format_poly(self.num)})"
        return f"RatFunc(({format_poly(self.num)})/({format_poly(self.den)}))"


# -- polynomials in x over K --------------------------------------------------

class XPoly:
    """Sparse polynomial in x with RatFunc coefficients (exact K[x] element)."""

    __slots__ = ("ctx", "d")

    def __init__(self, ctx: FieldCtx, d: dict[int, RatFunc] | None = None):
        self.ctx = ctx
        self.d = {}
        if d:
            for e, v in d.items():
                if isinstance(v, APoly):
                    v = RatFunc(v)
                if not v.is_zero():
                    self.d[int(e)] = v

    @classmethod
    def zero(cls, ctx):
        return cls(ctx)

    @classmethod
    def x(cls, ctx, e: int = 1):
        return cls(ctx, {e: RatFunc.one(ctx)})

    def is_zero(self):
        return not self.d

    def deg_x(self):
        return max(self.d) if self.d else -1

    def coeff(self, e: int) -> RatFunc:
        return self.d.get(e, RatFunc.zero(self.ctx))

    def coeffs(self):
        """(exponent, coefficient) pairs in ascending x-degree."""
        return sorted(self.d.items())

    def is_integral(self):
        return all(v.is_integral() for v in self.d.values())

    def __eq__(self, other):
        return isinstance(other, XPoly) and self.ctx == other.ctx and self.d == other.d

    def __add__(self, other):
        out = dict(self.d)
        for e, v in other.d.items():
            out[e] = out[e] + v if e in out else v
        return XPoly(self.ctx, out)

    def __sub__(self, other):
        out = dict(self.d)
        for e, v in other.d.items():
            out[e] = out[e] - v if e in out else -v
        return XPoly(self.ctx, out)

    def __neg__(self):
        return XPoly(self.ctx, {e: -v for e, v in self.d.items()})

    def __mul__(self, other):
        if isinstance(other, (RatFunc, APoly)):
            if isinstance(other, APoly):
                other = RatFunc(other)
            return XPoly(self.ctx, {e: v * other for e, v in self.d.items()})
        out: dict[int, RatFunc] = {}
        for e1, v1 in self.d.items():
            for e2, v2 in other.d.items():
                e = e1 + e2
                t = v1 * v2
                out[e] = out[e] + t if e in out else t
        return XPoly(self.ctx, out)

    def frob(self, i: int):
        if i == 0:
            return self
        step = self.ctx.q ** i
        return XPoly(self.ctx, {e * step: v.frob(i) for e, v in self.d.items()})

    def pow(self, e: int):
        result = XPoly(self.ctx, {0: RatFunc.one(self.ctx)})
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def subst(self, inner: "XPoly"):
        """self(inner(x)): substitution for the x variable."""
        result = XPoly.zero(self.ctx)
        for e, v in self.d.items():
            result = result + inner.pow(e) * v
        return result

    def __repr__(self):
        if not self.d:
            return "XPoly(0)"
        parts = []
        for e, v in self.coeffs():
            c = repr(v)[8:-1]
            parts.append(c if e == 0 else (f"({c})*x^{e}" if e else c))
        return "XPoly(" + " + ".join(parts) + ")"


# -- text grammar -------------------------------------------------------------

def format_poly(a: APoly, var: str = "T") -> str:
    ctx = a.ctx
    if a.is_zero():
        return "0"
    parts = []
    for j in range(a.deg(), -1, -1):
        v = int(a.c[j])
        if not v:
            continue
        cs = _format_scalar(ctx, v)
        if j == 0:
            parts.append(cs)
        else:
            tv = var if j == 1 else f"{var}^{j}"
            parts.append(tv if cs == "1" else f"{cs}*{tv}")
    return " + ".join(parts)


def _format_scalar(ctx, v: int) -> str:
    if v < ctx.p:
        return str(v)
    digits = []
    t = v
    j = 0
    while t:
        d = t % ctx.p
        if d:
            uv = "u" if j == 1 else f"u^{j}"
            digits.append(uv if d == 1 else f"{d}*{uv}")
        t //= ctx.p
        j += 1
    s = "+".join(reversed(digits))
    return f"({s})" if len(digits) > 1 else s


class _Parser:
    def __init__(self, text, ctx, var="T"):
        self.toks = self._lex(text)
        self.pos = 0
        self.ctx = ctx
        self.var = var

    @staticmethod
    def _lex(text):
        toks = []
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
            elif ch.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                toks.append(("num", int(text[i:j])))
                i = j
            elif ch in "+-*^()":
                toks.append((ch, ch))
                i += 1
            elif ch.isalpha():
                toks.append(("name", ch))
                i += 1
            else:
                raise ValueError(f"bad character {ch!r} in polynomial")
        toks.append(("end", None))
        return toks

    def peek(self):
        return self.toks[self.pos][0]

    def next(self):
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def parse(self) -> APoly:
        v = self.expr()
        if self.peek() != "end":
            raise ValueError("trailing input in polynomial")
        return v

    def expr(self):
        if self.peek() == "-":
            self.next()
            v = -self.term()
        else:
            if self.peek() == "+":
                self.next()
            v = self.term()
        while self.peek() in "+-":
            op = self.next()[0]
            t = self.term()
            v = v + t if op == "+" else v - t
        return v

    def term(self):
        v = self.factor()
        while self.peek() == "*":
            self.next()
            v = v * self.factor()
        return v

    def factor(self):
        kind, val = self.next()
        if kind == "num":
            base = APoly.const(self.ctx, val % self.ctx.p)
        elif kind == "(":
            base = self.expr()
            if self.next()[0] != ")":
                raise ValueError("unbalanced parenthesis")
        elif kind == "name":
            if val == self.var:
                base = APoly.theta(self.ctx)
            elif val == "u":
                if self.ctx.m == 1:
                    raise ValueError("u used over a prime field")
                base = APoly.const(self.ctx, self.ctx.p)
            else:
                raise ValueError(f"unknown symbol {val!r} (expected {self.var} or u)")
        else:
            raise ValueError(f"unexpected token {val!r}")
        if self.peek() == "^":
            self.next()
            kind, e = self.next()
            if kind != "num":
                raise ValueError("exponent must be an integer")
            base = base.pow(e)
        return base


def parse_poly(text: str, ctx: FieldCtx, var: str = "T") -> APoly:
    return _Parser(text, ctx, var).parse()

"""Twisted polynomial arithmetic: operators sum_k c_k tau^k with tau c = c^q tau.

Coefficients are APolys, either exact over A = F_q[theta] (modulus None) or
residues mod a fixed monic f.  The residue path caches the Frobenius
substitution theta -> theta^q mod f so that c -> c^q is a cheap re-evaluation.
"""

from __future__ import annotations

import numpy as np

from drinlog.poly import APoly


class FrobCache:
    """Powers theta^(j*q) mod f, for coefficient Frobenius in A/(f)."""

    def __init__(self, f: APoly):
        self.f = f
        ctx = f.ctx
        d = f.deg()
        xq = APoly.theta(ctx).pow(ctx.q) % f if ctx.q > d else APoly.theta(ctx, ctx.q) % f
        self.pows = [APoly.one(ctx)]
        for _ in range(1, d):
            self.pows.append((self.pows[-1] * xq) % f)

    def frob_once(self, c: APoly) -> APoly:
        # c(theta)^q = c(theta^q) since coefficients live in F_q
        out = APoly.zero(self.f.ctx)
        for j, v in enumerate(c.c):
            if v:
                out = out + self.pows[j].scale(int(v))
        return out

    def frob(self, c: APoly, i: int) -> APoly:
        for _ in range(i):
            c = self.frob_once(c)
        return c


class TwistedPoly:
    """coeffs[k] is the tau^k coefficient; modulus None means exact over A."""

    __slots__ = ("ctx", "coeffs", "modulus", "_fc")

    def __init__(self, ctx, coeffs: list[APoly], modulus: APoly | None = None, fc: FrobCache | None = None):
        self.ctx = ctx
        self.modulus = modulus
        self._fc = fc
        if modulus is not None:
            coeffs = [c % modulus for c in coeffs]
        while len(coeffs) > 1 and coeffs[-1].is_zero():
            coeffs = coeffs[:-1]
        self.coeffs = coeffs if coeffs else [APoly.zero(ctx)]

    @classmethod
    def zero(cls, ctx, modulus=None, fc=None):
        return cls(ctx, [APoly.zero(ctx)], modulus, fc)

    @classmethod
    def const(cls, c: APoly, modulus=None, fc=None):
        return cls(c.ctx, [c], modulus, fc)

    def deg_tau(self) -> int:
        if len(self.coeffs) == 1 and self.coeffs[0].is_zero():
            return -1
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> APoly:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return APoly.zero(self.ctx)

    def _frob_coeff(self, c: APoly, i: int) -> APoly:
        if i == 0 or c.is_zero():
            return c
        if self.modulus is None:
            return c.frob(i)
        if self._fc is None:
            self._fc = FrobCache(self.modulus)
        return self._fc.frob(c, i)

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        out = [self.coeff(k) + other.coeff(k) for k in range(n)]
        return TwistedPoly(self.ctx, out, self.modulus, self._fc)

    def __sub__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        out = [self.coeff(k) - other.coeff(k) for k in range(n)]
        return TwistedPoly(self.ctx, out, self.modulus, self._fc)

    def __mul__(self, other):
        """tmul: tau^i c = c^(q^i) tau^i."""
        if self.deg_tau() < 0 or other.deg_tau() < 0:
            return TwistedPoly.zero(self.ctx, self.modulus, self._fc)
        n = len(self.coeffs) + len(other.coeffs) - 1
        out = [APoly.zero(self.ctx) for _ in range(n)]
        for i, u in enumerate(self.coeffs):
            if u.is_zero():
                continue
            for j, v in enumerate(other.coeffs):
                if v.is_zero():
                    continue
                out[i + j] = out[i + j] + u * self._frob_coeff(v, i)
        return TwistedPoly(self.ctx, out, self.modulus, self._fc)

    def scale(self, c: APoly):
        return TwistedPoly(self.ctx, [c * v for v in self.coeffs], self.modulus, self._fc)

    def __eq__(self, other):
        return (isinstance(other, TwistedPoly) and self.modulus == other.modulus
                and self.coeffs == other.coeffs)

    def __repr__(self):
        from drinlog.poly import format_poly
        parts = [f"({format_poly(c)})*tau^{k}" for k, c in enumerate(self.coeffs) if not c.is_zero()]
        return "TwistedPoly(" + (" + ".join(parts) if parts else "0") + ")"


def reduce_mod(tp: TwistedPoly, f: APoly) -> TwistedPoly:
    """Reduce every coefficient mod the monic polynomial f."""
    if not f.is_monic() or f.deg() < 1:
        raise ValueError("modulus must be monic of positive degree")
    return TwistedPoly(tp.ctx, [c % f for c in tp.coeffs], f)


def phi_of(module, a: APoly, modulus: APoly | None = None) -> TwistedPoly:
    """The image phi_a of a under the module's ring homomorphism.

    With a modulus, everything is computed in (A/f)[tau] from the start, which
    keeps coefficient degrees below deg f.  Images of theta-powers are memoized
    on the module object.
    """
    cache = module._phi_pow_cache(modulus)
    base = cache["base"]
    pows = cache["pows"]
    j = a.deg()
    while len(pows) <= max(j, 0):
        pows.append(pows[-1] * base)
    acc = TwistedPoly.zero(module.ctx, modulus, base._fc)
    for k, v in enumerate(a.c):
        if v:
            acc = acc + pows[k].scale(APoly.const(module.ctx, int(v)))
    return acc


def brac(module, a: APoly, k: int, modulus: APoly | None = None) -> APoly:
    """The tau^k coefficient of phi_a (exact, or mod the given modulus)."""
    return phi_of(module, a, modulus).coeff(k)

"""Special L-values of Drinfeld modules at the infinite place.

The Dirichlet series L = sum mu(a)/a (and its character twists) converges
slowly: degree-i blocks only shrink like q^(-i/r).  Enumerating monics is
therefore hopeless beyond small precision.  Instead, every block S_i is
rewritten through the factorization sum_i S_i = "log of" sum_k E_k with the
E_k the polynomial output of the log-algebraicity machinery:

    S_i(beta)|_eval = sum_k beta_{i-k} * (E_k(beta)|_eval)^(q^{i-k}),

an identity in K[x] specialized at the evaluation point (x = 1 for the
plain value, x = a torsion point for twists).  Each beta_j is a cheap
truncated Laurent series, so thousands of blocks cost nothing and the
certified tail bound q^(-ceil((N+1)/r)) can be pushed to any precision for
which the series windows stay bounded.

For exp-side identities (Taelman units, torsion specializations) the
remaining tail is removed exactly: exp is F_q-linear and continuous, and
the block identity sum_{j+i=n} alpha_j S_i^(q^j) = E_n = 0 for n past the
vanishing index converts exp(tail) into a finite, rapidly convergent
correction sum over the already-computed blocks.
"""

from __future__ import annotations

from fractions import Fraction

from drinlog.fields import FieldCtx, build_field
from drinlog.laurent import (LaurentSeries, PrecisionError, ResourceLimit,
                             embed_ratfunc, ramified_root_theta)
from drinlog.poly import (APoly, RatFunc, XPoly, canonical_rep, is_irreducible,
                          irreducibles_of_degree, monic_of_degree)
from drinlog.drinfeld import DrinfeldModule, _ceil_frac
from drinlog.frobenius import frobenius_data, unit_count
from drinlog.logalg import log_algebraic_poly, mu_sieve

_WINDOW_CAP = 400_000   # max laurent window (in w-exponent units) per series
_ENUM_CAP = 400_000     # max number of monics in any direct Dirichlet sum
_CHAR_CAP = 10_000      # max residue-table size for characters


def _one_xpoly(ctx) -> XPoly:
    return XPoly(ctx, {0: RatFunc.one(ctx)})


def _xpow(ctx, m: int) -> XPoly:
    return XPoly(ctx, {m: RatFunc.one(ctx)})


def _series_pow(v: LaurentSeries, m: int, floor: int | None = None) -> LaurentSeries:
    """v^m; exact single-term series get the closed form."""
    ctx = v.ctx
    if m == 0:
        return LaurentSeries.one(ctx, v.e, v.s)
    if v.err is None and len(v.c) == 1:
        ((k, c),) = v.c.items()
        return LaurentSeries(ctx, v.e, v.s, {k * m: int(ctx.pow_int(c, m))}, None)
    out = LaurentSeries.one(ctx, v.e, v.s)
    base = v
    e = m
    while e:
        if e & 1:
            out = out * base
            if floor is not None:
                out = out.truncate(floor)
        e >>= 1
        if e:
            base = base * base
            if floor is not None:
                base = base.truncate(floor)
    return out


def _eval_xpoly(p: XPoly, at: LaurentSeries, floor: int | None = None) -> LaurentSeries:
    """p evaluated at a Laurent point; coefficients must be A-integral."""
    ctx, e, s = at.ctx, at.e, at.s
    acc = LaurentSeries(ctx, e, s, {}, None)
    for m, c in p.coeffs():
        if not c.is_integral():
            raise AssertionError("expected an A-integral polynomial")
        term = LaurentSeries.from_apoly(c.num, ctx, e, s) * _series_pow(at, m, floor)
        acc = acc + term
    return acc


def _propagate_floors(module, floors: list[int], e: int) -> None:
    """Lower early floors so truncation errors survive the log recursion.

    An error at index i enters index i+t multiplied by at most
    q^(e*(q^i deg kappa_t - q^(i+t))); the backward pass makes each floor
    compatible with every later requirement.
    """
    q = module.ctx.q
    for i in range(len(floors) - 2, -1, -1):
        for t, kp in enumerate(module.kappa, start=1):
            if i + t < len(floors) and not kp.is_zero():
                floors[i] = min(floors[i],
                                floors[i + t] + e * (q ** (i + t) - q ** i * kp.deg()))


def _eval_blocks(module, vals: list[LaurentSeries], N: int,
                 ctx, e: int, s: int, fl: int) -> list[LaurentSeries]:
    """Blocks S_0..S_N of the Dirichlet series at an evaluation point.

    vals[k] is the evaluated polynomial coefficient E_k; each block is
    S_i = sum_k beta_{i-k} vals[k]^(q^{i-k}), truncated at floor fl.  Term
    (j,k) is skipped (soundly) when its certified size bound sits below fl.
    """
    q = module.ctx.q
    tops = []
    for v in vals:
        if v.c:
            tops.append(max(max(v.c), 0))
        elif v.err is not None:
            tops.append(max(v.err, 0))
        else:
            tops.append(None)  # exactly zero
    keep: set[tuple[int, int]] = set()
    floors = [fl] * (N + 1)
    for j in range(N + 1):
        need = fl
        for k, t in enumerate(tops):
            if t is None or j + k > N:
                continue
            if module.beta_size_bound(j) * e + t * q ** j < fl:
                continue  # certified below the floor
            keep.add((j, k))
            need = min(need, fl - t * q ** j)
        floors[j] = need
    _propagate_floors(module, floors, e)
    for j in range(N + 1):
        if module.beta_size_bound(j) * e - floors[j] > _WINDOW_CAP:
            raise PrecisionError(
                "logarithm coefficients do not contract against the block "
                "values; the blockwise evaluation cannot reach this precision")
    betas = module.log_coeffs_laurent_multi(floors, ctx, e, s)
    blocks = []
    for i in range(N + 1):
        acc = LaurentSeries(ctx, e, s, {}, fl)
        for k in range(min(i, len(vals) - 1) + 1):
            if (i - k, k) in keep:
                acc = acc + (betas[i - k] * vals[k].frob(i - k)).truncate(fl)
        blocks.append(acc)
    return blocks


def _evaluated_e_values(module, beta: XPoly, at: LaurentSeries) -> list[LaurentSeries]:
    E = log_algebraic_poly(module, beta)
    return [_eval_xpoly(Ek, at) for Ek in E]


# -- plain special value -------------------------------------------------------

def taelman_L(module, prec: int, guard: int = 6) -> LaurentSeries:
    """sum over monic a of mu(a)/a with certified absolute error <= q^(-prec).

    Computed blockwise through the E-polynomials of beta = 1; the degree-N
    truncation matches the plain Dirichlet sum over deg a <= N exactly, and
    the tail past N = r(prec+1) is below q^(-(prec+1)) because each block
    has size at most q^(-ceil(i/r)).
    """
    if prec < 1:
        raise ValueError("prec must be >= 1")
    ctx = module.ctx
    at = LaurentSeries.one(ctx)
    vals = _evaluated_e_values(module, _one_xpoly(ctx), at)
    N = module.r * (prec + 1)
    fl = -(prec + guard)
    blocks = _eval_blocks(module, vals, N, ctx, 1, 1, fl)
    acc = LaurentSeries(ctx, 1, 1, {}, fl)
    for b in blocks:
        acc = acc + b
    out = acc.truncate(max(fl, -(prec + 1)))
    if out.err is not None and out.err > -prec:
        raise PrecisionError("requested precision was not achieved")
    if not out.c or max(out.c) != 0 or out.c[0] != 1:
        raise AssertionError("special value must have leading term 1")
    return out


def taelman_unit(module, prec: int = 40, guard: int = 6):
    """(a, dist): the nearest polynomial to exp(L) and the residual distance."""
    L = taelman_L(module, prec + 2, guard=guard)
    val = module.exp_eval(L, prec)
    return val.nearest_A()


# -- Goss L-series by direct enumeration ---------------------------------------

def _mu_prime_power_chain(module, f: APoly, mmax: int) -> list[APoly]:
    """mu(f^0..f^mmax) from the Frobenius data of f."""
    ctx = module.ctx
    fd = frobenius_data(module, f)
    out = [APoly.one(ctx)]
    for m in range(1, mmax + 1):
        if fd.r0 == 0:
            out.append(APoly.zero(ctx))
            continue
        acc = APoly.zero(ctx)
        fp = APoly.one(ctx)
        for l in range(1, min(m, fd.r0) + 1):
            acc = acc + fd.b[l - 1] * fp * out[m - l]
            fp = fp * f
        out.append(acc)
    return out


def _nu_prime_power_chain(module, f: APoly, mmax: int) -> list[APoly]:
    """Dirichlet coefficients of 1/Q_f: nu_m with deg nu_m <= m*d/r0."""
    ctx = module.ctx
    fd = frobenius_data(module, f)
    out = [APoly.one(ctx)]
    qc = list(reversed(fd.charpoly))  # Q_f ascending: 1, a_{r0-1}, ..., a_0
    for m in range(1, mmax + 1):
        if fd.r0 == 0:
            out.append(APoly.zero(ctx))
            continue
        acc = APoly.zero(ctx)
        for j in range(1, min(m, fd.r0) + 1):
            acc = acc - qc[j] * out[m - j]
        if fd.r0 and acc.deg() * fd.r0 > m * fd.d:
            raise AssertionError("Dirichlet coefficient breaks its degree bound")
        out.append(acc)
    return out


def _multiplicative_value(a: APoly, chain_of) -> APoly:
    from drinlog.poly import factor_monic
    ctx = a.ctx
    acc = APoly.one(ctx)
    for f, m in factor_monic(a):
        acc = acc * chain_of(f, m)[m]
    return acc


def goss_L(module, s: int, prec: int, dual: bool = True, guard: int = 4) -> LaurentSeries:
    """L(s) as a Laurent series with certified absolute error <= q^(-prec).

    dual=True: sum mu(a)/a^(s+1), convergent for s >= 0 (s = 0 is the plain
    special value).  dual=False: sum nu(a)/a^s with nu the Dirichlet
    coefficients of the inverted characteristic polynomials; s >= 1 by the
    convergence range, but a certified tail rate is only available from the
    coefficient degree bounds for s >= 2.
    """
    ctx = module.ctx
    q = ctx.q
    r = module.r
    if dual:
        if s < 0:
            raise ValueError("dual L-series requires s >= 0")
        if s == 0:
            return taelman_L(module, prec)
        # block bound q^(-(i*s + ceil(i/r)))
        N = 0
        while (N + 1) * s + -((-(N + 1)) // r) <= prec:
            N += 1
    else:
        if s < 1:
            raise ValueError("non-dual L-series requires s >= 1")
        if s == 1:
            raise PrecisionError(
                "no certified tail rate at s = 1 (blocks need not shrink "
                "termwise); use s >= 2 or the dual series")
        # block bound q^(-i(s-1))
        N = 0
        while (N + 1) * (s - 1) <= prec:
            N += 1
    total = sum(q ** i for i in range(N + 1))
    if total > _ENUM_CAP:
        raise ResourceLimit(
            f"direct Dirichlet sum needs about q^{N} monic terms "
            f"(cap {_ENUM_CAP})")
    chains: dict = {}

    def chain_of(f, m):
        key = f.key()
        cur = chains.get(key)
        if cur is None or len(cur) <= m:
            cur = (_mu_prime_power_chain if dual else _nu_prime_power_chain)(
                module, f, m)
            chains[key] = cur
        return cur

    fl = -(prec + guard)
    power = s + 1 if dual else s
    acc = LaurentSeries(ctx, 1, 1, {}, fl)
    for i in range(N + 1):
        for a in monic_of_degree(ctx, i):
            c = _multiplicative_value(a, chain_of) if i else APoly.one(ctx)
            if c.is_zero():
                continue
            term = embed_ratfunc(RatFunc(c, a.pow(power), reduce=False),
                                 prec + guard, ctx)
            acc = acc + term
    tail = -((N + 1) * s + -((-(N + 1)) // r)) if dual else -((N + 1) * (s - 1))
    out = acc.truncate(max(fl, tail))
    if out.err is not None and out.err > -prec:
        raise PrecisionError("requested precision was not achieved")
    return out


# -- Euler products ------------------------------------------------------------

def shifted_dual_euler_factor(module, f: APoly) -> RatFunc:
    """The local factor of sum mu(a)/a at f: 1 - sum_l b_l/f = |count|/f."""
    return RatFunc(unit_count(module, f), f, reduce=False)


def euler_value_dual(module, B: int, prec: int) -> LaurentSeries:
    """prod over deg f <= B of the inverted local factor f/|count|."""
    ctx = module.ctx
    acc = LaurentSeries.one(ctx)
    for d in range(1, B + 1):
        for f in irreducibles_of_degree(ctx, d):
            fac = shifted_dual_euler_factor(module, f)
            acc = (acc * embed_ratfunc(RatFunc(fac.den, fac.num, reduce=False),
                                       prec + 2, ctx)).truncate(-(prec + 2))
    return acc.truncate(-prec)


def smooth_value_dual(module, B: int, prec: int) -> LaurentSeries:
    """sum of mu(a)/a over B-smooth monic a, as a product of geometric
    series per prime, each truncated below the target floor."""
    ctx = module.ctx
    q = ctx.q
    acc = LaurentSeries.one(ctx)
    for d in range(1, B + 1):
        for f in irreducibles_of_degree(ctx, d):
            r0 = frobenius_data(module, f).r0
            fac = LaurentSeries.one(ctx)
            if r0 > 0:
                # |mu(f^m)/f^m| <= q^(-m d / r0): stop once past the floor
                mmax = (prec + 2) * r0 // d
                chain = _mu_prime_power_chain(module, f, mmax)
                for m in range(1, mmax + 1):
                    if not chain[m].is_zero():
                        fac = fac + embed_ratfunc(
                            RatFunc(chain[m], f.pow(m), reduce=False),
                            prec + 2, ctx)
                fac = fac.truncate((-((mmax + 1) * d)) // r0)
            acc = (acc * fac).truncate(-(prec + 2))
    return acc.truncate(-prec)


# -- Dirichlet characters ------------------------------------------------------

def _factor_int(n: int) -> list[int]:
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


class DirichletChar:
    """A character mod an irreducible wp, valued in F_{q^d}.

    The generator of (A/wp)^x is the first residue (in digit-enumeration
    order) of full multiplicative order; its image is its evaluation at the
    first root of wp in F_{q^d}.  chi(a) = image^(index * dlog(a mod wp)).
    """

    def __init__(self, wp: APoly, index: int):
        if not (wp.is_monic() and is_irreducible(wp)):
            raise ValueError("character modulus must be an irreducible monic")
        base = wp.ctx
        if base.k != 1:
            raise ValueError("character moduli live over the base field")
        d = wp.deg()
        q = base.q
        n = q ** d
        if n > _CHAR_CAP:
            raise ResourceLimit(f"character table of size {n} exceeds cap {_CHAR_CAP}")
        if not 0 <= index < n - 1:
            raise ValueError("character index out of range")
        self.wp, self.d, self.index = wp, d, index
        self.ctx = build_field(q, d)
        self.root = self._first_root()
        self.generator = self._find_generator()
        self.image = self._embed(self.generator)
        # discrete-log walk fills the value table
        gidx = int(self.image)
        vals = [0] * n
        dlog = [0] * n
        cur = APoly.one(base)
        k = 0
        while True:
            ridx = self._residue_index(cur)
            dlog[ridx] = k
            vals[ridx] = int(self.ctx.pow_int(gidx, (k * index) % (n - 1)))
            k += 1
            cur = cur * self.generator % wp
            if cur.is_one():
                break
        if k != n - 1:
            raise AssertionError("generator does not span the residue group")
        self._vals = vals
        self._dlog = dlog

    def _residue_index(self, a: APoly) -> int:
        q = self.wp.ctx.q
        idx = 0
        for j, v in enumerate(a.c):
            idx += int(v) * q ** j
        return idx

    def _first_root(self) -> int:
        ctx = self.ctx
        for v in range(ctx.Q):
            acc = 0
            for j in range(self.wp.deg(), -1, -1):
                acc = int(ctx.add(ctx.mul(acc, v), ctx.embed_base(int(self.wp.c[j]))))
            if acc == 0:
                return v
        raise AssertionError("modulus has no root in its splitting field")

    def _embed(self, a: APoly) -> int:
        ctx = self.ctx
        acc = 0
        for j in range(len(a.c) - 1, -1, -1):
            acc = int(ctx.add(ctx.mul(acc, self.root), ctx.embed_base(int(a.c[j]))))
        return acc

    def _find_generator(self) -> APoly:
        base = self.wp.ctx
        q = base.q
        n = q ** self.d
        order_factors = _factor_int(n - 1)
        for idx in range(1, n):
            digits = []
            t = idx
            while t:
                digits.append(t % q)
                t //= q
            cand = APoly(base, digits)
            g = self._embed(cand)
            if g == 0:
                continue
            if all(int(self.ctx.pow_int(g, (n - 1) // p)) != 1 for p in order_factors):
                return cand
        raise AssertionError("no generator found")

    @property
    def is_trivial(self) -> bool:
        return self.index == 0

    @property
    def order(self) -> int:
        n = self.wp.ctx.q ** self.d
        from math import gcd
        return (n - 1) // gcd(self.index, n - 1) if self.index else 1

    def value(self, a: APoly) -> int:
        """chi(a) as an element index of F_{q^d} (0 when wp | a)."""
        r = canonical_rep(a, self.wp)
        if r.is_zero():
            return 0
        return self._vals[self._residue_index(r)]


def make_character(wp: APoly, index: int) -> DirichletChar:
    return DirichletChar(wp, index)


# -- character twists ----------------------------------------------------------

def twisted_L(module, chi: DirichletChar, prec: int, guard: int = 4) -> LaurentSeries:
    """sum chi(a) mu(a)/a over monic a, by direct block enumeration.

    Same tail bound as the plain value (blocks shrink like q^(-ceil(i/r))),
    but the blocks are enumerated, so the reachable precision is bounded by
    the enumeration cap.
    """
    ctx = chi.ctx
    q = module.ctx.q
    N = module.r * (prec + 1)
    total = sum(q ** i for i in range(N + 1))
    if total > _ENUM_CAP:
        raise ResourceLimit(
            f"twisted Dirichlet sum needs about q^{N} monic terms for "
            f"precision {prec} (cap {_ENUM_CAP}); use the torsion identity "
            f"instead")
    mt = mu_sieve(module, N)
    fl = -(prec + guard)
    acc = LaurentSeries(ctx, 1, 1, {}, fl)
    for i in range(N + 1):
        for a in monic_of_degree(module.ctx, i):
            cv = chi.value(a)
            if cv == 0:
                continue
            mu = mt.mu_of(a)
            if mu.is_zero():
                continue
            term = embed_ratfunc(RatFunc(mu, a, reduce=False), prec + guard, ctx)
            acc = acc + term.scale(cv)
    out = acc.truncate(max(fl, -(prec + 1)))
    if not out.c or max(out.c) != 0 or out.c[0] != 1:
        raise AssertionError("twisted special value must have leading term 1")
    return out


# -- cyclotomic specializations ------------------------------------------------

class CyclotomicElem:
    """An element of A[xi] with xi a generator of the wp-torsion, held as a
    polynomial in x reduced mod rho_wp(x) = C_wp(x)/x."""

    def __init__(self, wp: APoly, poly: XPoly):
        self.wp = wp
        self.poly = poly

    def __eq__(self, other):
        return isinstance(other, CyclotomicElem) and self.wp == other.wp \
            and self.poly == other.poly

    def __repr__(self):
        return f"CyclotomicElem(mod {self.wp!r}: {self.poly!r})"


def _torsion_minimal_poly(module_ctx, wp: APoly) -> list[RatFunc]:
    """rho_wp(x) = C_wp(x)/x as a dense ascending coefficient list."""
    from drinlog.drinfeld import carlitz_act
    C = carlitz_act(module_ctx, wp)
    deg = max(C.d)
    out = [RatFunc.zero(module_ctx) for _ in range(deg)]
    for e, c in C.coeffs():
        if e == 0:
            if not c.is_zero():
                raise AssertionError("torsion polynomial must have no constant term")
            continue
        out[e - 1] = c
    return out


def special_point(module, m: int, wp: APoly) -> CyclotomicElem:
    """The polynomial part of exp applied to the m-th twisted deformation
    value: the bivariate output at z = 1, reduced mod rho_wp(x)."""
    ctx = module.ctx
    q = ctx.q
    d = wp.deg()
    if not 1 <= m <= q ** d - 1:
        raise ValueError("exponent out of range for this torsion module")
    E = log_algebraic_poly(module, _xpow(ctx, m))
    total = XPoly.zero(ctx)
    for Ek in E:
        total = total + Ek
    rho = _torsion_minimal_poly(ctx, wp)
    n = len(rho) - 1  # rho is monic of degree q^d - 1
    if not (rho[n].num.is_one() and rho[n].den.is_one()):
        raise AssertionError("torsion minimal polynomial must be monic")
    dense: dict[int, RatFunc] = {}
    for e, c in total.coeffs():
        dense[e] = dense.get(e, RatFunc.zero(ctx)) + c
    while dense:
        e = max(dense)
        if e < n:
            break
        c = dense.pop(e)
        if c.is_zero():
            continue
        for j in range(n):
            if not rho[j].is_zero():
                t = e - n + j
                dense[t] = dense.get(t, RatFunc.zero(ctx)) - c * rho[j]
    red = XPoly(ctx, {e: c for e, c in dense.items() if not c.is_zero()})
    return CyclotomicElem(wp, red)


def torsion_root(ctx: FieldCtx, c0: int, prec: int) -> LaurentSeries:
    """The canonical solution of lambda^(q-1) = -(theta + c0) in the ramified
    Laurent field (leading term the exact (q-1)-th root of -theta)."""
    zeta = ramified_root_theta(ctx)
    if c0 % ctx.p == 0:
        return zeta
    q = ctx.q
    e = q - 1
    fl = -(prec + 4) * e
    u = LaurentSeries.from_apoly(-(APoly.theta(ctx) + APoly.const(ctx, c0 % ctx.p)),
                                 ctx, e, zeta.s)
    x = zeta
    for _ in range(64):
        resid = _series_pow(x, q - 1, fl) - u
        rb = resid.abs_bound()
        if rb is None or rb * e <= fl + e:
            break
        # Newton step x <- 2x - u * x^(2-q) for F = x^(q-1) - u
        xinv = _series_pow(x, q - 2, fl).inv(fl - 2 * e)
        x = (x.scale(2 % ctx.p) - (u * xinv)).truncate(fl)
    else:
        raise PrecisionError("torsion root iteration failed to converge")
    return x


def torsion_check(module, chi: DirichletChar, prec: int = 40, guard: int = 6) -> dict:
    """Numeric verification of the exp-side torsion identity for a degree-1
    modulus: exp(L(chi) * lambda) against the specialized polynomial.

    The twisted value times lambda equals sum_i S_i(x^t)|_{x=lambda}; blocks
    up to N are summed numerically and exp of the remaining tail is removed
    through the exact vanishing of the blocks E_n (n > N), which turns it
    into a finite correction sum over the computed blocks.
    """
    ctx = module.ctx
    q = ctx.q
    if chi.d != 1:
        raise ValueError("numeric torsion values exist only for degree-1 moduli")
    if q < 3:
        raise ValueError("the torsion identity needs q >= 3")
    t = chi.index % (q - 1)
    if t == 0:
        t = q - 1  # the trivial character is the (q-1)-th power twist
    e = q - 1
    lam = torsion_root(ctx, int(chi.wp.c[0]), prec + 2 * guard)
    s = lam.s
    fl = -(prec + guard) * e
    vals = [_eval_xpoly(Ek, lam, fl) for Ek in log_algebraic_poly(module, _xpow(ctx, t))]
    rhs = LaurentSeries(ctx, e, s, {}, None)
    for v in vals:
        rhs = rhs + v
    i_max = len(vals) - 1
    N = i_max + 2
    blocks = _eval_blocks(module, vals, N, ctx, e, s, fl)
    uN = LaurentSeries(ctx, e, s, {}, fl)
    for b in blocks:
        uN = uN + b
    lhs = module.exp_eval(uN, prec + guard)
    # exact removal of exp(tail): for n > N the blockwise identity
    # sum_{j+i=n} alpha_j S_i^(q^j) = E_n = 0 rewrites exp(tail) as
    # -sum_{i<=N} sum_{j>N-i} alpha_j S_i^(q^j), a rapidly convergent sum.
    worst_tail = fl
    target = -(prec + guard) * e
    for i, Si in enumerate(blocks):
        sb = Si.abs_bound()
        if sb is None:
            continue
        cut, tail_floor = module.exp_tail_cutoff(sb, e, target)
        worst_tail = max(worst_tail, tail_floor)
        for j in range(max(1, N + 1 - i), cut + 1):
            su = _ceil_frac(q ** j * sb * e)
            aj = module._emb_alpha(j, ctx, e, s, target - e - max(su, 0))
            lhs = lhs - (aj * Si.frob(j)).truncate(target)
    lhs = lhs.truncate(max(target, worst_tail))
    dist = lhs.dist_bound(rhs)
    # honest standalone estimate of the twisted value itself:
    # |S_i(x^t)| <= q^(t/(q-1)) q^(-ceil(i/r)), so the truncation error of
    # u_N only reaches the enumeration-free depth ceil((N+1)/r).
    ltail = (t - e * (-((-(N + 1)) // module.r)))
    lam_t = _series_pow(lam, t, fl)
    lest = (uN * lam_t.inv(fl - t)).truncate(max(fl - t, ltail - t))
    return {
        "distance": dist,
        "lhs": lhs,
        "rhs": rhs,
        "special": special_point(module, t, chi.wp),
        "l_value": lest,
        "blocks": N + 1,
        "twist_exponent": t,
    }

"""Command-line front end: deterministic JSON output for the library.

Exit codes: 0 success, 1 falsified verification or failed computation,
2 usage/configuration error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from drinlog.fields import MODULUS_TABLE, build_field, factor_prime_power
from drinlog.laurent import LaurentSeries, PrecisionError, ResourceLimit
from drinlog.poly import (APoly, RatFunc, XPoly, format_poly,
                          irreducibles_of_degree, is_irreducible, parse_poly,
                          _Parser, _format_scalar)
from drinlog.drinfeld import DrinfeldModule
from drinlog.frobenius import (frobenius_data, unit_count,
                               unit_count_linear_algebra)
from drinlog.logalg import log_algebraic_poly, mu_sieve
from drinlog import lvalues

SCHEMA = 1


class UsageError(ValueError):
    pass


class _XParser(_Parser):
    """Polynomial grammar extended with the deformation variable x."""

    def factor(self):
        kind, val = self.toks[self.pos]
        ctx = self.ctx
        if kind == "name" and val == "x":
            self.pos += 1
            base = XPoly.x(ctx)
        else:
            inner = _Parser.factor(self)
            if isinstance(inner, XPoly):
                base = inner
            else:
                base = XPoly(ctx, {0: RatFunc(inner)})
        if self.peek() == "^":
            self.next()
            kind, e = self.next()
            if kind != "num":
                raise ValueError("exponent must be an integer")
            base = base.pow(e)
        return base


def parse_xpoly(text: str, ctx) -> XPoly:
    try:
        return _XParser(text, ctx).parse()
    except ValueError as ex:
        raise UsageError(f"bad x-polynomial {text!r}: {ex}") from None


def _parse_apoly(text: str, ctx, flag: str) -> APoly:
    try:
        return parse_poly(text, ctx)
    except ValueError as ex:
        raise UsageError(f"bad polynomial in {flag}: {ex}") from None


def format_xpoly(p: XPoly, var: str = "x") -> str:
    if p.is_zero():
        return "0"
    parts = []
    for e, c in sorted(p.coeffs(), reverse=True):
        if not c.is_integral():
            cs = f"({format_poly(c.num)})/({format_poly(c.den)})"
        else:
            cs = format_poly(c.num)
        if "+" in cs or "-" in cs or ("*" in cs and e > 0):
            cs = f"({cs})"
        if e == 0:
            parts.append(cs)
        else:
            xv = var if e == 1 else f"{var}^{e}"
            parts.append(xv if cs == "1" else f"{cs}*{xv}")
    return " + ".join(parts)


def format_bivariate(E: list[XPoly], q: int) -> str:
    """sum_i E_i(x) z^(q^i) with the outer variable z."""
    parts = []
    for i, Ei in enumerate(E):
        if Ei.is_zero():
            continue
        zv = "z" if q ** i == 1 else f"z^{q ** i}"
        cs = format_xpoly(Ei)
        if " " in cs or "*" in cs:
            cs = f"({cs})"
        parts.append(zv if cs == "1" else f"{cs}*{zv}")
    return " + ".join(parts) if parts else "0"


def _build_ctx(args):
    if args.q is None:
        raise UsageError("--q is required for this command")
    try:
        p, n = factor_prime_power(args.q)
    except ValueError as ex:
        raise UsageError(f"--q: {ex}") from None
    ctx = build_field(args.q)
    if args.fq_modulus is not None:
        try:
            given = tuple(int(t) % p for t in args.fq_modulus.split(","))
        except ValueError:
            raise UsageError(
                "--fq-modulus: expected comma-separated integer coefficients "
                "(ascending, including the leading 1)") from None
        builtin = tuple(ctx.modulus_low) + (1,)
        if given != builtin:
            raise UsageError(
                f"--fq-modulus: only the canonical defining modulus "
                f"{','.join(map(str, builtin))} is supported for q={args.q}")
    return ctx


def _build_module(args, ctx) -> DrinfeldModule:
    if not args.kappa:
        raise UsageError("--kappa is required for this command")
    kappa = [_parse_apoly(t, ctx, "--kappa") for t in args.kappa.split(",")]
    if kappa[-1].is_zero():
        raise UsageError("--kappa: rank leading coefficient must be nonzero")
    return DrinfeldModule(ctx, kappa)


# -- subcommands ---------------------------------------------------------------

def cmd_charpoly(args) -> tuple[int, dict]:
    ctx = _build_ctx(args)
    module = _build_module(args, ctx)
    if not args.f:
        raise UsageError("charpoly requires --f (an irreducible monic)")
    f = _parse_apoly(args.f, ctx, "--f")
    if not (f.is_monic() and is_irreducible(f)):
        raise UsageError("--f must be an irreducible monic")
    fd = frobenius_data(module, f)
    return 0, {
        "schema": SCHEMA,
        "f": format_poly(f),
        "d": fd.d,
        "r0": fd.r0,
        "b": [format_poly(b) for b in fd.b],
        "c_f": _format_scalar(ctx, fd.c_f) if fd.r0 else None,
        "P": [format_poly(a) for a in fd.charpoly],
        "Qdual": [format_poly(a) for a in fd.inverted_charpoly()],
        "unit_count": format_poly(fd.unit_count()),
    }


def cmd_mu(args) -> tuple[int, dict]:
    ctx = _build_ctx(args)
    module = _build_module(args, ctx)
    out = {"schema": SCHEMA, "q": args.q}
    if args.a:
        a = _parse_apoly(args.a, ctx, "--a")
        mt = mu_sieve(module, max(a.deg(), 0))
        out["a"] = format_poly(a)
        out["mu"] = format_poly(mt.mu_of(a))
    else:
        dmax = args.dmax if args.dmax is not None else 3
        mt = mu_sieve(module, dmax)
        from drinlog.poly import monic_of_degree
        table = []
        for d in range(dmax + 1):
            for a in monic_of_degree(ctx, d):
                table.append([format_poly(a), format_poly(mt.mu_of(a))])
        out["dmax"] = dmax
        out["mu"] = table
    return 0, out


def cmd_logalg(args) -> tuple[int, dict]:
    ctx = _build_ctx(args)
    module = _build_module(args, ctx)
    beta = parse_xpoly(args.beta, ctx)
    E = log_algebraic_poly(module, beta)
    return 0, {
        "schema": SCHEMA,
        "beta": format_xpoly(beta),
        "E": [format_xpoly(Ei) for Ei in E],
        "series": format_bivariate(E, ctx.q),
    }


def cmd_lvalue(args) -> tuple[int, dict]:
    ctx = _build_ctx(args)
    module = _build_module(args, ctx)
    prec = args.prec
    out = {"schema": SCHEMA, "s": args.s, "dual": not args.non_dual,
           "prec": prec}
    if args.char_modulus is not None:
        wp = _parse_apoly(args.char_modulus, ctx, "--char-modulus")
        chi = lvalues.make_character(wp, args.char_index)
        if args.s != 0 or args.non_dual:
            raise UsageError("character twists are only defined for the "
                             "dual value at s = 0")
        val = lvalues.twisted_L(module, chi, prec)
        out["char_modulus"] = format_poly(wp)
        out["char_index"] = args.char_index
    else:
        if not args.non_dual and args.s < 0:
            raise UsageError("--s: dual L-series requires s >= 0")
        if args.non_dual and args.s < 1:
            raise UsageError("--s: non-dual L-series diverges for s < 1")
        val = lvalues.goss_L(module, args.s, prec, dual=not args.non_dual)
    out["value"] = val.to_json()
    return 0, out


def _random_module(ctx, rng, rmax=3, dmax=None):
    q = ctx.q
    dmax = q if dmax is None else dmax
    r = rng.randint(1, rmax)
    kappa = []
    for _ in range(r):
        d = rng.randint(0, dmax)
        kappa.append(APoly(ctx, [rng.randrange(q) for _ in range(d + 1)]))
    if kappa[-1].is_zero():
        kappa[-1] = APoly.one(ctx)
    return DrinfeldModule(ctx, kappa)


def cmd_verify(args) -> tuple[int, dict]:
    rng = random.Random(args.seed)
    failures: list[str] = []
    checks = 0
    if args.suite == "congruences":
        qmax = args.qmax if args.qmax is not None else 5
        dmax = args.dmax if args.dmax is not None else 3
        for q in (2, 3, 4, 5, 7, 8, 9):
            if q > qmax:
                continue
            ctx = build_field(q)
            mods = [_random_module(ctx, rng) for _ in range(20)]
            for module in mods:
                for d in range(1, dmax + 1):
                    for f in irreducibles_of_degree(ctx, d):
                        try:
                            fd = frobenius_data(module, f, check=True)
                            lhs = unit_count_linear_algebra(module, f)
                            rhs = fd.charpoly_at_one().scale(fd.c_f) \
                                if fd.r0 else f
                            if not (lhs - rhs).is_zero():
                                failures.append(
                                    f"q={q} f={format_poly(f)}: point count "
                                    "disagrees with the matrix oracle")
                        except AssertionError as ex:
                            failures.append(f"q={q} f={format_poly(f)}: {ex}")
                        checks += 1
    elif args.suite == "taelman":
        cases = []
        ctx5 = build_field(5)
        cases.append(DrinfeldModule(
            ctx5, [parse_poly("T^5+2*T^4", ctx5), APoly.theta(ctx5)]))
        for q in (2, 3, 5):
            cases.append(DrinfeldModule.carlitz(build_field(q)))
        ctx3 = build_field(3)
        for _ in range(3):
            cases.append(_random_module(ctx3, rng, rmax=2, dmax=1))
        for module in cases:
            checks += 1
            try:
                a, dist = lvalues.taelman_unit(module, 34)
                if dist is not None and dist > -30:
                    failures.append(
                        f"q={module.ctx.q} kappa="
                        f"{[format_poly(k) for k in module.kappa]}: "
                        f"exp of the special value is q^{dist} from A")
            except (PrecisionError, ResourceLimit) as ex:
                failures.append(f"q={module.ctx.q}: {ex}")
    elif args.suite == "torsion":
        ctx5 = build_field(5)
        flagship = DrinfeldModule(
            ctx5, [parse_poly("T^5+2*T^4", ctx5), APoly.theta(ctx5)])
        cases = [(flagship, APoly.theta(ctx5), 1)]
        ctx3 = build_field(3)
        cases.append((DrinfeldModule.carlitz(ctx3), APoly.theta(ctx3), 1))
        cases.append((DrinfeldModule.carlitz(ctx3), APoly.theta(ctx3), 0))
        for module, wp, idx in cases:
            checks += 1
            try:
                chi = lvalues.make_character(wp, idx)
                rep = lvalues.torsion_check(module, chi, prec=36)
                dist = rep["distance"]
                if dist is not None and dist > -30:
                    failures.append(
                        f"q={module.ctx.q} index={idx}: torsion identity "
                        f"residual q^{dist}")
            except (PrecisionError, ResourceLimit) as ex:
                failures.append(f"q={module.ctx.q} index={idx}: {ex}")
    else:
        raise UsageError(f"unknown verify suite {args.suite!r}")
    out = {"schema": SCHEMA, "suite": args.suite, "checks": checks,
           "failures": failures, "ok": not failures}
    return (0 if not failures else 1), out


# -- driver --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--q", type=int, help="field size (prime power)")
    common.add_argument("--fq-modulus", dest="fq_modulus",
                        help="defining modulus of F_q over F_p, ascending "
                             "comma-separated coefficients (validated against "
                             "the canonical built-in choice)")
    common.add_argument("--kappa",
                        help="comma-separated module coefficients "
                             "kappa_1,...,kappa_r as polynomials in T")
    common.add_argument("--prec", type=int,
                        help="target precision (digits base q)")
    common.add_argument("--seed", type=int,
                        help="seed for randomized verification suites")
    common.add_argument("--jobs", type=int,
                        help="worker bound (execution is deterministic at "
                             "any value)")
    common.add_argument("--out", help="write JSON here instead of stdout")

    p = argparse.ArgumentParser(
        prog="drinlog", parents=[common],
        description="Exact log-algebraic identities and special L-values of "
                    "Drinfeld modules over F_q[T].")
    sub = p.add_subparsers(dest="cmd", required=True)

    sp = sub.add_parser("charpoly", parents=[common],
                        help="Frobenius data at a prime")
    sp.add_argument("--f", help="irreducible monic in T")
    sp.set_defaults(fn=cmd_charpoly)

    sp = sub.add_parser("mu", parents=[common], help="deformed Moebius values")
    sp.add_argument("--a", help="a single monic argument")
    sp.add_argument("--dmax", type=int, help="tabulate all monics up to here")
    sp.set_defaults(fn=cmd_mu)

    sp = sub.add_parser("logalg", parents=[common], help="log-algebraic polynomial for beta")
    sp.add_argument("--beta", default="1", help="polynomial in x and T")
    sp.set_defaults(fn=cmd_logalg)

    sp = sub.add_parser("lvalue", parents=[common], help="special L-values at infinity")
    sp.add_argument("--s", type=int, default=0)
    sp.add_argument("--non-dual", dest="non_dual", action="store_true")
    sp.add_argument("--char-modulus", dest="char_modulus",
                    help="irreducible modulus for a character twist")
    sp.add_argument("--char-index", dest="char_index", type=int, default=1)
    sp.set_defaults(fn=cmd_lvalue)

    sp = sub.add_parser("verify", parents=[common], help="run a verification suite")
    sp.add_argument("suite", choices=["congruences", "taelman", "torsion"])
    sp.add_argument("--qmax", type=int)
    sp.add_argument("--dmax", type=int)
    sp.set_defaults(fn=cmd_verify)
    return p


_GLOBAL_DEFAULTS = {"q": None, "fq_modulus": None, "kappa": None, "prec": 40,
                    "seed": 0, "jobs": 1, "out": None}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for name, dv in _GLOBAL_DEFAULTS.items():
        if not hasattr(args, name):
            setattr(args, name, dv)
    if args.jobs is not None and args.jobs < 1:
        parser.error("--jobs must be >= 1")
    try:
        code, payload = args.fn(args)
    except UsageError as ex:
        print(f"drinlog: error: {ex}", file=sys.stderr)
        return 2
    except (PrecisionError, ResourceLimit, ValueError) as ex:
        print(f"drinlog: {type(ex).__name__}: {ex}", file=sys.stderr)
        return 1
    text = json.dumps(payload, sort_keys=True, indent=2)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())

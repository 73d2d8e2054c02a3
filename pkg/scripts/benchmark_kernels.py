#!/usr/bin/env python3
"""Benchmark the compiled kernel backend against the numpy fallback.

Runs the same workload twice in subprocesses (DRINLOG_PURE toggles the
backend) and reports wall times.  Workloads exercise the two hot paths:
dense polynomial multiplication/division over F_p and the block-summation
kernel behind the log-algebraic machinery.
"""

from __future__ import annotations

import json
import os
import subprocess
import sys

WORKLOAD = r"""
import json, time
from drinlog import _core
from drinlog.fields import build_field
from drinlog.poly import APoly
from drinlog.drinfeld import DrinfeldModule
from drinlog.logalg import block_sum, mu_sieve
import numpy as np

rng = np.random.default_rng(0)
res = {"backend": _core.BACKEND}

# dense arithmetic over F_5
a = rng.integers(0, 5, size=4000).astype(np.int64)
b = rng.integers(0, 5, size=4000).astype(np.int64)
t0 = time.perf_counter()
for _ in range(50):
    c = _core.pmul(a, b, 5)
res["pmul_4k_x50"] = time.perf_counter() - t0
den = rng.integers(0, 5, size=2001).astype(np.int64); den[-1] = 1
t0 = time.perf_counter()
for _ in range(50):
    _core.pdivmod(c, den, 5)
res["pdivmod_8k_x50"] = time.perf_counter() - t0

# block sums for the rank-2 family over F_5
ctx = build_field(5)
g = APoly(ctx, [0, 0, 0, 0, 2, 1])
M = DrinfeldModule(ctx, [g, APoly.theta(ctx)])
mt = mu_sieve(M, 5)
from drinlog.poly import XPoly, RatFunc
beta = XPoly(ctx, {1: RatFunc.one(ctx)})
t0 = time.perf_counter()
for i in range(1, 6):
    block_sum(M, beta, i, mt)
res["block_sums_deg5"] = time.perf_counter() - t0
print(json.dumps(res))
"""


def run(pure: bool) -> dict:
    env = dict(os.environ, DRINLOG_PURE="1" if pure else "0")
    out = subprocess.run([sys.executable, "-c", WORKLOAD], env=env,
                         capture_output=True, text=True, check=True)
    return json.loads(out.stdout.strip().splitlines()[-1])


def main() -> int:
    compiled = run(pure=False)
    pure = run(pure=True)
    print(f"{'workload':<20} {compiled['backend']:>10} {pure['backend']:>10} speedup")
    for key in compiled:
        if key == "backend":
            continue
        c, p = compiled[key], pure[key]
        print(f"{key:<20} {c:>9.4f}s {p:>9.4f}s {p / c:>6.2f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())

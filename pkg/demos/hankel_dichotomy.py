"""Hankel operator with symbol (z + i)^-1: bounded on functions orthogonal to the
symbol, logarithmic growth of truncated norms otherwise.

Run:  python3 demos/hankel_dichotomy.py      (about 20 seconds on one core)
"""
import math

from blab import functions as mf
from blab.harness import default_cfg
from blab.harness.experiments import hankel_truncated_norms
from blab.operators import l2_pair_symbol, moment_free_part

cfg = default_cfg("hankel")
radii = (1e2, 1e3, 1e4)

f0 = mf.RationalSymbol(3)
cases = {
    "(z+i)^-3": f0,
    "orthogonal part": moment_free_part(f0),
}
for name, f in cases.items():
    pair = l2_pair_symbol(f)
    norms = [r.value for r in hankel_truncated_norms(f, radii, cfg)]
    steps = [b - a for a, b in zip(norms, norms[1:])]
    print(f"{name:>16}: <b,f> = {abs(pair):.3e}")
    for R, n in zip(radii, norms):
        print(f"{'':>18}R = {R:8.0f}   ||h_b f||_1 on |z|<R = {n:.6f}")
    print(f"{'':>18}growth per decade: {', '.join(f'{s:.2e}' for s in steps)}")
    # predicted slope per unit ln R is |<b,f>| (|c0| pi = 1)
    print(f"{'':>18}predicted per decade: {abs(pair) * math.log(10):.2e}")

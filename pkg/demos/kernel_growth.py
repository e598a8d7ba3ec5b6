"""Print how the kernel integral I(zeta) and ||P f_zeta||_1 track omega(zeta).

Run:  python3 demos/kernel_growth.py
"""
import math

from blab.halfplane import omega
from blab.harness import default_cfg
from blab.harness.experiments import atom_projection_l1, kernel_integral

cfg = default_cfg("kernel_equivalence")

print(f"{'zeta':>16} {'omega':>8} {'I':>10} {'I/omega':>8} {'|Pf|_1/omega':>13}")
for zeta in [3j, 10j, 1e2j, 1e3j, 1e4j, 3 + 1e-2j, 3 + 1e-4j, 3 + 1e-6j]:
    om = float(omega(zeta))
    I = kernel_integral(zeta, cfg).value
    p = atom_projection_l1(zeta, cfg).value
    print(f"{zeta!s:>16} {om:8.3f} {I:10.4f} {I / om:8.3f} {p / om:13.3f}")

# both ratios stay in a narrow band while omega grows like a logarithm
print("ln-scale check: omega(1e4 i) - omega(1e2 i) =", round(float(omega(1e4j) - omega(1e2j)), 6),
      "= 2 ln 10 =", round(2 * math.log(10), 6))

"""Slow-growing entire functions whose zero set blocks the Brody property.

Given a growth budget rho with rho(t)/log t -> infinity, one can place zeros
c_k with geometric moduli and golden-angle arguments so the canonical product
grows slower than rho while the zero directions fill the whole circle.  A
divisor that is 4-separated with the origin interior to the hull of its
accumulation directions is not the zero set of ANY Brody function, so the
construction produces arbitrarily slow non-Brody growth.  A budget of
2 log t, by contrast, admits no such divisor at all: three zeros already
force the characteristic above it.
"""

import math

import numpy as np

from brody.divisors import (
    Divisor,
    GrowthBound,
    construct_slow,
    direction_accumulation,
    theorem_verdict,
)
from brody.errors import PreconditionFailed
from brody.nevanlinna import characteristic
from brody.products import CanonicalProduct

rho = GrowthBound.power_log_squared(1.0)
d = construct_slow(rho, 30, horizon=1e12)
print("== construction for rho(t) = (log t)^2, 30 points ==")
print(f"  first modulus {d.moduli[0]:.4f}, last {d.moduli[-1]:.3e}")
v = theorem_verdict(d)
print(f"  separation {v.separation_lambda:.4f}, "
      f"{len(v.directions)} accumulation directions, hull ok: {v.hull_ok}")
print(f"  non-realizable by any Brody function: {v.non_realizable}\n")

print("== the product respects the budget ==")
P = CanonicalProduct(d, prefactor=3.0, flip_signs=True)
radii = [2.0, 10.0, 1e2, 1e3, 1e4, 1e5, 1e6]
rep = characteristic(P, d, radii, quad_points=256)
print("        r          T(r)     (log r)^2")
for r, _, _, t in rep.samples:
    print(f"  {r:9.0f}  {t:12.4f}  {math.log(r)**2:12.4f}")

print("\n== denser coverage of directions ==")
d200 = construct_slow(GrowthBound.power(1.0, 0.5), 200, horizon=1e12)
dirs = direction_accumulation(d200, eps=0.2)
print(f"  200 golden-angle points under rho(t) = sqrt(t): {len(dirs)} clusters")
print("  the irrational rotation spreads arguments densely over the circle.\n")

print("== why 2 log t is hopeless ==")
table = GrowthBound.from_table([(t, 2 * math.log(t)) for t in np.geomspace(1.5, 1e12, 40)])
try:
    construct_slow(table, 3, horizon=1e12)
except PreconditionFailed as exc:
    print(f"  construct_slow refuses: {exc}")
d3 = Divisor(((1 + 0j, 1), (2j, 1), (-4 + 0j, 1)))
rep3 = characteristic(CanonicalProduct(d3), d3, [10.0, 100.0, 1000.0], quad_points=128)
for r, _, _, t in rep3.samples:
    print(f"  3-zero product at r = {r:6.0f}: T = {t:8.4f} vs 2 log r = {2*math.log(r):7.4f}")
print("  counting alone gives T >= 3 log r + O(1), so a 2 log t budget caps")
print("  the zero count at two and can never hold a direction-filling divisor.")

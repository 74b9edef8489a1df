"""Spherical derivatives from scratch: the weight h, closed forms, and sup search.

The spherical derivative f#(z) = |f'(z)| / (1 + |f(z)|^2) measures how fast f
moves on the Riemann sphere.  A function with sup f# < infinity spreads its
values evenly enough to stay normal under rescaling; that boundedness is the
property everything else in this package revolves around.
"""

from brody.expr import parse
from brody.spherical import h, sph_deriv, sup_search

print("== the chordal weight h(w) = |w| / (1 + |w|^2) ==")
for w in (0, 0.5, 1, 1j, 2, 10, 1000):
    print(f"  h({w!r:>6}) = {h(w):.6f}")
print("  h peaks at 1/2 on the unit circle and decays toward 0 and infinity.\n")

print("== closed forms ==")
e = parse("exp(z)")
print("  (e^z)# depends only on Re z: e^x/(1+e^(2x))")
for x in (-2.0, 0.0, 2.0):
    print(f"    at Re z = {x:+.0f}: {sph_deriv(e, complex(x, 5.0)):.6f}")
ident = parse("z")
print("  (z)# = 1/(1+|z|^2):", ", ".join(
    f"{sph_deriv(ident, z):.4f}" for z in (0j, 1 + 0j, 3 + 4j)))
inv = parse("1/z")
print(f"  (1/z)# at the pole z=0 (limit value): {sph_deriv(inv, 0j):.6f}")
print("  matching (z)# at 0 because inversion is a sphere isometry.\n")

print("== sup over a disk, two-phase grid search ==")
for src, radius in (("exp(z)", 20.0), ("z", 10.0), ("exp(z)+z", 10.0)):
    rep = sup_search(parse(src), radius, budget=50_000)
    print(f"  sup |{src}|# over |z|<={radius:g}: {rep.max_value:.6f} "
          f"at z = {rep.argmax:.4g} ({rep.samples} samples)")
print("\n  exp stays at 1/2 however large the disk; exp(z)+z keeps climbing.")
print("  That gap is the whole story: bounded f# = Brody, unbounded = not.")

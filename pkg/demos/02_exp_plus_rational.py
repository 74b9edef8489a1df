"""Classifying R(z) e^z + Q(z): finite limits at infinity decide everything.

The sum of an exponential and a rational function is Brody exactly when R
vanishes identically or Q stays finite at infinity.  When Q blows up, the
zeros of f drift to the right and the slopes at those zeros grow without
bound; a hill climb started near a few zeros exhibits the divergence.
"""

from brody.algebra import Polynomial, RationalFunction
from brody.classify import classify_exp_rational
from brody.expr import parse
from brody.spherical import witness_search


def rat(num, den=(1,)):
    return RationalFunction(
        Polynomial(tuple(complex(c) for c in num)),
        Polynomial(tuple(complex(c) for c in den)),
    )


ONE, Z = rat((1,)), rat((0, 1))

print("== the family f_t = e^z + z/(t z + 1) ==")
for t in (0.0, 0.5, -1.0, 2.0):
    Q = rat((0, 1), (1, t))
    v = classify_exp_rational(ONE, Q)
    print(f"  t = {t:+.1f}: {v.status:9s} {v.reason}")
print("  t = 0 collapses Q to z, which is infinite at infinity; any other t")
print("  caps Q at the finite value 1/t, and boundedness follows.\n")

print("== more members of the family ==")
table = [
    ("e^z + z", ONE, Z),
    ("z e^z + z", Z, Z),
    ("0*e^z + z (rational)", rat((0,)), Z),
    ("z e^z + 1/(z-5i)", Z, rat((1,), (-5j, 1))),
    ("5 e^z + (z^2+1)/z", rat((5,)), rat((1, 0, 1), (0, 1))),
]
for label, R, Q in table:
    v = classify_exp_rational(R, Q)
    print(f"  {label:22s} -> {v.status}")

print("\n== watching e^z + z diverge ==")
seeds = [1.5 + 4.4j, 2.1 + 10.8j, 2.4 + 17.1j, 2.65 + 23.4j]
w = witness_search(parse("exp(z)+z"), seeds, steps=60)
print("  hill-climbing f# from seeds near its first zeros:")
for p, v in zip(w.points, w.values):
    print(f"    f#({p:.4g}) = {v:.4f}")
print(f"  monotone growth: {w.monotone}; the slopes scale like |zero| itself.")

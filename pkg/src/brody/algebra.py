"""Complex polynomial and rational-function arithmetic on the Riemann sphere.

Values are either finite ``complex`` numbers or the single point ``INFINITY``.
Polynomials store ascending coefficient tuples; rational functions keep a
monic denominator so decompositions are canonical.  Common roots of numerator
and denominator are never cancelled symbolically; evaluation deflates them on
demand, so removable singularities evaluate to their limit.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import IndeterminateAtPoint, ZeroDenominator, ZeroFunction

DEGREE_CAP = 64


class _InfinityType:
    """The point at infinity on the Riemann sphere; a unique sentinel."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Infinity"


INFINITY = _InfinityType()

# A value on the sphere: finite complex or INFINITY.
ExtendedComplex = complex | _InfinityType


def is_infinity(w) -> bool:
    return w is INFINITY


@dataclass(frozen=True)
class Polynomial:
    """Polynomial with ascending complex coefficients; ``()`` is the zero polynomial.

    The last stored coefficient is always nonzero.  Degree is capped at
    DEGREE_CAP to catch runaway symbolic growth.
    """

    coeffs: tuple[complex, ...]

    def __init__(self, coeffs=()):
        cs = [complex(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        if len(cs) - 1 > DEGREE_CAP:
            raise ValueError(f"degree {len(cs) - 1} exceeds cap {DEGREE_CAP}")
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        # -1 for the zero polynomial
        return len(self.coeffs) - 1

    @property
    def leading(self) -> complex:
        if self.is_zero:
            raise ZeroFunction("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __call__(self, z: complex) -> complex:
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def __add__(self, other: "Polynomial") -> "Polynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0j] * (n - len(self.coeffs))
        for i, c in enumerate(other.coeffs):
            a[i] += c
        return Polynomial(a)

    def __neg__(self) -> "Polynomial":
        return Polynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        if self.is_zero or other.is_zero:
            return Polynomial()
        out = [0j] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    def scale(self, s: complex) -> "Polynomial":
        return Polynomial(tuple(complex(s) * c for c in self.coeffs))

    def derivative(self) -> "Polynomial":
        return Polynomial(tuple(k * c for k, c in enumerate(self.coeffs) if k))

    def deflate(self, z: complex) -> "Polynomial":
        """Synthetic division by (x - z); valid when z is an exact root."""
        if self.is_zero:
            return self
        n = len(self.coeffs)
        q = [0j] * (n - 1)
        acc = 0j
        for k in range(n - 1, 0, -1):
            acc = self.coeffs[k] + z * acc
            q[k - 1] = acc
        return Polynomial(q)


def derivative(p: Polynomial) -> Polynomial:
    return p.derivative()


def quotient_derivative_numerator(p: Polynomial, q: Polynomial) -> Polynomial:
    """p'q - pq', computed so the top-degree cancellation at deg p == deg q is exact.

    Coefficient of z^k is the sum of (i - j) * p_i * q_j over i + j = k + 1;
    the integer factor (i - j) vanishes exactly where the naive difference of
    two products would leave a rounding residue.
    """
    if p.is_zero or q.is_zero:
        return Polynomial()
    out = [0j] * (len(p.coeffs) + len(q.coeffs) - 1)
    for i, a in enumerate(p.coeffs):
        for j, b in enumerate(q.coeffs):
            if i + j == 0:
                continue
            out[i + j - 1] += (i - j) * a * b
    return Polynomial(out)


@dataclass(frozen=True)
class RationalFunction:
    """Quotient of polynomials with monic denominator.

    The denominator is never the zero polynomial.  num/den need not be in
    lowest terms; see ``eval_rational`` for how common roots are handled.
    """

    num: Polynomial
    den: Polynomial

    def __init__(self, num, den=(1,)):
        num = num if isinstance(num, Polynomial) else Polynomial(num)
        den = den if isinstance(den, Polynomial) else Polynomial(den)
        if den.is_zero:
            raise ZeroDenominator("denominator is the zero polynomial")
        lead = den.leading
        if lead != 1:
            num = num.scale(1 / lead)
            scaled = [c / lead for c in den.coeffs]
            scaled[-1] = 1.0 + 0j  # force exact monic head
            den = Polynomial(scaled)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def __call__(self, z: complex) -> ExtendedComplex:
        return eval_rational(self, z)

    def derivative(self) -> "RationalFunction":
        return RationalFunction(
            quotient_derivative_numerator(self.num, self.den),
            self.den * self.den,
        )

    def to_json_obj(self) -> dict:
        pack = lambda p: [[c.real, c.imag] for c in p.coeffs]
        return {"num": pack(self.num), "den": pack(self.den)}

    @classmethod
    def from_json_obj(cls, obj: dict) -> "RationalFunction":
        unpack = lambda pairs: Polynomial(complex(re, im) for re, im in pairs)
        return cls(unpack(obj["num"]), unpack(obj["den"]))


def eval_rational(r: RationalFunction, z: complex) -> ExtendedComplex:
    """Value of r at z on the sphere; deflates common exact roots on 0/0.

    Deflation only fires when both Horner values are exactly zero, which holds
    for exactly-representable roots; nearby doubles evaluate to a large finite
    quotient instead, which is the honest answer at that point.
    """
    z = complex(z)
    num, den = r.num, r.den
    nv, dv = num(z), den(z)
    steps = 0
    while dv == 0 and nv == 0:
        if steps > DEGREE_CAP:
            raise IndeterminateAtPoint(f"0/0 at {z} survives full deflation")
        if num.is_zero:
            # r is the zero function near z; denominator zero is removable
            den = den.deflate(z)
            dv = den(z)
            steps += 1
            continue
        num = num.deflate(z)
        den = den.deflate(z)
        nv, dv = num(z), den(z)
        steps += 1
    if dv == 0:
        return INFINITY
    return nv / dv


def value_at_infinity(r: RationalFunction) -> ExtendedComplex:
    """Limit of r at the point at infinity: degree comparison, then leading ratio."""
    if r.num.is_zero:
        return 0j
    dn, dd = r.num.degree, r.den.degree
    if dn < dd:
        return 0j
    if dn > dd:
        return INFINITY
    return r.num.leading / r.den.leading


def log_derivative(r: RationalFunction) -> RationalFunction:
    """r'/r as a rational function, (p'q - pq')/(pq), denominator monic.

    No symbolic cancellation is performed; the numerator degree is strictly
    below the denominator degree whenever r is nonconstant, which is exact by
    construction of the numerator pairing.
    """
    if r.num.is_zero:
        raise ZeroFunction("log-derivative of the zero function")
    return RationalFunction(
        quotient_derivative_numerator(r.num, r.den),
        r.num * r.den,
    )

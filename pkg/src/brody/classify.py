"""Exact deciders for the families with known Brody status.

Two families admit if-and-only-if classification: R(z)e^z + Q(z) with
rational R, Q (Brody exactly when R vanishes identically or Q stays finite
at infinity), and e^z + e^(lambda z) (Brody exactly when lambda is real).
The remaining operations give explicit spherical-derivative bounds for the
real-lambda cases, the post-composition Lipschitz constant of a rational
map on the sphere, and a one-sided bounded-log-derivative rule.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .algebra import (
    Polynomial,
    RationalFunction,
    is_infinity,
    quotient_derivative_numerator,
    value_at_infinity,
)
from .errors import ConstantMap, LambdaOne, OutOfCase
from .expr import Expr, differentiate, eval_grid
from .spherical import WitnessSequence

_SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class BrodyVerdict:
    """status in {Brody, NotBrody, Unknown}; reason names the deciding rule."""

    status: str
    reason: str
    witness: WitnessSequence | float | None = None

    def to_json_obj(self) -> dict:
        if isinstance(self.witness, WitnessSequence):
            wit = self.witness.to_json_obj()
        else:
            wit = self.witness
        return {"status": self.status, "reason": self.reason, "witness": wit}


@dataclass(frozen=True)
class TwoExpParams:
    """Parameter of the family z -> e^z + e^(lam z)."""

    lam: complex

    def __init__(self, lam):
        object.__setattr__(self, "lam", complex(lam))


def _lam(p) -> complex:
    return p.lam if isinstance(p, TwoExpParams) else complex(p)


def classify_exp_rational(R: RationalFunction, Q: RationalFunction) -> BrodyVerdict:
    """Verdict for f = R(z) e^z + Q(z): Brody iff R == 0 or Q(inf) is finite."""
    if R.is_zero:
        return BrodyVerdict(
            "Brody", "exp-rational/R-zero: f reduces to the rational map Q"
        )
    q_inf = value_at_infinity(Q)
    if is_infinity(q_inf):
        return BrodyVerdict(
            "NotBrody",
            "exp-rational/Q-infinite-at-infinity: Q grows at infinity, so the "
            "spherical derivative is unbounded along a zero sequence of f",
        )
    return BrodyVerdict(
        "Brody",
        f"exp-rational/Q-finite-at-infinity: Q(inf) = {q_inf:.6g} keeps f Brody",
    )


def two_exp_zero(p, k: int) -> complex:
    """k-th zero of e^z + e^(lam z): (2k+1) pi i / (1 - lam)."""
    lam = _lam(p)
    if lam == 1:
        raise LambdaOne("e^z + e^z = 2 e^z has no zeros")
    return (2 * int(k) + 1) * math.pi * 1j / (1.0 - lam)


def two_exp_slope(p, k: int) -> complex:
    """f'(a_k) = (lam - 1) exp((2k+1) pi i lam / (1 - lam))."""
    lam = _lam(p)
    if lam == 1:
        raise LambdaOne("e^z + e^z has no zeros")
    return (lam - 1.0) * cmath.exp((2 * int(k) + 1) * math.pi * 1j * lam / (1.0 - lam))


def classify_two_exponentials(p) -> BrodyVerdict:
    """Verdict for f = e^z + e^(lam z): Brody iff lam is exactly real.

    The dichotomy is discontinuous in lam, so realness is tested exactly on
    the input, never with a tolerance.  Non-real lam attaches a witness of
    zeros whose slopes grow geometrically.
    """
    lam = _lam(p)
    if lam.imag == 0.0:
        return BrodyVerdict(
            "Brody",
            f"two-exp/lambda-real: lambda = {lam.real:g} gives a bounded "
            "spherical derivative",
            witness=two_exp_bound(lam.real),
        )
    # |f'(a_k)| = |lam-1| e^((2k+1) c) with c = Re(pi i lam/(1-lam)) != 0;
    # walk k in the direction that makes the slopes grow
    c = (math.pi * 1j * lam / (1.0 - lam)).real
    ks = range(0, 6) if c > 0 else range(-1, -7, -1)
    points = tuple(two_exp_zero(lam, k) for k in ks)
    values = tuple(abs(two_exp_slope(lam, k)) for k in ks)
    return BrodyVerdict(
        "NotBrody",
        f"two-exp/lambda-nonreal: Im lambda = {lam.imag:g}, slopes at the "
        "zeros a_k are unbounded",
        witness=WitnessSequence(points=points, values=values, monotone=True),
    )


def two_exp_bound(p) -> float:
    """Explicit sup bound for the spherical derivative of e^z + e^(lam z), lam real.

    Exact for lam in {0, 1, -1}; for 0 < lam < 1 the three-region estimate
    max(6 e^-C, e^C + lam e^(lam C)) with C = log2/(1-lam); for -1 < lam < 0
    the analogous max over the three regions; |lam| > 1 rescales through
    f(z) = g(lam z) with g in the reciprocal-parameter family.
    """
    lam = _lam(p)
    if lam.imag != 0.0:
        raise OutOfCase(f"bound requires real lambda, got {lam}")
    x = lam.real
    if x == 0.0:
        return (1.0 + _SQRT2) / 2.0  # f = e^z + 1, exact
    if x == 1.0:
        return 0.5  # f = 2 e^z, exact
    if x == -1.0:
        return 2.0  # f = 2 cosh z, exact
    if 0.0 < x < 1.0:
        c = math.log(2.0) / (1.0 - x)
        return max(6.0 * math.exp(-c), math.exp(c) + x * math.exp(x * c))
    if -1.0 < x < 0.0:
        c = math.log(2.0) / (1.0 - x)
        return max(
            6.0 * math.exp(-c),
            6.0 * math.exp(x * c),
            math.exp(c) + abs(x) * math.exp(-x * c),
        )
    # |x| > 1: e^z + e^(x z) = g(x z) for g(w) = e^w + e^(w/x), so
    # sup f# = |x| sup g#
    return abs(x) * two_exp_bound(1.0 / x)


def preserves_brody_product(R: RationalFunction) -> bool:
    """True iff multiplying a Brody function by R keeps it Brody: R(inf) not in {0, inf}."""
    v = value_at_infinity(R)
    return not is_infinity(v) and v != 0


def rational_sphere_lipschitz(R: RationalFunction, budget: int = 10_000) -> float:
    """Sampled sup over the sphere of |R'(w)| (1+|w|^2) / (1+|R(w)|^2).

    The sup bounds how much post-composition with R can inflate a spherical
    derivative.  Sampling covers the closed unit disk in both charts (w and
    1/w), including the shared boundary circle, all in pole-free form.
    """
    budget = int(budget)
    if budget < 1000:
        raise ValueError("budget must be >= 1000")
    pairing = quotient_derivative_numerator(R.num, R.den)
    if pairing.is_zero:
        raise ConstantMap("R is constant; the differential vanishes identically")

    def chart_max(num: Polynomial, den: Polynomial) -> float:
        pair = quotient_derivative_numerator(num, den)
        per = budget // 2
        side = max(8, int(math.sqrt(per * 4.0 / math.pi)))
        xs = np.linspace(-1.0, 1.0, side)
        g = (xs[:, None] + 1j * xs[None, :]).ravel()
        pts = g[np.abs(g) <= 1.0]
        ring = np.exp(1j * np.linspace(0.0, 2.0 * math.pi, max(64, per // 10),
                                       endpoint=False))
        pts = np.concatenate([pts, ring])
        pv = _poly_grid(pair, pts)
        nv = _poly_grid(num, pts)
        dv = _poly_grid(den, pts)
        denom = np.abs(nv) ** 2 + np.abs(dv) ** 2
        with np.errstate(divide="ignore", invalid="ignore"):
            vals = np.abs(pv) * (1.0 + np.abs(pts) ** 2) / denom
        vals = vals[np.isfinite(vals)]
        return float(np.max(vals)) if vals.size else 0.0

    # chart 2 substitutes w = 1/u: R(1/u) = rev(P)(u) u^(d-deg P) / (rev(Q)(u) u^(d-deg Q))
    d = max(R.num.degree, R.den.degree)
    flip_num = _reversed_to_degree(R.num, d)
    flip_den = _reversed_to_degree(R.den, d)
    return max(chart_max(R.num, R.den), chart_max(flip_num, flip_den))


def _poly_grid(p: Polynomial, zs: np.ndarray) -> np.ndarray:
    out = np.zeros(zs.shape, dtype=complex)
    for c in reversed(p.coeffs):
        out = out * zs + c
    return out


def _reversed_to_degree(p: Polynomial, d: int) -> Polynomial:
    """u^d * p(1/u) as a polynomial: coefficient of u^j is a_(d-j)."""
    if p.is_zero:
        return p
    coeffs = [0j] * (d - p.degree) + list(p.coeffs[::-1])
    return Polynomial(tuple(coeffs))


def log_derivative_brody_rule(
    f: Expr, radius: float, budget: int = 8192, threshold: float = 1e3
) -> BrodyVerdict:
    """One-sided rule: bounded, settled |f'/f| on 8 rings suggests Brody.

    Returns Brody only when the outermost ring max is below threshold and the
    maxima do not increase across the outer three rings; anything else,
    including a sampled pole or zero, yields Unknown.  Never returns NotBrody.
    """
    radius = float(radius)
    if radius <= 0:
        raise ValueError("radius must be positive")
    budget = int(budget)
    if budget < 64:
        raise ValueError("budget must be >= 64")
    df = differentiate(f)
    per_ring = max(8, budget // 8)
    ring_max = []
    for j in range(1, 9):
        r = radius * j / 8.0
        zs = r * np.exp(1j * np.linspace(0.0, 2.0 * math.pi, per_ring, endpoint=False))
        fv = eval_grid(f, zs)
        dv = eval_grid(df, zs)
        if np.any(np.isinf(fv)) or np.any(np.isnan(fv)) or np.any(np.isinf(dv)):
            return BrodyVerdict(
                "Unknown",
                "log-derivative/pole: a sample hit a pole or overflow; the "
                "rule needs an entire function",
            )
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.abs(dv) / np.abs(fv)
        if np.any(~np.isfinite(ratio)):
            return BrodyVerdict(
                "Unknown",
                "log-derivative/zero: f vanishes at a sample, |f'/f| unbounded there",
            )
        ring_max.append(float(np.max(ratio)))
    settled = all(
        ring_max[j + 1] <= ring_max[j] * (1.0 + 1e-9) for j in (5, 6)
    )
    if ring_max[-1] <= threshold and settled:
        return BrodyVerdict(
            "Brody",
            "log-derivative/bounded: |f'/f| small and non-increasing on the "
            f"outer rings (max {ring_max[-1]:.4g}); sufficient-condition heuristic",
        )
    return BrodyVerdict(
        "Unknown",
        "log-derivative/inconclusive: |f'/f| not settled below the threshold "
        f"(outer max {ring_max[-1]:.4g})",
    )

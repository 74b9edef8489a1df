"""Products over divisors: F(z) = prod (1 - z/a_k)^m_k.

Scalar evaluation is tolerance driven: the factor scan stops as soon as the
dropped tail is provably below the requested relative tolerance, either by
bounding the raw tail product (plain stop) or by multiplying in the
first-order tail correction exp(-z * sum 1/a_k) and bounding the remainder
by the squared tail (corrected stop, valid once all remaining moduli are at
least 2|z|).  Divisors built by the factories carry the analytic tails of
their infinite continuation, so both bounds account for every omitted zero,
not just the stored ones.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .divisors import Divisor, separation_ratio
from .errors import (
    LambdaNotGreaterOne,
    MultiplicityNotOne,
    NumericOverflow,
    SeparationViolated,
    TolUnreachable,
)

_LOG_CAP = 709.0  # exp overflows past this


@dataclass(frozen=True)
class ProductEval:
    """Value of a truncated product with a proven relative tail bound."""

    value: complex
    terms_used: int
    tail_bound: float

    def to_json_obj(self) -> dict:
        return {
            "value": [self.value.real, self.value.imag],
            "terms_used": self.terms_used,
            "tail_bound": self.tail_bound,
        }


def _suffix_sums(d: Divisor, skip: int | None):
    """Suffix tail sums (1/a, 1/|a|, 1/|a|^2) including the analytic tails.

    Entry [n] covers stored factors n..end plus the infinite tail; the
    optional skip index is excluded everywhere.
    """
    sup = d.support
    mul = d.mults.astype(float)
    if skip is not None:
        keep = np.ones(len(d), dtype=bool)
        keep[skip] = False
        sup = sup[keep]
        mul = mul[keep]
    absx = np.abs(sup)
    inv = mul / sup
    inv_abs = mul / absx
    inv_sq = mul / absx**2
    s1 = np.concatenate([np.cumsum(inv[::-1])[::-1], [0j]]) + d.tail_sum
    s_abs = np.concatenate([np.cumsum(inv_abs[::-1])[::-1], [0.0]]) + d.tail_abs
    s_sq = np.concatenate([np.cumsum(inv_sq[::-1])[::-1], [0.0]]) + d.tail_sq
    return sup, mul, absx, s1, s_abs, s_sq


def _partial(sup, mul, z: complex, n: int) -> complex:
    """prod_{k<n} (1 - z/a_k)^m_k, accumulated in log space."""
    if n == 0:
        return 1.0 + 0j
    t = 1.0 - z / sup[:n]
    if np.any(t == 0):
        return 0j
    la = float(np.sum(mul[:n] * np.log(np.abs(t))))
    ang = float(np.sum(mul[:n] * np.angle(t)))
    if la > _LOG_CAP:
        raise NumericOverflow(f"partial product modulus exceeds exp({la:.3g})")
    return cmath.rect(math.exp(la), ang)


def eval_product(
    d: Divisor, z: complex, tol: float = 1e-9, skip: int | None = None
) -> ProductEval:
    """Evaluate the product over d at z to relative tolerance tol.

    Raises TolUnreachable (carrying the best value and its bound) when even
    the full stored divisor plus tail correction cannot certify tol.
    """
    z = complex(z)
    if not (0.0 < tol < 0.1):
        raise ValueError("tol must be in (0, 0.1)")
    if skip is not None:
        skip = int(skip)
        if not (0 <= skip < len(d)):
            raise ValueError(f"skip index {skip} out of range")
    if z == 0:
        return ProductEval(1.0 + 0j, 0, 0.0)

    sup, mul, absx, s1, s_abs, s_sq = _suffix_sums(d, skip)
    m = len(sup)
    az = abs(z)

    # a vanishing stored factor makes the value exactly 0, tail irrelevant
    hit = np.where(sup == z)[0]
    if hit.size:
        return ProductEval(0j, int(hit[0]) + 1, 0.0)

    # |prod_tail (1-w_k) - 1| <= prod (1+|w_k|) - 1 <= exp(sum |w_k|) - 1
    with np.errstate(over="ignore"):
        plain = np.expm1(az * s_abs)
    ok = np.where(plain < tol)[0]
    if ok.size:
        n = int(ok[0])
        return ProductEval(_partial(sup, mul, z, n), n, float(plain[n]))

    # corrected stop: needs every remaining modulus >= 2|z| (suffix moduli
    # ascend, and the analytic tails continue past the last stored point)
    with np.errstate(over="ignore"):
        corr = np.expm1(az * az * s_sq)
    eligible = np.concatenate([absx >= 2.0 * az, [bool(m and absx[-1] >= 2.0 * az)]])
    ok = np.where(eligible & (corr < tol))[0]
    if ok.size:
        n = int(ok[0])
        value = _partial(sup, mul, z, n) * cmath.exp(-z * s1[n])
        return ProductEval(value, n, float(corr[n]))

    # best effort: full product, corrected if the tail is safely far out
    if m and absx[-1] >= 2.0 * az:
        value = _partial(sup, mul, z, m) * cmath.exp(-z * s1[m])
        bound = float(corr[m])
    else:
        value = _partial(sup, mul, z, m)
        bound = float(plain[m])
    raise TolUnreachable(
        f"tolerance {tol:g} unreachable at |z|={az:.6g}; best bound {bound:.3g}",
        value=value,
        tail_bound=bound,
    )


def product_derivative_at_support(
    d: Divisor, n: int, tol: float = 1e-9
) -> ProductEval:
    """F'(a_n) = -(1/a_n) * prod_{k != n} (1 - a_n/a_k), for a simple point."""
    n = int(n)
    if not (0 <= n < len(d)):
        raise ValueError(f"index {n} out of range")
    if d.points[n][1] != 1:
        raise MultiplicityNotOne(f"point {n} has multiplicity {d.points[n][1]}")
    a_n = d.points[n][0]
    core = eval_product(d, a_n, tol=tol, skip=n)
    return ProductEval(-core.value / a_n, core.terms_used, core.tail_bound)


def claim1_constant(lam: float) -> float:
    """prod_{l >= 0} (1 - lam^-(l+1/2)), factors taken until below 1e-12."""
    lam = float(lam)
    if not lam > 1.0:
        raise LambdaNotGreaterOne(f"lambda must exceed 1, got {lam}")
    prod = 1.0
    l = 0
    while True:
        term = lam ** -(l + 0.5)
        if term < 1e-12:
            return prod
        prod *= 1.0 - term
        l += 1


def claim1_min_ratio(
    d: Divisor, lam: float, trials: int = 100, seed: int = 0
) -> float:
    """Smallest sampled |prod_{k>=n}(1 - p/a_k)| / C(lam) over random (n, p).

    p is drawn with |p| * sqrt(lam) < |a_n| as the bound requires.  The
    divisor must be lam-separated in modulus (ratio tolerance 1e-12, so
    exact-ratio families such as geometric(4, n) qualify).
    """
    lam = float(lam)
    if not lam > 1.0:
        raise LambdaNotGreaterOne(f"lambda must exceed 1, got {lam}")
    trials = int(trials)
    if trials < 1:
        raise ValueError("trials must be >= 1")
    sep = separation_ratio(d)
    if sep < lam * (1.0 - 1e-12):
        raise SeparationViolated(
            f"min modulus ratio {sep:.6g} is below lambda {lam:g}"
        )
    constant = claim1_constant(lam)
    rng = np.random.default_rng(seed)
    sup = d.support
    moduli = d.moduli
    sqrt_lam = math.sqrt(lam)
    min_ratio = math.inf
    for _ in range(trials):
        n = int(rng.integers(0, len(d)))
        radius = rng.uniform(0.0, 1.0) * moduli[n] / sqrt_lam
        p = radius * cmath.exp(1j * rng.uniform(0.0, 2.0 * math.pi))
        tail = sup[n:]
        modulus = float(np.exp(np.sum(np.log(np.abs(1.0 - p / tail)))))
        min_ratio = min(min_ratio, modulus / constant)
    return min_ratio


def claim1_check(d: Divisor, lam: float, trials: int = 100, seed: int = 0) -> bool:
    """True iff every sampled tail product stays above claim1_constant(lam)."""
    return claim1_min_ratio(d, lam, trials=trials, seed=seed) >= 1.0 - 1e-10


def claim2_minorant(lam: float, s: int) -> float:
    """prod_{l=0..s} (lam^(1/2+l) - 1), the slope minorant for separated zeros."""
    lam = float(lam)
    if not lam > 1.0:
        raise LambdaNotGreaterOne(f"lambda must exceed 1, got {lam}")
    s = int(s)
    if s < 0:
        raise ValueError("s must be >= 0")
    prod = 1.0
    for l in range(s + 1):
        prod *= lam ** (0.5 + l) - 1.0
    return prod


class CanonicalProduct:
    """Grid-oriented product function F(z) = c * prod (1 - z/a_k)^m_k.

    Always multiplies every stored factor and applies the first-order tail
    correction; accumulation happens in log space so partial growth never
    overflows.  flip_signs writes each factor as (z/a_k - 1) instead, which
    only flips the overall sign when the total multiplicity is odd.
    """

    _CHUNK = 256

    def __init__(self, divisor: Divisor, prefactor: complex = 1.0,
                 flip_signs: bool = False):
        self.divisor = divisor
        self.prefactor = complex(prefactor)
        self.flip_signs = bool(flip_signs)
        self._mul = divisor.mults.astype(float)
        total = int(divisor.mults.sum())
        self._sign = -1.0 if (flip_signs and total % 2) else 1.0
        # log|prefactor| enters log-magnitude sums; a zero prefactor is useless
        if self.prefactor == 0:
            raise ValueError("prefactor must be nonzero")

    def _log_terms(self, zc: np.ndarray):
        """Per-point (log|F|, arg F) over a chunk, tail correction included."""
        sup = self.divisor.support
        with np.errstate(divide="ignore", invalid="ignore"):
            t = 1.0 - zc[:, None] / sup[None, :]
            la = np.sum(self._mul[None, :] * np.log(np.abs(t)), axis=1)
            ang = np.sum(self._mul[None, :] * np.angle(t), axis=1)
        corr = -zc * self.divisor.tail_sum
        la = la + corr.real + math.log(abs(self.prefactor))
        ang = ang + corr.imag + cmath.phase(self.prefactor * self._sign)
        return la, ang

    def log_abs_many(self, zs) -> np.ndarray:
        """log|F| on a grid; -inf exactly on the support."""
        zs = np.asarray(zs, dtype=complex)
        flat = zs.ravel()
        out = np.empty(flat.shape, dtype=float)
        for i in range(0, flat.size, self._CHUNK):
            la, _ = self._log_terms(flat[i:i + self._CHUNK])
            out[i:i + self._CHUNK] = la
        return out.reshape(zs.shape)

    def eval_many(self, zs) -> np.ndarray:
        zs = np.asarray(zs, dtype=complex)
        flat = zs.ravel()
        out = np.empty(flat.shape, dtype=complex)
        for i in range(0, flat.size, self._CHUNK):
            la, ang = self._log_terms(flat[i:i + self._CHUNK])
            with np.errstate(over="ignore"):
                out[i:i + self._CHUNK] = np.exp(la) * np.exp(1j * ang)
        return out.reshape(zs.shape)

    def __call__(self, z: complex) -> complex:
        return complex(self.eval_many(np.array([z]))[0])

    def log_deriv_many(self, zs) -> np.ndarray:
        """F'/F = sum m_k/(z - a_k) - tail_sum; inf on the support."""
        zs = np.asarray(zs, dtype=complex)
        flat = zs.ravel()
        sup = self.divisor.support
        out = np.empty(flat.shape, dtype=complex)
        for i in range(0, flat.size, self._CHUNK):
            zc = flat[i:i + self._CHUNK]
            with np.errstate(divide="ignore", invalid="ignore"):
                terms = self._mul[None, :] / (zc[:, None] - sup[None, :])
                out[i:i + self._CHUNK] = np.sum(terms, axis=1) - self.divisor.tail_sum
        return out.reshape(zs.shape)

    def sph_deriv_grid(self, zs) -> np.ndarray:
        """Spherical derivative |F'| / (1 + |F|^2) on a grid; NaN on the support.

        Computed as |F'/F| * g(log|F|) with g evaluated piecewise in log
        space, so huge |F| never overflows.
        """
        zs = np.asarray(zs, dtype=complex)
        flat = zs.ravel()
        sup = self.divisor.support
        out = np.empty(flat.shape, dtype=float)
        for i in range(0, flat.size, self._CHUNK):
            zc = flat[i:i + self._CHUNK]
            with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
                dmat = zc[:, None] - sup[None, :]
                la = np.sum(self._mul[None, :] * np.log(np.abs(dmat)), axis=1)
                s = np.sum(self._mul[None, :] / dmat, axis=1) - self.divisor.tail_sum
            la = la - self._log_sup_total + (-zc * self.divisor.tail_sum).real
            la = la + math.log(abs(self.prefactor))
            sa = np.abs(s)
            res = np.empty(zc.shape, dtype=float)
            hi = la > 300.0
            lo = la < -300.0
            mid = ~(hi | lo)
            with np.errstate(invalid="ignore"):
                res[hi] = sa[hi] * np.exp(-la[hi])
                res[lo] = sa[lo] * np.exp(la[lo])  # nan exactly on support
                e = np.exp(la[mid])
                res[mid] = sa[mid] * e / (1.0 + e * e)
            out[i:i + self._CHUNK] = res
        return out.reshape(zs.shape)

    @property
    def _log_sup_total(self) -> float:
        return float(np.sum(self._mul * np.log(self.divisor.moduli)))

    def sph_deriv(self, z: complex, tol: float = 1e-9) -> float:
        """Scalar spherical derivative; exact support points use F'(a_n)."""
        z = complex(z)
        hit = np.where(self.divisor.support == z)[0]
        if hit.size:
            n = int(hit[0])
            if self.divisor.points[n][1] > 1:
                return 0.0
            core = product_derivative_at_support(self.divisor, n, tol=tol)
            return abs(self.prefactor) * abs(core.value)
        val = float(self.sph_deriv_grid(np.array([z]))[0])
        if not math.isfinite(val):
            raise NumericOverflow(f"spherical derivative not finite at {z}")
        return val

"""Value-distribution bookkeeping: proximity, counting, characteristic, order.

Proximity integrals are taken over circles |z| = r by periodic trapezoid
rule on log+ (1/|f|), with up to two bisection passes that insert midpoints
wherever adjacent samples differ by more than one log unit.  The "standard"
normalization divides the circle integral by 2 pi; "paper-literal" keeps the
plain d theta integral.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .divisors import Divisor, counting_N
from .errors import (
    DivisorMismatch,
    InsufficientSamples,
    ZeroAtOrigin,
    ZeroOnCircle,
)
from .expr import Expr, eval_grid

_NORMS = ("standard", "paper-literal")

_LOG_TINY = math.log(1e-300)


def _values_on(f, zs: np.ndarray) -> np.ndarray:
    if isinstance(f, Expr):
        return eval_grid(f, zs)
    if hasattr(f, "eval_many"):
        return np.asarray(f.eval_many(zs), dtype=complex)
    return np.array([complex(f(z)) for z in zs], dtype=complex)


def _log_abs_on(f, zs: np.ndarray) -> np.ndarray:
    """log|f| on the samples; -inf flags a zero, +inf a pole."""
    if hasattr(f, "log_abs_many"):
        return np.asarray(f.log_abs_many(zs), dtype=float)
    vals = _values_on(f, zs)
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.log(np.abs(vals))


def proximity(
    f, r: float, quad_points: int = 512, normalization: str = "standard"
) -> float:
    """Mean of log+ (1/|f|) over the circle |z| = r."""
    r = float(r)
    if r <= 0:
        raise ValueError("r must be positive")
    quad_points = int(quad_points)
    if quad_points < 64:
        raise ValueError("quad_points must be >= 64")
    if normalization not in _NORMS:
        raise ValueError(f"normalization must be one of {_NORMS}")

    f0 = _log_abs_on(f, np.array([0j]))[0]
    if f0 == -math.inf:
        raise ZeroAtOrigin("f vanishes at the origin")

    div = getattr(f, "divisor", None)
    if isinstance(div, Divisor) and len(div):
        gap = float(np.min(np.abs(div.moduli - r)))
        if gap < 1e-6 * max(1.0, r):
            raise ZeroOnCircle(f"support point within {gap:.3g} of |z| = {r:g}")

    angles = np.linspace(0.0, 2.0 * math.pi, quad_points, endpoint=False)

    def sample(th: np.ndarray) -> np.ndarray:
        la = _log_abs_on(f, r * np.exp(1j * th))
        if np.any(np.isnan(la)) or np.any(la < _LOG_TINY):
            raise ZeroOnCircle(
                f"|f| below 1e-300 or indeterminate on |z| = {r:g}"
            )
        return np.maximum(0.0, -la)  # log+(1/|f|); poles contribute 0

    vals = sample(angles)
    for _ in range(2):
        jump = np.abs(np.diff(vals, append=vals[:1]))  # cyclic gaps
        bad = np.where(jump > 1.0)[0]
        if not bad.size:
            break
        nxt = np.where(bad + 1 < angles.size, bad + 1, 0)
        wrap = angles[nxt] + np.where(nxt == 0, 2.0 * math.pi, 0.0)
        mids = (angles[bad] + wrap) / 2.0
        angles = np.sort(np.concatenate([angles, mids]))
        vals = sample(angles)

    gaps = np.diff(angles, append=angles[:1] + 2.0 * math.pi)
    integral = float(np.sum(gaps * (vals + np.roll(vals, -1)) / 2.0))
    return integral / (2.0 * math.pi) if normalization == "standard" else integral


def counting(d: Divisor, r: float) -> float:
    """Integrated counting function of the divisor (see divisors.counting_N)."""
    return counting_N(d, r)


@dataclass(frozen=True)
class NevanlinnaReport:
    """(r, m, N, T) samples along increasing radii."""

    samples: tuple[tuple[float, float, float, float], ...]
    normalization: str
    monotone: bool

    def to_json_obj(self) -> dict:
        return {
            "samples": [list(s) for s in self.samples],
            "normalization": self.normalization,
            "monotone": self.monotone,
        }


def characteristic(
    f,
    divisor: Divisor,
    r_list,
    quad_points: int = 512,
    normalization: str = "standard",
) -> NevanlinnaReport:
    """T = m + N along r_list, with the zero set supplied as a divisor.

    The divisor must actually consist of zeros of f: every support point
    inside max(r_list) is spot-checked.
    """
    radii = [float(r) for r in r_list]
    if not radii:
        raise ValueError("r_list must be nonempty")
    if any(r <= 0 for r in radii) or any(b <= a for a, b in zip(radii, radii[1:])):
        raise ValueError("r_list must be positive and strictly increasing")

    if len(divisor) and getattr(f, "divisor", None) is not divisor:
        inside = divisor.support[divisor.moduli < max(radii)]
        if inside.size:
            vals = np.abs(_values_on(f, inside))
            tol = 1e-6 * (1.0 + np.abs(inside))
            worst = int(np.argmax(vals / tol))
            if vals[worst] > tol[worst]:
                raise DivisorMismatch(
                    f"|f({inside[worst]:.6g})| = {vals[worst]:.3g} "
                    "but the divisor lists it as a zero"
                )

    samples = []
    for r in radii:
        m = proximity(f, r, quad_points=quad_points, normalization=normalization)
        n = counting_N(divisor, r)
        samples.append((r, m, n, m + n))
    t_vals = [s[3] for s in samples]
    monotone = all(b >= a - 1e-9 for a, b in zip(t_vals, t_vals[1:]))
    return NevanlinnaReport(tuple(samples), normalization, monotone)


@dataclass(frozen=True)
class OrderEstimate:
    """Least-squares slope of log T against log r over the outer radii."""

    slope: float
    r_range: tuple[float, float]
    residual: float

    def to_json_obj(self) -> dict:
        return {
            "slope": self.slope,
            "r_range": list(self.r_range),
            "residual": self.residual,
        }


def order_estimate(report: NevanlinnaReport) -> OrderEstimate:
    """Growth order from the top half of the log-radius range."""
    pts = [(r, t) for r, _, _, t in report.samples if t > 0 and r > 0]
    if len(pts) < 8:
        raise InsufficientSamples(
            f"need at least 8 samples with T > 0, got {len(pts)}"
        )
    lr = np.log([p[0] for p in pts])
    lt = np.log([p[1] for p in pts])
    mid = (lr.min() + lr.max()) / 2.0
    keep = lr >= mid
    if int(keep.sum()) < 2:
        raise InsufficientSamples("fewer than 2 samples in the outer radius range")
    slope, intercept = np.polyfit(lr[keep], lt[keep], 1)
    fit = slope * lr[keep] + intercept
    residual = float(np.sqrt(np.mean((lt[keep] - fit) ** 2)))
    r_used = np.exp(lr[keep])
    return OrderEstimate(
        slope=float(slope),
        r_range=(float(r_used.min()), float(r_used.max())),
        residual=residual,
    )

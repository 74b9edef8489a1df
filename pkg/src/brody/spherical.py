"""Spherical derivative machinery.

The chordal weight ``h(w) = |w| / (1 + |w|^2)`` never exceeds 1/2 and vanishes
at the point at infinity.  The spherical derivative of a map f is
``f#(z) = |f'(z)| / (1 + |f(z)|^2)``; it is invariant under post-composition
with the reciprocal, which is how values at poles are defined.

``sup_search`` and ``witness_search`` are deterministic sampling heuristics:
a reported supremum is a lower bound for the true one, and a diverging witness
sequence is evidence against boundedness, never a proof either way.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .algebra import ExtendedComplex, is_infinity
from .errors import NumericOverflow
from .expr import Expr, differentiate, eval_ex, eval_grid

_BIG = 1e140  # |f| beyond this switches to the overflow-safe quotient form


def h(w: ExtendedComplex) -> float:
    """Chordal weight |w|/(1+|w|^2); 0 at infinity, maximum 1/2 on |w| = 1."""
    if is_infinity(w):
        return 0.0
    a = abs(complex(w))
    if a > _BIG:
        return 1.0 / a
    return a / (1.0 + a * a)


def _sph_from_values(fv: complex, dv: complex) -> float:
    af = abs(fv)
    ad = abs(dv)
    if af > _BIG:
        return (ad / af) / af
    return ad / (1.0 + af * af)


def sph_deriv(f: Expr, z: complex, deriv: Expr | None = None) -> float:
    """Spherical derivative of f at z.

    At poles and other totalized singularities the chordal-symmetric limit is
    taken along four symmetric nearby points (f# extends continuously there).
    Raises NumericOverflow when both f and f' overflow, so the sample is
    reported rather than silently zeroed.
    """
    if deriv is None:
        deriv = differentiate(f)
    z = complex(z)
    fv, f_over = eval_ex(f, z)
    dv, d_over = eval_ex(deriv, z)
    f_inf, d_inf = is_infinity(fv), is_infinity(dv)
    if not f_inf and not d_inf:
        return _sph_from_values(fv, dv)
    if f_over and d_over:
        raise NumericOverflow(f"f and f' both overflow at {z}")
    if f_inf and not d_inf:
        # chordal identity: (1/f)# with 1/f = 0 and (1/f)' = -f'/f^2 -> 0
        return 0.0
    return _limit_value(f, deriv, z)


def _limit_value(f: Expr, deriv: Expr, z: complex) -> float:
    # mean over symmetric offsets cancels the first-order term in the limit
    for hstep in (1e-6 * (1.0 + abs(z)), 1e-8 * (1.0 + abs(z))):
        vals = []
        for dz in (hstep, -hstep, 1j * hstep, -1j * hstep):
            fv, _ = eval_ex(f, z + dz)
            dv, _ = eval_ex(deriv, z + dz)
            if not is_infinity(fv) and not is_infinity(dv):
                vals.append(_sph_from_values(fv, dv))
        if vals:
            return float(sum(vals) / len(vals))
    raise NumericOverflow(f"no finite neighborhood sample at {z}")


def sph_deriv_grid(f: Expr, zs: np.ndarray, deriv: Expr | None = None) -> np.ndarray:
    """Vectorized f# over an array of points; NaN marks skipped samples.

    Samples where only f overflows contribute 0 through the reciprocal
    identity; samples where both f and f' blow up come back NaN.
    """
    if deriv is None:
        deriv = differentiate(f)
    zs = np.asarray(zs, dtype=complex)
    with np.errstate(all="ignore"):
        fv = eval_grid(f, zs)
        dv = eval_grid(deriv, zs)
        af = np.abs(fv)
        ad = np.abs(dv)
        big = af > _BIG
        safe = np.where(big, af, 1.0)
        res = np.where(big, (ad / safe) / safe, ad / (1.0 + af * af))
        res = np.where(np.isfinite(res), res, np.nan)
    return res


def as_grid_fn(f):
    """Adapt f to a vectorized ``zs -> f# values`` callable.

    Accepts an Expr, an object exposing ``sph_deriv_grid(zs)`` (canonical
    products do), or a raw array-in/array-out callable.
    """
    if isinstance(f, Expr):
        deriv = differentiate(f)
        return lambda zs: sph_deriv_grid(f, zs, deriv)
    grid = getattr(f, "sph_deriv_grid", None)
    if grid is not None:
        return grid
    if callable(f):
        return lambda zs: np.asarray(f(zs), dtype=float)
    raise TypeError(f"cannot take spherical derivatives of {type(f).__name__}")


def as_point_fn(f):
    """Adapt f to a scalar ``z -> f#(z)`` callable."""
    if isinstance(f, Expr):
        deriv = differentiate(f)
        return lambda z: sph_deriv(f, z, deriv)
    pt = getattr(f, "sph_deriv", None)
    if pt is not None:
        return pt
    if callable(f):
        return f
    raise TypeError(f"cannot take spherical derivatives of {type(f).__name__}")


@dataclass(frozen=True)
class SupReport:
    """Result of a budgeted supremum search over a closed disk."""

    radius: float
    samples: int
    max_value: float
    argmax: complex
    refined: bool

    def to_json_obj(self) -> dict:
        return {
            "radius": self.radius,
            "samples": self.samples,
            "max_value": self.max_value,
            "argmax": [self.argmax.real, self.argmax.imag],
            "refined": self.refined,
        }


_REFINE_CELLS = 16
_OFFSETS = np.array(
    [complex(i, j) for j in (-1, 0, 1) for i in (-1, 0, 1)], dtype=complex
)


def sup_search(f, radius: float, budget: int = 100_000) -> SupReport:
    """Deterministic two-phase search for sup of f# over |z| <= radius.

    Phase one spends at least 60% of the budget on a uniform grid over the
    disk; phase two shrinks boxes around the best 16 grid cells, with initial
    box size scaled by 1/(1 + local f#) since f# is the local Lipschitz
    constant of the map into the sphere.  The result is a certified lower
    bound on the supremum, nothing more.
    """
    radius = float(radius)
    if radius <= 0:
        raise ValueError("radius must be positive")
    budget = int(budget)
    if budget < 1000:
        raise ValueError("budget must be at least 1000")
    fn = as_grid_fn(f)

    side = max(8, int(math.sqrt(budget * 0.6 * 4.0 / math.pi)))
    axis = np.linspace(-radius, radius, side)
    spacing = axis[1] - axis[0]
    xx, yy = np.meshgrid(axis, axis)
    zs = (xx + 1j * yy).ravel()
    zs = zs[np.abs(zs) <= radius]
    vals = np.asarray(fn(zs), dtype=float)
    vals = np.where(np.isfinite(vals), vals, -np.inf)
    samples = zs.size
    if not np.any(vals > -np.inf):
        raise NumericOverflow("no finite samples on the coarse grid")

    order = np.argsort(vals)[::-1][:_REFINE_CELLS]
    centers = zs[order].copy()
    best = vals[order].copy()
    half = spacing / (1.0 + np.maximum(best, 0.0))

    remaining = budget - samples
    rounds = max(1, remaining // (len(_OFFSETS) * centers.size))
    for _ in range(rounds):
        cand = centers[:, None] + _OFFSETS[None, :] * half[:, None]
        mags = np.abs(cand)
        outside = mags > radius
        # project escapees back onto the disk boundary
        cand[outside] *= radius / mags[outside]
        cv = np.asarray(fn(cand.ravel()), dtype=float).reshape(cand.shape)
        cv = np.where(np.isfinite(cv), cv, -np.inf)
        samples += cand.size
        row_arg = np.argmax(cv, axis=1)
        row_val = cv[np.arange(cv.shape[0]), row_arg]
        improved = row_val > best
        centers = np.where(improved, cand[np.arange(cand.shape[0]), row_arg], centers)
        best = np.maximum(best, row_val)
        half = np.where(improved, half * 0.618, half * 0.382)

    k = int(np.argmax(best))
    return SupReport(
        radius=radius,
        samples=int(samples),
        max_value=float(best[k]),
        argmax=complex(centers[k]),
        refined=True,
    )


@dataclass(frozen=True)
class WitnessSequence:
    """Points with f# values sorted ascending; monotone means genuine growth."""

    points: tuple[complex, ...]
    values: tuple[float, ...]
    monotone: bool

    def to_json_obj(self) -> dict:
        return {
            "points": [[p.real, p.imag] for p in self.points],
            "values": list(self.values),
            "monotone": self.monotone,
        }


def _climb(fn, z0: complex, steps: int) -> tuple[complex, float]:
    def value(z):
        try:
            v = fn(z)
        except NumericOverflow:
            return -math.inf
        return v if math.isfinite(v) else -math.inf

    z = complex(z0)
    v = value(z)
    step = 0.5
    for _ in range(max(1, int(steps))):
        cands = (z + step, z - step, z + 1j * step, z - 1j * step)
        cv = [value(c) for c in cands]
        k = max(range(4), key=cv.__getitem__)
        if cv[k] > v:
            z, v = cands[k], cv[k]
            step = min(step * 1.3, 2.0)
        else:
            step *= 0.45
            if step < 1e-10:
                break
    return z, v


def witness_search(f, seeds, steps: int = 60) -> WitnessSequence | None:
    """Compass hill-climb from each seed, looking for f# growth across scales.

    Seeds are grouped by modulus (within a factor 1.3); growth means the best
    climbed values of the top three scale groups strictly increase and the
    largest is at least twice the smallest.  Returns None when no growth is
    detected; a monotone sequence is evidence, not proof, of unboundedness.
    """
    fn = as_point_fn(f)
    results = []
    for s in seeds:
        s = complex(s)
        z, v = _climb(fn, s, steps)
        if math.isfinite(v):
            results.append((abs(s), z, v))
    if not results:
        return None

    # scale groups over descending seed modulus
    results.sort(key=lambda t: -t[0])
    groups: list[list[tuple[float, complex, float]]] = []
    for item in results:
        if groups and groups[-1][0][0] <= item[0] * 1.3:
            groups[-1].append(item)
        else:
            groups.append([item])
    if len(groups) < 3:
        return None
    bests = [max(g, key=lambda t: t[2])[2] for g in groups[:3]]
    v_hi, v_mid, v_lo = bests
    if not (v_lo < v_mid < v_hi and v_hi >= 2.0 * v_lo):
        return None

    ordered = sorted(((z, v) for _, z, v in results), key=lambda t: t[1])
    points, values = [], []
    for z, v in ordered:
        if not values or v > values[-1]:
            points.append(z)
            values.append(v)
    return WitnessSequence(points=tuple(points), values=tuple(values), monotone=True)

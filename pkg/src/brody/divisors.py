"""Zero divisors: finite truncations of prescribed zero sets.

A Divisor is a finite multiset of nonzero points sorted by increasing
modulus.  Divisors produced by the ``squares`` and ``geometric`` factories
additionally carry analytic tail sums of the ideal infinite continuation
(sum of 1/a_k, of 1/|a_k| and of 1/|a_k|^2 beyond the truncation), which the
product evaluator uses for tail corrections and honest error bounds.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy.special import polygamma

from .errors import (
    MultiplicityNotOne,
    NotUnitModulus,
    PreconditionFailed,
    ZeroInSupport,
)

GOLDEN_CONJUGATE = 0.6180339887


@dataclass(frozen=True)
class Divisor:
    """Finite divisor: ((point, multiplicity), ...) sorted by |point| ascending."""

    points: tuple[tuple[complex, int], ...]
    tail_sum: complex = 0j
    tail_abs: float = 0.0
    tail_sq: float = 0.0

    def __init__(self, points=(), tail_sum=0j, tail_abs=0.0, tail_sq=0.0):
        cleaned = []
        for a, m in points:
            a = complex(a)
            m = int(m)
            if a == 0:
                raise ZeroInSupport("divisor support contains 0")
            if m < 1:
                raise ValueError(f"multiplicity {m} < 1")
            cleaned.append((a, m))
        cleaned.sort(key=lambda pm: (abs(pm[0]), pm[0].real, pm[0].imag))
        object.__setattr__(self, "points", tuple(cleaned))
        object.__setattr__(self, "tail_sum", complex(tail_sum))
        object.__setattr__(self, "tail_abs", float(tail_abs))
        object.__setattr__(self, "tail_sq", float(tail_sq))

    def __len__(self) -> int:
        return len(self.points)

    @cached_property
    def support(self) -> np.ndarray:
        return np.array([a for a, _ in self.points], dtype=complex)

    @cached_property
    def mults(self) -> np.ndarray:
        return np.array([m for _, m in self.points], dtype=int)

    @cached_property
    def moduli(self) -> np.ndarray:
        return np.abs(self.support)

    @classmethod
    def from_points(cls, points, **tails) -> "Divisor":
        return cls(tuple((complex(a), int(m)) for a, m in points), **tails)

    @classmethod
    def from_csv(cls, path) -> "Divisor":
        rows = []
        with open(path, newline="") as fh:
            reader = csv.DictReader(fh)
            names = set(reader.fieldnames or ())
            if not {"re", "im"} <= names:
                raise ValueError(f"divisor CSV needs header re,im[,mult]; got {sorted(names)}")
            for row in reader:
                rows.append((complex(float(row["re"]), float(row["im"])),
                             int(row.get("mult", 1) or 1)))
        return cls(rows)

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["re", "im", "mult"])
            for a, m in self.points:
                w.writerow([repr(a.real), repr(a.imag), m])


def squares(count: int) -> Divisor:
    """The divisor {k^2 : 1 <= k <= count}, with analytic tails of the full set."""
    count = int(count)
    if count < 1:
        raise ValueError("count must be >= 1")
    pts = tuple((complex(k * k, 0.0), 1) for k in range(1, count + 1))
    # sum_{k>count} k^-2 and k^-4 via polygamma at count+1
    t2 = float(polygamma(1, count + 1))
    t4 = float(polygamma(3, count + 1)) / 6.0
    return Divisor(pts, tail_sum=complex(t2, 0.0), tail_abs=t2, tail_sq=t4)


def geometric(ratio: complex, count: int) -> Divisor:
    """The divisor {ratio^k : 1 <= k <= count} for |ratio| > 1, with tails."""
    ratio = complex(ratio)
    count = int(count)
    if count < 1:
        raise ValueError("count must be >= 1")
    if abs(ratio) <= 1:
        raise ValueError("|ratio| must exceed 1")
    pts = []
    a = 1 + 0j
    for _ in range(count):
        a = a * ratio
        pts.append((a, 1))
    q = abs(ratio)
    tail_sum = ratio ** (-count) / (ratio - 1)
    tail_abs = q ** (-count) / (q - 1)
    tail_sq = q ** (-2 * count) / (q * q - 1)
    return Divisor(tuple(pts), tail_sum=tail_sum, tail_abs=tail_abs, tail_sq=tail_sq)


def counting_N(d: Divisor, r: float) -> float:
    """Integrated counting function: sum of mult * log+(r/|a|)."""
    r = float(r)
    if r <= 0:
        raise ValueError("r must be positive")
    if not len(d):
        return 0.0
    ratios = r / d.moduli
    inside = ratios > 1.0
    if not np.any(inside):
        return 0.0
    return float(np.sum(d.mults[inside] * np.log(ratios[inside])))


def deg_restricted(d: Divisor, r: float) -> int:
    """Total multiplicity strictly inside |z| < r."""
    r = float(r)
    if not len(d):
        return 0
    return int(np.sum(d.mults[d.moduli < r]))


def separation_ratio(d: Divisor) -> float:
    """Minimum consecutive modulus ratio; inf for divisors of fewer than 2 points."""
    if np.any(d.mults > 1):
        raise MultiplicityNotOne("separation is defined for simple divisors")
    if len(d) < 2:
        return math.inf
    return float(np.min(d.moduli[1:] / d.moduli[:-1]))


def direction_accumulation(
    d: Divisor, tail_fraction: float = 0.5, eps: float = 0.3
) -> list[complex]:
    """Cluster directions a/|a| of the outer tail_fraction of the support.

    Greedy circular clustering with angular radius eps: a sorted sweep opens a
    new cluster whenever an angle is more than eps past the cluster anchor,
    then the wrap-around pair is merged.  Returns unit-modulus cluster means.
    """
    if not (0.0 < tail_fraction <= 1.0):
        raise ValueError("tail_fraction must be in (0, 1]")
    if not (0.0 < eps < math.pi / 4):
        raise ValueError("eps must be in (0, pi/4)")
    n = len(d)
    if n == 0:
        return []
    m = max(1, math.ceil(tail_fraction * n))
    tail = d.support[n - m:]
    angles = np.sort(np.mod(np.angle(tail), 2.0 * math.pi))
    clusters: list[list[float]] = []
    anchor = None
    for a in angles:
        if anchor is None or a - anchor > eps:
            clusters.append([float(a)])
            anchor = float(a)
        else:
            clusters[-1].append(float(a))
    if len(clusters) > 1 and (clusters[0][0] + 2.0 * math.pi) - clusters[-1][0] <= eps:
        clusters[-1].extend(a + 2.0 * math.pi for a in clusters[0])
        clusters.pop(0)
    centers = []
    for cl in clusters:
        mean = np.mean(np.exp(1j * np.asarray(cl)))
        centers.append(complex(mean / abs(mean)))
    centers.sort(key=lambda c: math.atan2(c.imag, c.real))
    return centers


def hull_contains_origin(directions) -> bool:
    """True iff 0 is interior to the convex hull of the given unit directions.

    Equivalent to: the largest circular gap between consecutive direction
    angles is strictly below pi.  Antipodal pairs (gap exactly pi) fail.
    """
    dirs = [complex(dv) for dv in directions]
    for dv in dirs:
        if abs(abs(dv) - 1.0) > 1e-9:
            raise NotUnitModulus(f"direction {dv} is not on the unit circle")
    if len(dirs) < 3:
        return False
    ang = np.sort(np.mod(np.angle(np.asarray(dirs)), 2.0 * math.pi))
    gaps = np.diff(ang, append=ang[0] + 2.0 * math.pi)
    return bool(np.max(gaps) < math.pi)


@dataclass(frozen=True)
class DivisorVerdict:
    """Outcome of the separation/direction test for zero-divisor realizability."""

    separation_lambda: float | None
    directions: tuple[complex, ...]
    hull_ok: bool
    non_realizable: bool
    notes: str

    def to_json_obj(self) -> dict:
        return {
            "separation_lambda": self.separation_lambda,
            "directions": [[c.real, c.imag] for c in self.directions],
            "hull_ok": self.hull_ok,
            "non_realizable": self.non_realizable,
            "notes": self.notes,
        }


def theorem_verdict(
    d: Divisor, tail_fraction: float = 0.5, eps: float = 0.3
) -> DivisorVerdict:
    """Check the two hypotheses that forbid realization as a bounded-f# zero set.

    non_realizable is exactly (separation ratio > 1) and (origin interior to
    the hull of accumulation directions); neither condition alone suffices.
    """
    if len(d) == 0:
        return DivisorVerdict(None, (), False, False, "empty divisor")
    sep = separation_ratio(d)
    dirs = direction_accumulation(d, tail_fraction, eps)
    hull = hull_contains_origin(dirs)
    sep_ok = sep > 1.0
    notes = (
        f"min consecutive modulus ratio {sep:.6g}; "
        f"{len(dirs)} accumulation directions; "
        f"origin {'interior' if hull else 'not interior'} to their hull"
    )
    return DivisorVerdict(
        separation_lambda=sep,
        directions=tuple(dirs),
        hull_ok=hull,
        non_realizable=bool(sep_ok and hull),
        notes=notes,
    )


@dataclass(frozen=True)
class GrowthBound:
    """Increasing growth bound rho on [1, infinity).

    Kinds: ``power-log-squared`` is c*(log t)^2, ``power`` is c*t^alpha, and
    ``table`` interpolates (and extrapolates) linearly in (log t, rho).
    """

    kind: str
    params: tuple[float, ...] = ()
    table: tuple[tuple[float, float], ...] = field(default=())

    @classmethod
    def power_log_squared(cls, c: float = 1.0) -> "GrowthBound":
        if c <= 0:
            raise ValueError("c must be positive")
        return cls(kind="power-log-squared", params=(float(c),))

    @classmethod
    def power(cls, c: float = 1.0, alpha: float = 0.5) -> "GrowthBound":
        if c <= 0 or alpha <= 0:
            raise ValueError("c and alpha must be positive")
        return cls(kind="power", params=(float(c), float(alpha)))

    @classmethod
    def from_table(cls, pairs) -> "GrowthBound":
        tab = tuple((float(t), float(v)) for t, v in pairs)
        if len(tab) < 2:
            raise ValueError("table needs at least 2 rows")
        for (t0, v0), (t1, v1) in zip(tab, tab[1:]):
            if not (t1 > t0 and v1 > v0):
                raise ValueError("table must be strictly increasing in t and rho")
        if tab[0][0] <= 0:
            raise ValueError("table abscissae must be positive")
        return cls(kind="table", table=tab)

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        if self.kind == "power-log-squared":
            out = self.params[0] * np.log(t) ** 2
        elif self.kind == "power":
            out = self.params[0] * np.power(t, self.params[1])
        elif self.kind == "table":
            lts = np.log([row[0] for row in self.table])
            vs = np.array([row[1] for row in self.table])
            lt = np.log(t)
            out = np.interp(lt, lts, vs)
            s_lo = (vs[1] - vs[0]) / (lts[1] - lts[0])
            s_hi = (vs[-1] - vs[-2]) / (lts[-1] - lts[-2])
            out = np.where(lt < lts[0], vs[0] + (lt - lts[0]) * s_lo, out)
            out = np.where(lt > lts[-1], vs[-1] + (lt - lts[-1]) * s_hi, out)
        else:
            raise ValueError(f"unknown growth-bound kind {self.kind!r}")
        return float(out) if out.ndim == 0 else out


def construct_slow(rho: GrowthBound, count: int, horizon: float = 1e12) -> Divisor:
    """Build a sparse divisor whose canonical product stays below rho.

    Requires rho(t)/log(t) to grow across the sampled decades (the sampled
    stand-in for liminf rho(t)/log t = infinity); fails with
    PreconditionFailed otherwise.  Moduli grow at least 4x per point and are
    pushed out far enough that k*log(4r) <= rho(r) holds on each band
    [2|c_{k-1}|, 2|c_k|]; arguments follow the golden-angle sequence so the
    accumulation directions are dense on the circle.
    """
    count = int(count)
    if not (1 <= count <= 1000):
        raise ValueError("count must be in [1, 1000]")
    horizon = float(horizon)
    if horizon < 1e4:
        raise ValueError("horizon must be at least 1e4")

    def ratio(t: float) -> float:
        return float(rho(t)) / math.log(t)

    if not ratio(horizon) > 1.1 * ratio(horizon / 100.0):
        raise PreconditionFailed(
            "rho(t)/log t does not grow across the sampled decades "
            f"({ratio(horizon / 100.0):.6g} at horizon/100 vs {ratio(horizon):.6g} at horizon)"
        )

    # R_k scan: smallest grid point past which k*log(4r) <= rho(r) holds for
    # every larger grid point.  The window extends beyond the horizon until
    # every R_k exists; bands for large k live far outside the horizon.
    window = horizon
    need = list(range(1, count + 1))
    r_thresholds: dict[int, float] = {}
    while True:
        grid = np.geomspace(1.0, window, 4096)
        vals = np.asarray(rho(grid), dtype=float)
        log4r = np.log(4.0 * grid)
        missing = False
        for k in need:
            bad = np.where(k * log4r > vals)[0]
            start = int(bad[-1]) + 1 if bad.size else 0
            if start >= grid.size:
                missing = True
                break
            r_thresholds[k] = float(grid[start])
        if not missing:
            break
        window *= 100.0
        if window > 1e60:
            raise PreconditionFailed(
                f"k*log(4r) <= rho(r) has no onset below 1e60 for k={k}"
            )

    mods = []
    m = max(2.0, 2.0 * r_thresholds[1])
    if count >= 2:
        m = max(m, r_thresholds[2] / 2.0)
    mods.append(m)
    for j in range(2, count + 1):
        m = 4.0 * mods[-1]
        if j < count:
            m = max(m, r_thresholds[j + 1] / 2.0)
        mods.append(m)

    pts = []
    for k, mk in enumerate(mods, start=1):
        theta = 2.0 * math.pi * ((k * GOLDEN_CONJUGATE) % 1.0)
        pts.append((mk * complex(math.cos(theta), math.sin(theta)), 1))
    return Divisor(tuple(pts))

import cmath
import math

import numpy as np
import pytest

from brody.divisors import Divisor, geometric, squares
from brody.errors import (
    MultiplicityNotOne,
    SeparationViolated,
    TolUnreachable,
)
from brody.products import (
    CanonicalProduct,
    claim1_check,
    claim1_constant,
    claim1_min_ratio,
    claim2_minorant,
    eval_product,
    product_derivative_at_support,
)


def sinc_sqrt(z: complex) -> complex:
    """sin(pi sqrt(z)) / (pi sqrt(z)), the canonical product over {k^2}."""
    if z == 0:
        return 1.0 + 0j
    w = cmath.sqrt(z) * math.pi
    return cmath.sin(w) / w


def test_eval_product_squares_known_points(squares_10k):
    e = eval_product(squares_10k, 0.25, tol=1e-6)
    assert e.value == pytest.approx(2 / math.pi, rel=1e-6)
    assert e.tail_bound <= 1e-6
    assert 0 < e.terms_used < 100

    e = eval_product(squares_10k, -1.0, tol=1e-6)
    assert e.value == pytest.approx(math.sinh(math.pi) / math.pi, rel=1e-6)


def test_eval_product_squares_random_points(squares_10k):
    rng = np.random.default_rng(0)
    checked = 0
    while checked < 100:
        z = complex(*rng.uniform(-50, 50, size=2))
        if min(abs(z - a) for a in squares_10k.support[:10]) < 0.5:
            continue
        if abs(z) > 50:
            continue
        e = eval_product(squares_10k, z, tol=1e-6)
        assert e.value == pytest.approx(sinc_sqrt(z), rel=1e-4)
        checked += 1


def test_eval_product_exact_zero_shortcut(squares_10k):
    e = eval_product(squares_10k, 9.0, tol=1e-9)
    assert e.value == 0
    assert e.tail_bound == 0.0
    assert e.terms_used == 3  # stops at the factor that vanished


def test_eval_product_at_origin(squares_10k):
    e = eval_product(squares_10k, 0.0, tol=1e-12)
    assert e.value == 1.0 + 0j
    assert e.terms_used == 0


def test_eval_product_tail_bound_is_honest():
    # the reported bound must dominate the gap to a much longer truncation
    small, big = squares(100), squares(10_000)
    rng = np.random.default_rng(1)
    for _ in range(25):
        z = complex(*rng.uniform(-30, 30, size=2))
        if min(abs(z - a) for a in small.support[:6]) < 0.5:
            continue
        tol = 1e-3
        e = eval_product(small, z, tol=tol)
        ref = eval_product(big, z, tol=1e-8)
        rel_gap = abs(e.value - ref.value) / abs(ref.value)
        assert rel_gap <= 2 * e.tail_bound + 1e-9


def test_eval_product_tol_unreachable():
    d = squares(30)  # continuation tail is ~1/30, far above the tolerance
    with pytest.raises(TolUnreachable) as exc:
        eval_product(d, 10.0 + 3j, tol=1e-9)
    err = exc.value
    assert err.value is not None
    assert err.tail_bound > 1e-9


def test_eval_product_tol_validation(squares_10k):
    with pytest.raises(ValueError):
        eval_product(squares_10k, 1j, tol=0.0)
    with pytest.raises(ValueError):
        eval_product(squares_10k, 1j, tol=0.5)


def test_eval_product_skip(squares_10k):
    # skipping the n-th factor evaluates the deflated product
    z = 2.0 + 2j
    full = eval_product(squares_10k, z, tol=1e-8)
    skip0 = eval_product(squares_10k, z, tol=1e-8, skip=0)
    assert skip0.value * (1 - z / 1.0) == pytest.approx(full.value, rel=1e-7)


def test_derivative_at_support_squares(squares_10k):
    # |F'(k^2)| = 1/(2 k^2) with sign (-1)^k
    for k in (1, 3, 10, 20):
        e = product_derivative_at_support(squares_10k, k - 1, tol=1e-7)
        assert abs(e.value) == pytest.approx(1 / (2 * k * k), rel=1e-6)
        assert math.copysign(1, e.value.real) == (-1) ** k
        assert abs(e.value.imag) <= 1e-12 * abs(e.value)


def test_derivative_at_support_matches_finite_difference():
    d = geometric(3.0, 20)
    P = CanonicalProduct(d)
    for n in (0, 2, 5):
        a = d.support[n]
        h = 1e-6 * abs(a)
        fd = (P(a + h) - P(a - h)) / (2 * h)
        e = product_derivative_at_support(d, n, tol=1e-9)
        assert e.value == pytest.approx(fd, rel=1e-5)


def test_derivative_at_support_rejects_multiplicity():
    d = Divisor(((1 + 0j, 2), (4 + 0j, 1)))
    with pytest.raises(MultiplicityNotOne):
        product_derivative_at_support(d, 0)


def test_claim1_constant_values():
    assert claim1_constant(2.0) == pytest.approx(0.12989807210266752, rel=1e-10)
    assert claim1_constant(4.0) == pytest.approx(0.41942244179536176, rel=1e-10)
    assert claim1_constant(10.0) == pytest.approx(0.6598236444704811, rel=1e-10)
    # lambda = 4 clears 1/3, the threshold used by the minorant argument
    assert claim1_constant(4.0) > 1 / 3


def test_claim1_check_geometric():
    for lam in (2.0, 4.0, 10.0):
        d = geometric(lam, 30)
        assert claim1_check(d, lam, trials=200, seed=0)
        assert claim1_min_ratio(d, lam, trials=200, seed=0) >= 1.0


def test_claim1_check_rejects_unseparated():
    with pytest.raises(SeparationViolated):
        claim1_check(squares(50), 2.0)


def test_claim2_minorant_integers():
    want = {0: 1.0, 1: 7.0, 2: 217.0, 3: 27559.0, 4: 14082649.0}
    for s, w in want.items():
        assert claim2_minorant(4.0, s) == pytest.approx(w, rel=1e-12)
    # s = 4 is the first stage clearing 10^6
    assert claim2_minorant(4.0, 3) < 1e6 < claim2_minorant(4.0, 4)


def test_canonical_product_matches_eval_product(squares_10k):
    P = CanonicalProduct(squares_10k)
    zs = np.array([0.25 + 0j, -1.0 + 0j, 3 + 4j, 30 - 20j])
    vals = P.eval_many(zs)
    for z, v in zip(zs, vals):
        ref = eval_product(squares_10k, complex(z), tol=1e-9)
        assert v == pytest.approx(ref.value, rel=1e-6)


def test_canonical_product_log_abs(squares_10k):
    P = CanonicalProduct(squares_10k)
    zs = np.array([2.0 + 2j, -5.0 + 1j])
    la = P.log_abs_many(zs)
    for z, l in zip(zs, la):
        assert l == pytest.approx(math.log(abs(sinc_sqrt(complex(z)))), rel=1e-4)
    assert P.log_abs_many(np.array([4.0 + 0j]))[0] == -math.inf


def test_canonical_product_log_derivative(squares_10k):
    # F'/F = sum 1/(z - k^2) by absolute convergence
    P = CanonicalProduct(squares_10k)
    z = 2.0 + 1j
    want = complex(np.sum(1 / (z - squares_10k.support))) - squares_10k.tail_sum
    got = P.log_deriv_many(np.array([z]))[0]
    assert got == pytest.approx(want, rel=1e-12)


def test_sph_deriv_at_origin_is_pi2_over_12(squares_10k):
    # F(0)=1, F'(0) = -sum 1/k^2 = -pi^2/6, so f# = (pi^2/6)/2
    P = CanonicalProduct(squares_10k)
    assert P.sph_deriv(0.0) == pytest.approx(math.pi**2 / 12, rel=1e-9)


def test_sph_deriv_at_support(squares_10k):
    # at a simple zero: f# = |F'(a)| exactly
    P = CanonicalProduct(squares_10k)
    v = P.sph_deriv(4.0)
    assert v == pytest.approx(1 / 8, rel=1e-6)
    # at a multiple zero both F and F' vanish
    dd = Divisor(((1 + 0j, 2), (4 + 0j, 1)))
    assert CanonicalProduct(dd).sph_deriv(1.0) == 0.0


def test_sph_deriv_grid_nan_only_on_support(squares_10k):
    P = CanonicalProduct(squares_10k)
    zs = np.array([1.0 + 0j, 2.0 + 0j, 4.0 + 0j, 2 + 2j])
    out = P.sph_deriv_grid(zs)
    assert np.isnan(out[0]) and np.isnan(out[2])
    assert np.isfinite(out[1]) and np.isfinite(out[3])


def test_sph_deriv_grid_survives_huge_moduli():
    # log-space evaluation: e^log|F| overflows but f# must come back finite
    d = geometric(4.0, 40)
    P = CanonicalProduct(d)
    zs = np.array([1e9 + 1e9j, -3e8 + 0j])
    out = P.sph_deriv_grid(zs)
    assert np.all(np.isfinite(out))
    assert np.all(out >= 0)


def test_prefactor_and_flip_signs(slow_divisor_30):
    d = slow_divisor_30
    plain = CanonicalProduct(d)
    literal = CanonicalProduct(d, prefactor=3.0, flip_signs=True)
    # flipping every factor sign changes the value by (-1)^count
    z = 5.0 + 2j
    want = 3.0 * plain(z) * (-1) ** len(d)
    assert literal(z) == pytest.approx(want, rel=1e-10)
    assert abs(literal(0.0)) == pytest.approx(3.0, rel=1e-12)
    with pytest.raises(ValueError):
        CanonicalProduct(d, prefactor=0.0)

import math

import pytest
from hypothesis import given, settings, strategies as st

from brody.algebra import (
    INFINITY,
    Polynomial,
    RationalFunction,
    eval_rational,
    is_infinity,
    log_derivative,
    value_at_infinity,
)
from brody.errors import ZeroDenominator


def poly(*cs) -> Polynomial:
    return Polynomial(tuple(complex(c) for c in cs))


def test_degree_and_zero():
    assert poly(0).degree == -1
    assert poly(0).is_zero
    assert poly(3).degree == 0
    assert poly(0, 0, 1).degree == 2
    # trailing zero coefficients do not inflate the degree
    assert poly(1, 2, 0, 0).degree == 1


def test_arithmetic_matches_pointwise():
    p = poly(1, 2, 1)  # (z+1)^2
    q = poly(0, 1)     # z
    for z in (0.3 + 0.4j, -2.0 + 0j, 1j):
        pv = (z + 1) ** 2
        qv = z
        one = poly(1)
        assert eval_rational(RationalFunction(p + q, one), z) == pytest.approx(pv + qv)
        assert eval_rational(RationalFunction(p * q, one), z) == pytest.approx(pv * qv)


def test_derivative():
    p = poly(5, 0, 3, 2)  # 5 + 3z^2 + 2z^3
    assert p.derivative().coeffs == (0j, 6 + 0j, 6 + 0j)
    assert poly(7).derivative().is_zero


def test_eval_rational_finite_pole_and_indeterminate():
    r = RationalFunction(poly(1, 2, 1), poly(0, 1))  # (z+1)^2 / z
    assert eval_rational(r, 1.0) == pytest.approx(4.0)
    assert is_infinity(eval_rational(r, 0.0))
    # common zero is resolved by deflation, not reported as indeterminate
    s = RationalFunction(poly(-1, 1), poly(-1, 1))
    assert eval_rational(s, 1.0) == pytest.approx(1.0)


def test_eval_at_infinity():
    z = poly(0, 1)
    one = poly(1)
    assert is_infinity(value_at_infinity(RationalFunction(z, one)))
    assert value_at_infinity(RationalFunction(one, z)) == 0
    r = RationalFunction(poly(3, 2), poly(7, 1))  # (2z+3)/(z+7) -> 2
    assert value_at_infinity(r) == pytest.approx(2.0)


def test_zero_denominator_rejected():
    with pytest.raises(ZeroDenominator):
        RationalFunction(poly(1), poly(0))


def test_log_derivative():
    # d/dz log((z+1)^2 / z) = 2/(z+1) - 1/z
    r = RationalFunction(poly(1, 2, 1), poly(0, 1))
    ld = log_derivative(r)
    for z in (2.0 + 0j, 1j, -3.0 + 0.5j):
        want = 2 / (z + 1) - 1 / z
        assert eval_rational(ld, z) == pytest.approx(want)


def test_json_round_trip():
    r = RationalFunction(poly(1 + 2j, 0, -3), poly(4, 1j))
    obj = r.to_json_obj()
    assert all(len(pair) == 2 for pair in obj["num"] + obj["den"])
    assert obj["den"][-1] == [1.0, 0.0]  # canonical monic denominator
    assert RationalFunction.from_json_obj(obj) == r
    # evaluation is unchanged by the canonicalization
    for z in (0.5 + 0j, 2j):
        want = (1 + 2j - 3 * z * z) / (4 + 1j * z)
        assert eval_rational(r, z) == pytest.approx(want)


coeff = st.complex_numbers(
    min_magnitude=0, max_magnitude=10, allow_nan=False, allow_infinity=False
)
polys = st.lists(coeff, min_size=1, max_size=5).map(lambda cs: Polynomial(tuple(cs)))


@settings(max_examples=150, derandomize=True)
@given(polys, polys, st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False))
def test_ring_laws_pointwise(p, q, z):
    one = poly(1)

    def ev(poly_):
        return eval_rational(RationalFunction(poly_, one), z)

    sum_v = ev(p + q)
    prod_v = ev(p * q)
    pv, qv = ev(p), ev(q)
    assert sum_v == pytest.approx(pv + qv, rel=1e-9, abs=1e-9)
    scale = max(1.0, abs(pv) * abs(qv))
    assert abs(prod_v - pv * qv) <= 1e-9 * scale


@settings(max_examples=150, derandomize=True)
@given(polys, polys)
def test_product_rule(p, q):
    lhs = (p * q).derivative()
    rhs = p.derivative() * q + p * q.derivative()
    n = max(len(lhs.coeffs), len(rhs.coeffs))
    lc = lhs.coeffs + (0j,) * (n - len(lhs.coeffs))
    rc = rhs.coeffs + (0j,) * (n - len(rhs.coeffs))
    assert all(abs(a - b) <= 1e-9 * max(1.0, abs(a)) for a, b in zip(lc, rc))


def test_infinity_is_not_a_complex_number():
    assert is_infinity(INFINITY)
    assert not is_infinity(1e300)
    assert not is_infinity(complex(math.inf, 0))  # only the sentinel qualifies

import math

import numpy as np
import pytest

from brody.divisors import (
    Divisor,
    GrowthBound,
    construct_slow,
    counting_N,
    deg_restricted,
    direction_accumulation,
    geometric,
    hull_contains_origin,
    separation_ratio,
    squares,
    theorem_verdict,
)
from brody.errors import (
    MultiplicityNotOne,
    NotUnitModulus,
    PreconditionFailed,
    ZeroInSupport,
)


def test_divisor_sorts_and_coerces():
    d = Divisor(((4 + 0j, 1), (1 + 0j, 2), (2j, 1)))
    assert d.support.tolist() == [1 + 0j, 2j, 4 + 0j]
    assert d.mults.tolist() == [2, 1, 1]
    assert d.moduli.tolist() == [1.0, 2.0, 4.0]
    assert len(d) == 3


def test_divisor_sort_breaks_modulus_ties_deterministically():
    a = Divisor(((1j, 1), (1 + 0j, 1), (-1 + 0j, 1)))
    b = Divisor(((-1 + 0j, 1), (1j, 1), (1 + 0j, 1)))
    assert a.support.tolist() == b.support.tolist()


def test_divisor_rejects_invalid():
    with pytest.raises(ZeroInSupport):
        Divisor(((0j, 1), (1 + 0j, 1)))
    with pytest.raises(ValueError):
        Divisor(((1 + 0j, 0),))
    with pytest.raises(ValueError):
        Divisor(((1 + 0j, -2),))


def test_csv_round_trip(tmp_path):
    d = Divisor(((1.5 + 2.25j, 1), (-3 + 0j, 2)), tail_sum=0.1 + 0j, tail_abs=0.2, tail_sq=0.05)
    path = tmp_path / "d.csv"
    d.to_csv(path)
    back = Divisor.from_csv(path)
    assert back.support.tolist() == d.support.tolist()
    assert back.mults.tolist() == d.mults.tolist()
    # analytic tail fields are not stored in the CSV
    assert back.tail_abs == 0.0


def test_csv_header_validation(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("x,y\n1,2\n")
    with pytest.raises(ValueError):
        Divisor.from_csv(path)


def test_squares_counting_function():
    d = squares(100)
    # N(10) = sum over k^2 <= 10 of log(10/k^2)
    want = math.log(10) + math.log(10 / 4) + math.log(10 / 9)
    assert counting_N(d, 10.0) == pytest.approx(want, rel=1e-12)
    assert counting_N(d, 10.0) == pytest.approx(3.3242363405260273, rel=1e-12)
    assert counting_N(d, 0.5) == 0.0
    assert deg_restricted(d, 9.0) == 2  # strict inequality at the boundary
    assert deg_restricted(d, 9.5) == 3


def test_squares_tails_match_series():
    d = squares(1000)
    # full series: sum 1/k^2 = pi^2/6, sum 1/k^4 = pi^4/90
    assert d.tail_sum.real + sum(1 / k**2 for k in range(1, 1001)) == pytest.approx(
        math.pi**2 / 6, rel=1e-12
    )
    assert d.tail_sq + sum(1 / k**4 for k in range(1, 1001)) == pytest.approx(
        math.pi**4 / 90, rel=1e-12
    )
    assert d.tail_abs == pytest.approx(d.tail_sum.real)


def test_geometric_tails_closed_form():
    lam = 3.0
    d = geometric(lam, 20)
    # continuation lam^21, lam^22, ...: sum of 1/|a| = lam^-21 / (1 - 1/lam)
    want_abs = lam**-21 / (1 - 1 / lam)
    assert d.tail_abs == pytest.approx(want_abs, rel=1e-12)
    assert d.tail_sq == pytest.approx(lam**-42 / (1 - lam**-2), rel=1e-12)


def test_separation_ratio():
    assert separation_ratio(geometric(4.0, 10)) == pytest.approx(4.0)
    assert separation_ratio(squares(100)) == pytest.approx((100 / 99) ** 2)
    assert math.isinf(separation_ratio(Divisor(((5 + 0j, 1),))))
    with pytest.raises(MultiplicityNotOne):
        separation_ratio(Divisor(((1 + 0j, 2), (4 + 0j, 1))))


def test_direction_accumulation_single_ray():
    d = geometric(4.0, 40)
    dirs = direction_accumulation(d)
    assert len(dirs) == 1
    assert dirs[0] == pytest.approx(1 + 0j)


def test_direction_accumulation_four_rays():
    d = geometric(4j, 41)
    dirs = direction_accumulation(d)
    assert len(dirs) == 4
    for w in dirs:
        assert abs(w) == pytest.approx(1.0)
        assert min(abs(w - t) for t in (1, 1j, -1, -1j)) < 1e-9


def test_direction_accumulation_tail_fraction():
    pts = [(4.0**k + 0j, 1) for k in range(1, 21)] + [((4.0**k) * 1j, 1) for k in range(21, 41)]
    d = Divisor(tuple(pts))
    # the late half points straight up; the early half must be ignored
    dirs = direction_accumulation(d, tail_fraction=0.5)
    assert len(dirs) == 1
    assert dirs[0] == pytest.approx(1j)


def test_direction_accumulation_validates_eps():
    d = geometric(4.0, 10)
    with pytest.raises(ValueError):
        direction_accumulation(d, eps=0.0)
    with pytest.raises(ValueError):
        direction_accumulation(d, eps=1.0)


def test_hull_contains_origin():
    assert hull_contains_origin([1, 1j, -1, -1j])
    assert hull_contains_origin([1, np.exp(2j * math.pi / 3), np.exp(4j * math.pi / 3)])
    assert not hull_contains_origin([1, 1j])          # fewer than 3 directions
    assert not hull_contains_origin([1, 1j, -1])      # gap of exactly pi
    assert not hull_contains_origin([1, np.exp(0.1j), np.exp(0.2j), np.exp(0.3j)])
    with pytest.raises(NotUnitModulus):
        hull_contains_origin([2 + 0j, 1j, -1 + 0j])


def test_theorem_verdict_cases():
    v = theorem_verdict(geometric(4j, 41))
    assert v.non_realizable and v.hull_ok
    assert v.separation_lambda == pytest.approx(4.0)

    v = theorem_verdict(geometric(4.0, 40))  # separated but one direction
    assert not v.non_realizable and not v.hull_ok

    v = theorem_verdict(squares(100))  # omnidirectional failure: ratio -> 1
    assert not v.non_realizable
    assert v.separation_lambda < 1.1

    obj = theorem_verdict(geometric(4j, 41)).to_json_obj()
    assert obj["non_realizable"] is True
    assert len(obj["directions"]) == 4


def test_growth_bound_kinds():
    g = GrowthBound.power_log_squared(2.0)
    assert g(math.e) == pytest.approx(2.0)
    p = GrowthBound.power(3.0, 0.5)
    assert p(16.0) == pytest.approx(12.0)
    t = GrowthBound.from_table([(1.0, 0.0), (10.0, 5.0), (100.0, 20.0)])
    assert t(10.0) == pytest.approx(5.0)
    # linear interpolation in (log t, rho)
    assert t(math.sqrt(10) * 10) == pytest.approx(12.5)
    # linear extrapolation beyond the last knot
    assert t(1000.0) == pytest.approx(35.0)
    arr = g(np.array([math.e, math.e**2]))
    assert arr == pytest.approx([2.0, 8.0])


def test_growth_bound_table_validation():
    with pytest.raises(ValueError):
        GrowthBound.from_table([(10.0, 5.0), (1.0, 0.0)])
    with pytest.raises(ValueError):
        GrowthBound.from_table([(1.0, 0.0)])


def test_construct_slow_invariants():
    d = construct_slow(GrowthBound.power_log_squared(1.0), 30, horizon=1e12)
    assert len(d) == 30
    assert all(m == 1 for m in d.mults)
    # floating-point |m * e^(i theta)| can land a hair under the exact ratio
    assert separation_ratio(d) >= 4.0 - 1e-9
    assert d.moduli[0] == pytest.approx(11.942585844874761, rel=1e-12)
    v = theorem_verdict(d)
    assert v.non_realizable and v.hull_ok


def test_construct_slow_respects_growth_budget():
    rho = GrowthBound.power_log_squared(1.0)
    d = construct_slow(rho, 20, horizon=1e12)
    # the k-th modulus must sit beyond the onset of k log(4r) <= rho(r)
    for k in range(1, 21):
        r = d.moduli[k - 1]
        assert k * math.log(4 * r) <= rho(r) * (1 + 1e-9)


def test_construct_slow_golden_directions_cover_the_circle():
    d = construct_slow(GrowthBound.power(1.0, 0.5), 200, horizon=1e12)
    dirs = direction_accumulation(d, eps=0.2)
    assert len(dirs) >= 20
    assert theorem_verdict(d).non_realizable


def test_construct_slow_rejects_sublinear_budget():
    # rho = 2 log t admits no divisor: k log(4r) outgrows it for every k > 2
    rho = GrowthBound.from_table([(t, 2 * math.log(t)) for t in np.geomspace(1.5, 1e12, 40)])
    with pytest.raises(PreconditionFailed):
        construct_slow(rho, 5, horizon=1e12)


def test_construct_slow_scan_window_is_bounded():
    # (log t)^2 onsets grow like e^k; large counts overrun the search cap
    with pytest.raises(PreconditionFailed):
        construct_slow(GrowthBound.power_log_squared(1.0), 200, horizon=1e12)

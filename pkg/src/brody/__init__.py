"""Computational toolkit for Brody curves: entire and meromorphic functions
with bounded spherical derivative.

Modules:
    algebra    polynomials, rational functions, the point at infinity
    expr       a tiny expression language (z, exp, arithmetic) with exact
               differentiation and totalized evaluation
    spherical  spherical derivatives, sup search, divergence witnesses
    classify   exact Brody/NotBrody deciders for the known families
    divisors   zero divisors, growth bounds, non-realizability verdicts
    products   canonical products with tail-controlled evaluation
    nevanlinna proximity/counting/characteristic and order estimates
"""

from .algebra import (
    INFINITY,
    Polynomial,
    RationalFunction,
    is_infinity,
    value_at_infinity,
)
from .classify import (
    BrodyVerdict,
    TwoExpParams,
    classify_exp_rational,
    classify_two_exponentials,
    log_derivative_brody_rule,
    preserves_brody_product,
    rational_sphere_lipschitz,
    two_exp_bound,
    two_exp_slope,
    two_exp_zero,
)
from .divisors import (
    Divisor,
    DivisorVerdict,
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
from .expr import Expr, differentiate, eval_at, eval_grid, parse, unparse
from .nevanlinna import (
    NevanlinnaReport,
    OrderEstimate,
    characteristic,
    counting,
    order_estimate,
    proximity,
)
from .products import (
    CanonicalProduct,
    ProductEval,
    claim1_check,
    claim1_constant,
    claim1_min_ratio,
    claim2_minorant,
    eval_product,
    product_derivative_at_support,
)
from .spherical import (
    SupReport,
    WitnessSequence,
    h,
    sph_deriv,
    sph_deriv_grid,
    sup_search,
    witness_search,
)

__version__ = "0.1.0"

__all__ = [
    "INFINITY",
    "Polynomial",
    "RationalFunction",
    "is_infinity",
    "value_at_infinity",
    "BrodyVerdict",
    "TwoExpParams",
    "classify_exp_rational",
    "classify_two_exponentials",
    "log_derivative_brody_rule",
    "preserves_brody_product",
    "rational_sphere_lipschitz",
    "two_exp_bound",
    "two_exp_slope",
    "two_exp_zero",
    "Divisor",
    "DivisorVerdict",
    "GrowthBound",
    "construct_slow",
    "counting_N",
    "deg_restricted",
    "direction_accumulation",
    "geometric",
    "hull_contains_origin",
    "separation_ratio",
    "squares",
    "theorem_verdict",
    "Expr",
    "differentiate",
    "eval_at",
    "eval_grid",
    "parse",
    "unparse",
    "NevanlinnaReport",
    "OrderEstimate",
    "characteristic",
    "counting",
    "order_estimate",
    "proximity",
    "CanonicalProduct",
    "ProductEval",
    "claim1_check",
    "claim1_constant",
    "claim1_min_ratio",
    "claim2_minorant",
    "eval_product",
    "product_derivative_at_support",
    "SupReport",
    "WitnessSequence",
    "h",
    "sph_deriv",
    "sph_deriv_grid",
    "sup_search",
    "witness_search",
]

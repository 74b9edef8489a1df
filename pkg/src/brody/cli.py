"""Command-line interface: every operation as a subcommand with JSON output.

Exit codes: 0 success, 2 argument/validation problems, 3 a library error
(reported as {"error": <stable name>, "message": ...}).  Identical
invocations produce byte-identical output; the only randomness sources take
their seed from --seed (default 0).
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import re
import sys

import numpy as np

from . import classify, divisors, nevanlinna, products, spherical
from .algebra import RationalFunction, is_infinity, value_at_infinity
from .errors import Error, UnknownExperiment
from .expr import eval_at
from .expr import parse as parse_expr

_I_SUFFIX = re.compile(r"(?<![0-9j.])j")


def parse_complex(text: str) -> complex:
    """Accepts 1+2i, -0.5i, 3, i, 2-i; the imaginary unit is written i."""
    s = text.strip().replace(" ", "").replace("i", "j")
    s = _I_SUFFIX.sub("1j", s)
    try:
        return complex(s)
    except ValueError:
        raise ValueError(f"cannot parse complex number {text!r}") from None


def _fmt_c(v) -> list | None:
    if v is None:
        return None
    if is_infinity(v):
        return ["inf", "inf"]
    v = complex(v)
    return [v.real, v.imag]


def parse_rho(text: str) -> divisors.GrowthBound:
    """logsq:C | power:C,ALPHA | table:FILE.csv (rows t,rho)."""
    kind, _, rest = text.partition(":")
    if kind == "logsq":
        return divisors.GrowthBound.power_log_squared(float(rest or "1"))
    if kind == "power":
        c, _, alpha = rest.partition(",")
        return divisors.GrowthBound.power(float(c or "1"), float(alpha or "0.5"))
    if kind == "table":
        with open(rest, newline="") as fh:
            rows = [(float(r[0]), float(r[1])) for r in csv.reader(fh)
                    if r and not r[0].lstrip().startswith("t")]
        return divisors.GrowthBound.from_table(rows)
    raise ValueError(f"unknown growth bound {text!r}; use logsq:, power:, table:")


def _load_seeds(source: str) -> list[complex]:
    if os.path.exists(source):
        out = []
        with open(source, newline="") as fh:
            for row in csv.DictReader(fh):
                out.append(complex(float(row["re"]), float(row["im"])))
        return out
    return [parse_complex(tok) for tok in source.split(",") if tok.strip()]


def _emit(obj, args) -> None:
    text = json.dumps(obj, sort_keys=True, indent=2) + "\n"
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _rational(text: str) -> RationalFunction:
    return RationalFunction.from_json_obj(json.loads(text))


# --- subcommand handlers ------------------------------------------------------

def _cmd_eval(args) -> dict:
    e = parse_expr(args.expr)
    v = eval_at(e, parse_complex(args.z))
    return {"value": _fmt_c(v)}


def _cmd_sup(args) -> dict:
    if args.expr:
        f = parse_expr(args.expr)
    else:
        f = products.CanonicalProduct(divisors.Divisor.from_csv(args.divisor))
    report = spherical.sup_search(f, args.radius, budget=args.budget)
    return report.to_json_obj()


def _cmd_witness(args) -> dict:
    f = parse_expr(args.expr)
    seeds = _load_seeds(args.seeds)
    w = spherical.witness_search(f, seeds, steps=args.steps)
    return {"witness": None if w is None else w.to_json_obj()}


def _cmd_classify_exp_rational(args) -> dict:
    return classify.classify_exp_rational(_rational(args.R), _rational(args.Q)).to_json_obj()


def _cmd_classify_two_exp(args) -> dict:
    lam = parse_complex(getattr(args, "lambda"))
    return classify.classify_two_exponentials(lam).to_json_obj()


def _cmd_classify_product(args) -> dict:
    r = _rational(args.R)
    keeps = classify.preserves_brody_product(r)
    v = value_at_infinity(r)
    return {
        "preserves_brody": keeps,
        "R_at_infinity": _fmt_c(v),
        "reason": (
            "R stays finite and nonzero at infinity"
            if keeps
            else "R(infinity) is 0 or infinity; multiplication can break Brody"
        ),
    }


def _cmd_product_eval(args) -> dict:
    d = divisors.Divisor.from_csv(args.divisor)
    res = products.eval_product(d, parse_complex(args.z), tol=args.tol)
    return res.to_json_obj()


def _cmd_product_fprime(args) -> dict:
    d = divisors.Divisor.from_csv(args.divisor)
    res = products.product_derivative_at_support(d, args.index, tol=args.tol)
    return res.to_json_obj()


def _cmd_divisor_check(args) -> dict:
    d = divisors.Divisor.from_csv(args.file)
    return divisors.theorem_verdict(d, args.tail, args.eps).to_json_obj()


def _cmd_divisor_construct(args) -> dict:
    rho = parse_rho(args.rho)
    d = divisors.construct_slow(rho, args.count, horizon=args.horizon)
    if args.out:
        d.to_csv(args.out)
        path, args.out = args.out, None  # the CSV owns the path; summary to stdout
        return {"written": path, "count": len(d),
                "first_modulus": float(d.moduli[0])}
    return {
        "count": len(d),
        "points": [[a.real, a.imag, m] for a, m in d.points],
    }


def _cmd_nevanlinna(args) -> dict | list:
    radii = [float(tok) for tok in args.radii.split(",") if tok.strip()]
    if args.expr:
        f = parse_expr(args.expr)
        d = divisors.Divisor(())
    else:
        d = divisors.Divisor.from_csv(args.divisor)
        f = products.CanonicalProduct(d)
    norm = "paper-literal" if args.paper_normalization else "standard"
    report = nevanlinna.characteristic(
        f, d, radii, quad_points=args.quad, normalization=norm
    )
    if args.csv:
        return [["r", "m", "N", "T"]] + [list(s) for s in report.samples]
    return report.to_json_obj()


# --- experiments --------------------------------------------------------------

def _exp_case1_table(seed: int) -> dict:
    rows = []
    for lam, src in ((0.0, "exp(z)+1"), (1.0, "exp(z)+exp(z)"),
                     (-1.0, "exp(z)+exp(-z)")):
        bound = classify.two_exp_bound(lam)
        rep = spherical.sup_search(parse_expr(src), 12.0, budget=20_000)
        rows.append({
            "lambda": lam,
            "bound": bound,
            "sampled_sup": rep.max_value,
            "within_bound": rep.max_value <= bound * (1 + 1e-9),
        })
    return {"experiment": "case1-table", "rows": rows}


def _exp_two_exp_scan(seed: int) -> dict:
    grid = [2, -2, 1, -1, 0.5, -0.5, 1j, -1j, 1 + 1j, 1 - 1j, 2j]
    rows = []
    for lam in grid:
        verdict = classify.classify_two_exponentials(lam)
        rows.append({
            "lambda": _fmt_c(lam),
            "status": verdict.status,
            "reason": verdict.reason,
        })
    return {"experiment": "two-exp-scan", "rows": rows}


def _exp_k2_divisor(seed: int) -> dict:
    d = divisors.squares(10_000)
    table = []
    for k in range(1, 11):
        res = products.product_derivative_at_support(d, k - 1, tol=1e-7)
        table.append({
            "k": k,
            "fprime_abs": abs(res.value),
            "expected": 1.0 / (2.0 * k * k),
        })
    rep = spherical.sup_search(products.CanonicalProduct(d), 50.0, budget=20_000)
    return {"experiment": "k2-divisor", "fprime": table, "sup": rep.to_json_obj()}


def _exp_slow_divisor(seed: int) -> dict:
    rho = divisors.GrowthBound.power_log_squared(1.0)
    d = divisors.construct_slow(rho, 10, horizon=1e10)
    verdict = divisors.theorem_verdict(d)
    prod = products.CanonicalProduct(d, prefactor=3.0, flip_signs=True)
    radii = [r for r in np.geomspace(1.0, 1e4, 24)
             if np.min(np.abs(d.moduli - r)) > 1e-3 * r]
    report = nevanlinna.characteristic(prod, d, radii)
    samples = [{"r": r, "T": t, "rho": float(rho(r)), "ok": t <= float(rho(r)) + 1e-9}
               for r, _, _, t in report.samples]
    return {
        "experiment": "slow-divisor",
        "verdict": verdict.to_json_obj(),
        "moduli_head": [float(m) for m in d.moduli[:5]],
        "growth": samples,
    }


def _exp_growth_theorem(seed: int) -> dict:
    # rho = 2 log t is exactly linear in log t, so a table bound carries it
    table = divisors.GrowthBound.from_table(
        [(t, 2.0 * math.log(t)) for t in np.geomspace(1.5, 1e12, 40)]
    )
    try:
        divisors.construct_slow(table, 5, horizon=1e12)
        precondition = None
    except Error as exc:
        precondition = exc.code
    d = divisors.Divisor(((1 + 0j, 1), (2j, 1), (-4 + 0j, 1)))
    prod = products.CanonicalProduct(d)
    radii = [r for r in np.geomspace(1.0, 1e4, 25)
             if np.min(np.abs(d.moduli - r)) > 1e-3 * r]
    report = nevanlinna.characteristic(prod, d, radii)
    violation = None
    for r, _, _, t in report.samples:
        if t > float(table(r)) + 1e-9:
            violation = {"r": r, "T": t, "rho": float(table(r))}
            break
    return {
        "experiment": "growth-theorem",
        "precondition_error": precondition,
        "violation": violation,
    }


def _exp_discussion_families(seed: int) -> dict:
    # f(z) = s e^z + z/(t z - 1): Brody exactly when s = 0 or t != 0
    values = [0.0, 1.0, -1.0, 2.0, 0.5]
    rows = []
    for s in values:
        for t in values:
            r = RationalFunction.from_json_obj({"num": [[s, 0.0]], "den": [[1.0, 0.0]]})
            q = RationalFunction.from_json_obj(
                {"num": [[0.0, 0.0], [1.0, 0.0]], "den": [[-1.0, 0.0], [t, 0.0]]}
            )
            verdict = classify.classify_exp_rational(r, q)
            expected = "Brody" if (s == 0.0 or t != 0.0) else "NotBrody"
            rows.append({
                "s": s,
                "t": t,
                "status": verdict.status,
                "expected": expected,
                "agrees": verdict.status == expected,
            })
    return {"experiment": "discussion-families", "rows": rows}


_EXPERIMENTS = {
    "case1-table": _exp_case1_table,
    "two-exp-scan": _exp_two_exp_scan,
    "k2-divisor": _exp_k2_divisor,
    "slow-divisor": _exp_slow_divisor,
    "growth-theorem": _exp_growth_theorem,
    "discussion-families": _exp_discussion_families,
}


def _cmd_experiments(args) -> dict:
    name = args.name
    if name not in _EXPERIMENTS:
        raise UnknownExperiment(
            f"unknown experiment {name!r}; choose from {sorted(_EXPERIMENTS)}"
        )
    return _EXPERIMENTS[name](args.seed)


# --- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="brody",
        description="spherical derivatives, Brody classification, canonical "
        "products, and Nevanlinna growth, from the command line",
    )
    top.add_argument("--json", action="store_true",
                     help="emit JSON (the default; kept for scripting clarity)")
    top.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
    top.add_argument("--out", help="write output to this file instead of stdout")
    # same flags accepted after the subcommand; SUPPRESS keeps an omitted
    # trailing flag from clobbering one given before the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                        help=argparse.SUPPRESS)
    common.add_argument("--out", default=argparse.SUPPRESS, help=argparse.SUPPRESS)
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate an expression at a point",
                       parents=[common])
    p.add_argument("--expr", required=True)
    p.add_argument("--z", required=True)
    p.set_defaults(fn=_cmd_eval)

    p = sub.add_parser("sup", help="two-phase search for sup of the spherical derivative",
                       parents=[common])
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--expr")
    g.add_argument("--divisor", help="CSV divisor; searches its canonical product")
    p.add_argument("--radius", type=float, required=True)
    p.add_argument("--budget", type=int, default=100_000)
    p.set_defaults(fn=_cmd_sup)

    p = sub.add_parser("witness", help="hill-climb seeds into a divergence witness",
                       parents=[common])
    p.add_argument("--expr", required=True)
    p.add_argument("--seeds", required=True,
                   help="CSV file with re,im columns, or inline list 1+2i,3-4i,...")
    p.add_argument("--steps", type=int, default=60)
    p.set_defaults(fn=_cmd_witness)

    pc = sub.add_parser("classify", help="exact family classifiers")
    csub = pc.add_subparsers(dest="family", required=True)
    p = csub.add_parser("exp-rational", help="R(z) e^z + Q(z)", parents=[common])
    p.add_argument("--R", required=True, help='rational JSON {"num":[[re,im],...],"den":...}')
    p.add_argument("--Q", required=True)
    p.set_defaults(fn=_cmd_classify_exp_rational)
    p = csub.add_parser("two-exp", help="e^z + e^(lambda z)", parents=[common])
    p.add_argument("--lambda", required=True)
    p.set_defaults(fn=_cmd_classify_two_exp)
    p = csub.add_parser("product", help="does multiplying by R preserve Brody?",
                        parents=[common])
    p.add_argument("--R", required=True)
    p.set_defaults(fn=_cmd_classify_product)

    pp = sub.add_parser("product", help="canonical products over divisors")
    psub = pp.add_subparsers(dest="action", required=True)
    p = psub.add_parser("eval", help="evaluate the product at a point", parents=[common])
    p.add_argument("--divisor", required=True)
    p.add_argument("--z", required=True)
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(fn=_cmd_product_eval)
    p = psub.add_parser("fprime", help="derivative at the n-th support point",
                        parents=[common])
    p.add_argument("--divisor", required=True)
    p.add_argument("--index", type=int, required=True)
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(fn=_cmd_product_fprime)

    pd = sub.add_parser("divisor", help="divisor verdicts and construction")
    dsub = pd.add_subparsers(dest="action", required=True)
    p = dsub.add_parser("check", help="separation + hull non-realizability verdict",
                        parents=[common])
    p.add_argument("--file", required=True)
    p.add_argument("--tail", type=float, default=0.5)
    p.add_argument("--eps", type=float, default=0.3)
    p.set_defaults(fn=_cmd_divisor_check)
    p = dsub.add_parser("construct", help="slow-growth divisor for a growth bound",
                        parents=[common])
    p.add_argument("--rho", required=True, help="logsq:C | power:C,ALPHA | table:FILE")
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--horizon", type=float, default=1e12)
    p.set_defaults(fn=_cmd_divisor_construct)

    p = sub.add_parser("nevanlinna", help="proximity/counting/characteristic table",
                       parents=[common])
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--expr")
    g.add_argument("--divisor")
    p.add_argument("--radii", required=True, help="comma-separated increasing radii")
    p.add_argument("--quad", type=int, default=512)
    p.add_argument("--paper-normalization", action="store_true",
                   help="omit the 1/(2 pi) in the proximity integral")
    p.add_argument("--csv", action="store_true", help="emit a CSV table")
    p.set_defaults(fn=_cmd_nevanlinna)

    p = sub.add_parser("experiments", help="end-to-end reproduction scenarios",
                       parents=[common])
    p.add_argument("name", help="|".join(sorted(_EXPERIMENTS)))
    p.set_defaults(fn=_cmd_experiments)

    return top


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        result = args.fn(args)
    except Error as exc:
        sys.stdout.write(json.dumps(
            {"error": exc.code, "message": str(exc)}, sort_keys=True) + "\n")
        return 3
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    if isinstance(result, list):  # CSV rows
        target = open(args.out, "w", newline="") if args.out else sys.stdout
        try:
            csv.writer(target).writerows(result)
        finally:
            if args.out:
                target.close()
    else:
        _emit(result, args)
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""A tiny language for entire/meromorphic test functions.

Grammar (whitespace-insensitive)::

    expr   := term (("+"|"-") term)*
    term   := factor (("*"|"/") factor)*
    factor := base ("^" uint)?
    base   := number | "z" | "(" expr ")" | "exp" "(" expr ")" | "-" base
    number := digits ("." digits)? "i"?

ASTs are immutable dataclasses.  ``parse`` and ``differentiate`` constant-fold
literal arithmetic (and drop 0/1 identities), nothing more.  Evaluation is
totalized over the Riemann sphere: division by exact zero and arithmetic or
exp overflow yield ``INFINITY`` rather than raising.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from decimal import Decimal

import numpy as np

from .algebra import INFINITY, ExtendedComplex, is_infinity
from .errors import ParseError

EXP_OVERFLOW_RE = 700.0  # beyond this, exp is treated as the point at infinity


@dataclass(frozen=True)
class Expr:
    pass


@dataclass(frozen=True)
class Const(Expr):
    value: complex

    def __init__(self, value):
        object.__setattr__(self, "value", complex(value))


@dataclass(frozen=True)
class Z(Expr):
    pass


@dataclass(frozen=True)
class Add(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Sub(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Mul(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Div(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Neg(Expr):
    arg: Expr


@dataclass(frozen=True)
class Pow(Expr):
    base: Expr
    exponent: int

    def __init__(self, base, exponent):
        exponent = int(exponent)
        if exponent < 0:
            raise ValueError("exponent must be a nonnegative integer")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "exponent", exponent)


@dataclass(frozen=True)
class Exp(Expr):
    arg: Expr


def _is_const(e: Expr, v=None) -> bool:
    return isinstance(e, Const) and (v is None or e.value == v)


def fold(e: Expr) -> Expr:
    """Constant-fold one node whose children are already folded.

    Folds literal arithmetic and the 0/1 identities.  Dropping 0*x and x^0
    assumes x is finite there; this is the documented simplification level.
    """
    if isinstance(e, Add):
        l, r = e.left, e.right
        if _is_const(l) and _is_const(r):
            return Const(l.value + r.value)
        if _is_const(l, 0):
            return r
        if _is_const(r, 0):
            return l
        return e
    if isinstance(e, Sub):
        l, r = e.left, e.right
        if _is_const(l) and _is_const(r):
            return Const(l.value - r.value)
        if _is_const(r, 0):
            return l
        if _is_const(l, 0):
            return fold(Neg(r))
        return e
    if isinstance(e, Mul):
        l, r = e.left, e.right
        if _is_const(l) and _is_const(r):
            return Const(l.value * r.value)
        if _is_const(l, 0) or _is_const(r, 0):
            return Const(0)
        if _is_const(l, 1):
            return r
        if _is_const(r, 1):
            return l
        return e
    if isinstance(e, Div):
        l, r = e.left, e.right
        if _is_const(l) and _is_const(r) and r.value != 0:
            return Const(l.value / r.value)
        if _is_const(r, 1):
            return l
        return e
    if isinstance(e, Neg):
        if _is_const(e.arg):
            return Const(-e.arg.value)
        if isinstance(e.arg, Neg):
            return e.arg.arg
        return e
    if isinstance(e, Pow):
        if e.exponent == 0:
            return Const(1)
        if e.exponent == 1:
            return e.base
        if _is_const(e.base):
            v = e.base.value ** e.exponent
            if cmath.isfinite(v):
                return Const(v)
        return e
    return e


# --- parsing -----------------------------------------------------------------

_DIGITS = frozenset("0123456789")


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.pos = 0

    def error(self, expected: set[str]) -> ParseError:
        got = self.src[self.pos] if self.pos < len(self.src) else "end of input"
        return ParseError(
            f"at offset {self.pos}: expected one of {sorted(expected)}, got {got!r}",
            self.pos,
            frozenset(expected),
        )

    def skip_ws(self):
        while self.pos < len(self.src) and self.src[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.src[self.pos] if self.pos < len(self.src) else ""

    def eat(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def expect(self, ch: str):
        if not self.eat(ch):
            raise self.error({ch})

    def parse(self) -> Expr:
        e = self.expr()
        self.skip_ws()
        if self.pos != len(self.src):
            raise self.error({"+", "-", "*", "/", "^", "end of input"})
        return e

    def expr(self) -> Expr:
        e = self.term()
        while True:
            if self.eat("+"):
                e = fold(Add(e, self.term()))
            elif self.eat("-"):
                e = fold(Sub(e, self.term()))
            else:
                return e

    def term(self) -> Expr:
        e = self.factor()
        while True:
            if self.eat("*"):
                e = fold(Mul(e, self.factor()))
            elif self.eat("/"):
                e = fold(Div(e, self.factor()))
            else:
                return e

    def factor(self) -> Expr:
        e = self.base()
        if self.eat("^"):
            return fold(Pow(e, self.uint()))
        return e

    def uint(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.src) and self.src[self.pos] in _DIGITS:
            self.pos += 1
        if self.pos == start:
            raise self.error({"unsigned integer"})
        return int(self.src[start:self.pos])

    def base(self) -> Expr:
        ch = self.peek()
        if ch == "-":
            self.pos += 1
            return fold(Neg(self.base()))
        if ch == "(":
            self.pos += 1
            e = self.expr()
            self.expect(")")
            return e
        if ch in _DIGITS:
            return self.number()
        if ch.isalpha():
            start = self.pos
            while self.pos < len(self.src) and self.src[self.pos].isalpha():
                self.pos += 1
            name = self.src[start:self.pos]
            if name == "z":
                return Z()
            if name == "exp":
                self.expect("(")
                e = self.expr()
                self.expect(")")
                return Exp(e)
            self.pos = start
            raise self.error({"z", "exp"})
        raise self.error({"number", "z", "(", "exp", "-"})

    def number(self) -> Expr:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.src) and self.src[self.pos] in _DIGITS:
            self.pos += 1
        if (
            self.pos < len(self.src)
            and self.src[self.pos] == "."
        ):
            self.pos += 1
            digits_start = self.pos
            while self.pos < len(self.src) and self.src[self.pos] in _DIGITS:
                self.pos += 1
            if self.pos == digits_start:
                raise self.error({"digit"})
        mag = float(self.src[start:self.pos])
        if self.pos < len(self.src) and self.src[self.pos] == "i":
            self.pos += 1
            return Const(complex(0.0, mag))
        return Const(complex(mag, 0.0))


def parse(src: str) -> Expr:
    """Parse source text to a constant-folded AST; raises ParseError on bad input."""
    return _Parser(src).parse()


# --- evaluation --------------------------------------------------------------

def _finite(v: complex) -> bool:
    return cmath.isfinite(v)


def eval_ex(e: Expr, z: complex) -> tuple[ExtendedComplex, bool]:
    """Evaluate and report whether a numeric overflow produced the infinity.

    The flag distinguishes range overflow (exp or arithmetic blow-up) from
    exact poles; callers that need the chordal reciprocal trick use it.
    """
    z = complex(z)

    def ev(e) -> tuple[ExtendedComplex, bool]:
        if isinstance(e, Const):
            return e.value, False
        if isinstance(e, Z):
            return z, False
        if isinstance(e, Neg):
            v, f = ev(e.arg)
            return (INFINITY, f) if is_infinity(v) else (-v, f)
        if isinstance(e, Exp):
            v, f = ev(e.arg)
            if is_infinity(v) or v.real > EXP_OVERFLOW_RE:
                return INFINITY, True
            try:
                return cmath.exp(v), f
            except OverflowError:
                return INFINITY, True
        if isinstance(e, Pow):
            v, f = ev(e.base)
            if e.exponent == 0:
                return 1 + 0j, f
            if is_infinity(v):
                return INFINITY, f
            try:
                w = v ** e.exponent
            except OverflowError:
                return INFINITY, True
            return (w, f) if _finite(w) else (INFINITY, True)
        a, fa = ev(e.left)
        b, fb = ev(e.right)
        f = fa or fb
        ia, ib = is_infinity(a), is_infinity(b)
        if isinstance(e, Add):
            if ia or ib:
                return INFINITY, f
            w = a + b
        elif isinstance(e, Sub):
            if ia or ib:
                return INFINITY, f
            w = a - b
        elif isinstance(e, Mul):
            if ia or ib:
                return INFINITY, f
            w = a * b
        elif isinstance(e, Div):
            if ib:
                return (INFINITY, f) if ia else (0j, f)
            if b == 0:
                return INFINITY, f
            if ia:
                return INFINITY, f
            w = a / b
        else:
            raise TypeError(f"not an Expr node: {e!r}")
        return (w, f) if _finite(w) else (INFINITY, True)

    return ev(e)


def eval_at(e: Expr, z: complex) -> ExtendedComplex:
    """Totalized value of e at z on the Riemann sphere."""
    return eval_ex(e, z)[0]


def eval_grid(e: Expr, zs: np.ndarray) -> np.ndarray:
    """Vectorized evaluation; inf/nan entries mark poles and overflow.

    This is the fast path for grid searches.  Semantics at singular samples
    are coarser than ``eval_at`` (no sphere bookkeeping); callers treat
    nonfinite entries as missing.
    """
    zs = np.asarray(zs, dtype=complex)

    def ev(e) -> np.ndarray:
        if isinstance(e, Const):
            return np.broadcast_to(np.asarray(e.value), zs.shape)
        if isinstance(e, Z):
            return zs
        if isinstance(e, Neg):
            return -ev(e.arg)
        if isinstance(e, Exp):
            return np.exp(ev(e.arg))
        if isinstance(e, Pow):
            return ev(e.base) ** e.exponent
        a, b = ev(e.left), ev(e.right)
        if isinstance(e, Add):
            return a + b
        if isinstance(e, Sub):
            return a - b
        if isinstance(e, Mul):
            return a * b
        if isinstance(e, Div):
            return a / b
        raise TypeError(f"not an Expr node: {e!r}")

    with np.errstate(all="ignore"):
        return np.array(ev(e), dtype=complex)


# --- differentiation ---------------------------------------------------------

def differentiate(e: Expr) -> Expr:
    """Symbolic derivative with the same constant folding as the parser."""
    if isinstance(e, (Const,)):
        return Const(0)
    if isinstance(e, Z):
        return Const(1)
    if isinstance(e, Neg):
        return fold(Neg(differentiate(e.arg)))
    if isinstance(e, Add):
        return fold(Add(differentiate(e.left), differentiate(e.right)))
    if isinstance(e, Sub):
        return fold(Sub(differentiate(e.left), differentiate(e.right)))
    if isinstance(e, Mul):
        u, v = e.left, e.right
        return fold(Add(
            fold(Mul(differentiate(u), v)),
            fold(Mul(u, differentiate(v))),
        ))
    if isinstance(e, Div):
        u, v = e.left, e.right
        num = fold(Sub(
            fold(Mul(differentiate(u), v)),
            fold(Mul(u, differentiate(v))),
        ))
        return fold(Div(num, fold(Pow(v, 2))))
    if isinstance(e, Pow):
        n = e.exponent
        if n == 0:
            return Const(0)
        inner = fold(Mul(Const(n), fold(Pow(e.base, n - 1))))
        return fold(Mul(inner, differentiate(e.base)))
    if isinstance(e, Exp):
        return fold(Mul(e, differentiate(e.arg)))
    raise TypeError(f"not an Expr node: {e!r}")


# --- unparsing ---------------------------------------------------------------

def _fmt_float(x: float) -> str:
    # grammar has no exponent form, so force positional notation
    s = repr(float(x))
    if "e" in s or "E" in s:
        s = format(Decimal(s), "f")
    if s.endswith(".0"):
        s = s[:-2]
    return s


def _fmt_const(v: complex) -> str:
    """Literal (possibly parenthesized) that reparses and folds back to Const(v)."""
    re, im = v.real, v.imag
    if im == 0:
        return ("-" + _fmt_float(-re)) if re < 0 else _fmt_float(re)
    if re == 0:
        return ("-" + _fmt_float(-im) + "i") if im < 0 else _fmt_float(im) + "i"
    rs = ("-" + _fmt_float(-re)) if re < 0 else _fmt_float(re)
    if im < 0:
        return f"({rs}-{_fmt_float(-im)}i)"
    return f"({rs}+{_fmt_float(im)}i)"


def unparse(e: Expr) -> str:
    """Source text whose parse is structurally identical to e (for folded e)."""
    return _un_expr(e)


def _un_expr(e: Expr) -> str:
    if isinstance(e, Add):
        return f"{_un_expr(e.left)}+{_un_term(e.right)}"
    if isinstance(e, Sub):
        return f"{_un_expr(e.left)}-{_un_term(e.right)}"
    return _un_term(e)


def _un_term(e: Expr) -> str:
    if isinstance(e, Mul):
        return f"{_un_term(e.left)}*{_un_factor(e.right)}"
    if isinstance(e, Div):
        return f"{_un_term(e.left)}/{_un_factor(e.right)}"
    return _un_factor(e)


def _un_factor(e: Expr) -> str:
    if isinstance(e, Pow):
        return f"{_un_base(e.base)}^{e.exponent}"
    return _un_base(e)


def _un_base(e: Expr) -> str:
    if isinstance(e, Const):
        s = _fmt_const(e.value)
        return s
    if isinstance(e, Z):
        return "z"
    if isinstance(e, Exp):
        return f"exp({_un_expr(e.arg)})"
    if isinstance(e, Neg):
        return f"-{_un_base(e.arg)}"
    return f"({_un_expr(e)})"

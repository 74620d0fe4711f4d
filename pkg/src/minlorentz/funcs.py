"""Scalar functions of one variable: a tiny expression language plus tables.

Expressions follow the grammar

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := base ('^' int)?
    base   := number | 't' | ident '(' expr ')' | '(' expr ')' | '-' base

with the function set sin, cos, sinh, cosh, tan, tanh, exp, ln, sqrt and
integer-only exponents, so symbolic differentiation is total.  Evaluation
accepts a float or a numpy array.

Reparametrised curves are only known pointwise; those become table-backed
functions using cubic Hermite interpolation with derivative knots.
"""

from __future__ import annotations

import re as _re
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = [
    "Expr", "Num", "Var", "Neg", "Add", "Sub", "Mul", "Div", "Pow", "Fun",
    "ExprSyntaxError", "UnknownFunctionError",
    "parse", "differentiate", "to_text",
    "Fn1", "ExprFn", "TableFn", "fn_from_text",
]

FUNCTION_NAMES = ("sin", "cos", "sinh", "cosh", "tan", "tanh", "exp", "ln", "sqrt")

_NUMPY_FUN = {
    "sin": np.sin, "cos": np.cos, "sinh": np.sinh, "cosh": np.cosh,
    "tan": np.tan, "tanh": np.tanh, "exp": np.exp, "ln": np.log,
    "sqrt": np.sqrt,
}


class ExprSyntaxError(ValueError):
    """Malformed expression text; carries the byte offset and expected tokens."""

    def __init__(self, offset: int, expected: tuple[str, ...], found: str):
        self.offset = offset
        self.expected = expected
        self.found = found
        super().__init__(
            f"syntax error at offset {offset}: expected {' or '.join(expected)}, "
            f"found {found!r}"
        )


class UnknownFunctionError(ExprSyntaxError):
    """Identifier outside the supported function set."""

    def __init__(self, offset: int, name: str):
        self.offset = offset
        self.name = name
        ValueError.__init__(
            self, f"unknown function {name!r} at offset {offset}; "
            f"supported: {', '.join(FUNCTION_NAMES)}"
        )


# --------------------------------------------------------------------------
# AST
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Expr:
    """Base node; concrete nodes below."""

    def __call__(self, t):
        out = _eval(self, np.asarray(t, dtype=float))
        return float(out) if np.ndim(t) == 0 else out

    def __str__(self) -> str:
        return _fmt(self, 0)


@dataclass(frozen=True)
class Num(Expr):
    value: float


@dataclass(frozen=True)
class Var(Expr):
    pass


@dataclass(frozen=True)
class Neg(Expr):
    a: Expr


@dataclass(frozen=True)
class Add(Expr):
    a: Expr
    b: Expr


@dataclass(frozen=True)
class Sub(Expr):
    a: Expr
    b: Expr


@dataclass(frozen=True)
class Mul(Expr):
    a: Expr
    b: Expr


@dataclass(frozen=True)
class Div(Expr):
    a: Expr
    b: Expr


@dataclass(frozen=True)
class Pow(Expr):
    base: Expr
    n: int


@dataclass(frozen=True)
class Fun(Expr):
    name: str
    arg: Expr


T = Var()


def _eval(e: Expr, t):
    if isinstance(e, Num):
        return np.full_like(t, e.value) if t.ndim else np.float64(e.value)
    if isinstance(e, Var):
        return t
    if isinstance(e, Neg):
        return -_eval(e.a, t)
    if isinstance(e, Add):
        return _eval(e.a, t) + _eval(e.b, t)
    if isinstance(e, Sub):
        return _eval(e.a, t) - _eval(e.b, t)
    if isinstance(e, Mul):
        return _eval(e.a, t) * _eval(e.b, t)
    if isinstance(e, Div):
        den = _eval(e.b, t)
        if np.any(den == 0.0):
            raise DomainError(f"division by zero in {e}")
        return _eval(e.a, t) / den
    if isinstance(e, Pow):
        base = _eval(e.base, t)
        if e.n < 0 and np.any(base == 0.0):
            raise DomainError(f"zero base with negative exponent in {e}")
        return base ** e.n
    if isinstance(e, Fun):
        arg = _eval(e.arg, t)
        if e.name == "ln" and np.any(arg <= 0.0):
            raise DomainError("ln of non-positive value")
        if e.name == "sqrt" and np.any(arg < 0.0):
            raise DomainError("sqrt of negative value")
        return _NUMPY_FUN[e.name](arg)
    raise TypeError(f"not an Expr node: {e!r}")


# --------------------------------------------------------------------------
# printing (round-trips through parse)
# --------------------------------------------------------------------------

_PREC_ADD, _PREC_MUL, _PREC_POW = 1, 2, 3


def _atomic(e: Expr) -> bool:
    return isinstance(e, (Var, Fun)) or (isinstance(e, Num) and e.value >= 0)


def _fmt_num(v: float) -> str:
    if v == int(v) and abs(v) < 1e16:
        return str(int(v))
    return repr(v)


def _fmt(e: Expr, parent_prec: int) -> str:
    if isinstance(e, Num):
        s = _fmt_num(e.value)
        return s if e.value >= 0 else f"({s})" if parent_prec > 0 else s
    if isinstance(e, Var):
        return "t"
    if isinstance(e, Fun):
        return f"{e.name}({_fmt(e.arg, 0)})"
    if isinstance(e, Neg):
        inner = _fmt(e.a, _PREC_POW) if _atomic(e.a) or isinstance(e.a, Neg) \
            else f"({_fmt(e.a, 0)})"
        s = f"-{inner}"
        return f"({s})" if parent_prec > 0 else s
    if isinstance(e, Pow):
        base = _fmt(e.base, _PREC_POW) if _atomic(e.base) else f"({_fmt(e.base, 0)})"
        return f"{base}^{e.n}"
    if isinstance(e, (Add, Sub)):
        op = "+" if isinstance(e, Add) else "-"
        s = f"{_fmt(e.a, _PREC_ADD)} {op} {_fmt(e.b, _PREC_ADD + 1)}"
        return f"({s})" if parent_prec > _PREC_ADD else s
    if isinstance(e, (Mul, Div)):
        op = "*" if isinstance(e, Mul) else "/"
        s = f"{_fmt(e.a, _PREC_MUL)}{op}{_fmt(e.b, _PREC_MUL + 1)}"
        return f"({s})" if parent_prec > _PREC_MUL else s
    raise TypeError(f"not an Expr node: {e!r}")


def to_text(e: Expr) -> str:
    return str(e)


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------

_TOKEN_RE = _re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)"
    r"|(?P<ident>[A-Za-z_]+)"
    r"|(?P<op>[-+*/^()]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            at = len(text) - len(stripped)
            raise ExprSyntaxError(at, ("number", "'t'", "function", "operator"),
                                  text[at])
        if m.group("num") is not None:
            tokens.append(("num", m.group("num"), m.start("num")))
        elif m.group("ident") is not None:
            tokens.append(("ident", m.group("ident"), m.start("ident")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, expected: tuple[str, ...]):
        kind, value, offset = self.peek()
        found = value if kind != "end" else "end of input"
        raise ExprSyntaxError(offset, expected, found)

    def parse(self) -> Expr:
        e = self.expr()
        if self.peek()[0] != "end":
            self.fail(("operator", "end of input"))
        return e

    def expr(self) -> Expr:
        e = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.advance()[1]
            rhs = self.term()
            e = Add(e, rhs) if op == "+" else Sub(e, rhs)
        return e

    def term(self) -> Expr:
        e = self.factor()
        while self.peek()[:2] in (("op", "*"), ("op", "/")):
            op = self.advance()[1]
            rhs = self.factor()
            e = Mul(e, rhs) if op == "*" else Div(e, rhs)
        return e

    def factor(self) -> Expr:
        e = self.base()
        if self.peek()[:2] == ("op", "^"):
            self.advance()
            e = Pow(e, self.integer())
        return e

    def integer(self) -> int:
        sign = 1
        if self.peek()[:2] == ("op", "-"):
            self.advance()
            sign = -1
        kind, value, offset = self.peek()
        if kind != "num" or not _re.fullmatch(r"\d+", value):
            self.fail(("integer exponent",))
        self.advance()
        return sign * int(value)

    def base(self) -> Expr:
        kind, value, offset = self.peek()
        if kind == "num":
            self.advance()
            return Num(float(value))
        if kind == "ident":
            self.advance()
            if value == "t":
                return Var()
            if value not in FUNCTION_NAMES:
                raise UnknownFunctionError(offset, value)
            if self.peek()[:2] != ("op", "("):
                self.fail(("'('",))
            self.advance()
            arg = self.expr()
            if self.peek()[:2] != ("op", ")"):
                self.fail(("')'",))
            self.advance()
            return Fun(value, arg)
        if kind == "op" and value == "(":
            self.advance()
            e = self.expr()
            if self.peek()[:2] != ("op", ")"):
                self.fail(("')'",))
            self.advance()
            return e
        if kind == "op" and value == "-":
            self.advance()
            return Neg(self.base())
        self.fail(("number", "'t'", "function name", "'('", "'-'"))


def parse(text: str) -> Expr:
    """Parse expression text into an AST; raises ExprSyntaxError on bad input."""
    return _Parser(text).parse()


# --------------------------------------------------------------------------
# symbolic differentiation (folding limited to constants and 0/1 identities)
# --------------------------------------------------------------------------

def _is_num(e: Expr, v: float | None = None) -> bool:
    return isinstance(e, Num) and (v is None or e.value == v)


def _add(a: Expr, b: Expr) -> Expr:
    if _is_num(a) and _is_num(b):
        return Num(a.value + b.value)
    if _is_num(a, 0.0):
        return b
    if _is_num(b, 0.0):
        return a
    return Add(a, b)


def _sub(a: Expr, b: Expr) -> Expr:
    if _is_num(a) and _is_num(b):
        return Num(a.value - b.value)
    if _is_num(b, 0.0):
        return a
    if _is_num(a, 0.0):
        return _neg(b)
    return Sub(a, b)


def _neg(a: Expr) -> Expr:
    if _is_num(a):
        return Num(-a.value)
    if isinstance(a, Neg):
        return a.a
    return Neg(a)


def _mul(a: Expr, b: Expr) -> Expr:
    if _is_num(a) and _is_num(b):
        return Num(a.value * b.value)
    if _is_num(a, 0.0) or _is_num(b, 0.0):
        return Num(0.0)
    if _is_num(a, 1.0):
        return b
    if _is_num(b, 1.0):
        return a
    return Mul(a, b)


def _div(a: Expr, b: Expr) -> Expr:
    if _is_num(a, 0.0) and not _is_num(b, 0.0):
        return Num(0.0)
    if _is_num(b, 1.0):
        return a
    if _is_num(a) and _is_num(b) and b.value != 0.0:
        return Num(a.value / b.value)
    return Div(a, b)


def _pow(base: Expr, n: int) -> Expr:
    if n == 0:
        return Num(1.0)
    if n == 1:
        return base
    return Pow(base, n)


def differentiate(e: Expr) -> Expr:
    """Exact derivative with respect to t."""
    if isinstance(e, Num):
        return Num(0.0)
    if isinstance(e, Var):
        return Num(1.0)
    if isinstance(e, Neg):
        return _neg(differentiate(e.a))
    if isinstance(e, Add):
        return _add(differentiate(e.a), differentiate(e.b))
    if isinstance(e, Sub):
        return _sub(differentiate(e.a), differentiate(e.b))
    if isinstance(e, Mul):
        return _add(_mul(differentiate(e.a), e.b), _mul(e.a, differentiate(e.b)))
    if isinstance(e, Div):
        num = _sub(_mul(differentiate(e.a), e.b), _mul(e.a, differentiate(e.b)))
        return _div(num, _pow(e.b, 2))
    if isinstance(e, Pow):
        return _mul(_mul(Num(float(e.n)), _pow(e.base, e.n - 1)),
                    differentiate(e.base))
    if isinstance(e, Fun):
        u, du = e.arg, differentiate(e.arg)
        rules = {
            "sin": lambda: Fun("cos", u),
            "cos": lambda: _neg(Fun("sin", u)),
            "sinh": lambda: Fun("cosh", u),
            "cosh": lambda: Fun("sinh", u),
            "tan": lambda: _div(Num(1.0), _pow(Fun("cos", u), 2)),
            "tanh": lambda: _sub(Num(1.0), _pow(Fun("tanh", u), 2)),
            "exp": lambda: Fun("exp", u),
            "ln": lambda: _div(Num(1.0), u),
            "sqrt": lambda: _div(Num(1.0), _mul(Num(2.0), Fun("sqrt", u))),
        }
        return _mul(rules[e.name](), du)
    raise TypeError(f"not an Expr node: {e!r}")


# --------------------------------------------------------------------------
# Fn1: expression-backed or table-backed function with derivative
# --------------------------------------------------------------------------

class Fn1:
    """A scalar function of one real variable together with its derivative."""

    def __call__(self, t):
        raise NotImplementedError

    def deriv(self, t):
        raise NotImplementedError


class ExprFn(Fn1):
    """Expression-backed function; the derivative is symbolic, hence exact."""

    def __init__(self, expr: Expr | str):
        self.expr = parse(expr) if isinstance(expr, str) else expr
        self.dexpr = differentiate(self.expr)
        self._d2expr: Expr | None = None

    def __call__(self, t):
        return self.expr(t)

    def deriv(self, t):
        return self.dexpr(t)

    def second(self, t):
        if self._d2expr is None:
            self._d2expr = differentiate(self.dexpr)
        return self._d2expr(t)

    def __repr__(self):
        return f"ExprFn({str(self.expr)!r})"


class TableFn(Fn1):
    """Cubic Hermite interpolant through (t, value, derivative) knots."""

    def __init__(self, knots, values, derivs):
        knots = np.asarray(knots, dtype=float)
        values = np.asarray(values, dtype=float)
        derivs = np.asarray(derivs, dtype=float)
        if knots.ndim != 1 or knots.size < 4:
            raise ValueError("table needs at least 4 knots")
        if not (knots.shape == values.shape == derivs.shape):
            raise ValueError("knots, values, derivs must have equal length")
        if np.any(np.diff(knots) <= 0.0):
            raise ValueError("knots must be strictly increasing")
        self.knots = knots
        self.values = values
        self.derivs = derivs
        # admit round-off just outside the end knots
        self._slack = 1e-12 * max(1.0, abs(knots[0]), abs(knots[-1]))

    @property
    def tmin(self) -> float:
        return float(self.knots[0])

    @property
    def tmax(self) -> float:
        return float(self.knots[-1])

    def _locate(self, t):
        tt = np.asarray(t, dtype=float)
        if np.any(tt < self.knots[0] - self._slack) or \
           np.any(tt > self.knots[-1] + self._slack):
            raise DomainError(
                f"argument outside table range [{self.tmin}, {self.tmax}]")
        idx = np.clip(np.searchsorted(self.knots, tt, side="right") - 1,
                      0, self.knots.size - 2)
        h = self.knots[idx + 1] - self.knots[idx]
        s = (tt - self.knots[idx]) / h
        return idx, h, s

    def __call__(self, t):
        idx, h, s = self._locate(t)
        v0, v1 = self.values[idx], self.values[idx + 1]
        d0, d1 = self.derivs[idx], self.derivs[idx + 1]
        s2, s3 = s * s, s * s * s
        out = (v0 * (1 - 3 * s2 + 2 * s3) + h * d0 * (s - 2 * s2 + s3)
               + v1 * (3 * s2 - 2 * s3) + h * d1 * (s3 - s2))
        return float(out) if np.ndim(t) == 0 else out

    def deriv(self, t):
        idx, h, s = self._locate(t)
        v0, v1 = self.values[idx], self.values[idx + 1]
        d0, d1 = self.derivs[idx], self.derivs[idx + 1]
        s2 = s * s
        out = (v0 * (6 * s2 - 6 * s) / h + d0 * (1 - 4 * s + 3 * s2)
               + v1 * (6 * s - 6 * s2) / h + d1 * (3 * s2 - 2 * s))
        return float(out) if np.ndim(t) == 0 else out

    def second(self, t):
        """Second derivative of the interpolant (piecewise linear)."""
        idx, h, s = self._locate(t)
        v0, v1 = self.values[idx], self.values[idx + 1]
        d0, d1 = self.derivs[idx], self.derivs[idx + 1]
        out = (v0 * (12 * s - 6) / h ** 2 + d0 * (6 * s - 4) / h
               + v1 * (6 - 12 * s) / h ** 2 + d1 * (6 * s - 2) / h)
        return float(out) if np.ndim(t) == 0 else out

    def __repr__(self):
        return (f"TableFn({self.knots.size} knots on "
                f"[{self.tmin:g}, {self.tmax:g}])")


def fn_from_text(text: str) -> ExprFn:
    return ExprFn(text)

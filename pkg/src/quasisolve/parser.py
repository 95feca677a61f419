"""Recursive-descent parser for difference equations with quasipolynomial right-hand sides.

Input format (whitespace is insignificant)::

    equation := lhs "=" rhs
    lhs      := yterm { ("+" | "-") yterm }
    yterm    := [coeff "*"] "y[n" [("+" | "-") int] "]"
    rhs      := ["-"] qterm { ("+" | "-") qterm }
    qterm    := factor { "*" factor }
    factor   := coeff                          constant factor
              | number "^n" | "(" ["-"] number ")^n"
              | "n" ["^" int]
              | ("sin" | "cos") "(" angle ")"
    angle    := ["-"] afactor { ("*" | "/") afactor }, linear in n
    afactor  := number | "pi" | "n" | "(" angle ")"
    coeff    := number ["/" int]

Examples: ``y[n+2] + y[n] = cos(pi/8*n)``,
``2*y[n+1] - y[n] = 3*n^2*2^n*sin(pi*n/3) + 1/2``.

The highest shift is normalized to coefficient 1 and the lowest shift is
re-indexed to ``y[n]``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .equation import DifferenceEquation
from .errors import InvalidBase, ParseError
from .quasipoly import QuasiGroup, Quasipolynomial

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_]+)
  | (?P<op>[-+*/^()\[\]=])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        if m.lastgroup != "ws":
            out.append(Token(m.lastgroup, m.group(), pos))
        pos = m.end()
    out.append(Token("end", "", len(text)))
    return out


@dataclass(frozen=True)
class ParsedEquation:
    """A parsed equation plus the source text and the span of each side."""

    equation: DifferenceEquation
    text: str
    lhs_span: tuple[int, int]
    rhs_span: tuple[int, int]


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    # -- token helpers -------------------------------------------------------

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def peek(self, offset=1) -> Token:
        return self.tokens[min(self.i + offset, len(self.tokens) - 1)]

    def error(self, msg, tok=None):
        tok = tok or self.tok
        raise ParseError(msg, self.text, tok.pos)

    def at(self, text) -> bool:
        return self.tok.kind != "end" and self.tok.text == text

    def accept(self, text) -> Token | None:
        if self.at(text):
            t = self.tok
            self.i += 1
            return t
        return None

    def expect(self, text) -> Token:
        t = self.accept(text)
        if t is None:
            found = self.tok.text or "end of input"
            self.error(f"expected {text!r}, found {found!r}")
        return t

    def number(self) -> Fraction:
        t = self.tok
        if t.kind != "num":
            self.error(f"expected a number, found {t.text or 'end of input'!r}")
        self.i += 1
        return Fraction(t.text)

    def integer(self) -> int:
        t = self.tok
        v = self.number()
        if v.denominator != 1 or not re.fullmatch(r"\d+", t.text):
            self.error("expected an integer", t)
        return int(v)

    def coeff(self) -> Fraction:
        v = self.number()
        if self.at("/") and self.peek().kind == "num":
            self.i += 1
            t = self.tok
            d = self.integer()
            if d == 0:
                self.error("division by zero", t)
            v /= d
        return v

    # -- equation ------------------------------------------------------------

    def equation(self) -> ParsedEquation:
        start = self.tok.pos
        shifts = self.lhs()
        eq_tok = self.expect("=")
        rhs_start = self.tok.pos
        rhs = self.rhs()
        if self.tok.kind != "end":
            self.error(f"unexpected {self.tok.text!r}")
        eq = self._build(shifts, rhs, start)
        return ParsedEquation(eq, self.text, (start, eq_tok.pos), (rhs_start, len(self.text)))

    def _build(self, shifts: dict[int, Fraction], rhs: Quasipolynomial, pos: int):
        hi = max(shifts)
        lo = min(shifts)
        if shifts[hi] == 0:
            raise ParseError("zero coefficient on the highest shift", self.text, pos)
        if hi == lo:
            raise ParseError("equation must involve at least two distinct shifts of y",
                             self.text, pos)
        lead = shifts[hi]
        k = hi - lo
        coeffs = [shifts.get(hi - i, Fraction(0)) / lead for i in range(1, k + 1)]
        if coeffs[-1] == 0:
            raise ParseError("a^(k) = 0 after normalization: degenerate, reduce the order",
                             self.text, pos)
        return DifferenceEquation(tuple(float(c) for c in coeffs), rhs.scale(1.0 / float(lead)))

    def lhs(self) -> dict[int, Fraction]:
        shifts: dict[int, Fraction] = {}
        sign = Fraction(1)
        if self.accept("-"):
            sign = Fraction(-1)
        else:
            self.accept("+")
        while True:
            c, shift = self.yterm()
            shifts[shift] = shifts.get(shift, Fraction(0)) + sign * c
            if self.accept("+"):
                sign = Fraction(1)
            elif self.accept("-"):
                sign = Fraction(-1)
            else:
                return shifts

    def yterm(self) -> tuple[Fraction, int]:
        c = Fraction(1)
        if self.tok.kind == "num":
            c = self.coeff()
            self.expect("*")
        t = self.tok
        if not (t.kind == "name" and t.text == "y"):
            self.error(f"expected a y[n+i] term, found {t.text or 'end of input'!r}")
        self.i += 1
        self.expect("[")
        t = self.tok
        if not (t.kind == "name" and t.text == "n"):
            self.error("expected 'n' inside y[...]")
        self.i += 1
        shift = 0
        if self.accept("+"):
            shift = self.integer()
        elif self.accept("-"):
            shift = -self.integer()
        self.expect("]")
        return c, shift

    # -- right-hand side -----------------------------------------------------

    def rhs(self) -> Quasipolynomial:
        groups = []
        sign = 1.0
        if self.accept("-"):
            sign = -1.0
        else:
            self.accept("+")
        while True:
            groups.append(self.qterm(sign))
            if self.accept("+"):
                sign = 1.0
            elif self.accept("-"):
                sign = -1.0
            else:
                return Quasipolynomial(tuple(groups))

    def qterm(self, sign: float) -> QuasiGroup:
        start = self.tok
        coef = Fraction(sign)
        npow = 0
        mu: Fraction | float | None = None
        trig = None
        while True:
            t = self.tok
            if t.kind == "num":
                if self.peek().text == "^":
                    mu = self._mul_base(mu, self.number())
                    self._caret_n()
                else:
                    coef *= self.coeff()
            elif t.text == "(":
                self.i += 1
                neg = self.accept("-") is not None
                val = self.number()
                self.expect(")")
                if self.tok.text != "^":
                    self.error("a parenthesized number must be an exponential base '(...)^n'")
                self._caret_n()
                mu = self._mul_base(mu, -val if neg else val)
            elif t.kind == "name" and t.text == "n":
                self.i += 1
                if self.accept("^"):
                    npow += self.integer()
                else:
                    npow += 1
            elif t.kind == "name" and t.text in ("sin", "cos"):
                if trig is not None:
                    self.error("at most one sin/cos factor per term")
                self.i += 1
                self.expect("(")
                phi, ratio = self.angle()
                self.expect(")")
                trig = (t.text, phi, ratio)
            elif t.kind == "name" and t.text == "pi":
                self.error("'pi' may only appear inside a sin/cos argument")
            else:
                self.error(f"expected a term, found {t.text or 'end of input'!r}")
            if not self.accept("*"):
                break
        if mu is not None and mu == 0:
            raise ParseError("base 0^n is not allowed", self.text, start.pos)
        value = float(coef)
        c = [0.0] * npow + [value]
        base = float(mu) if mu is not None else 1.0
        try:
            if trig is None:
                return QuasiGroup.real(base, c)
            kind, phi, ratio = trig
            zeros = [0.0] * (npow + 1)
            if kind == "sin":
                return QuasiGroup.trig(base, phi, c, zeros, ratio)
            return QuasiGroup.trig(base, phi, zeros, c, ratio)
        except InvalidBase as exc:
            raise ParseError(str(exc), self.text, start.pos) from None

    def _caret_n(self):
        self.expect("^")
        t = self.tok
        if not (t.kind == "name" and t.text == "n"):
            self.error("expected 'n' as the exponent of a base")
        self.i += 1

    @staticmethod
    def _mul_base(mu, value):
        return value if mu is None else mu * value

    def angle(self) -> tuple[float, Fraction | None]:
        """Parse ``c*n`` with ``c`` a number or a rational multiple of pi."""
        start = self.tok
        ratio, pi_power, n_power = self._angle_product()
        if n_power != 1:
            raise ParseError("angle must be linear in n, e.g. pi/8*n", self.text, start.pos)
        if pi_power not in (0, 1):
            raise ParseError("angle may contain pi only once", self.text, start.pos)
        if pi_power:
            return float(ratio) * math.pi, ratio
        return float(ratio), None

    def _angle_product(self) -> tuple[Fraction, int, int]:
        """``["-"] afactor {("*" | "/") afactor}`` as (ratio, power of pi, power of n)."""
        ratio = Fraction(-1) if self.accept("-") else Fraction(1)
        pi_power = n_power = 0
        divide = False
        while True:
            t = self.tok
            if t.kind == "num":
                v, p, k = self.number(), 0, 0
            elif t.kind == "name" and t.text in ("pi", "n"):
                self.i += 1
                v, p, k = Fraction(1), int(t.text == "pi"), int(t.text == "n")
            elif self.accept("("):
                v, p, k = self._angle_product()
                self.expect(")")
            else:
                self.error("expected a number, 'pi' or 'n' in the angle")
            if divide:
                if v == 0:
                    self.error("division by zero", t)
                if p or k:
                    self.error("cannot divide by pi or n in the angle", t)
                ratio /= v
            else:
                ratio *= v
            pi_power += p
            n_power += k
            if self.accept("*"):
                divide = False
            elif self.accept("/"):
                divide = True
            else:
                return ratio, pi_power, n_power


def parse(text: str) -> ParsedEquation:
    """Parse an equation like ``y[n+2] + y[n] = cos(pi/8*n)``."""
    return _Parser(text).equation()


def parse_quasipolynomial(text: str) -> Quasipolynomial:
    """Parse a bare right-hand-side expression, e.g. a candidate solution ``-0.5*n*sin(pi/2*n)``."""
    p = _Parser(text)
    q = p.rhs()
    if p.tok.kind != "end":
        p.error(f"unexpected {p.tok.text!r}")
    return q

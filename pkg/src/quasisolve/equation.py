"""The linear constant-coefficient difference equation data model."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import InvalidEquation
from .quasipoly import Quasipolynomial, format_number, render_quasipolynomial


@dataclass(frozen=True)
class DifferenceEquation:
    """``y[n+k] + a1 y[n+k-1] + ... + ak y[n] = rhs(n)`` with ``ak != 0``."""

    coeffs: tuple[float, ...]
    rhs: Quasipolynomial = field(default_factory=Quasipolynomial)

    def __post_init__(self):
        c = tuple(float(a) for a in self.coeffs)
        if not c:
            raise InvalidEquation("equation order must be at least 1")
        if not all(math.isfinite(a) for a in c):
            raise InvalidEquation("equation coefficients must be finite")
        if c[-1] == 0:
            raise InvalidEquation("a^(k) = 0: degenerate equation, reduce the order")
        object.__setattr__(self, "coeffs", c)

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def lhs_weights(self) -> tuple[float, ...]:
        """Weights of ``y[n+k], y[n+k-1], ..., y[n]``."""
        return (1.0,) + self.coeffs


def _shift(i: int) -> str:
    return f"y[n+{i}]" if i else "y[n]"


def render_equation(eq: DifferenceEquation, digits: int | None = None) -> str:
    """Text form accepted back by the parser; full precision by default."""
    k = eq.order
    pieces = [_shift(k)]
    for i, a in enumerate(eq.coeffs, start=1):
        if a == 0:
            continue
        mag = format_number(abs(a), digits)
        body = _shift(k - i) if mag == "1" else f"{mag}*{_shift(k - i)}"
        pieces.append((" - " if a < 0 else " + ") + body)
    return "".join(pieces) + " = " + render_quasipolynomial(eq.rhs, digits, eps=0.0)

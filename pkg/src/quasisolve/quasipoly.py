"""Quasipolynomial values: bases, coefficient groups, basis specs, solutions.

A real group with base ``mu`` and coefficients ``c_0..c_s`` stands for

    sum_j c_j * n^j * mu^n

and a complex group with base ``|mu| e^{i phi}`` and interleaved
coefficients ``(a_0, b_0, ..., a_s, b_s)`` stands for

    sum_j n^j * |mu|^n * (a_j sin(n phi) + b_j cos(n phi)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidBase

EPS_BASE = 1e-9
EPS_PRINT = 1e-12

REAL = "real"
COMPLEX = "complex"


def normalize_angle(phi: float, pi_ratio: Fraction | None = None):
    """Reduce an angle into (-pi, pi].

    When ``pi_ratio`` is given (``phi == pi_ratio * pi``) the reduction is
    done exactly on the ratio and ``phi`` is recomputed from it.
    """
    if pi_ratio is not None:
        r = Fraction(pi_ratio) % 2
        if r > 1:
            r -= 2
        return float(r) * math.pi, r
    phi = math.remainder(phi, 2 * math.pi)
    if phi <= -math.pi:
        phi = math.pi
    return phi, None


@dataclass(frozen=True, eq=False)
class BaseKey:
    """The base ``mu`` of one quasipolynomial group.

    Real kind uses ``mu``; complex kind uses ``modulus`` and ``phi`` with
    ``0 < phi < pi`` (the conjugate ``-phi`` is implied). ``pi_ratio`` is
    kept only for printing angles as rational multiples of pi.
    """

    kind: str
    mu: float = 0.0
    modulus: float = 0.0
    phi: float = 0.0
    pi_ratio: Fraction | None = None

    def __post_init__(self):
        if self.kind == REAL:
            if not math.isfinite(self.mu) or self.mu == 0:
                raise InvalidBase(f"real base must be finite and nonzero, got {self.mu!r}")
        elif self.kind == COMPLEX:
            if not math.isfinite(self.modulus) or self.modulus <= 0:
                raise InvalidBase(f"complex base modulus must be positive, got {self.modulus!r}")
            if not 0 < self.phi < math.pi:
                raise InvalidBase(f"complex base angle must lie in (0, pi), got {self.phi!r}")
        else:
            raise InvalidBase(f"unknown base kind {self.kind!r}")

    @classmethod
    def real(cls, mu: float) -> "BaseKey":
        return cls(REAL, mu=float(mu))

    @classmethod
    def complex(cls, modulus: float, phi: float | None = None,
                pi_ratio: Fraction | None = None) -> "BaseKey":
        if pi_ratio is not None:
            pi_ratio = Fraction(pi_ratio)
            phi = float(pi_ratio) * math.pi
        return cls(COMPLEX, modulus=float(modulus), phi=float(phi), pi_ratio=pi_ratio)

    @property
    def is_real(self) -> bool:
        return self.kind == REAL

    @property
    def width(self) -> int:
        """Number of basis functions per power of n."""
        return 1 if self.kind == REAL else 2

    @property
    def value(self) -> complex:
        """The base as a complex number (the upper member of a conjugate pair)."""
        if self.kind == REAL:
            return complex(self.mu)
        return self.modulus * complex(math.cos(self.phi), math.sin(self.phi))

    def sort_key(self):
        if self.kind == REAL:
            return (0, self.mu, 0.0)
        return (1, self.modulus, self.phi)

    def __eq__(self, other):
        if not isinstance(other, BaseKey):
            return NotImplemented
        if self.kind != other.kind:
            return False
        if self.kind == REAL:
            return abs(self.mu - other.mu) <= EPS_BASE
        return (abs(self.modulus - other.modulus) <= EPS_BASE
                and abs(self.phi - other.phi) <= EPS_BASE)

    __hash__ = None

    def __repr__(self):
        if self.kind == REAL:
            return f"BaseKey.real({self.mu!r})"
        if self.pi_ratio is not None:
            return f"BaseKey.complex({self.modulus!r}, pi_ratio=Fraction({str(self.pi_ratio)!r}))"
        return f"BaseKey.complex({self.modulus!r}, {self.phi!r})"


def _trim(coeffs: Sequence[float], width: int) -> tuple[float, ...]:
    c = [float(x) for x in coeffs]
    while len(c) > width and all(x == 0 for x in c[-width:]):
        del c[-width:]
    return tuple(c)


@dataclass(frozen=True)
class QuasiGroup:
    """All terms of a quasipolynomial sharing one base."""

    base: BaseKey
    coeffs: tuple[float, ...]

    def __post_init__(self):
        w = self.base.width
        if len(self.coeffs) == 0 or len(self.coeffs) % w:
            raise ValueError(f"coefficient count {len(self.coeffs)} is not a positive multiple of {w}")
        object.__setattr__(self, "coeffs", _trim(self.coeffs, w))

    @classmethod
    def real(cls, mu: float, coeffs: Sequence[float]) -> "QuasiGroup":
        return cls(BaseKey.real(mu), tuple(coeffs))

    @classmethod
    def trig(cls, modulus: float, phi: float | None, sin_coeffs: Sequence[float],
             cos_coeffs: Sequence[float], pi_ratio: Fraction | None = None) -> "QuasiGroup":
        """Build a group from separate sin/cos coefficient lists, normalizing the angle.

        A negative angle is folded to positive by negating the sin part;
        angles 0 and pi collapse to real bases ``modulus`` and ``-modulus``.
        A negative ``modulus`` is absorbed into the angle, since
        ``(-r)^n cos(n phi) = r^n cos(n (phi + pi))`` on the integers.
        """
        if pi_ratio is not None:
            pi_ratio = Fraction(pi_ratio)
            phi = float(pi_ratio) * math.pi
        if modulus < 0:
            modulus = -modulus
            if pi_ratio is not None:
                pi_ratio += 1
            else:
                phi += math.pi
        if modulus == 0:
            raise InvalidBase("base 0^n is not allowed")
        s = max(len(sin_coeffs), len(cos_coeffs))
        sin_c = list(sin_coeffs) + [0.0] * (s - len(sin_coeffs))
        cos_c = list(cos_coeffs) + [0.0] * (s - len(cos_coeffs))
        phi, pi_ratio = normalize_angle(phi, pi_ratio)
        if phi < 0:
            phi = -phi
            pi_ratio = -pi_ratio if pi_ratio is not None else None
            sin_c = [-x for x in sin_c]
        if phi <= EPS_BASE:
            return cls.real(modulus, cos_c)
        if phi >= math.pi - EPS_BASE:
            return cls.real(-modulus, cos_c)
        inter = [v for pair in zip(sin_c, cos_c) for v in pair]
        return cls(BaseKey.complex(modulus, phi, pi_ratio), tuple(inter))

    @property
    def degree(self) -> int:
        return len(self.coeffs) // self.base.width - 1

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def padded(self, degree: int) -> tuple[float, ...]:
        """Coefficients zero-padded up to ``degree``."""
        extra = (degree - self.degree) * self.base.width
        return self.coeffs + (0.0,) * max(extra, 0)


def merge_groups(groups) -> "Quasipolynomial":
    """Sum groups with equal bases, drop zero groups, order by base.

    Accepts a :class:`Quasipolynomial` or any iterable of groups.
    """
    if isinstance(groups, Quasipolynomial):
        groups = groups.groups
    return Quasipolynomial(tuple(groups))


def _merge(groups: Iterable[QuasiGroup]) -> tuple[QuasiGroup, ...]:
    merged: list[tuple[BaseKey, list[float]]] = []
    for g in groups:
        for base, acc in merged:
            if base == g.base:
                if len(acc) < len(g.coeffs):
                    acc.extend([0.0] * (len(g.coeffs) - len(acc)))
                for i, c in enumerate(g.coeffs):
                    acc[i] += c
                break
        else:
            merged.append((g.base, list(g.coeffs)))
    out = [QuasiGroup(base, tuple(acc)) for base, acc in merged]
    out = [g for g in out if not g.is_zero]
    out.sort(key=lambda g: g.base.sort_key())
    return tuple(out)


@dataclass(frozen=True)
class Quasipolynomial:
    """A finite sum of quasipolynomial groups with pairwise distinct bases.

    Construction always merges equal bases, so the invariant holds for
    every instance.
    """

    groups: tuple[QuasiGroup, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "groups", _merge(self.groups))

    def __add__(self, other: "Quasipolynomial") -> "Quasipolynomial":
        return Quasipolynomial(self.groups + other.groups)

    def __neg__(self) -> "Quasipolynomial":
        return self.scale(-1.0)

    def __sub__(self, other: "Quasipolynomial") -> "Quasipolynomial":
        return self + (-other)

    def scale(self, factor: float) -> "Quasipolynomial":
        return Quasipolynomial(tuple(QuasiGroup(g.base, tuple(factor * c for c in g.coeffs))
                                     for g in self.groups))

    def __bool__(self):
        return bool(self.groups)

    def __call__(self, n):
        return evaluate(self, n)


def _group_value(g: QuasiGroup, n: int) -> float:
    total = 0.0
    if g.base.is_real:
        mu_n = g.base.mu ** n
        for j, c in enumerate(g.coeffs):
            if c:
                total += c * n ** j * mu_n
        return total
    r_n = g.base.modulus ** n
    s, c_ = math.sin(n * g.base.phi), math.cos(n * g.base.phi)
    for j in range(g.degree + 1):
        a, b = g.coeffs[2 * j], g.coeffs[2 * j + 1]
        if a or b:
            total += n ** j * r_n * (a * s + b * c_)
    return total


def evaluate(q: Quasipolynomial, n: int) -> float:
    """Value of ``q`` at the integer ``n >= 0`` (with ``0**0 == 1``)."""
    if n < 0:
        raise ValueError("evaluate requires n >= 0")
    return math.fsum(_group_value(g, n) for g in q.groups)


def evaluate_many(q: Quasipolynomial, ns) -> np.ndarray:
    """Vectorized :func:`evaluate` over an array of non-negative integers."""
    ns = np.asarray(ns, dtype=np.int64)
    nf = ns.astype(float)
    out = np.zeros(ns.shape)
    for g in q.groups:
        if g.base.is_real:
            mu_n = np.power(g.base.mu, ns)
            poly = np.zeros(ns.shape)
            for c in reversed(g.coeffs):
                poly = poly * nf + c
            out += poly * mu_n
        else:
            r_n = np.power(g.base.modulus, ns)
            sn, cn = np.sin(nf * g.base.phi), np.cos(nf * g.base.phi)
            poly_s = np.zeros(ns.shape)
            poly_c = np.zeros(ns.shape)
            for j in range(g.degree, -1, -1):
                poly_s = poly_s * nf + g.coeffs[2 * j]
                poly_c = poly_c * nf + g.coeffs[2 * j + 1]
            out += r_n * (poly_s * sn + poly_c * cn)
    return out


@dataclass(frozen=True)
class BasisSpec:
    """Ordered basis ``n^(offset+j) * mu^n`` (or the sin/cos pairs), j = 0..degree."""

    base: BaseKey
    offset: int = 0
    degree: int = 0

    def __post_init__(self):
        if self.offset < 0 or self.degree < 0:
            raise ValueError("basis offset and degree must be non-negative")

    @property
    def dimension(self) -> int:
        return (self.degree + 1) * self.base.width

    @property
    def total_degree(self) -> int:
        return self.offset + self.degree

    def labels(self, digits: int | None = 10) -> list[str]:
        out = []
        for j in range(self.offset, self.offset + self.degree + 1):
            if self.base.is_real:
                out.append(_term_body(self.base, j, None, digits) or "1")
            else:
                out.append(_term_body(self.base, j, "sin", digits))
                out.append(_term_body(self.base, j, "cos", digits))
        return out

    def function_values(self, ns) -> np.ndarray:
        """Matrix with one column per basis function, one row per ``n``."""
        ns = np.asarray(ns, dtype=np.int64)
        nf = ns.astype(float)
        cols = []
        if self.base.is_real:
            mu_n = np.power(self.base.mu, ns)
            for j in range(self.offset, self.offset + self.degree + 1):
                cols.append(nf ** j * mu_n)
        else:
            r_n = np.power(self.base.modulus, ns)
            sn, cn = np.sin(nf * self.base.phi), np.cos(nf * self.base.phi)
            for j in range(self.offset, self.offset + self.degree + 1):
                cols.append(nf ** j * r_n * sn)
                cols.append(nf ** j * r_n * cn)
        return np.column_stack(cols) if cols else np.zeros((len(ns), 0))

    def element(self, coeffs: Sequence[float]) -> Quasipolynomial:
        """The quasipolynomial with the given coordinates in this basis."""
        if len(coeffs) != self.dimension:
            raise ValueError(f"expected {self.dimension} coefficients, got {len(coeffs)}")
        lead = (0.0,) * (self.offset * self.base.width)
        return Quasipolynomial((QuasiGroup(self.base, lead + tuple(float(c) for c in coeffs)),))


@dataclass(frozen=True)
class ParticularSolution:
    """Coefficients of a particular solution, one vector per basis block.

    ``kernel_report`` lists the homogeneous directions ``n^j mu^n`` (j < m)
    met on resonant blocks; their coefficients are free. ``residual`` is
    the max absolute substitution residual over ``range`` (inclusive) and
    ``residual_scale`` is ``1 + max|f(n)|`` over the same range.
    """

    parts: tuple[tuple[BasisSpec, tuple[float, ...]], ...] = ()
    kernel_report: tuple[BasisSpec, ...] = ()
    residual: float = 0.0
    range: tuple[int, int] = (0, 100)
    reports: tuple = field(default=(), compare=False)
    residual_scale: float = field(default=1.0, compare=False)

    def __post_init__(self):
        for spec, vec in self.parts:
            if len(vec) != spec.dimension:
                raise ValueError("coefficient vector does not match its basis dimension")
        if not (math.isfinite(self.residual) and self.residual >= 0):
            raise ValueError("residual must be finite and non-negative")

    def as_quasipolynomial(self) -> Quasipolynomial:
        q = Quasipolynomial()
        for spec, vec in self.parts:
            q = q + spec.element(vec)
        return q

    def coefficients_for(self, base: BaseKey) -> tuple[float, ...] | None:
        for spec, vec in self.parts:
            if spec.base == base:
                return vec
        return None


# -- rendering ---------------------------------------------------------------

def format_number(x: float, digits: int | None = 10) -> str:
    """``digits`` significant digits, or the shortest round-trip repr if None."""
    if x == 0:
        return "0"
    if digits is None:
        s = repr(float(x))
        if s.endswith(".0"):
            s = s[:-2]
        return s
    return format(x, f".{digits}g")


def format_angle(base: BaseKey, digits: int | None = 10) -> str:
    """The trig argument, e.g. ``(pi/8)*n`` or ``0.5*n``."""
    r = base.pi_ratio
    if r is not None:
        if r.numerator == 1:
            head = f"pi/{r.denominator}" if r.denominator != 1 else "pi"
        else:
            head = f"{r.numerator}*pi/{r.denominator}" if r.denominator != 1 else f"{r.numerator}*pi"
        return f"({head})*n"
    return f"{format_number(base.phi, digits)}*n"


def _term_body(base: BaseKey, power: int, trig: str | None, digits: int | None) -> str:
    parts = []
    if power == 1:
        parts.append("n")
    elif power > 1:
        parts.append(f"n^{power}")
    if base.is_real:
        if base.mu != 1:
            m = format_number(base.mu, digits)
            parts.append(f"({m})^n" if base.mu < 0 else f"{m}^n")
    else:
        if base.modulus != 1:
            parts.append(f"{format_number(base.modulus, digits)}^n")
        parts.append(f"{trig}({format_angle(base, digits)})")
    return "*".join(parts)


def _join_terms(terms: list[tuple[float, str]], digits: int | None, eps: float) -> str:
    pieces = []
    for c, body in terms:
        if abs(c) <= eps:
            continue
        mag = format_number(abs(c), digits)
        if not body:
            text = mag
        elif mag == "1":
            text = body
        else:
            text = f"{mag}*{body}"
        neg = c < 0
        if not pieces:
            pieces.append(("-" if neg else "") + text)
        else:
            pieces.append((" - " if neg else " + ") + text)
    return "".join(pieces) if pieces else "0"


def quasipolynomial_terms(q: Quasipolynomial, digits: int | None = 10) -> list[tuple[float, str]]:
    terms = []
    for g in q.groups:
        for j in range(g.degree + 1):
            if g.base.is_real:
                terms.append((g.coeffs[j], _term_body(g.base, j, None, digits)))
            else:
                terms.append((g.coeffs[2 * j], _term_body(g.base, j, "sin", digits)))
                terms.append((g.coeffs[2 * j + 1], _term_body(g.base, j, "cos", digits)))
    return terms


def render_quasipolynomial(q: Quasipolynomial, digits: int | None = 10,
                           eps: float = EPS_PRINT) -> str:
    return _join_terms(quasipolynomial_terms(q, digits), digits, eps)


def render(sol: ParticularSolution, digits: int | None = 10) -> str:
    """Closed form of a particular solution, e.g. ``-0.5*n*sin((pi/2)*n)``.

    Coefficients at or below ``EPS_PRINT`` in magnitude are omitted.
    """
    return render_quasipolynomial(sol.as_quasipolynomial(), digits)

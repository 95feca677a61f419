"""Characteristic polynomial evaluation and resonance multiplicity detection."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import InvalidEquation, QuasisolveError
from .quasipoly import BaseKey

EPS_RES = 1e-7


@dataclass(frozen=True)
class CharPoly:
    """Monic ``lambda^k + a1 lambda^(k-1) + ... + ak``; ``coeffs`` starts with the 1."""

    coeffs: tuple[float, ...]

    def __post_init__(self):
        c = tuple(float(x) for x in self.coeffs)
        if len(c) < 2:
            raise InvalidEquation("characteristic polynomial must have degree >= 1")
        if c[0] != 1.0:
            raise InvalidEquation("characteristic polynomial must be monic")
        if c[-1] == 0:
            raise InvalidEquation("trailing coefficient a^(k) must be nonzero")
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_equation_coeffs(cls, a: Sequence[float]) -> "CharPoly":
        return cls((1.0,) + tuple(a))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1


@dataclass(frozen=True)
class ResonanceReport:
    """Multiplicity ``m`` of a base as a characteristic root.

    ``witness`` holds the normalized magnitudes ``|p^(j)(mu)| / scale_j``
    for ``j = 0..m``; the last one is the first above threshold.
    """

    base: BaseKey
    multiplicity: int
    witness: tuple[float, ...]
    warning: str | None = None


def _derivative(coeffs: Sequence[float]) -> list[float]:
    deg = len(coeffs) - 1
    return [c * (deg - i) for i, c in enumerate(coeffs[:-1])]


def _horner(coeffs: Sequence[float], z):
    acc = 0 * z
    for c in coeffs:
        acc = acc * z + c
    return acc


def eval_charpoly_derivative(p: CharPoly, z: complex, order: int) -> complex:
    """Value of the ``order``-th derivative of ``p`` at ``z``."""
    if order < 0 or order > p.degree:
        raise ValueError(f"derivative order must be in 0..{p.degree}")
    c = list(p.coeffs)
    for _ in range(order):
        c = _derivative(c)
    return complex(_horner(c, complex(z)))


def multiplicity(p: CharPoly, base: BaseKey, eps_res: float = EPS_RES) -> ResonanceReport:
    """How many times ``base`` (or its conjugate pair) is a root of ``p``.

    Walks the derivative cascade ``p, p', p'', ...`` at ``mu`` and stops at
    the first derivative whose magnitude, relative to the magnitude the
    same evaluation would have with all terms aligned, exceeds ``eps_res``.
    """
    z = base.value
    r = abs(z)
    c = list(p.coeffs)
    witness = []
    for j in range(p.degree + 1):
        value = abs(_horner(c, z))
        scale = max(1.0, _horner([abs(x) for x in c], r))
        ratio = value / scale
        witness.append(ratio)
        if ratio > eps_res:
            warning = None
            if ratio <= 10 * eps_res:
                warning = (f"near resonance at {base!r}: |p^({j})(mu)|/scale = {ratio:.3g} "
                           f"is within 10x of eps_res = {eps_res:g}")
            return ResonanceReport(base, j, tuple(witness), warning)
        c = _derivative(c)
    # unreachable for eps_res < 1: the k-th derivative of a monic degree-k polynomial is k!
    raise QuasisolveError(f"multiplicity of {base!r} exceeds degree {p.degree}; inconsistent input")

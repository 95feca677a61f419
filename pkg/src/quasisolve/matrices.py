"""Matrices of the shift operator and of the difference operator on quasipolynomial subspaces.

All matrices act on coordinate columns in the power basis
``mu^n, n mu^n, ..., n^d mu^n`` (real base) or the interleaved basis
``|mu|^n sin(n phi), |mu|^n cos(n phi), n |mu|^n sin(n phi), ...`` (complex
base). Column ``j`` holds the coordinates of the image of basis element ``j``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InvalidBase, InvalidEquation
from .quasipoly import BaseKey, BasisSpec


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    """Dense matrix of a restricted operator together with the basis it acts on.

    ``basis`` describes the full space the matrix acts on; for matrices built
    for a resonant block its offset is 0 and its degree is ``m + s``.
    """

    basis: BasisSpec
    entries: np.ndarray

    def __post_init__(self):
        e = np.asarray(self.entries, dtype=float)
        if e.ndim != 2 or e.shape[0] != e.shape[1]:
            raise ValueError(f"operator matrix must be square, got shape {e.shape}")
        if e.shape[0] != self.basis.dimension:
            raise ValueError(f"matrix size {e.shape[0]} does not match basis dimension "
                             f"{self.basis.dimension}")
        e.setflags(write=False)
        object.__setattr__(self, "entries", e)

    @property
    def size(self) -> int:
        return self.entries.shape[0]


def pascal_matrix(size: int) -> np.ndarray:
    """Upper triangular binomial matrix, entry (i, j) = C(j, i)."""
    if size < 1:
        raise ValueError("pascal_matrix size must be at least 1")
    rows = [[0] * size for _ in range(size)]
    for j in range(size):
        rows[0][j] = 1
    for i in range(1, size):
        for j in range(i, size):
            # C(j, i) = C(j-1, i-1) + C(j-1, i)
            rows[i][j] = rows[i - 1][j - 1] + rows[i][j - 1]
    return np.array(rows, dtype=float)


def rotation_block(phi: float) -> np.ndarray:
    """Multiplication by e^{i phi} on the (sin, cos) coordinate pair."""
    c, s = math.cos(phi), math.sin(phi)
    return np.array([[c, -s], [s, c]])


def _full_basis(base: BaseKey, basis: BasisSpec) -> BasisSpec:
    if basis.base != base or basis.base.kind != base.kind:
        raise InvalidBase("basis does not belong to the given base")
    return BasisSpec(base, 0, basis.total_degree)


def shift_matrix_real(base: BaseKey, basis: BasisSpec) -> OperatorMatrix:
    """``mu * P`` over total degree ``offset + degree`` of ``basis``."""
    if not base.is_real:
        raise InvalidBase("shift_matrix_real needs a real base")
    if base.mu == 0:
        raise InvalidBase("base mu = 0 is not allowed")
    full = _full_basis(base, basis)
    return OperatorMatrix(full, base.mu * pascal_matrix(full.degree + 1))


def shift_matrix_complex(base: BaseKey, basis: BasisSpec) -> OperatorMatrix:
    """``|mu| * (P kron J)`` over total degree ``offset + degree`` of ``basis``."""
    if base.is_real:
        raise InvalidBase("shift_matrix_complex needs a complex base")
    if base.modulus <= 0:
        raise InvalidBase("base modulus must be positive")
    full = _full_basis(base, basis)
    entries = base.modulus * np.kron(pascal_matrix(full.degree + 1), rotation_block(base.phi))
    return OperatorMatrix(full, entries)


def shift_matrix(basis: BasisSpec) -> OperatorMatrix:
    if basis.base.is_real:
        return shift_matrix_real(basis.base, basis)
    return shift_matrix_complex(basis.base, basis)


def operator_polynomial(T: OperatorMatrix, coeffs: Sequence[float]) -> OperatorMatrix:
    """``T^k + a1 T^(k-1) + ... + ak I`` by Horner's scheme."""
    coeffs = [float(a) for a in coeffs]
    if not coeffs:
        raise InvalidEquation("operator polynomial needs at least one coefficient")
    if coeffs[-1] == 0:
        raise InvalidEquation("trailing coefficient a^(k) must be nonzero")
    t = T.entries
    eye = np.eye(T.size)
    r = t + coeffs[0] * eye
    for a in coeffs[1:]:
        r = r @ t + a * eye
    return OperatorMatrix(T.basis, r)

"""Independent checks: substitution residuals and a collocation solver.

Nothing here touches the operator-matrix pipeline. Residuals come from
pointwise evaluation of the candidate; the collocation solver is the
classical method of undetermined coefficients, fitted at sample points
in extended precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import mpmath
import numpy as np

from .equation import DifferenceEquation
from .errors import NoConsistentSolution
from .quasipoly import BasisSpec, ParticularSolution, Quasipolynomial, evaluate_many

COLLOCATION_TOL = 1e-7
PRECISION = 50
# relative size below which an ansatz function counts as annihilated
ANNIHILATED = 1e-12


@dataclass(frozen=True)
class ResidualReport:
    max_residual: float
    argmax_n: int
    range: tuple[int, int]
    scale: float

    @property
    def relative(self) -> float:
        return self.max_residual / self.scale


def _as_quasipolynomial(candidate) -> Quasipolynomial:
    if isinstance(candidate, ParticularSolution):
        return candidate.as_quasipolynomial()
    return candidate


def residual(eq: DifferenceEquation, candidate, range: tuple[int, int] = (0, 100)) -> ResidualReport:
    """Max of ``|LHS(n) - f(n)|`` for ``n`` in the inclusive ``range``.

    ``candidate`` is a :class:`ParticularSolution` or a :class:`Quasipolynomial`.
    The reported ``scale`` is ``1 + max|f(n)|`` over the range.
    """
    lo, hi = range
    if lo < 0 or hi < lo:
        raise ValueError(f"residual range must be non-empty and non-negative, got {range}")
    y = evaluate_many(_as_quasipolynomial(candidate), np.arange(lo, hi + eq.order + 1))
    n_pts = hi - lo + 1
    k = eq.order
    lhs = np.zeros(n_pts)
    for i, w in enumerate(eq.lhs_weights()):
        lhs += w * y[k - i:k - i + n_pts]
    f = evaluate_many(eq.rhs, np.arange(lo, hi + 1))
    err = np.abs(lhs - f)
    j = int(np.argmax(err))
    return ResidualReport(float(err[j]), lo + j, (lo, hi), 1.0 + float(np.max(np.abs(f))))


def _mp_columns(spec: BasisSpec, ns) -> list[list]:
    """Basis function values at high precision, one list per basis function."""
    base = spec.base
    cols = []
    if base.is_real:
        mu = mpmath.mpf(base.mu)
        pw = [mu ** n for n in ns]
        for j in range(spec.offset, spec.offset + spec.degree + 1):
            cols.append([mpmath.mpf(n) ** j * p for n, p in zip(ns, pw)])
    else:
        r, phi = mpmath.mpf(base.modulus), mpmath.mpf(base.phi)
        pw = [r ** n for n in ns]
        sn = [mpmath.sin(n * phi) for n in ns]
        cn = [mpmath.cos(n * phi) for n in ns]
        for j in range(spec.offset, spec.offset + spec.degree + 1):
            nj = [mpmath.mpf(n) ** j for n in ns]
            cols.append([a * p * s for a, p, s in zip(nj, pw, sn)])
            cols.append([a * p * c for a, p, c in zip(nj, pw, cn)])
    return cols


def _mp_rhs(eq: DifferenceEquation, ns) -> list:
    f = [mpmath.mpf(0)] * len(ns)
    for g in eq.rhs.groups:
        cols = _mp_columns(BasisSpec(g.base, 0, g.degree), ns)
        for c, col in zip(g.coeffs, cols):
            if c:
                c = mpmath.mpf(c)
                f = [a + c * b for a, b in zip(f, col)]
    return f


def collocation_solve(eq: DifferenceEquation, ansatz: Sequence[BasisSpec]) -> np.ndarray:
    """Coefficients of a particular solution in the span of ``ansatz``.

    When every ansatz block has its own right-hand-side group with the same
    base (and vice versa), each group is fitted as a separate subproblem,
    the classical superposition split. Otherwise one joint fit is made.
    Returns coefficients in ansatz order.
    """
    groups = eq.rhs.groups
    matched = [[g for g in groups if g.base == spec.base] for spec in ansatz]
    if (len(ansatz) > 1 and len(ansatz) == len(groups)
            and all(len(m) == 1 for m in matched)
            and len({id(m[0]) for m in matched}) == len(groups)):
        return np.concatenate([
            _collocation_fit(DifferenceEquation(eq.coeffs, Quasipolynomial((m[0],))), [spec])
            for spec, m in zip(ansatz, matched)])
    return _collocation_fit(eq, ansatz)


def _collocation_fit(eq: DifferenceEquation, ansatz: Sequence[BasisSpec]) -> np.ndarray:
    """Joint collocation fit of ``eq`` over the whole ``ansatz``.

    Substitutes the ansatz into the equation at ``n = 0 .. 2D + k`` for ``D``
    unknowns and solves the normal equations of the overdetermined system
    by pivoted elimination, all in ``PRECISION`` decimal digits. Ansatz
    functions the equation annihilates get coefficient 0. Raises
    :class:`NoConsistentSolution` if the fit leaves a residual above
    ``1e-7 * (1 + max|f|)``.
    """
    dim = sum(spec.dimension for spec in ansatz)
    if dim < 1:
        raise ValueError("ansatz must contain at least one function")
    k = eq.order
    n_samples = 2 * dim + k + 1
    weights = eq.lhs_weights()
    with mpmath.workdps(PRECISION):
        ns = list(range(n_samples + k))
        w = [mpmath.mpf(x) for x in weights]
        cols, live = [], []
        for spec in ansatz:
            for v in _mp_columns(spec, ns):
                size = max(abs(x) for x in v)
                lhs = [mpmath.fdot(w, [v[n + k - i] for i in range(k + 1)])
                       for n in range(n_samples)]
                # normalize by the function's own size so annihilated columns read as ~0
                lhs = [x / size for x in lhs]
                live.append(max(abs(x) for x in lhs) > ANNIHILATED)
                cols.append((lhs, size))
        f = _mp_rhs(eq, list(range(n_samples)))
        idx = [i for i, ok in enumerate(live) if ok]
        z = [mpmath.mpf(0)] * dim
        if idx:
            a = [cols[i][0] for i in idx]
            m = mpmath.matrix(len(idx), len(idx))
            b = mpmath.matrix(len(idx), 1)
            for r, ar in enumerate(a):
                b[r] = mpmath.fdot(ar, f)
                for c in range(r, len(idx)):
                    m[r, c] = m[c, r] = mpmath.fdot(ar, a[c])
            sol = mpmath.lu_solve(m, b)
            for r, i in enumerate(idx):
                z[i] = sol[r]
        fit = max(abs(mpmath.fsum(cols[i][0][n] * z[i] for i in range(dim)) - f[n])
                  for n in range(n_samples))
        scale = 1 + max(abs(x) for x in f)
        if fit > COLLOCATION_TOL * scale:
            raise NoConsistentSolution(f"collocation residual {float(fit):.3g} exceeds "
                                       f"{COLLOCATION_TOL:g} * {float(scale):.3g}; the ansatz "
                                       f"does not span a particular solution")
        return np.array([float(z[i] / cols[i][1]) for i in range(dim)])

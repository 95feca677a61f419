"""Particular solutions by the matrix form of undetermined coefficients.

For each right-hand-side group with base ``mu``, degree ``s`` and resonance
multiplicity ``m`` the shift operator is written down on the space of
degree ``m + s``, the difference operator ``R = p(T)`` is formed, and the
system is cut down to its nondegenerate block: the first ``m`` columns
(the kernel ``n^j mu^n, j < m``) and the last ``m`` rows (never reached by
``R``) are removed. What remains is square, invertible, and maps the
coefficients on ``n^m mu^n .. n^(m+s) mu^n`` to the right-hand side.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .equation import DifferenceEquation
from .errors import VerificationFailed
from .linalg import PIVOT_TOL, gauss_solve
from .matrices import OperatorMatrix, operator_polynomial, shift_matrix
from .oracle import residual
from .quasipoly import BasisSpec, ParticularSolution, QuasiGroup
from .resonance import EPS_RES, CharPoly, ResonanceReport, multiplicity

EPS_LIN = 1e-10
EPS_VERIFY = 1e-8
VERIFY_RANGE = 100


@dataclass(frozen=True)
class GroupPlan:
    group: QuasiGroup
    report: ResonanceReport
    basis: BasisSpec

    @property
    def multiplicity(self) -> int:
        return self.report.multiplicity


@dataclass(frozen=True)
class SolveJob:
    equation: DifferenceEquation
    groups: tuple[GroupPlan, ...]

    @property
    def warnings(self) -> tuple[str, ...]:
        return tuple(p.report.warning for p in self.groups if p.report.warning)


def plan(eq: DifferenceEquation, eps_res: float = EPS_RES) -> SolveJob:
    """Resonance report and solution basis for every right-hand-side group."""
    p = CharPoly.from_equation_coeffs(eq.coeffs)
    plans = []
    for g in eq.rhs.groups:
        report = multiplicity(p, g.base, eps_res)
        plans.append(GroupPlan(g, report, BasisSpec(g.base, report.multiplicity, g.degree)))
    return SolveJob(eq, tuple(plans))


def resonant_slice(R, m: int, kind: str | None = None) -> np.ndarray:
    """Drop the first ``m`` (``2m`` for complex) columns and last as many rows.

    ``R`` is an :class:`OperatorMatrix` or a plain square array; for a
    plain array pass ``kind`` (``"real"`` or ``"complex"``).
    """
    if isinstance(R, OperatorMatrix):
        width = R.basis.base.width
        entries = R.entries
    else:
        entries = np.asarray(R, dtype=float)
        width = 1 if kind in (None, "real") else 2
    if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
        raise ValueError(f"operator matrix must be square, got shape {entries.shape}")
    cut = m * width
    if m < 0 or cut >= entries.shape[0] or entries.shape[0] % width:
        raise ValueError(f"cannot slice multiplicity {m} from a {entries.shape[0]}x"
                         f"{entries.shape[0]} matrix of width {width}")
    if m == 0:
        return entries.copy()
    return entries[:-cut, cut:].copy()


def solve_group(R_sliced, f_vec, warnings=()) -> np.ndarray:
    """Solve the sliced square system by pivoted Gaussian elimination."""
    r = np.asarray(R_sliced, dtype=float)
    f = np.asarray(f_vec, dtype=float)
    y = gauss_solve(r, f, PIVOT_TOL, warnings)
    res = np.max(np.abs(r @ y - f)) if len(f) else 0.0
    bound = EPS_LIN * (1.0 + (np.max(np.abs(f)) if len(f) else 0.0))
    if res > bound:
        raise VerificationFailed(f"linear residual {res:.3g} exceeds {bound:.3g}", res, warnings)
    return y


def group_system(eq: DifferenceEquation, gp: GroupPlan):
    """Shift matrix, full operator matrix and sliced system for one group."""
    T = shift_matrix(gp.basis)
    R = operator_polynomial(T, eq.coeffs)
    return T, R, resonant_slice(R, gp.multiplicity)


def assemble_superposition(job: SolveJob):
    """Block-diagonal shift matrix over the whole right-hand side.

    Returns ``(T, R, rows, cols, f)``: the stacked shift matrix, its
    operator polynomial, the index sets kept after crossing out the
    degenerate rows and columns of every block, and the full right-hand
    side coordinate vector (aligned with the kept rows).
    """
    sizes = [p.basis.base.width * (p.basis.total_degree + 1) for p in job.groups]
    total = sum(sizes)
    T = np.zeros((total, total))
    rows, cols, f = [], [], []
    at = 0
    for gp, size in zip(job.groups, sizes):
        T[at:at + size, at:at + size] = shift_matrix(gp.basis).entries
        cut = gp.multiplicity * gp.basis.base.width
        rows.extend(range(at, at + size - cut))
        cols.extend(range(at + cut, at + size))
        f.extend(gp.group.padded(gp.basis.degree))
        at += size
    coeffs = job.equation.coeffs
    eye = np.eye(total)
    R = T + coeffs[0] * eye
    for a in coeffs[1:]:
        R = R @ T + a * eye
    return T, R, np.array(rows, dtype=int), np.array(cols, dtype=int), np.array(f)


def _finish(eq, job, vectors, eps_verify, verify_range) -> ParticularSolution:
    parts = tuple((gp.basis, tuple(float(v) for v in vec)) for gp, vec in zip(job.groups, vectors))
    kernel = tuple(BasisSpec(gp.basis.base, 0, gp.multiplicity - 1)
                   for gp in job.groups if gp.multiplicity > 0)
    rng = (0, verify_range)
    candidate = ParticularSolution(parts, kernel, 0.0, rng)
    rep = residual(eq, candidate, rng)
    if rep.max_residual > eps_verify * rep.scale:
        raise VerificationFailed(
            f"substitution residual {rep.max_residual:.3g} at n={rep.argmax_n} exceeds "
            f"{eps_verify:g} * {rep.scale:.3g}", rep.max_residual, job.warnings)
    return ParticularSolution(parts, kernel, rep.max_residual, rng,
                              tuple(gp.report for gp in job.groups), rep.scale)


def solve(eq: DifferenceEquation, *, eps_res: float = EPS_RES, eps_verify: float = EPS_VERIFY,
          verify_range: int = VERIFY_RANGE, assembled: bool = False) -> ParticularSolution:
    """Particular solution of ``eq``, verified by substitution before return.

    By default each right-hand-side group is solved on its own block.
    ``assembled=True`` instead builds the full block-diagonal operator,
    crosses out the degenerate rows and columns, and solves once.
    """
    if verify_range < eq.order:
        raise ValueError(f"verify_range {verify_range} is smaller than the order {eq.order}")
    job = plan(eq, eps_res)
    if not job.groups:
        return ParticularSolution((), (), 0.0, (0, verify_range))
    warnings = job.warnings
    if assembled:
        _, R, rows, cols, f = assemble_superposition(job)
        y = solve_group(R[np.ix_(rows, cols)], f, warnings)
        vectors, at = [], 0
        for gp in job.groups:
            vectors.append(y[at:at + gp.basis.dimension])
            at += gp.basis.dimension
    else:
        vectors = []
        for gp in job.groups:
            _, _, sliced = group_system(eq, gp)
            vectors.append(solve_group(sliced, gp.group.padded(gp.basis.degree), warnings))
    return _finish(eq, job, vectors, eps_verify, verify_range)

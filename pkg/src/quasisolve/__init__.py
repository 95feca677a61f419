"""Particular solutions of linear difference equations with quasipolynomial right-hand sides.

The solver writes the shift operator as a matrix on the span of the
right-hand side (powers of n times mu^n, or the sin/cos pairs for complex
mu), forms the difference operator as a matrix polynomial, cuts out the
resonant kernel, and solves a small linear system. Every result is checked
by substitution before it is returned.

>>> from quasisolve import parse, solve, render
>>> render(solve(parse("y[n+2] + y[n] = sin(pi/2*n)").equation))
'-0.5*n*sin((pi/2)*n)'
"""

__version__ = "0.1.0"

from .equation import DifferenceEquation, render_equation
from .errors import (InvalidBase, InvalidEquation, NoConsistentSolution, ParseError,
                     QuasisolveError, SingularSystem, VerificationFailed)
from .matrices import (OperatorMatrix, operator_polynomial, pascal_matrix, shift_matrix,
                       shift_matrix_complex, shift_matrix_real)
from .oracle import ResidualReport, collocation_solve, residual
from .parser import ParsedEquation, parse, parse_quasipolynomial
from .quasipoly import (BaseKey, BasisSpec, ParticularSolution, QuasiGroup, Quasipolynomial,
                        evaluate, evaluate_many, merge_groups, render)
from .resonance import CharPoly, ResonanceReport, eval_charpoly_derivative, multiplicity
from .solver import SolveJob, plan, resonant_slice, solve, solve_group

__all__ = [
    "BaseKey", "BasisSpec", "CharPoly", "DifferenceEquation", "InvalidBase", "InvalidEquation",
    "NoConsistentSolution", "OperatorMatrix", "ParseError", "ParsedEquation",
    "ParticularSolution", "QuasiGroup", "Quasipolynomial", "QuasisolveError", "ResidualReport",
    "ResonanceReport", "SingularSystem", "SolveJob", "VerificationFailed", "collocation_solve",
    "eval_charpoly_derivative", "evaluate", "evaluate_many", "merge_groups", "multiplicity",
    "operator_polynomial", "parse", "parse_quasipolynomial", "pascal_matrix", "plan", "render",
    "render_equation", "residual", "resonant_slice", "shift_matrix", "shift_matrix_complex",
    "shift_matrix_real", "solve", "solve_group",
]

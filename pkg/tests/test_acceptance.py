"""Acceptance gate: one test per criterion, each reporting a PASS/FAIL line."""

import math
import statistics
import time
from fractions import Fraction

import numpy as np
import pytest

from quasisolve import (BaseKey, BasisSpec, DifferenceEquation, Quasipolynomial,
                        collocation_solve, operator_polynomial, parse, plan, residual,
                        shift_matrix, solve, solve_group)
from quasisolve.solver import group_system
from quasisolve.suite import random_instance

SQRT2 = math.sqrt(2.0)
COS_PI8 = "y[n+2]+y[n]=cos(pi/8*n)"
SIN_PI2 = "y[n+2]+y[n]=sin(pi/2*n)"

RESULTS: dict[int, str] = {}


def report(number: int, ok: bool, detail: str):
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} ({detail})"
    RESULTS[number] = line
    print(line)
    assert ok, line


def timed_solve(text, runs=7):
    """Parse and solve; returns the solution and the median wall time in ms."""
    solve(parse(text).equation)   # warm-up
    times = []
    for _ in range(runs):
        t0 = time.perf_counter()
        sol = solve(parse(text).equation)
        times.append((time.perf_counter() - t0) * 1e3)
    return sol, statistics.median(times)


def test_criterion_1_cos_pi8():
    sol, ms = timed_solve(COS_PI8)
    ((spec, vec),) = sol.parts
    err = max(abs(vec[0] - (SQRT2 - 1) / 2), abs(vec[1] - 0.5))
    ok = spec.labels() == ["sin((pi/8)*n)", "cos((pi/8)*n)"] and err <= 1e-10 and ms < 10
    report(1, ok, f"max coefficient error {err:.2e}, {ms:.2f} ms")


def test_criterion_2_sin_pi2():
    sol, ms = timed_solve(SIN_PI2)
    ((spec, vec),) = sol.parts
    m = sol.reports[0].multiplicity
    err = max(abs(vec[0] + 0.5), abs(vec[1]))
    ok = (m == 1 and spec.labels() == ["n*sin((pi/2)*n)", "n*cos((pi/2)*n)"]
          and err <= 1e-10 and ms < 10)
    report(2, ok, f"m={m}, max coefficient error {err:.2e}, {ms:.2f} ms")


def test_criterion_3_intermediate_matrices():
    c, s = math.cos(math.pi / 8), math.sin(math.pi / 8)
    expected = [
        ([[c, -s], [s, c]], Fraction(1, 8), 0),
        ([[1 / SQRT2 + 1, -1 / SQRT2], [1 / SQRT2, 1 / SQRT2 + 1]], Fraction(1, 8), 0),
        ([[0, -1, 0, -1], [1, 0, 1, 0], [0, 0, 0, -1], [0, 0, 1, 0]], Fraction(1, 2), 1),
        ([[0, 0, -2, 0], [0, 0, 0, -2], [0, 0, 0, 0], [0, 0, 0, 0]], Fraction(1, 2), 1),
    ]
    worst = 0.0
    for i, (mat, ratio, offset) in enumerate(expected):
        T = shift_matrix(BasisSpec(BaseKey.complex(1, pi_ratio=ratio), offset, 0))
        got = T if i % 2 == 0 else operator_polynomial(T, [0.0, 1.0])
        worst = max(worst, float(np.max(np.abs(got.entries - np.array(mat, dtype=float)))))
    report(3, worst <= 1e-12, f"max entry error {worst:.2e} over 4 matrices")


@pytest.fixture(scope="module")
def suite_run():
    rng = np.random.default_rng(0)
    t0 = time.perf_counter()
    rows = []
    for _ in range(500):
        inst = random_instance(rng)
        eq = inst.equation
        sol = solve(eq)
        rep = residual(eq, sol, (0, 100))
        rows.append((inst, sol, rep))
    return rows, time.perf_counter() - t0


def test_criterion_4_residual_suite(suite_run):
    rows, elapsed = suite_run
    bad = [i for i, (_, _, rep) in enumerate(rows) if rep.max_residual > 1e-8 * rep.scale]
    worst = max(rep.relative for _, _, rep in rows)
    resonant = sum(any(m > 0 for m in inst.planted) for inst, _, _ in rows)
    ok = not bad and elapsed < 30
    report(4, ok, f"{len(rows) - len(bad)}/{len(rows)} within 1e-8*scale, "
                  f"worst relative {worst:.2e}, {resonant} resonant, {elapsed:.2f} s")


def test_criterion_5_oracle_equivalence(suite_run):
    rows, _ = suite_run
    checked, worst, bad = 0, 0.0, []
    for i, (inst, sol, _) in enumerate(rows):
        if any(r.warning for r in sol.reports):
            continue
        z = collocation_solve(inst.equation, [spec for spec, _ in sol.parts])
        y = np.concatenate([np.asarray(v) for _, v in sol.parts])
        err = float(np.max(np.abs(y - z)))
        worst = max(worst, err)
        checked += 1
        if err > 1e-7:
            bad.append(i)
    report(5, not bad, f"{checked - len(bad)}/{checked} non-warned instances within 1e-7, "
                       f"worst {worst:.2e}")


def test_criterion_6_nilpotency():
    worst = 0.0
    for mu in (-2.0, -1.0, 0.5, 1.0, 3.0):
        for d in range(0, 7):
            T = shift_matrix(BasisSpec(BaseKey.real(mu), 0, d)).entries
            N = np.linalg.matrix_power(T - mu * np.eye(d + 1), d + 1)
            worst = max(worst, float(np.max(np.abs(N))))
    report(6, worst <= 1e-10, f"max entry {worst:.2e} over 35 cases")


def test_criterion_7_nonresonant_invertibility():
    rng = np.random.default_rng(7)
    min_det, worst_perm, n_groups = math.inf, 0.0, 0
    resonant = 0
    for _ in range(200):
        inst = random_instance(rng, resonance_rate=0.0)
        job = plan(inst.equation)
        for gp in job.groups:
            resonant += gp.multiplicity > 0
            _, R, sliced = group_system(inst.equation, gp)
            min_det = min(min_det, abs(float(np.linalg.det(R.entries))))
            f = np.array(gp.group.padded(gp.basis.degree))
            y = solve_group(sliced, f)
            perm = rng.permutation(len(f))
            y2 = solve_group(sliced[perm], f[perm])
            worst_perm = max(worst_perm, float(np.max(np.abs(y - y2))))
            n_groups += 1
    ok = resonant == 0 and min_det > 1e-12 and worst_perm <= 1e-9
    report(7, ok, f"{n_groups} groups, min |det R| {min_det:.2e}, "
                  f"max permutation change {worst_perm:.2e}")


def test_criterion_8_superposition():
    rng = np.random.default_rng(8)
    worst, count = 0.0, 0
    while count < 100:
        inst = random_instance(rng)
        eq = inst.equation
        if len(eq.rhs.groups) < 2:
            continue
        count += 1
        flat = lambda sol: np.concatenate([np.asarray(v) for _, v in sol.parts])
        separate = np.concatenate([
            flat(solve(DifferenceEquation(eq.coeffs, Quasipolynomial((g,)))))
            for g in eq.rhs.groups])
        for assembled in (False, True):
            combined = flat(solve(eq, assembled=assembled))
            worst = max(worst, float(np.max(np.abs(combined - separate))))
    report(8, worst <= 1e-9, f"{count} multi-group equations, per-block and assembled, "
                             f"max difference {worst:.2e}")

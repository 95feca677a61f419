"""Randomized equation generator and the property suite run by ``quasisolve suite``.

Equations are built from their characteristic roots so resonances can be
planted exactly: a resonant group reuses a root's float value as its base.
Non-resonant bases are kept at least ``MIN_ROOT_GAP`` away from every root.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .equation import DifferenceEquation
from .errors import QuasisolveError
from .oracle import collocation_solve, residual
from .quasipoly import BaseKey, BasisSpec, QuasiGroup, Quasipolynomial
from .solver import EPS_VERIFY, plan, solve

MIN_ROOT_GAP = 0.1
MAX_COEFF = 5.0


@dataclass(frozen=True)
class Instance:
    equation: DifferenceEquation
    roots: tuple[complex, ...]
    planted: tuple[int, ...]    # planted multiplicity per rhs group, in rhs order


def _random_base(rng) -> BaseKey:
    if rng.random() < 0.5:
        mu = rng.uniform(0.3, 1.6) * rng.choice([-1.0, 1.0])
        return BaseKey.real(mu)
    return BaseKey.complex(rng.uniform(0.4, 1.4), rng.uniform(0.15, math.pi - 0.15))


def _roots_to_coeffs(roots) -> np.ndarray:
    c = np.array([1.0 + 0j])
    for r in roots:
        c = np.convolve(c, [1.0, -r])
    return c.real[1:]


def _points(roots, bases) -> list[complex]:
    pts = list(roots)
    for b in bases:
        pts.append(b.value)
        pts.append(b.value.conjugate())
    return pts


def _far_from(z: complex, points, gap: float) -> bool:
    return all(abs(z - p) >= gap for p in points)


def random_group(rng, base: BaseKey, max_degree: int = 3) -> QuasiGroup:
    s = int(rng.integers(0, max_degree + 1))
    coeffs = rng.uniform(-1.0, 1.0, size=(s + 1) * base.width)
    top = coeffs[-base.width:]
    if np.all(np.abs(top) < 0.1):
        top[-1] = 0.5
    return QuasiGroup(base, tuple(coeffs))


def random_instance(rng, max_order: int = 5, max_groups: int = 3, max_degree: int = 3,
                    max_multiplicity: int = 3, resonance_rate: float = 0.5,
                    gap: float = MIN_ROOT_GAP, max_tries: int = 1000) -> Instance:
    """One random equation with 1..max_groups rhs groups, some of them resonant.

    Distinct characteristic roots and rhs bases are pairwise at least
    ``gap`` apart; a planted resonance reuses its base exactly as a root.
    """
    for _ in range(max_tries):
        k = int(rng.integers(1, max_order + 1))
        n_groups = int(rng.integers(1, max_groups + 1))
        roots: list[complex] = []
        bases: list[BaseKey] = []
        planted: list[int] = []
        for _g in range(n_groups):
            if rng.random() < resonance_rate:
                b = _random_base(rng)
                m = int(rng.integers(1, max_multiplicity + 1))
                need = m * b.width
                if len(roots) + need > k or not _far_from(b.value, _points(roots, bases), gap):
                    continue
                z = b.value
                roots.extend([z] * m)
                if not b.is_real:
                    roots.extend([z.conjugate()] * m)
                bases.append(b)
                planted.append(m)
        while len(roots) < k:
            if k - len(roots) >= 2 and rng.random() < 0.5:
                z = rng.uniform(0.3, 2.0) * np.exp(1j * rng.uniform(0.1, math.pi - 0.1))
                if abs(z.imag) >= gap / 2 and _far_from(z, _points(roots, bases), gap):
                    roots.extend([z, z.conjugate()])
            else:
                z = complex(rng.uniform(0.3, 2.0) * rng.choice([-1.0, 1.0]))
                if _far_from(z, _points(roots, bases), gap):
                    roots.append(z)
        coeffs = _roots_to_coeffs(roots)
        if np.max(np.abs(coeffs)) > MAX_COEFF:
            continue
        while len(bases) < n_groups:
            b = _random_base(rng)
            if _far_from(b.value, _points(roots, bases), gap):
                bases.append(b)
                planted.append(0)
        groups = [random_group(rng, b, max_degree) for b in bases]
        eq = DifferenceEquation(tuple(float(a) for a in coeffs), Quasipolynomial(tuple(groups)))
        by_base = [next(m for b, m in zip(bases, planted) if b == g.base) for g in eq.rhs.groups]
        return Instance(eq, tuple(complex(r) for r in roots), tuple(by_base))
    raise RuntimeError("could not generate an equation within the coefficient bound")


def random_instances(seed: int, count: int, **kwargs) -> list[Instance]:
    rng = np.random.default_rng(seed)
    return [random_instance(rng, **kwargs) for _ in range(count)]


@dataclass
class SuiteResult:
    total: int = 0
    passed: int = 0
    failures: list[str] = field(default_factory=list)
    oracle_checked: int = 0
    warned: int = 0
    elapsed: float = 0.0

    @property
    def failed(self) -> int:
        return self.total - self.passed


def check_instance(inst: Instance, rng, eps_verify: float = EPS_VERIFY) -> tuple[list[str], bool, bool]:
    """Run every per-instance property; returns (problems, oracle_checked, warned)."""
    eq = inst.equation
    problems = []
    try:
        sol = solve(eq, eps_verify=eps_verify)
    except QuasisolveError as exc:
        return [f"solve failed: {exc}"], False, False
    job = plan(eq)
    ms = tuple(gp.multiplicity for gp in job.groups)
    if ms != inst.planted:
        problems.append(f"multiplicities {ms} != planted {inst.planted}")
    rep = residual(eq, sol, (0, 100))
    if rep.max_residual > eps_verify * rep.scale:
        problems.append(f"residual {rep.max_residual:.3g} > {eps_verify:g}*{rep.scale:.3g}")
    # kernel directions stay free
    extra = Quasipolynomial()
    for spec in sol.kernel_report:
        extra = extra + spec.element(rng.uniform(-1, 1, spec.dimension))
    if sol.kernel_report:
        rep_k = residual(eq, sol.as_quasipolynomial() + extra, (0, 100))
        if rep_k.max_residual > eps_verify * rep_k.scale:
            problems.append(f"kernel shift broke residual: {rep_k.max_residual:.3g}")
    warned = bool(job.warnings)
    checked = False
    if not warned:
        try:
            z = collocation_solve(eq, [gp.basis for gp in job.groups])
        except QuasisolveError as exc:
            problems.append(f"oracle failed: {exc}")
        else:
            y = np.concatenate([np.array(v) for _, v in sol.parts])
            err = float(np.max(np.abs(y - z)))
            if err > 1e-7:
                problems.append(f"oracle disagreement {err:.3g}")
            checked = True
    return problems, checked, warned


def run_suite(seed: int = 0, count: int = 500) -> SuiteResult:
    rng = np.random.default_rng(seed)
    result = SuiteResult()
    t0 = time.perf_counter()
    for i in range(count):
        inst = random_instance(rng)
        problems, checked, warned = check_instance(inst, rng)
        result.total += 1
        result.oracle_checked += checked
        result.warned += warned
        if problems:
            result.failures.append(f"#{i}: " + "; ".join(problems))
        else:
            result.passed += 1
    result.elapsed = time.perf_counter() - t0
    return result

"""Command-line interface: ``quasisolve solve | check | suite``.

Exit codes: 0 success, 1 input/parse error, 2 singular system or failed
verification, 3 property-suite failures.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from . import __version__
from .equation import render_equation
from .errors import (InvalidBase, InvalidEquation, ParseError, SingularSystem,
                     VerificationFailed)
from .oracle import residual
from .parser import parse, parse_quasipolynomial
from .quasipoly import BaseKey, format_angle, render
from .resonance import EPS_RES
from .solver import EPS_VERIFY, VERIFY_RANGE, solve
from .suite import run_suite

JSON_SCHEMA_VERSION = 1


@dataclass(frozen=True)
class CliConfig:
    input: str = ""
    format: str = "text"
    verify_range: int = VERIFY_RANGE
    eps_res: float = EPS_RES
    eps_verify: float = EPS_VERIFY
    show_kernel: bool = False
    seed: int = 0


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _read_input(arg: str) -> str:
    if arg == "-":
        return sys.stdin.read().strip()
    if os.path.isfile(arg):
        with open(arg, encoding="utf-8") as fh:
            return fh.read().strip()
    return arg


def _num(x: float) -> float:
    """12 significant digits; negative zero becomes 0.0."""
    x = float(f"{float(x):.12g}")
    return 0.0 if x == 0 else x


def _base_json(base: BaseKey) -> dict:
    if base.is_real:
        return {"kind": "real", "mu": _num(base.mu)}
    out = {"kind": "complex", "modulus": _num(base.modulus), "phi": _num(base.phi)}
    if base.pi_ratio is not None:
        out["phi_over_pi"] = str(base.pi_ratio)
    return out


def _base_text(base: BaseKey) -> str:
    if base.is_real:
        return f"real mu={base.mu:.10g}"
    angle = format_angle(base)[:-2]   # drop the trailing "*n"
    return f"complex |mu|={base.modulus:.10g} phi={angle}"


def solution_json(eq, sol, warnings) -> str:
    groups = []
    for (spec, vec), rep in zip(sol.parts, sol.reports):
        groups.append({
            "base": _base_json(spec.base),
            "multiplicity": rep.multiplicity,
            "degree": spec.degree,
            "basis": spec.labels(),
            "coefficients": [_num(c) for c in vec],
        })
    doc = {
        "equation": render_equation(eq, digits=12),
        "groups": groups,
        "kernel": [{"base": _base_json(k.base), "basis": k.labels()}
                   for k in sol.kernel_report],
        "residual": _num(sol.residual),
        "verify_range": sol.range[1],
        "closed_form": render(sol),
        "warnings": list(warnings),
        "schema_version": JSON_SCHEMA_VERSION,
    }
    return json.dumps(doc, indent=2)


def _cmd_solve(cfg: CliConfig) -> int:
    text = _read_input(cfg.input)
    eq = parse(text).equation
    if cfg.verify_range < eq.order:
        print(f"error: --verify-range {cfg.verify_range} is below the equation order {eq.order}",
              file=sys.stderr)
        return 1
    sol = solve(eq, eps_res=cfg.eps_res, eps_verify=cfg.eps_verify,
                verify_range=cfg.verify_range)
    warnings = [r.warning for r in sol.reports if r.warning]
    if cfg.format == "json":
        print(solution_json(eq, sol, warnings))
        return 0
    for w in warnings:
        print(f"warning: {w}", file=sys.stderr)
    print(f"y[n] = {render(sol)}")
    print(f"equation: {render_equation(eq, digits=10)}")
    for i, ((spec, _), rep) in enumerate(zip(sol.parts, sol.reports), start=1):
        print(f"group {i}: {_base_text(spec.base)}, multiplicity m={rep.multiplicity}, "
              f"degree s={spec.degree}")
    if cfg.show_kernel:
        for spec in sol.kernel_report:
            print(f"kernel ({_base_text(spec.base)}): free " + ", ".join(spec.labels()))
    print(f"residual: {sol.residual:.3g} (relative {sol.residual / sol.residual_scale:.3g}) "
          f"over n={sol.range[0]}..{sol.range[1]}")
    return 0


def _cmd_check(cfg: CliConfig, candidate: str) -> int:
    eq = parse(_read_input(cfg.input)).equation
    try:
        q = parse_quasipolynomial(candidate)
    except ParseError as exc:
        raise ParseError(exc.reason, candidate, exc.position) from None
    rep = residual(eq, q, (0, cfg.verify_range))
    ok = rep.max_residual <= cfg.eps_verify * rep.scale
    print(f"residual: {rep.max_residual:.3g} at n={rep.argmax_n} "
          f"(scale {rep.scale:.3g}, n={rep.range[0]}..{rep.range[1]})")
    print("ok" if ok else "FAILED")
    return 0 if ok else 2


def _cmd_suite(cfg: CliConfig, count: int) -> int:
    res = run_suite(cfg.seed, count)
    print(f"suite seed={cfg.seed}: {res.passed}/{res.total} passed, {res.failed} failed "
          f"(oracle compared {res.oracle_checked}, near-resonance warned {res.warned}) "
          f"in {res.elapsed:.2f}s")
    for line in res.failures:
        print(f"  FAIL {line}")
    return 3 if res.failed else 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="quasisolve",
                description="Particular solutions of linear constant-coefficient difference "
                            "equations with quasipolynomial right-hand sides.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--verify-range", type=int, default=VERIFY_RANGE,
                        help="verify by substitution over n = 0..N (default %(default)s)")
        sp.add_argument("--eps-res", type=float, default=EPS_RES,
                        help="relative threshold for resonance detection")
        sp.add_argument("--eps-verify", type=float, default=EPS_VERIFY,
                        help="relative residual bound for verification")

    s = sub.add_parser("solve", help="solve an equation")
    s.add_argument("equation", help="equation text, a file path, or - for stdin")
    s.add_argument("--format", choices=("text", "json"), default="text")
    s.add_argument("--show-kernel", action="store_true",
                   help="list the free homogeneous directions met on resonant groups")
    common(s)

    c = sub.add_parser("check", help="substitute a candidate solution and report the residual")
    c.add_argument("equation")
    c.add_argument("candidate", help="candidate solution, e.g. '-0.5*n*sin(pi/2*n)'")
    common(c)

    u = sub.add_parser("suite", help="run the randomized property suite")
    u.add_argument("--seed", type=int, default=0)
    u.add_argument("--count", type=int, default=500)
    return p


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = CliConfig(
        input=getattr(args, "equation", ""),
        format=getattr(args, "format", "text"),
        verify_range=getattr(args, "verify_range", VERIFY_RANGE),
        eps_res=getattr(args, "eps_res", EPS_RES),
        eps_verify=getattr(args, "eps_verify", EPS_VERIFY),
        show_kernel=getattr(args, "show_kernel", False),
        seed=getattr(args, "seed", 0),
    )
    try:
        if args.command == "solve":
            return _cmd_solve(cfg)
        if args.command == "check":
            return _cmd_check(cfg, args.candidate)
        return _cmd_suite(cfg, args.count)
    except ParseError as exc:
        print(exc.pretty(), file=sys.stderr)
        return 1
    except (InvalidBase, InvalidEquation) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (SingularSystem, VerificationFailed) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

"""
Command-line interface.

Usage:
    steadyinv synth  --problem p.json [--out result.json] [--json]
    steadyinv respond --problem p.json [--out result.json] [--json]
    steadyinv verify --problem p.json [--t-final 50] [--dt 1e-3] [--tail 0.5]
                     [--tol 1e-3] [--trace trace.csv] [--out result.json]
    steadyinv check  --problem p.json

Exit codes: 0 success, 1 validation error, 2 tracking failure,
3 synthesis or numerical error.

Problem files are JSON. Polynomial coefficients are in ASCENDING powers of s,
e.g. ``{"num": [1], "den": [1, 1]}`` is 1/(s+1). Angles are in radians.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys
from pathlib import Path
from typing import Any

import jsonschema

from .errors import SteadyInvError, SynthesisError, ValidationError
from .lti import (
    StateSpace,
    TransferFunction,
    eval_tf,
    is_asymptotically_stable,
    ss_to_tf,
)
from .signal import MAX_DEGREE, ModeSum, SignalTerm, canonicalize, to_terms
from .sim import SimConfig, verify_tracking
from .synth import steady_state_response, synthesize_input

__all__ = ["main", "load_problem", "Problem", "PROBLEM_SCHEMA"]

EXIT_OK, EXIT_INVALID, EXIT_TRACKING, EXIT_SYNTH = 0, 1, 2, 3

_NUMBER_LIST = {"type": "array", "items": {"type": "number"}}
_MATRIX = {"type": "array", "items": _NUMBER_LIST}
_TERM = {
    "type": "object",
    "required": ["amplitude"],
    "additionalProperties": False,
    "properties": {
        "degree": {"type": "integer", "minimum": 0, "maximum": MAX_DEGREE},
        "growth": {"type": "number"},
        "omega": {"type": "number"},
        "amplitude": {"type": "number"},
        "phase": {"type": "number"},
    },
}
_TERMS = {"type": "array", "items": _TERM}
_SCENARIOS = {"oneOf": [_TERMS, {"type": "array", "minItems": 1, "items": _TERMS}]}

PROBLEM_SCHEMA = {
    "type": "object",
    "required": ["system"],
    "properties": {
        "system": {
            "type": "object",
            "oneOf": [
                {
                    "required": ["tf"],
                    "not": {"required": ["ss"]},
                    "properties": {"tf": {
                        "type": "object",
                        "required": ["num", "den"],
                        "properties": {"num": _NUMBER_LIST, "den": _NUMBER_LIST},
                    }},
                },
                {
                    "required": ["ss"],
                    "not": {"required": ["tf"]},
                    "properties": {"ss": {
                        "type": "object",
                        "required": ["A", "B", "C", "D"],
                        "properties": {
                            "A": _MATRIX, "B": _MATRIX, "C": _MATRIX,
                            "D": {"oneOf": [_MATRIX, {"type": "number"}]},
                        },
                    }},
                },
            ],
        },
        "desired": _SCENARIOS,
        "input": _TERMS,
        "sim": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "t_final": {"type": "number", "exclusiveMinimum": 0},
                "dt": {"type": "number", "exclusiveMinimum": 0},
                "tail_fraction": {"type": "number", "exclusiveMinimum": 0, "exclusiveMaximum": 1},
                "tol": {"type": "number", "exclusiveMinimum": 0},
            },
        },
    },
}


@dataclasses.dataclass
class Problem:
    plant: TransferFunction | StateSpace
    tf: TransferFunction
    desired: list[list[SignalTerm]] | None
    input: list[SignalTerm] | None
    sim: dict[str, float]
    multi: bool = False


def _terms(records: list[dict]) -> list[SignalTerm]:
    return [SignalTerm(**r) for r in records]


def load_problem(path: str | Path) -> Problem:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ValidationError(f"cannot read problem file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(f"problem file is not valid JSON: {exc}") from exc
    try:
        jsonschema.validate(data, PROBLEM_SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise ValidationError(f"schema error at {where}: {exc.message}") from exc

    system = data["system"]
    if "tf" in system:
        plant = TransferFunction(system["tf"]["num"], system["tf"]["den"])
    else:
        ss = system["ss"]
        plant = StateSpace(ss["A"], ss["B"], ss["C"], ss["D"])
    tf = plant if isinstance(plant, TransferFunction) else ss_to_tf(plant)

    desired, multi = None, False
    if "desired" in data:
        raw = data["desired"]
        multi = bool(raw) and isinstance(raw[0], list)
        desired = [_terms(s) for s in raw] if multi else [_terms(raw)]
    inp = _terms(data["input"]) if "input" in data else None
    return Problem(plant, tf, desired, inp, dict(data.get("sim", {})), multi)


def term_record(term: SignalTerm) -> dict[str, Any]:
    return dataclasses.asdict(term)


def _gain_records(gains: dict[complex, float]) -> list[dict[str, float]]:
    return [{"growth": lam.real, "omega": lam.imag, "gain": g} for lam, g in gains.items()]


def _mode_gains(tf: TransferFunction, ms: ModeSum) -> dict[complex, float]:
    return {m.lam: abs(eval_tf(tf, m.lam)) for m in ms.modes}


def format_term(term: SignalTerm) -> str:
    parts = [f"{term.amplitude:.12g}"]
    if term.degree:
        parts.append("t" if term.degree == 1 else f"t^{term.degree}")
    if term.growth:
        parts.append(f"exp({term.growth:.12g} t)")
    if term.omega:
        deg = math.degrees(term.phase)
        parts.append(f"sin({term.omega:.12g} t {'+' if term.phase >= 0 else '-'} "
                     f"{abs(term.phase):.12g}) [phase {deg:.4f} deg]")
    return " * ".join(parts)


def _print_terms(label: str, terms: list[SignalTerm]) -> None:
    print(f"{label}:")
    if not terms:
        print("  0")
    for term in terms:
        print(f"  + {format_term(term)}")


def _write_json(path: str, payload: Any) -> None:
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def _emit(args, payload: dict) -> None:
    if args.out:
        _write_json(args.out, payload)
    if args.json:
        json.dump(payload, sys.stdout, indent=2)
        sys.stdout.write("\n")


def _require(problem: Problem, key: str) -> None:
    if getattr(problem, key) is None:
        raise ValidationError(f"problem file has no '{key}' block")


def _synth_payload(tf: TransferFunction, terms: list[SignalTerm]) -> dict:
    report = synthesize_input(tf, canonicalize(terms))
    return {
        "input": [term_record(t) for t in to_terms(report.input)],
        "per_mode_gain": _gain_records(report.per_mode_gain),
        "amplification": report.amplification,
        "warnings": list(report.warnings),
    }


def cmd_synth(args) -> int:
    problem = load_problem(args.problem)
    _require(problem, "desired")
    results = [_synth_payload(problem.tf, s) for s in problem.desired]
    for i, res in enumerate(results):
        if not args.json:
            if problem.multi:
                print(f"scenario {i}")
            _print_terms("steady-state input u_s(t)", [SignalTerm(**r) for r in res["input"]])
            print(f"amplification: {res['amplification']:.6g}")
            for w in res["warnings"]:
                print(f"warning: {w}")
    _emit(args, {"scenarios": results} if problem.multi else results[0])
    return EXIT_OK


def cmd_respond(args) -> int:
    problem = load_problem(args.problem)
    _require(problem, "input")
    ms = canonicalize(problem.input)
    response = steady_state_response(problem.tf, ms)
    payload = {
        "response": [term_record(t) for t in to_terms(response)],
        "per_mode_gain": _gain_records(_mode_gains(problem.tf, ms)),
        "warnings": [],
    }
    if not args.json:
        _print_terms("steady-state output y(t)", to_terms(response))
    _emit(args, payload)
    return EXIT_OK


def _sim_config(problem: Problem, args) -> SimConfig:
    cfg = dict(problem.sim)
    for key, flag in (("t_final", "t_final"), ("dt", "dt"), ("tail_fraction", "tail"), ("tol", "tol")):
        value = getattr(args, flag)
        if value is not None:
            cfg[key] = value
    return SimConfig(**cfg)


def _trace_path(base: str, i: int, multi: bool) -> str:
    if not multi:
        return base
    p = Path(base)
    return str(p.with_name(f"{p.stem}_{i}{p.suffix}"))


def cmd_verify(args) -> int:
    problem = load_problem(args.problem)
    _require(problem, "desired")
    cfg = _sim_config(problem, args)
    results = []
    all_passed = True
    for i, terms in enumerate(problem.desired):
        rep = verify_tracking(problem.plant, canonicalize(terms), cfg)
        if args.trace:
            rep.trace.to_csv(_trace_path(args.trace, i, problem.multi))
        res = {
            "input": [term_record(t) for t in to_terms(rep.synthesis.input)],
            "per_mode_gain": _gain_records(rep.synthesis.per_mode_gain),
            "amplification": rep.synthesis.amplification,
            "warnings": list(rep.synthesis.warnings),
            "max_tail_rel_err": rep.max_tail_rel_err,
            "pass": rep.passed,
            "transient_end": rep.transient_end,
            "trace_summary": rep.trace_summary,
        }
        results.append(res)
        all_passed &= rep.passed
        if not args.json:
            prefix = f"scenario {i}: " if problem.multi else ""
            print(f"{prefix}max_tail_rel_err = {rep.max_tail_rel_err:.3e} (tol {cfg.tol:g}) "
                  f"{'PASS' if rep.passed else 'FAIL'}")
    _emit(args, {"scenarios": results} if problem.multi else results[0])
    return EXIT_OK if all_passed else EXIT_TRACKING


def cmd_check(args) -> int:
    problem = load_problem(args.problem)
    tf = problem.tf
    print(f"stability: {is_asymptotically_stable(tf)}")
    print(f"W(0) = {_fmt_gain(tf, 0j)}")
    for terms in problem.desired or []:
        for mode in canonicalize(terms).modes:
            print(f"|W({mode.lam.real:g}{mode.lam.imag:+g}j)| = {_fmt_gain(tf, mode.lam, magnitude=True)}")
    return EXIT_OK


def _fmt_gain(tf: TransferFunction, lam: complex, magnitude: bool = False) -> str:
    try:
        w = eval_tf(tf, lam)
    except SynthesisError:
        return "pole"
    if magnitude:
        return f"{abs(w):.12g}"
    return f"{w.real:.12g}" if w.imag == 0 else f"{w:.12g}"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ValidationError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--problem", default=argparse.SUPPRESS, help="problem file (JSON)")

    parser = _Parser(prog="steadyinv", description=__doc__.split("\n\n")[0].strip(),
                     parents=[common])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    out = argparse.ArgumentParser(add_help=False)
    out.add_argument("--out", help="write the machine-readable result here")
    out.add_argument("--json", action="store_true", help="print the result as JSON instead of text")

    sub.add_parser("synth", parents=[common, out], help="compute the steady-state input").set_defaults(func=cmd_synth)
    sub.add_parser("respond", parents=[common, out], help="compute the steady-state output").set_defaults(func=cmd_respond)
    v = sub.add_parser("verify", parents=[common, out], help="synthesize and check by simulation")
    v.add_argument("--t-final", type=float)
    v.add_argument("--dt", type=float)
    v.add_argument("--tail", type=float, help="tail window fraction in (0, 1)")
    v.add_argument("--tol", type=float)
    v.add_argument("--trace", help="CSV file for the simulated trace")
    v.set_defaults(func=cmd_verify)
    sub.add_parser("check", parents=[common], help="stability verdict and gains").set_defaults(func=cmd_check)
    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if not getattr(args, "problem", None):
            raise ValidationError("--problem is required")
        return args.func(args)
    except ValidationError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except SteadyInvError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_SYNTH
    except OSError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (ArithmeticError, ValueError, FloatingPointError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_SYNTH


if __name__ == "__main__":
    sys.exit(main())

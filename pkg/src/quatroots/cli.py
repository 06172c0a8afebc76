"""Command-line front end: ``quatroots solve | eval | expand``.

Input documents are JSON::

    {"form": "coefficients", "entries": [[w, x, y, z], ...]}   # a_0 first
    {"form": "factors", "entries": [[w, x, y, z], ...]}        # rightmost factor first

Exit codes: 0 converged, 2 not converged, 3 bad input, 4 too many class collisions.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import time
from dataclasses import asdict, dataclass, field
from typing import Optional, Sequence

from .classify import ClassifiedRoot, group_spheres, sphere_summary
from .errors import DiagnosticConflict, NotAZero, ParseError, DegreeZero, TooManyCollisions
from .hpoly import HPoly, evaluate, from_factors, monicize
from .quaternion import Quaternion, class_key
from .solver import SolveOutcome, SolverConfig, solve
from .tables import annotate, error_table

EXIT_OK = 0
EXIT_NOT_CONVERGED = 2
EXIT_PARSE = 3
EXIT_COLLISIONS = 4

FORMS = ("coefficients", "factors")
SEED_ENV = "QUATROOTS_SEED"


@dataclass(frozen=True)
class PolynomialSpec:
    form: str
    entries: tuple

    def to_hpoly(self) -> HPoly:
        if self.form == "factors":
            return from_factors([Quaternion.coerce(e) for e in self.entries])
        return HPoly(self.entries)

    def to_dict(self) -> dict:
        return {"form": self.form, "entries": [list(e) for e in self.entries]}


def _fmt(x: float) -> str:
    return "%.17g" % x


def _entry(value, where: str) -> tuple:
    if not isinstance(value, (list, tuple)) or len(value) != 4:
        raise ParseError(f"{where}: expected a list of 4 numbers [w, x, y, z]")
    out = []
    for c, comp in enumerate(value):
        if isinstance(comp, bool) or not isinstance(comp, (int, float)):
            raise ParseError(f"{where}[{c}]: {comp!r} is not a number")
        comp = float(comp)
        if not math.isfinite(comp):
            raise ParseError(f"{where}[{c}]: non-finite value")
        out.append(comp)
    return tuple(out)


def spec_from_obj(obj) -> PolynomialSpec:
    if not isinstance(obj, dict):
        raise ParseError("top level: expected an object with 'form' and 'entries'")
    form = obj.get("form")
    if form not in FORMS:
        raise ParseError(f"form: expected one of {FORMS}, got {form!r}")
    entries = obj.get("entries")
    if not isinstance(entries, list) or not entries:
        raise ParseError("entries: expected a non-empty list")
    parsed = tuple(_entry(e, f"entries[{k}]") for k, e in enumerate(entries))
    if form == "coefficients":
        if not any(parsed[-1]):
            raise ParseError(f"entries[{len(parsed) - 1}]: leading coefficient is zero")
        if len(parsed) == 1:
            raise DegreeZero("entries: a constant polynomial has no zeros to find")
    return PolynomialSpec(form, parsed)


def _load_json(source: str, what: str):
    if os.path.exists(source):
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = source
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{what}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def parse_input(source: str) -> PolynomialSpec:
    """Parse a path to a JSON document, or the JSON text itself."""
    return spec_from_obj(_load_json(source, "input"))


def parse_inline(text: str) -> PolynomialSpec:
    """``"w,x,y,z;w,x,y,z;..."`` in ascending degree."""
    entries = []
    for k, chunk in enumerate(t for t in text.split(";") if t.strip()):
        try:
            entries.append([float(c) for c in chunk.split(",")])
        except ValueError:
            raise ParseError(f"coefficient {k}: cannot read {chunk!r}") from None
    return spec_from_obj({"form": "coefficients", "entries": entries})


def serialize(spec: PolynomialSpec) -> str:
    return json.dumps(spec.to_dict())


def parse_points(source: str, what: str) -> list:
    """A list of quaternions: ``[[w,x,y,z], ...]`` or ``{"entries": [...]}``."""
    obj = _load_json(source, what)
    if isinstance(obj, dict):
        obj = obj.get("entries")
    if not isinstance(obj, list) or not obj:
        raise ParseError(f"{what}: expected a non-empty list of [w, x, y, z]")
    return [Quaternion(*_entry(e, f"{what}[{k}]")) for k, e in enumerate(obj)]


def parse_point(text: str) -> Quaternion:
    try:
        parts = [float(c) for c in text.split(",")]
    except ValueError:
        raise ParseError(f"--at: cannot read {text!r}") from None
    return Quaternion(*_entry(parts, "--at"))


# running ------------------------------------------------------------------------

@dataclass
class RunReport:
    input: dict
    config: dict
    converged: bool
    iterations: int
    roots: list
    factor_terms: list
    spheres: list
    perturbations: int = 0
    spheres_refined: int = 0
    timing: Optional[float] = None
    errors: Optional[list] = field(default=None)

    def to_json(self) -> str:
        doc = asdict(self)
        if doc["timing"] is None:
            del doc["timing"]
        if doc["errors"] is None:
            del doc["errors"]
        return json.dumps(doc, indent=2) + "\n"


def _q(q) -> list:
    return [float(c) for c in q]


def _root_entry(q: Quaternion, classified: Optional[ClassifiedRoot], residual: float) -> dict:
    key = class_key(q)
    kind = None
    if classified is not None:
        k = classified.kind
        kind = {"tag": k.tag, "multiplicity": k.multiplicity,
                "sphere": None if k.sphere is None else [k.sphere.re, k.sphere.norm]}
    return {"value": _q(q), "class_key": [key.re, key.norm], "residual": residual, "kind": kind}


def run(spec: PolynomialSpec, cfg: SolverConfig, start: Optional[Sequence] = None,
        known: Optional[Sequence] = None, class_key_errors: bool = False,
        group_tol: float = 1e-8, timing: bool = False):
    """Solve, classify and report.  Returns ``(report, outcome)``."""
    p = monicize(spec.to_hpoly())
    t0 = time.perf_counter()
    outcome = solve(p, cfg, start)
    elapsed = time.perf_counter() - t0
    table = None
    if known is not None:
        table = error_table(outcome, known, class_key_errors)
        annotate(outcome, table)
    residuals = list(outcome.trace[-1].residuals)
    try:
        classified = group_spheres(outcome.roots, p, group_tol)
    except (NotAZero, DiagnosticConflict):
        # an unconverged run has no zeros to classify
        classified = [None] * len(outcome.roots)
    spheres = []
    if all(c is not None for c in classified):
        spheres = [{"key": [s["key"].re, s["key"].norm], "members": s["members"]}
                   for s in sphere_summary(classified)]
    report = RunReport(
        input=spec.to_dict(),
        config=asdict(cfg),
        converged=outcome.converged,
        iterations=outcome.iterations,
        roots=[_root_entry(q, c, r) for q, c, r in zip(outcome.roots, classified, residuals)],
        factor_terms=[_q(q) for q in outcome.factor_terms],
        spheres=spheres,
        perturbations=outcome.perturbations,
        spheres_refined=outcome.spheres_refined,
        timing=elapsed if timing else None,
        errors=None if table is None else [
            {"k": row.k, "errors": list(row.errors), "error": row.error, "rho": row.rho}
            for row in table],
    )
    return report, outcome


DETAIL_HEADER = ["k", "i", "z_w", "z_x", "z_y", "z_z", "zeta_w", "zeta_x", "zeta_y", "zeta_z",
                 "residual", "increment"]
SUMMARY_HEADER = ["k", "max_increment", "max_residual", "rho"]


def _opt(x) -> str:
    return "" if x is None else _fmt(x)


def trace_csv(outcome: SolveOutcome) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(DETAIL_HEADER)
    for rec in outcome.trace:
        for i, (z, zeta) in enumerate(zip(rec.z, rec.zeta)):
            inc = None if rec.increments is None else rec.increments[i]
            w.writerow([rec.k, i, *map(_fmt, z), *map(_fmt, zeta), _fmt(rec.residuals[i]), _opt(inc)])
    w.writerow(SUMMARY_HEADER)
    for rec in outcome.trace:
        w.writerow([rec.k, _opt(rec.max_increment), _fmt(rec.max_residual), _opt(rec.rho)])
    return buf.getvalue()


def emit_trace(outcome: SolveOutcome, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(trace_csv(outcome))


# argument handling ----------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    # usage errors share the bad-input exit code instead of argparse's 2
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def _build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="quatroots",
                                 description="Zeros of quaternion polynomials by Weierstrass iteration.")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="find all zeros")
    src = s.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", help="JSON polynomial document (path or inline text)")
    src.add_argument("--coeffs", help='inline coefficients "w,x,y,z;..." from a_0 upwards')
    s.add_argument("--mode", choices=["sequential", "parallel"], default="sequential")
    s.add_argument("--eps1", type=float, default=1e-12, help="increment tolerance")
    s.add_argument("--eps2", type=float, default=1e-12, help="residual tolerance")
    s.add_argument("--kmax", type=int, default=100)
    s.add_argument("--seed", type=int, default=None)
    s.add_argument("--stopping", choices=["both", "residual"], default="both")
    s.add_argument("--absolute-residual", action="store_true",
                   help="compare raw |P(zeta)| with eps2 instead of the scaled residual")
    s.add_argument("--no-refine-spheres", action="store_true")
    s.add_argument("--group-tol", type=float, default=1e-8,
                   help="class-key tolerance when grouping zeros")
    s.add_argument("--start", help="JSON list of starting factor terms")
    s.add_argument("--trace", help="write the iteration trace CSV here")
    s.add_argument("--known-roots", help="JSON list of exact roots for the error table")
    s.add_argument("--class-key-errors", action="store_true",
                   help="measure errors on (Re, |.|) instead of the values")
    s.add_argument("--timing", action="store_true", help="include wall time in the report")
    s.add_argument("--output", help="write the JSON report here instead of stdout")

    e = sub.add_parser("eval", help="evaluate the polynomial at a point")
    e.add_argument("--input", required=True)
    e.add_argument("--at", required=True, help="w,x,y,z")

    x = sub.add_parser("expand", help="print the coefficient form")
    x.add_argument("--input", required=True)
    return ap


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get(SEED_ENV)
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise ParseError(f"{SEED_ENV}: {env!r} is not an integer") from None


def _cmd_solve(args, out) -> int:
    spec = parse_input(args.input) if args.input is not None else parse_inline(args.coeffs)
    try:
        cfg = SolverConfig(mode=args.mode, eps_increment=args.eps1, eps_residual=args.eps2,
                           kmax=args.kmax, rng_seed=_seed(args), stopping=args.stopping,
                           relative_residual=not args.absolute_residual,
                           refine_spheres=not args.no_refine_spheres)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    start = parse_points(args.start, "start") if args.start else None
    known = parse_points(args.known_roots, "known-roots") if args.known_roots else None
    report, outcome = run(spec, cfg, start, known, args.class_key_errors, args.group_tol,
                          timing=args.timing)
    if args.trace:
        emit_trace(outcome, args.trace)
    text = report.to_json()
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_OK if outcome.converged else EXIT_NOT_CONVERGED


def _cmd_eval(args, out) -> int:
    p = parse_input(args.input).to_hpoly()
    out.write(",".join(_fmt(c) for c in evaluate(p, parse_point(args.at))) + "\n")
    return EXIT_OK


def _cmd_expand(args, out) -> int:
    p = parse_input(args.input).to_hpoly()
    spec = PolynomialSpec("coefficients", tuple(tuple(c) for c in p.coeffs))
    out.write(serialize(spec) + "\n")
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = _build_parser().parse_args(argv)
    handler = {"solve": _cmd_solve, "eval": _cmd_eval, "expand": _cmd_expand}[args.command]
    try:
        return handler(args, out)
    except ParseError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_PARSE
    except TooManyCollisions as exc:
        err.write(f"error: {exc}\n")
        return EXIT_COLLISIONS


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 parse error in a file or flag,
3 mathematical precondition violated.  Results go to stdout, diagnostics to
stderr.  ``--json`` switches stdout to a versioned JSON document.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .bezoutian import bezoutian, coefficient_matrix, jacobian, reduced_bezoutian
from .druzkowski import (
    DEFAULT_MAX_N,
    conjugate_search,
    from_matrix,
    sample_reduced_bezoutians,
)
from .errors import MathPreconditionError, ParseError
from .groebner import INFINITE, fiber_basis, standard_monomials
from .injectivity import certify_global, certify_point
from .parse import (
    parse_matrix_file,
    parse_point,
    parse_system_file,
    render_matrix,
    render_monomial,
    render_point,
    render_polynomial,
    render_rational,
    render_system,
)

SCHEMA_VERSION = 1
EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_MATH = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _rat(c) -> str:
    return render_rational(c)


def _dim(d):
    return "infinite" if d == INFINITE else int(d)


class Context:
    """Per-invocation state: where output goes and what went in."""

    def __init__(self, args, stdout, stderr):
        self.args = args
        self.stdout = stdout
        self.stderr = stderr
        self.digest = hashlib.sha256()
        self.digest.update(args.command.encode())

    def read(self, path: str) -> str:
        try:
            data = Path(path).read_bytes()
        except OSError as exc:
            raise ParseError(f"cannot read {path}: {exc.strerror}") from None
        self.digest.update(data)
        try:
            return data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"{path} is not valid UTF-8") from exc

    def note_input(self, text: str) -> None:
        self.digest.update(b"\0" + text.encode())

    def emit(self, payload: dict, text: str) -> None:
        if self.args.json:
            doc = {
                "schema": SCHEMA_VERSION,
                "command": self.args.command,
                "input_digest": "sha256:" + self.digest.hexdigest(),
                "status": "ok",
                "payload": payload,
            }
            self.stdout.write(json.dumps(doc, indent=2) + "\n")
        else:
            self.stdout.write(text if text.endswith("\n") else text + "\n")


def _load_system(ctx: Context, path: str):
    text = ctx.read(path)
    return parse_system_file(text)


def _point(ctx: Context, f, raw: str | None):
    if raw is None:
        q = (Fraction(0),) * f.n
    else:
        q = parse_point(raw, f.n)
    ctx.note_input(render_point(q))
    return q


def cmd_bezoutian(ctx: Context) -> None:
    f = _load_system(ctx, ctx.args.system)
    b = render_polynomial(bezoutian(f))
    ctx.emit({"bezoutian": b}, b)


def cmd_jacobian(ctx: Context) -> None:
    f = _load_system(ctx, ctx.args.system)
    j = render_polynomial(jacobian(f))
    ctx.emit({"jacobian": j}, j)


def _report_payload(report) -> dict:
    return {
        "point": [_rat(c) for c in report.point],
        "bezoutian": render_polynomial(report.bezoutian),
        "jacobian": render_polynomial(report.jacobian),
        "reduced_bezoutian": render_polynomial(report.reduced_bezoutian),
        "constant": report.reduced_is_constant,
        "value": None if report.reduced_constant_value is None else _rat(report.reduced_constant_value),
        "ideal_is_unit": report.ideal_is_unit,
        "quotient_dimension": _dim(report.quotient_dimension_x),
    }


def cmd_reduced_bezoutian(ctx: Context) -> None:
    f = _load_system(ctx, ctx.args.system)
    q = _point(ctx, f, ctx.args.point)
    report = reduced_bezoutian(f, q)
    payload = _report_payload(report)
    lines = [
        f"point: {render_point(q)}",
        f"reduced_bezoutian: {payload['reduced_bezoutian']}",
        f"constant: {'true' if report.reduced_is_constant else 'false'}",
    ]
    if report.reduced_is_constant:
        lines.append(f"value: {payload['value']}")
    if report.ideal_is_unit:
        lines.append("ideal: unit (empty fiber)")
    ctx.emit(payload, "\n".join(lines))


def cmd_quotient_dim(ctx: Context) -> None:
    f = _load_system(ctx, ctx.args.system)
    q = _point(ctx, f, ctx.args.point)
    qb = standard_monomials(fiber_basis(f, q))
    basis = None if not qb.is_finite else [render_monomial(m, f.ring) for m in qb.monomials]
    payload = {
        "point": [_rat(c) for c in q],
        "dimension": _dim(qb.dimension),
        "standard_monomials": basis,
    }
    text = f"{_dim(qb.dimension)}"
    if basis is not None and basis:
        text += "\nbasis: " + ", ".join(basis)
    ctx.emit(payload, text)


def _certificate_payload(cert) -> dict:
    payload = {
        "scope": cert.scope.value,
        "verdict": cert.verdict.value,
        "point": None if cert.point is None else [_rat(c) for c in cert.point],
        "bezoutian": render_polynomial(cert.bezoutian),
        "jacobian": render_polynomial(cert.jacobian),
        "jacobian_is_unit": cert.jacobian_is_unit,
        "notes": list(cert.notes),
    }
    if cert.evidence is not None:
        payload["evidence"] = _report_payload(cert.evidence)
    return payload


def cmd_check_injectivity(ctx: Context) -> None:
    f = _load_system(ctx, ctx.args.system)
    if ctx.args.global_:
        ctx.note_input("global")
        cert = certify_global(f)
    else:
        cert = certify_point(f, _point(ctx, f, ctx.args.point))
    payload = _certificate_payload(cert)
    lines = [f"scope: {payload['scope']}", f"verdict: {payload['verdict']}"]
    if cert.point is not None:
        lines.append(f"point: {render_point(cert.point)}")
        lines.append(f"reduced_bezoutian: {payload['evidence']['reduced_bezoutian']}")
    else:
        lines.append(f"bezoutian: {payload['bezoutian']}")
    lines.append(f"jacobian: {payload['jacobian']}")
    lines.extend(f"note: {n}" for n in cert.notes)
    ctx.emit(payload, "\n".join(lines))


def cmd_coefficient_matrix(ctx: Context) -> None:
    f = _load_system(ctx, ctx.args.system)
    q = _point(ctx, f, ctx.args.point)
    cm = coefficient_matrix(f, q)
    xs = [render_monomial(m, f.ring) for m in cm.x_basis.monomials]
    ys = [render_monomial(m, f.ring) for m in cm.y_basis.monomials]
    rows = [[_rat(v) for v in row] for row in cm.entries]
    det = _rat(cm.determinant())
    payload = {
        "point": [_rat(c) for c in q],
        "x_basis": xs,
        "y_basis": ys,
        "matrix": rows,
        "determinant": det,
    }
    lines = [f"x_basis: {', '.join(xs)}", f"y_basis: {', '.join(ys)}", "matrix:"]
    lines.extend(" ".join(r) for r in rows)
    lines.append(f"determinant: {det}")
    ctx.emit(payload, "\n".join(lines))


def _load_matrix(ctx: Context, path: str):
    return parse_matrix_file(ctx.read(path))


def cmd_druzkowski(ctx: Context) -> None:
    spec = from_matrix(_load_matrix(ctx, ctx.args.matrix))
    text = render_system(spec.system)
    ctx.emit(
        {
            "matrix": [[_rat(v) for v in r] for r in spec.A],
            "vars": list(spec.system.ring.x_names),
            "polynomials": [render_polynomial(p) for p in spec.system.polys],
            "jacobian": _rat(spec.jacobian_constant),
        },
        text,
    )


def cmd_conjugate_search(ctx: Context) -> None:
    A = _load_matrix(ctx, ctx.args.matrix)
    ctx.note_input(str(ctx.args.max_n))
    witness = conjugate_search(A, max_n=ctx.args.max_n)
    if witness is None:
        ctx.emit({"witness": None}, "none")
        return
    perm = [p + 1 for p in witness.permutation]
    payload = {
        "witness": {
            "permutation": perm,
            "signs": list(witness.signs),
            "conjugated_matrix": [[_rat(v) for v in r] for r in witness.conjugated],
        }
    }
    text = (
        f"permutation: {' '.join(map(str, perm))}\n"
        f"signs: {' '.join(f'{s:+d}' for s in witness.signs)}\n"
        f"conjugated_matrix:\n{render_matrix(witness.conjugated)}"
    )
    ctx.emit(payload, text)


CSV_HEADER = ["sample_index", "q", "constant_value", "is_one", "elapsed_ms"]


def cmd_experiment_sample(ctx: Context) -> None:
    args = ctx.args
    A = _load_matrix(ctx, args.matrix)
    ctx.note_input(f"{args.samples},{args.seed},{args.range}")
    if args.samples < 1 or args.range < 1:
        raise UsageError("--samples and --range must be positive")
    records = sample_reduced_bezoutians(A, args.samples, args.seed, args.range, workers=args.workers)
    csv_file = open(args.csv, "w", newline="", encoding="utf-8") if args.csv else None
    try:
        writer = None
        if csv_file is not None:
            writer = csv.writer(csv_file)
            writer.writerow(CSV_HEADER)
        collected = []
        if not args.json:
            ctx.stdout.write("sample_index q constant_value is_one\n")
        for rec in records:
            value = "" if rec.constant_value is None else _rat(rec.constant_value)
            q = ";".join(_rat(c) for c in rec.point)
            if writer is not None:
                writer.writerow([rec.index, q, value, str(rec.is_one).lower(), f"{rec.elapsed * 1000:.3f}"])
            row = {"sample_index": rec.index, "q": [_rat(c) for c in rec.point],
                   "constant_value": value or None, "is_one": rec.is_one}
            collected.append(row)
            if not args.json:
                ctx.stdout.write(f"{rec.index} {q} {value or '-'} {str(rec.is_one).lower()}\n")
                ctx.stdout.flush()
    finally:
        if csv_file is not None:
            csv_file.close()
    all_one = all(r["is_one"] for r in collected)
    if args.json:
        ctx.emit(
            {
                "matrix": [[_rat(v) for v in r] for r in A],
                "samples": args.samples,
                "seed": args.seed,
                "range": args.range,
                "records": collected,
                "all_one": all_one,
            },
            "",
        )
    else:
        ctx.stdout.write(f"all_one: {str(all_one).lower()}\n")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="emit a JSON document")

    parser = _Parser(
        prog="bezoutkit",
        description="Bézoutians, Jacobians and injectivity certificates of polynomial maps.",
        parents=[common],
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser, required=True)

    def system_cmd(name, func, help_, point=False):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("system", help="system file")
        if point:
            p.add_argument("--point", help="rational point q1,q2,... (default: origin)")
        p.set_defaults(func=func)
        return p

    system_cmd("bezoutian", cmd_bezoutian, "print Béz(f)")
    system_cmd("jacobian", cmd_jacobian, "print Jac(f)")
    system_cmd("reduced-bezoutian", cmd_reduced_bezoutian, "print Béz(f - q) mod (f(x) - q, f(y) - q)", point=True)
    system_cmd("quotient-dim", cmd_quotient_dim, "print dim Q[x]/(f - q)", point=True)
    system_cmd("coefficient-matrix", cmd_coefficient_matrix, "print the matrix B_ij", point=True)

    chk = sub.add_parser("check-injectivity", parents=[common], help="injectivity certificate")
    chk.add_argument("system")
    where = chk.add_mutually_exclusive_group(required=True)
    where.add_argument("--point")
    where.add_argument("--global", dest="global_", action="store_true")
    chk.set_defaults(func=cmd_check_injectivity)

    dz = sub.add_parser("druzkowski", parents=[common], help="print the Druzkowski system of a matrix")
    dz.add_argument("--matrix", required=True)
    dz.set_defaults(func=cmd_druzkowski)

    cs = sub.add_parser("conjugate-search", parents=[common], help="search signed permutation conjugations")
    cs.add_argument("--matrix", required=True)
    cs.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)
    cs.set_defaults(func=cmd_conjugate_search)

    ex = sub.add_parser("experiment", parents=[common], help="run experiments")
    exsub = ex.add_subparsers(dest="experiment", parser_class=_Parser, required=True)
    sampler = exsub.add_parser("q411", parents=[common], help="sample reduced Bézoutians of a Druzkowski map")
    sampler.add_argument("--matrix", required=True)
    sampler.add_argument("--samples", type=int, required=True)
    sampler.add_argument("--seed", type=int, required=True)
    sampler.add_argument("--range", type=int, required=True)
    sampler.add_argument("--csv", help="write records to this CSV file")
    sampler.add_argument("--workers", type=int, default=1)
    sampler.set_defaults(func=cmd_experiment_sample)
    return parser


def run_cli(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        stderr.write(f"{exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    args.json = getattr(args, "json", False)
    if args.command == "experiment":
        args.command = f"experiment {args.experiment}"
    ctx = Context(args, stdout, stderr)
    try:
        args.func(ctx)
    except UsageError as exc:
        return _fail(ctx, "UsageError", str(exc), EXIT_USAGE)
    except ParseError as exc:
        return _fail(ctx, type(exc).__name__, str(exc), EXIT_PARSE)
    except MathPreconditionError as exc:
        return _fail(ctx, type(exc).__name__, str(exc), EXIT_MATH)
    return EXIT_OK


def _fail(ctx: Context, kind: str, message: str, code: int) -> int:
    if ctx.args.json:
        doc = {
            "schema": SCHEMA_VERSION,
            "command": ctx.args.command,
            "status": {"error": {"kind": kind, "message": message}},
        }
        ctx.stderr.write(json.dumps(doc) + "\n")
    else:
        ctx.stderr.write(f"error: {kind}: {message}\n")
    return code


def main() -> None:
    sys.exit(run_cli())

"""Command-line front end.

Exit codes: 0 success, 1 mathematical failure, 2 input error, 3 resource
limit, 4 inconclusive elimination (no pure recurrence found).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import __version__
from .annihilator import (
    DEFAULT_GRID,
    AnnihilatorSpec,
    NoRecurrenceFound,
    RecurrenceCertificate,
    build_certificate,
    check_operator,
    constant_term_oracle,
)
from .dyson import (
    DEFAULT_MAX_TERMS,
    DysonInstance,
    TermLimitExceeded,
    dyson_ct_bruteforce,
    dyson_ct_recursive,
    dyson_verify,
    lagrange_check,
    multinomial,
)
from .groebner import ResourceLimitExceeded, ResourceLimits
from .laurent import ExponentOverflowError, default_var_names
from .operators import DiffOperator, rational_str
from .parse import ParseError, parse_laurent

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_RESOURCE = 3
EXIT_INCONCLUSIVE = 4

DEFAULT_MAX_N = 4


class InputError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip() != ""]
    except ValueError:
        raise InputError(f"expected a comma-separated integer list, got {text!r}")


def _limits(args) -> ResourceLimits:
    return ResourceLimits(args.max_spairs, args.max_terms, args.timeout_seconds)


def _emit(args, payload: dict, text_lines: Sequence[str]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        for line in text_lines:
            print(line)


def load_spec_file(path: str | Path) -> tuple[AnnihilatorSpec, bool]:
    """Read a spec JSON file: ``{"n", "vars", "R", "dehomogenize"}``."""
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read spec file {path}: {exc}")
    if not isinstance(data, dict) or "R" not in data:
        raise InputError(f"spec file {path} needs an 'R' list")
    R = data["R"]
    n = int(data.get("n", len(R)))
    if len(R) != n:
        raise InputError(f"spec file {path}: n={n} but {len(R)} expressions")
    names = data.get("vars") or default_var_names(n)
    if len(names) != n:
        raise InputError(f"spec file {path}: {len(names)} variable names for n={n}")
    try:
        spec = AnnihilatorSpec.from_strings(R, names)
    except ParseError:
        raise
    except ValueError as exc:
        raise InputError(str(exc))
    return spec, bool(data.get("dehomogenize", False))


def load_operator_file(path: str | Path, n: int) -> tuple[DiffOperator, int | None]:
    """Operator from a certificate, a ``{"operator": [...]}`` object, a bare
    term list, or a text expression in ``A1..An``.  Returns the operator and the
    stored grid bound, if any."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read operator file {path}: {exc}")
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        data = None
    if not isinstance(data, (dict, list)):
        poly = parse_laurent(text.strip(), default_var_names(n, "A"))
        return DiffOperator(n, poly), None
    grid = None
    if isinstance(data, dict):
        if "n" in data and int(data["n"]) != n:
            raise InputError(f"operator has n={data['n']}, spec has n={n}")
        grid = data.get("grid_bound")
        data = data.get("operator")
    if not isinstance(data, list):
        raise InputError(f"no operator terms found in {path}")
    try:
        return DiffOperator.from_json(n, data), grid
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed operator terms in {path}: {exc}")


# -- commands ---------------------------------------------------------------

def cmd_ct(args) -> int:
    names = [v.strip() for v in args.vars.split(",")]
    try:
        p = parse_laurent(args.expr, names)
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise InputError(str(exc))
    ct = p.constant_term()
    _emit(args, {"expr": args.expr, "vars": names, "constant_term": rational_str(ct)}, [str(ct)])
    return EXIT_OK


def cmd_dyson(args) -> int:
    n = args.n
    if n < 1:
        raise InputError("--n must be at least 1")
    if args.amax is not None:
        report = dyson_verify(n, args.amax, args.max_terms)
        lines = report.lines()
        bad = report.first_failure
        summary = f"{len(report.rows)} instances {'OK' if report.passed else 'FAIL'}"
        if bad:
            summary += f" (first failure at a=({','.join(map(str, bad.a))}))"
        _emit(args, report.as_dict(), lines + [summary])
        return EXIT_OK if report.passed else EXIT_FAIL
    if args.a is None:
        raise InputError("give either --a or --amax")
    a = _int_list(args.a)
    try:
        inst = DysonInstance(n, tuple(a))
    except ValueError as exc:
        raise InputError(str(exc))
    values = {}
    if args.method in ("brute", "all"):
        values["brute"] = dyson_ct_bruteforce(inst, args.max_terms)
    if args.method in ("recursive", "all"):
        values["recursive"] = dyson_ct_recursive(inst)
    if args.method in ("formula", "all"):
        values["multinomial"] = multinomial(inst.a)
    ok = len(set(values.values())) == 1
    vec = "(" + ",".join(map(str, inst.a)) + ")"
    line = f"a={vec} " + " ".join(f"{k}={v}" for k, v in values.items())
    if args.method == "all":
        line += " OK" if ok else " FAIL"
    payload = {"n": n, "a": list(inst.a), "method": args.method, "ok": ok}
    payload.update({k: str(v) for k, v in values.items()})
    _emit(args, payload, [line])
    return EXIT_OK if ok else EXIT_FAIL


def cmd_lagrange(args) -> int:
    if args.n < 1:
        raise InputError("--n must be at least 1")
    ok = lagrange_check(args.n)
    msg = f"identity holds (n={args.n})" if ok else f"identity FAILS (n={args.n})"
    _emit(args, {"n": args.n, "holds": ok}, [msg])
    return EXIT_OK if ok else EXIT_FAIL


def _report_lines(cert: RecurrenceCertificate) -> list[str]:
    lines = [
        f"operator: {cert.operator}",
        f"good form: {cert.good_form}",
        "elimination basis: " + "; ".join(str(op) for op in cert.elimination_basis),
    ]
    bad = next(((a, r) for a, r in cert.checks if r != 0), None)
    if bad is None:
        lines.append(f"grid {cert.grid_bound}: verified at {len(cert.checks)} points, all residuals 0")
    else:
        lines.append(f"grid {cert.grid_bound}: FAIL at a={bad[0]} residual={bad[1]}")
    return lines


def cmd_annihilate(args) -> int:
    spec, dehom = load_spec_file(args.spec)
    if args.dehomogenize:
        dehom = True
    if spec.n > args.max_n:
        raise InputError(f"n={spec.n} exceeds the configured maximum {args.max_n} (--max-n)")
    try:
        cert = build_certificate(spec, args.grid, _limits(args), dehom)
    except NoRecurrenceFound as exc:
        payload = {"status": "inconclusive", "reason": str(exc), "R": spec.R_text()}
        _emit(args, payload, [f"inconclusive: {exc}"])
        return EXIT_INCONCLUSIVE
    if args.out:
        Path(args.out).write_text(cert.to_json())
    payload = cert.to_dict()
    payload["status"] = "verified" if cert.valid else "failed"
    _emit(args, payload, _report_lines(cert) + ([f"certificate written to {args.out}"] if args.out else []))
    return EXIT_OK if cert.valid else EXIT_FAIL


def cmd_verify(args) -> int:
    spec, _ = load_spec_file(args.spec)
    op, stored_grid = load_operator_file(args.operator, spec.n)
    if op.is_zero():
        raise InputError("the zero operator verifies nothing")
    grid = args.grid if args.grid is not None else (stored_grid if stored_grid is not None else DEFAULT_GRID)
    if grid < op.max_shift():
        raise InputError(f"grid {grid} is smaller than the operator's largest shift {op.max_shift()}")
    report = check_operator(op, constant_term_oracle(spec), grid)
    bad = report.first_failure
    payload = {
        "operator": op.to_json(),
        "grid_bound": grid,
        "passed": report.passed,
        "points_checked": report.points_checked,
        "first_failure": None if bad is None else {"a": list(bad[0]), "value": rational_str(bad[1])},
        "residuals": [{"a": list(a), "value": rational_str(r)} for a, r in report.residuals],
    }
    if bad is None:
        lines = [f"operator {op}: verified at {report.points_checked} points (grid {grid}), all residuals 0"]
    else:
        vec = "(" + ",".join(map(str, bad[0])) + ")"
        lines = [f"operator {op}: FAIL at a={vec} residual={bad[1]}"]
    _emit(args, payload, lines)
    return EXIT_OK if report.passed else EXIT_FAIL


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ctrec",
        description="Constant terms of Laurent-polynomial powers and their pure recurrences.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, limits=False):
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--max-terms", type=int, default=DEFAULT_MAX_TERMS if not limits else ResourceLimits.max_terms)
        if limits:
            p.add_argument("--max-spairs", type=int, default=ResourceLimits.max_spairs)
            p.add_argument("--timeout-seconds", type=float, default=ResourceLimits.timeout_seconds)

    p = sub.add_parser("ct", help="constant term of an expression")
    p.add_argument("expr")
    p.add_argument("--vars", required=True, help="comma-separated variable names, e.g. x1,x2")
    common(p)
    p.set_defaults(func=cmd_ct)

    p = sub.add_parser("dyson", help="evaluate or verify the Dyson constant term")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", help="comma-separated exponents a1,...,an")
    p.add_argument("--amax", type=int, help="verify all a in {0..amax}^n")
    p.add_argument("--method", choices=("brute", "recursive", "formula", "all"), default="all")
    common(p)
    p.set_defaults(func=cmd_dyson)

    p = sub.add_parser("lagrange", help="check the partition-of-unity identity")
    p.add_argument("--n", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_lagrange)

    p = sub.add_parser("annihilate", help="find and certify a pure recurrence for a spec file")
    p.add_argument("spec", help="spec JSON file")
    p.add_argument("--grid", type=int, default=DEFAULT_GRID)
    p.add_argument("--out", help="write the certificate JSON here")
    p.add_argument("--dehomogenize", action="store_true", help="set the last variable to 1 (degree-0 inputs)")
    p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)
    common(p, limits=True)
    p.set_defaults(func=cmd_annihilate)

    p = sub.add_parser("verify", help="re-verify a stored operator against the brute-force oracle")
    p.add_argument("operator", help="certificate JSON, operator JSON, or expression in A1..An")
    p.add_argument("spec", help="spec JSON file")
    p.add_argument("--grid", type=int, default=None)
    common(p)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ParseError, InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ResourceLimitExceeded, TermLimitExceeded, ExponentOverflowError, MemoryError) as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())

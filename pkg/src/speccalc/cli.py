"""spec-calc: run JSON scenarios and verification suites.

Exit codes: 0 success, 2 some verification failed, 1 bad input.
Domain errors raised by a query (a resolvent at a spectrum point, say) are
reported as error entries and do not change the exit code.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable

from .c0 import NotOrthogonal, NotUnitNorm, OrthoSystem, ZeroVector, validate_orthosystem
from .field import FieldElem, NormExp
from .measure import (
    CFunc,
    Clopen,
    InvalidPartition,
    UnknownPoint,
    f_mul,
    indicator,
    integrate,
    interpolated_operator,
    lagrange_interpolate,
    measure_of,
    partition_bound,
    psi,
    riemann_error,
    riemann_sum,
)
from .operators import MismatchedSystem, OpSY, norm_by_basis, op_compose, op_norm
from .parsing import ParseError, parse_poly_expr
from .serialize import (
    FuncSpec,
    clopen_from_json,
    fe_from_json,
    func_spec_from_json,
    op_from_json,
    op_to_json,
    partition_from_json,
    point_id,
    vec_from_json,
    vec_to_json,
)
from .spectral import (
    NotCompactPart,
    NotInAlgebra,
    SpectrumPoint,
    gelfand_eval,
    grouped_projection,
    poly_in_operator,
    resolvent,
    spectrum_of,
    vandermonde_projection,
)
from .suites import DEFAULT_SEED, SUITES, SuiteResult, run_suite

EXIT_OK, EXIT_INPUT, EXIT_FAILED = 0, 1, 2

QUERY_KINDS = ("spectrum", "resolvent", "project", "measure", "integrate", "riemann", "verify", "norm")

# errors that become report entries instead of aborting the run
DOMAIN_ERRORS = (SpectrumPoint, NotCompactPart, NotInAlgebra, UnknownPoint, InvalidPartition, MismatchedSystem)


class InputError(Exception):
    pass


@dataclass
class Query:
    kind: str
    payload: dict[str, Any]


@dataclass
class Scenario:
    system: OrthoSystem
    alpha: FieldElem
    lam: list[FieldElem]
    queries: list[Query] = field(default_factory=list)

    @property
    def operator(self) -> OpSY:
        return OpSY(self.alpha, tuple(self.lam), self.system)


# ---------------------------------------------------------------------------
# scenario parsing
# ---------------------------------------------------------------------------

def _operand(spec: Any, system: OrthoSystem):
    """An operator for gelfand rows: an {alpha, lambda} object or 'poly: p(x)' meaning p(T)."""
    if isinstance(spec, str):
        kind, _, body = spec.partition(":")
        if kind.strip() != "poly":
            raise ParseError("operator strings must read 'poly: <expr in x>'", 0, spec)
        return ("poly", spec, list(parse_poly_expr(body.strip()).coeffs))
    return ("op", spec, op_from_json(spec, system))


def _parse_query(raw: Any, system: OrthoSystem) -> Query:
    if not isinstance(raw, dict) or "kind" not in raw:
        raise InputError("each query is an object with a 'kind'")
    kind = raw["kind"]
    if kind not in QUERY_KINDS:
        raise InputError(f"unknown query kind {kind!r}; expected one of {', '.join(QUERY_KINDS)}")
    p: dict[str, Any] = {}
    if kind == "spectrum":
        p["gelfand"] = [_operand(h, system) for h in raw.get("gelfand", [])]
    elif kind == "resolvent":
        p["z"] = fe_from_json(_need(raw, "z"))
    elif kind == "project":
        p["k"] = point_id(_need(raw, "k"))
        if p["k"] == 0:
            raise InputError("project needs a nonzero spectrum point (p1, p2, ...)")
    elif kind == "measure":
        p["clopen"] = clopen_from_json(_need(raw, "clopen"))
    elif kind == "integrate":
        p["f"] = func_spec_from_json(_need(raw, "f"))
        p["clopen"] = clopen_from_json(raw["clopen"]) if "clopen" in raw else None
    elif kind == "riemann":
        p["f"] = func_spec_from_json(_need(raw, "f"))
        p["partition"] = partition_from_json(_need(raw, "partition"))
    elif kind == "verify":
        suite = _need(raw, "suite")
        if suite not in SUITES:
            raise InputError(f"unknown suite {suite!r}; expected one of {', '.join(SUITES)}")
        p["suite"] = suite
        p["n"] = _positive(raw.get("n", 5), "n")
        p["trials"] = _positive(raw["trials"], "trials") if "trials" in raw else None
        p["seed"] = raw.get("seed")
    elif kind == "norm":
        p["operator"] = _operand(raw["operator"], system) if "operator" in raw else None
    return Query(kind, p)


def _need(raw: dict, key: str) -> Any:
    if key not in raw:
        raise InputError(f"query {raw['kind']!r} needs {key!r}")
    return raw[key]


def _positive(value: Any, name: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or value < 1:
        raise InputError(f"{name} must be a positive integer")
    return value


def parse_scenario(data: Any) -> Scenario:
    if not isinstance(data, dict):
        raise InputError("scenario must be a JSON object")
    try:
        members = [vec_from_json(v) for v in data.get("Y", [])]
        system = validate_orthosystem(members)
        lam = [fe_from_json(v) for v in data.get("lambda", [])]
        if len(lam) != len(system):
            raise InputError(f"lambda has {len(lam)} entries but Y has {len(system)} members")
        alpha = fe_from_json(data.get("alpha", "0"))
        queries = [_parse_query(q, system) for q in data.get("queries", [])]
    except (ParseError, ZeroVector, NotOrthogonal, NotUnitNorm, ZeroDivisionError) as exc:
        raise InputError(f"{type(exc).__name__}: {exc}") from None
    return Scenario(system, alpha, lam, queries)


def load_scenario(path: str | Path) -> Scenario:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return parse_scenario(data)


# ---------------------------------------------------------------------------
# query execution
# ---------------------------------------------------------------------------

def _fmt_norm(n: NormExp) -> str:
    return str(n)


def _suite_entry(res: SuiteResult) -> list[dict[str, Any]]:
    rows = []
    for c in res.checks.values():
        row: dict[str, Any] = {"check": c.name, "status": "pass" if c.ok else "fail",
                               "passed": c.passed, "failed": c.failed}
        if c.counterexample is not None:
            row["counterexample"] = c.counterexample
        rows.append(row)
    return rows


def _resolve_operand(operand, T: OpSY) -> OpSY:
    kind, _, value = operand
    return poly_in_operator(value, T) if kind == "poly" else value


def _operand_label(operand) -> Any:
    kind, source, value = operand
    return source if kind == "poly" else op_to_json(value)


def _q_spectrum(sc: Scenario, p: dict, seed: int) -> dict:
    T = sc.operator
    sigma = spectrum_of(T)
    out: dict[str, Any] = {
        "sigma": "{" + ", ".join(str(q.value) for q in sigma.all_points()) + "}",
        "points": [{"id": q.label, "value": str(q.value), "indices": list(q.indices)} for q in sigma.all_points()],
    }
    rows = []
    for operand in p["gelfand"]:
        H = _resolve_operand(operand, T)
        row: dict[str, Any] = {"operator": _operand_label(operand)}
        try:
            row["values"] = {q.label: str(gelfand_eval(H, q, sigma)) for q in sigma.all_points()}
        except NotInAlgebra as exc:
            row["error"] = "NotInAlgebra"
            row["message"] = str(exc)
        rows.append(row)
    if rows:
        out["gelfand"] = rows
    return out


def _q_resolvent(sc: Scenario, p: dict, seed: int) -> dict:
    T = sc.operator
    R = resolvent(T, p["z"])
    shifted = OpSY.scalar(T.system, p["z"]) - T
    ident = OpSY.identity(T.system)
    return {
        "z": str(p["z"]),
        "operator": op_to_json(R),
        "checks": {"(zI - T) R = I": op_compose(shifted, R) == ident,
                   "R (zI - T) = I": op_compose(R, shifted) == ident},
    }


def _q_project(sc: Scenario, p: dict, seed: int) -> dict:
    T = sc.operator
    sigma = spectrum_of(T)
    k = p["k"]
    if k > len(sigma.points):
        raise UnknownPoint(f"p{k} is not a point of the spectrum")
    E = vandermonde_projection(T, k, sigma)
    return {
        "point": f"p{k}",
        "value": str(sigma.point(k).value),
        "operator": op_to_json(E),
        "checks": {"equals grouped projection": E == grouped_projection(sigma, sigma.point(k)),
                   "idempotent": op_compose(E, E) == E},
    }


def _q_measure(sc: Scenario, p: dict, seed: int) -> dict:
    T = sc.operator
    sigma = spectrum_of(T)
    C: Clopen = p["clopen"]
    M = measure_of(C, T, sigma)
    return {
        "clopen": str(C),
        "operator": op_to_json(M),
        "checks": {"idempotent": op_compose(M, M) == M,
                   "equals integral of indicator": M == psi(indicator(C, sigma), T, sigma)},
    }


def _q_integrate(sc: Scenario, p: dict, seed: int) -> dict:
    T = sc.operator
    sigma = spectrum_of(T)
    C: Clopen = p["clopen"] or Clopen.whole(sigma)
    C.check_within(sigma)
    spec: FuncSpec = p["f"]
    f: CFunc = spec(sigma)
    result = integrate(f, C, T, sigma)
    restricted = f_mul(f, indicator(C, sigma))
    coeffs = lagrange_interpolate(restricted, T, sigma)
    return {
        "f": spec.source,
        "clopen": str(C),
        "values": {f"p{i}": str(v) for i, v in f.on(sigma).items()},
        "operator": op_to_json(result),
        "interpolating polynomial": [str(c) for c in coeffs],
        "checks": {"equals polynomial in T": interpolated_operator(restricted, T, sigma) == result},
    }


def _q_riemann(sc: Scenario, p: dict, seed: int) -> dict:
    T = sc.operator
    sigma = spectrum_of(T)
    part = p["partition"]
    for cell, _ in part.cells:
        cell.check_within(sigma)
    domain = part.validate()
    spec: FuncSpec = p["f"]
    f = spec(sigma)
    total = riemann_sum(f, part, T, domain, sigma)
    err = riemann_error(f, part, T, sigma)
    bound = partition_bound(f, part)
    return {
        "f": spec.source,
        "partition": str(part),
        "operator": op_to_json(total),
        "integral": op_to_json(integrate(f, domain, T, sigma)),
        "error norm": _fmt_norm(err),
        "oscillation bound": _fmt_norm(NormExp(bound)),
        "checks": {"error within oscillation bound": err.exponent >= bound},
    }


def _q_verify(sc: Scenario, p: dict, seed: int) -> dict:
    use_seed = p["seed"] if p["seed"] is not None else seed
    res = run_suite(p["suite"], seed=use_seed, max_rank=p["n"], trials=p["trials"])
    return {"suite": p["suite"], "n": p["n"], "trials": p["trials"] if p["trials"] else "default",
            "seed": use_seed, "results": _suite_entry(res), "checks": {"all invariants hold": res.ok}}


def _q_norm(sc: Scenario, p: dict, seed: int) -> dict:
    S = sc.operator if p["operator"] is None else _resolve_operand(p["operator"], sc.operator)
    a, b = op_norm(S), norm_by_basis(S)
    return {"operator": op_to_json(S), "norm": _fmt_norm(a), "norm by basis": _fmt_norm(b),
            "checks": {"norm formula agrees with basis images": a == b}}


HANDLERS: dict[str, Callable[[Scenario, dict, int], dict]] = {
    "spectrum": _q_spectrum,
    "resolvent": _q_resolvent,
    "project": _q_project,
    "measure": _q_measure,
    "integrate": _q_integrate,
    "riemann": _q_riemann,
    "verify": _q_verify,
    "norm": _q_norm,
}


def _error_message(exc: Exception) -> str:
    if isinstance(exc, KeyError) and exc.args:
        return str(exc.args[0])
    return str(exc)


def execute(sc: Scenario, seed: int = DEFAULT_SEED, name: str = "scenario") -> dict[str, Any]:
    results = []
    failed = errors = 0
    for n, q in enumerate(sc.queries, start=1):
        entry: dict[str, Any] = {"query": n, "kind": q.kind}
        try:
            body = HANDLERS[q.kind](sc, q.payload, seed)
        except DOMAIN_ERRORS as exc:
            errors += 1
            entry.update(status="error", error=type(exc).__name__, message=_error_message(exc))
        else:
            checks = body.pop("checks", {})
            ok = all(checks.values())
            failed += not ok
            entry["status"] = "ok" if ok else "fail"
            entry.update(body)
            if checks:
                entry["checks"] = {k: "pass" if v else "fail" for k, v in checks.items()}
        results.append(entry)
    return {
        "scenario": name,
        "seed": seed,
        "Y": [vec_to_json(y) for y in sc.system.members],
        "operator": op_to_json(sc.operator),
        "results": results,
        "summary": {"queries": len(results), "errors": errors, "failed": failed},
    }


def exit_code(report: dict[str, Any]) -> int:
    return EXIT_FAILED if report["summary"]["failed"] else EXIT_OK


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

def render_json(report: dict[str, Any]) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


def _is_operator(v: Any) -> bool:
    return isinstance(v, dict) and set(v) == {"alpha", "lambda"}


def _scalar(v: Any) -> str:
    if _is_operator(v):
        return f"alpha = {v['alpha']}; lambda = [{', '.join(v['lambda'])}]"
    if isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v):
        return "[" + ", ".join(str(x) for x in v) + "]"
    if isinstance(v, dict) and all(not isinstance(x, (dict, list)) for x in v.values()):
        return "{" + ", ".join(f"{k}: {x}" for k, x in v.items()) + "}"
    return str(v)


def _lines(obj: dict[str, Any], indent: int) -> list[str]:
    pad = " " * indent
    out = []
    for key, v in obj.items():
        if isinstance(v, list) and any(isinstance(x, dict) and not _is_operator(x) for x in v):
            out.append(f"{pad}{key}:")
            for item in v:
                sub = _lines(item, indent + 4)
                out.append(f"{pad}  - " + sub[0].lstrip())
                out.extend(sub[1:])
        elif isinstance(v, dict) and not _is_operator(v) and key in ("checks", "counterexample"):
            out.append(f"{pad}{key}:")
            out.extend(f"{pad}  {k}: {_scalar(x)}" for k, x in v.items())
        else:
            out.append(f"{pad}{key}: {_scalar(v)}")
    return out


def render_text(report: dict[str, Any]) -> str:
    lines = [f"scenario: {report['scenario']}", f"seed: {report['seed']}", "Y:"]
    lines += [f"  y{i} = {_scalar(y)}" for i, y in enumerate(report["Y"], start=1)]
    lines.append(f"operator: {_scalar(report['operator'])}")
    for entry in report["results"]:
        entry = dict(entry)
        head = f"[{entry.pop('query')}] {entry.pop('kind')}: {entry.pop('status')}"
        lines += ["", head] + _lines(entry, 2)
    s = report["summary"]
    lines += ["", f"summary: {s['queries']} queries, {s['errors']} errors, {s['failed']} failed"]
    return "\n".join(lines) + "\n"


def render_suite_text(res: SuiteResult, seed: int) -> str:
    lines = [f"suite: {res.suite}", f"seed: {seed}"]
    for row in _suite_entry(res):
        lines.append(f"  {row['status'].upper():4}  {row['check']}  ({row['passed']} passed, {row['failed']} failed)")
        if "counterexample" in row:
            lines += [f"        {k} = {v}" for k, v in row["counterexample"].items()]
    lines.append("result: " + ("pass" if res.ok else "fail"))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    # usage errors are input errors (exit 1); 2 is reserved for failed checks
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="spec-calc", description="Exact spectral calculus over Q(t).")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    run = sub.add_parser("run", help="execute a JSON scenario")
    run.add_argument("scenario")
    run.add_argument("--seed", type=int, default=DEFAULT_SEED)
    fmt = run.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json")
    fmt.add_argument("--text", dest="fmt", action="store_const", const="text")
    run.set_defaults(fmt="text")

    ver = sub.add_parser("verify", help="run one verification suite")
    ver.add_argument("--suite", required=True, choices=sorted(SUITES))
    ver.add_argument("--n", type=int, default=5, help="maximum rank")
    ver.add_argument("--trials", type=int, default=None)
    ver.add_argument("--seed", type=int, default=DEFAULT_SEED)
    ver.add_argument("--json", action="store_true")
    return parser


def run(scenario_path: str | Path, seed: int = DEFAULT_SEED) -> tuple[dict[str, Any], int]:
    """Load and execute a scenario; returns (report, exit code).  Raises InputError."""
    report = execute(load_scenario(scenario_path), seed=seed, name=Path(scenario_path).name)
    return report, exit_code(report)


def cmd_run(args) -> int:
    try:
        report, code = run(args.scenario, seed=args.seed)
    except InputError as exc:
        print(f"spec-calc: {exc}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(render_json(report) if args.fmt == "json" else render_text(report))
    return code


def cmd_verify(args) -> int:
    if args.n < 1 or (args.trials is not None and args.trials < 1):
        print("spec-calc: --n and --trials must be positive", file=sys.stderr)
        return EXIT_INPUT
    res = run_suite(args.suite, seed=args.seed, max_rank=args.n, trials=args.trials)
    if args.json:
        out = {"suite": res.suite, "seed": args.seed, "ok": res.ok, "results": _suite_entry(res)}
        sys.stdout.write(render_json(out))
    else:
        sys.stdout.write(render_suite_text(res, args.seed))
    return EXIT_OK if res.ok else EXIT_FAILED


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # --help, usage errors
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT
    if args.command == "run":
        return cmd_run(args)
    return cmd_verify(args)


if __name__ == "__main__":
    sys.exit(main())

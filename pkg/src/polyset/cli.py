"""Command line interface: ``polyset <command> ...``.

Exit codes for ``solve``: 0 solution, 2 no solution, 3 infeasible, 1 input
error.  ``verify`` exits 0 on pass and 2 on failure.  Results go to stdout,
diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .exact import DimensionError, rat, rat_str, zeros
from .io import (
    FormatError,
    dumps,
    enc_vec,
    hrep_json,
    load_problem_file,
    load_solution,
    solution_json,
    vrep_json,
)
from .polyhedra import HRep, PreconditionError, h_to_v, project, remove_redundant
from .setopt import (
    SolveStatus,
    evaluate,
    existence_flags,
    homogeneous,
    is_feasible,
    lower_bound,
    minimality_certificate,
    solve,
    upper_image,
    verify,
)
from .vlp import lineality_condition

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NEGATIVE = 2
EXIT_INFEASIBLE = 3

SOLVE_EXIT = {
    SolveStatus.SOLUTION: EXIT_OK,
    SolveStatus.NO_SOLUTION: EXIT_NEGATIVE,
    SolveStatus.INFEASIBLE: EXIT_INFEASIBLE,
}


def _term(coef, name: str, first: bool) -> str:
    sign = "-" if coef < 0 else "+"
    mag = abs(coef)
    body = name if mag == 1 else f"{rat_str(mag)} {name}"
    if first:
        return ("-" if coef < 0 else "") + body
    return f" {sign} {body}"


def format_row(a, beta, names) -> str:
    parts = []
    for coef, name in zip(a, names):
        if coef:
            parts.append(_term(coef, name, not parts))
    lhs = "".join(parts) or "0"
    return f"{lhs} >= {rat_str(beta)}"


def format_hrep(H: HRep, prefix: str = "y") -> list[str]:
    names = [f"{prefix}{i + 1}" for i in range(H.dim)]
    return [format_row(a, b, names) for a, b in H.rows()]


def _vec_str(v) -> str:
    return "(" + ", ".join(rat_str(x) for x in v) + ")"


def _parse_vector(values: list[str], n: int) -> tuple:
    try:
        x = tuple(rat(v) for v in values)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise FormatError("x", str(exc)) from None
    if len(x) == 1 and n != 1 and x[0] == 0:
        return zeros(n)
    if len(x) != n:
        raise FormatError("x", f"expected {n} entries, got {len(x)}")
    return x


def _emit(args, doc: dict, lines: list[str]) -> None:
    if args.quiet:
        return
    if args.json:
        print(dumps(doc))
    else:
        for line in lines:
            print(line)


# -- commands -------------------------------------------------------------------------

def cmd_solve(args) -> int:
    pf = load_problem_file(args.path)
    problem = pf.to_problem()
    result = solve(problem)
    report = verify(problem, result.pair) if result.pair is not None else None
    doc = solution_json(problem, result, report)
    if args.output:
        Path(args.output).write_text(dumps(doc) + "\n")
    lines = [f"status: {result.status.value}"]
    if result.status is SolveStatus.SOLUTION:
        lines.append("S_bar: " + ", ".join(_vec_str(x) for x in result.pair.S_bar))
        lines.append("S_hat: " + (", ".join(_vec_str(x) for x in result.pair.S_hat) or "(none)"))
        lines.append(f"verified: {report.passed}")
    elif result.status is SolveStatus.NO_SOLUTION:
        lines.append(f"witness: x = {_vec_str(result.witness)} (recession image strictly contains that of 0)")
    _emit(args, doc, lines)
    return SOLVE_EXIT[result.status]


def cmd_check(args) -> int:
    problem = load_problem_file(args.path).to_problem()
    doc: dict = {"feasible": is_feasible(problem)}
    if doc["feasible"]:
        lb = lower_bound(problem)
        doc["bounded"] = lb is not None
        doc["lower_bound"] = enc_vec(lb) if lb is not None else None
        flags = existence_flags(problem)
        doc["existence"] = flags.as_dict()
        doc["existence_agree"] = flags.agree
        H, _ = upper_image(problem)
        doc["lineality_condition"] = lineality_condition(H, problem.C)
    else:
        doc.update({"bounded": None, "lower_bound": None, "existence": None, "existence_agree": None, "lineality_condition": None})
    lines = [f"feasible: {str(doc['feasible']).lower()}"]
    if doc["feasible"]:
        lines.append(f"bounded: {str(doc['bounded']).lower()}")
        for k, v in doc["existence"].items():
            lines.append(f"{k}: {str(v).lower()}")
        lines.append(f"lineality_condition: {str(doc['lineality_condition']).lower()}")
    else:
        lines += ["bounded: n/a", "existence: n/a", "lineality_condition: n/a"]
    _emit(args, doc, lines)
    return EXIT_OK


def cmd_verify(args) -> int:
    problem = load_problem_file(args.problem).to_problem()
    n, pair = load_solution(args.solution)
    if n != problem.n:
        raise DimensionError(f"solution file has n={n} but the problem has n={problem.n}")
    report = verify(problem, pair)
    lines = [
        f"infimizer: {'pass' if report.infimizer.ok else 'FAIL'} ({report.infimizer.message})",
        f"points: {'pass' if report.points_ok else 'FAIL'}",
        f"directions: {'pass' if report.directions_ok else 'FAIL'}",
        f"overall: {'pass' if report.passed else 'FAIL'}",
    ]
    _emit(args, report.as_dict(), lines)
    return EXIT_OK if report.passed else EXIT_NEGATIVE


def cmd_upper_image(args) -> int:
    problem = load_problem_file(args.path).to_problem()
    H, V = upper_image(problem)
    doc = {"h": hrep_json(H), "v": vrep_json(V)}
    lines = format_hrep(H) or ["(all of R^q)"]
    lines.append("points: " + ", ".join(_vec_str(p) for p in V.points))
    lines.append("rays: " + ", ".join(_vec_str(p) for p in V.rays))
    lines.append("lines: " + ", ".join(_vec_str(p) for p in V.lines))
    _emit(args, doc, lines)
    return EXIT_OK


def cmd_eval(args) -> int:
    problem = load_problem_file(args.path).to_problem()
    x = _parse_vector(args.x, problem.n)
    F = remove_redundant(evaluate(problem, x))
    V = h_to_v(F)
    doc = {"x": enc_vec(x), "empty": V.is_empty, "h": hrep_json(F), "v": vrep_json(V)}
    lines = ["empty"] if V.is_empty else (format_hrep(F) or ["(all of R^q)"])
    _emit(args, doc, lines)
    return EXIT_OK


def cmd_minimal(args) -> int:
    problem = load_problem_file(args.path).to_problem()
    if args.direction is not None:
        x = _parse_vector(args.direction, problem.n)
        if not any(x):
            raise PreconditionError("a minimizing direction must be nonzero")
        target, kind = homogeneous(problem), "direction"
    else:
        x = _parse_vector(args.point, problem.n)
        target, kind = problem, "point"
    cert = minimality_certificate(target, x)
    doc = {"kind": kind, "x": enc_vec(x), "minimal": cert.minimal}
    lines = [f"minimal {kind}: {str(cert.minimal).lower()}"]
    if not cert.minimal:
        doc["dominating_x"] = enc_vec(cert.dominating_x)
        doc["escaping_y"] = enc_vec(cert.escaping_y)
        lines.append(f"dominated by x = {_vec_str(cert.dominating_x)}; "
                     f"y = {_vec_str(cert.escaping_y)} lies only in the larger image")
    _emit(args, doc, lines)
    return EXIT_OK


def cmd_project(args) -> int:
    pf = load_problem_file(args.path)
    problem = pf.to_problem()
    G = problem.graph()
    names = [f"x{i + 1}" for i in range(problem.n)] + [f"y{i + 1}" for i in range(problem.q)]
    keep = sorted(args.keep) if args.keep is not None else list(range(G.dim))
    H = project(G, keep)
    doc = {"keep": keep, "h": hrep_json(H)}
    lines = [format_row(a, b, [names[k] for k in keep]) for a, b in H.rows()] or ["(no constraints)"]
    _emit(args, doc, lines)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--quiet", action="store_true", help="no output, exit code only")

    parser = argparse.ArgumentParser(prog="polyset", description="Exact polyhedral convex set optimization.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", parents=[common], help="decide existence and build a solution")
    p.add_argument("path")
    p.add_argument("-o", "--output", help="write the solution file here")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("check", parents=[common], help="report feasibility, boundedness and existence conditions")
    p.add_argument("path")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("verify", parents=[common], help="verify a solution file against a problem")
    p.add_argument("problem")
    p.add_argument("solution")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("upper-image", parents=[common], help="print the upper image in both forms")
    p.add_argument("path")
    p.set_defaults(func=cmd_upper_image)

    p = sub.add_parser("eval", parents=[common], help="print F_C(x)")
    p.add_argument("path")
    p.add_argument("x", nargs="+")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("minimal", parents=[common], help="test a minimizing point or direction")
    p.add_argument("path")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--point", nargs="+")
    g.add_argument("--direction", nargs="+")
    p.set_defaults(func=cmd_minimal)

    p = sub.add_parser("project", parents=[common], help="irredundant H-form of the graph or a coordinate projection")
    p.add_argument("path")
    p.add_argument("--keep", type=int, nargs="+", help="0-based coordinates of (x, y) to keep")
    p.set_defaults(func=cmd_project)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
    except (DimensionError, PreconditionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

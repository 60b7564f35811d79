"""Command-line front end: single solves, convergence tables, residual dumps.

Exit codes: 0 on success, 2 on usage errors (including malformed flag
values), 3 when the nonlinear solver fails to converge.
"""

import argparse
import re
import sys
from typing import Optional

import numpy as np

from . import convergence, scheme
from .convergence import ConvergenceReport, ReportRow, ord_estimate
from .mesh import build_shishkin
from .newton import SolveConfig, SolverError, solve
from .problems import PROBLEMS

__all__ = ["main"]

_EPS_PATTERN = re.compile(r"^2\^(-?\d+)$")


def _parse_eps(text: str, parser: argparse.ArgumentParser, flag: str) -> float:
    match = _EPS_PATTERN.match(text.strip())
    if match:
        value = 2.0 ** int(match.group(1))
    else:
        try:
            value = float(text)
        except ValueError:
            parser.error(f"{flag}: expected a decimal number or a '2^-k' literal, got {text!r}")
    if not value > 0:
        parser.error(f"{flag}: epsilon must be positive, got {text!r}")
    return value


def _parse_eps_list(text: str, parser: argparse.ArgumentParser) -> list[float]:
    items = [item for item in text.split(",") if item.strip()]
    if not items:
        parser.error("--eps: expected a comma-separated list like '2^-3,2^-5,2^-10'")
    return [_parse_eps(item, parser, "--eps") for item in items]


def _parse_k_range(text: str, parser: argparse.ArgumentParser) -> tuple[int, int]:
    parts = text.split("..")
    try:
        if len(parts) == 1:
            lo = hi = int(parts[0])
        elif len(parts) == 2:
            lo, hi = int(parts[0]), int(parts[1])
        else:
            raise ValueError
    except ValueError:
        parser.error(f"--k: expected 'k' or 'k_min..k_max' (e.g. '6..11'), got {text!r}")
    if lo > hi:
        parser.error(f"--k: k_min must not exceed k_max, got {text!r}")
    if lo < 3 or hi > 20:
        parser.error(f"--k: exponents must lie within [3, 20], got {text!r}")
    return lo, hi


def _check_n(n: int, parser: argparse.ArgumentParser) -> int:
    if n < 8 or n % 4 != 0:
        parser.error(f"--n: N must be >= 8 and divisible by 4, got {n}")
    return n


def _write_output(text: str, path: Optional[str]) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)


def _summary_stream(path: Optional[str]):
    # keep the data stream clean when it goes to stdout
    return sys.stdout if path is not None else sys.stderr


def _cmd_solve(args, parser) -> int:
    n = _check_n(args.n, parser)
    problem = PROBLEMS[args.problem]()
    mesh = build_shishkin(n, args.eps, problem.m)
    config = SolveConfig(tol=args.tol)
    try:
        solution = solve(problem, mesh, args.scheme, config)
    except SolverError as err:
        print(f"solver failed: {err}", file=sys.stderr)
        return 3

    lines = []
    if problem.exact is not None:
        reference = problem.exact(mesh.points, mesh.epsilon)
        lines.append("x,y_numeric,y_exact")
        for x, y, ye in zip(mesh.points, solution.values, reference):
            lines.append(f"{float(x)!r},{float(y)!r},{float(ye)!r}")
        error = float(np.max(np.abs(reference - solution.values)))
    else:
        lines.append("x,y_numeric")
        for x, y in zip(mesh.points, solution.values):
            lines.append(f"{float(x)!r},{float(y)!r}")
        error = None
    _write_output("\n".join(lines) + "\n", args.output)

    out = _summary_stream(args.output)
    print(f"iterations: {solution.iterations}", file=out)
    print(f"final_residual: {solution.final_residual:.3e}", file=out)
    if error is not None:
        print(f"max_node_error: {error:.4e}", file=out)
    return 0


def _cmd_table(args, parser) -> int:
    problem = PROBLEMS[args.problem]()
    config = SolveConfig(tol=args.tol)
    k_lo, k_hi = args.k
    reports: list[ConvergenceReport] = []
    failure: Optional[str] = None

    for eps in args.eps:
        errors: list[float] = []
        ks = list(range(k_lo, k_hi + 1))
        for k in ks:
            try:
                if problem.exact is not None:
                    mesh = build_shishkin(2**k, eps, problem.m)
                    errors.append(convergence.error_exact(solve(problem, mesh, args.scheme, config), problem))
                else:
                    errors.append(convergence.error_double_mesh(problem, args.scheme, 2**k, eps, config))
            except SolverError as err:
                failure = f"{args.problem},{args.scheme},{eps!r},{2**k},FAILED,-"
                print(f"solver failed at eps={eps!r} N={2**k}: {err}", file=sys.stderr)
                break
        rows = []
        for i, k in enumerate(ks[: len(errors)]):
            rate = ord_estimate(errors[i], errors[i + 1], k) if i + 1 < len(errors) else None
            rows.append(ReportRow(n=2**k, e_n=errors[i], ord=rate))
        if rows:
            reports.append(
                ConvergenceReport(problem_name=args.problem, scheme=args.scheme, epsilon=eps, rows=tuple(rows))
            )
        if failure:
            break

    if args.format == "csv":
        text = convergence.reports_to_csv(reports)
        if failure:
            text += failure + "\n"
    else:
        text = convergence.reports_to_markdown(reports)
        if failure:
            text += "\nFAILED: " + failure + "\n"
    _write_output(text, args.output)
    return 3 if failure else 0


def _cmd_residuals(args, parser) -> int:
    n = _check_n(args.n, parser)
    problem = PROBLEMS[args.problem]()
    if problem.exact is None:
        parser.error(f"--problem: residuals need a closed-form solution; {args.problem!r} has none")
    mesh = build_shishkin(n, args.eps, problem.m)
    coeffs = scheme.coefficients(mesh, problem.gamma)
    nodal = problem.exact(mesh.points, mesh.epsilon)
    nodal = np.asarray(nodal, dtype=float).copy()
    nodal[0] = nodal[-1] = 0.0
    residual_fn = scheme.residual_f if args.scheme == "f" else scheme.residual_g
    residual = residual_fn(problem, mesh, coeffs, nodal)

    lines = ["i,x,abs_residual"]
    for i, (x, r) in enumerate(zip(mesh.points, residual)):
        lines.append(f"{i},{float(x)!r},{float(abs(r))!r}")
    _write_output("\n".join(lines) + "\n", args.output)
    return 0


def _cmd_mesh_dump(args, parser) -> int:
    n = _check_n(args.n, parser)
    problem = PROBLEMS[args.problem]()
    mesh = build_shishkin(n, args.eps, problem.m)
    lines = ["index,x,h"]
    lines.append(f"0,{float(mesh.points[0])!r},")
    for i in range(1, n + 1):
        lines.append(f"{i},{float(mesh.points[i])!r},{float(mesh.steps[i - 1])!r}")
    _write_output("\n".join(lines) + "\n", args.output)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spbvp",
        description="Fitted finite-difference solvers for eps^2 y'' = f(x, y), y(0) = y(1) = 0.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, scheme_required=True):
        p.add_argument("--problem", choices=sorted(PROBLEMS), default="linear",
                       help="built-in problem to solve")
        if scheme_required:
            p.add_argument("--scheme", choices=["f", "g"], default="f",
                           help="which fitted operator to use")
        p.add_argument("--tol", type=float, default=1e-12, help="Newton residual tolerance")
        p.add_argument("--output", default=None, help="output file (default: stdout)")

    p_solve = sub.add_parser("solve", help="solve one instance and dump nodal values as CSV")
    add_common(p_solve)
    p_solve.add_argument("--n", type=int, required=True, help="mesh intervals, divisible by 4")
    p_solve.add_argument("--eps", required=True, help="perturbation parameter ('2^-10' or decimal)")

    p_table = sub.add_parser("table", help="convergence report over N = 2^k for several epsilons")
    add_common(p_table)
    p_table.add_argument("--k", required=True, help="exponent range 'k_min..k_max', e.g. '6..11'")
    p_table.add_argument("--eps", required=True, help="comma-separated epsilons, e.g. '2^-3,2^-5'")
    p_table.add_argument("--format", choices=["csv", "md"], default="csv", help="output format")

    p_res = sub.add_parser("residuals", help="per-node scheme residual at the closed-form solution")
    add_common(p_res)
    p_res.add_argument("--n", type=int, required=True, help="mesh intervals, divisible by 4")
    p_res.add_argument("--eps", required=True, help="perturbation parameter ('2^-10' or decimal)")

    p_mesh = sub.add_parser("mesh-dump", help="dump mesh nodes and step sizes as CSV")
    add_common(p_mesh, scheme_required=False)
    p_mesh.add_argument("--n", type=int, required=True, help="mesh intervals, divisible by 4")
    p_mesh.add_argument("--eps", required=True, help="perturbation parameter ('2^-10' or decimal)")

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command == "table":
        args.eps = _parse_eps_list(args.eps, parser)
        args.k = _parse_k_range(args.k, parser)
    else:
        args.eps = _parse_eps(args.eps, parser, "--eps")
    if args.tol <= 0:
        parser.error(f"--tol: must be positive, got {args.tol}")

    handlers = {
        "solve": _cmd_solve,
        "table": _cmd_table,
        "residuals": _cmd_residuals,
        "mesh-dump": _cmd_mesh_dump,
    }
    return handlers[args.command](args, parser)


if __name__ == "__main__":
    sys.exit(main())

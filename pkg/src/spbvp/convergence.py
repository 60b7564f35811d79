"""Error measurement and convergence-rate reporting.

Errors come from one of two routes: against a closed-form solution when the
problem has one, or by the two-mesh method otherwise (solve on N intervals,
solve again on 2N intervals with the companion transition point, compare at
the base nodes).  Rates are reported as

    ord = (ln E_N - ln E_2N) / ln(2k/(k+1)),    N = 2^k,

whose denominator absorbs the ln^2(N) factor of the scheme's convergence
bound, so clean second-order behaviour reads as ord ~ 2.
"""

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .mesh import build_shifted, build_shishkin
from .newton import DiscreteSolution, SolveConfig, solve
from .problems import Problem

__all__ = [
    "ReportRow",
    "ConvergenceReport",
    "error_exact",
    "error_double_mesh",
    "ord_estimate",
    "build_report",
    "reports_to_csv",
    "reports_to_markdown",
]

NESTING_TOL = 1e-14


@dataclass(frozen=True)
class ReportRow:
    n: int
    e_n: float
    ord: Optional[float]


@dataclass(frozen=True)
class ConvergenceReport:
    """Rows of (N, E_N, ord) for one problem, scheme and epsilon.

    Rows are ordered by increasing N, consecutive N double, and the last
    row has no rate (there is no successor error to form one).
    """

    problem_name: str
    scheme: str
    epsilon: float
    rows: tuple[ReportRow, ...]

    def __post_init__(self):
        for prev, cur in zip(self.rows, self.rows[1:]):
            if cur.n != 2 * prev.n:
                raise ValueError(f"row sizes must double: {prev.n} followed by {cur.n}")
        for row in self.rows:
            if not row.e_n > 0:
                raise ValueError(f"errors must be positive, got {row.e_n} at n={row.n}")


def error_exact(solution: DiscreteSolution, problem: Problem) -> float:
    """Max-norm nodal error against the problem's closed-form solution."""
    if problem.exact is None:
        raise ValueError(f"problem {problem.name!r} has no closed-form solution")
    reference = problem.exact(solution.mesh.points, solution.mesh.epsilon)
    return float(np.max(np.abs(reference - solution.values)))


def error_double_mesh(
    problem: Problem,
    scheme: str,
    n: int,
    epsilon: float,
    config: SolveConfig = SolveConfig(),
) -> float:
    """Two-mesh error estimate at the base nodes.

    The 2N-interval companion mesh reproduces every base node exactly (its
    even-indexed nodes coincide with the base nodes), so the estimate is a
    direct nodal difference; if that nesting ever failed the companion
    solution would be linearly interpolated instead.
    """
    base = build_shishkin(n, epsilon, problem.m)
    fine = build_shifted(2 * n, epsilon, problem.m)
    base_solution = solve(problem, base, scheme, config)
    fine_solution = solve(problem, fine, scheme, config)
    if np.max(np.abs(fine.points[::2] - base.points)) <= NESTING_TOL:
        fine_at_base = fine_solution.values[::2]
    else:
        fine_at_base = np.interp(base.points, fine.points, fine_solution.values)
    return float(np.max(np.abs(fine_at_base - base_solution.values)))


def ord_estimate(e_n: float, e_2n: float, k: int) -> float:
    """Convergence rate from errors at N = 2^k and 2N."""
    if not (e_n > 0 and e_2n > 0):
        raise ValueError(f"errors must be positive, got {e_n} and {e_2n}")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return (math.log(e_n) - math.log(e_2n)) / math.log(2 * k / (k + 1))


def build_report(
    problem: Problem,
    scheme: str,
    epsilon: float,
    k_range: Iterable[int],
    config: SolveConfig = SolveConfig(),
) -> ConvergenceReport:
    """Errors and rates for N = 2^k over k_range (each k in [3, 20]).

    Uses the exact-solution error when available, the two-mesh estimate
    otherwise.
    """
    ks = sorted(set(int(k) for k in k_range))
    if not ks:
        raise ValueError("k_range must be non-empty")
    if ks[0] < 3 or ks[-1] > 20:
        raise ValueError(f"k_range must lie within [3, 20], got {ks}")

    errors = []
    for k in ks:
        n = 2**k
        if problem.exact is not None:
            mesh = build_shishkin(n, epsilon, problem.m)
            errors.append(error_exact(solve(problem, mesh, scheme, config), problem))
        else:
            errors.append(error_double_mesh(problem, scheme, n, epsilon, config))

    rows = []
    for i, k in enumerate(ks):
        has_successor = i + 1 < len(ks) and ks[i + 1] == k + 1
        rate = ord_estimate(errors[i], errors[i + 1], k) if has_successor else None
        rows.append(ReportRow(n=2**k, e_n=errors[i], ord=rate))
    return ConvergenceReport(problem_name=problem.name, scheme=scheme, epsilon=epsilon, rows=tuple(rows))


def _format_error(value: float) -> str:
    return f"{value:.4e}"


def _format_ord(value: Optional[float]) -> str:
    return "-" if value is None else f"{value:.2f}"


def reports_to_csv(reports: Sequence[ConvergenceReport]) -> str:
    """CSV with columns problem, scheme, epsilon, N, E_N, Ord ('-' on last rows)."""
    lines = ["problem,scheme,epsilon,N,E_N,Ord"]
    for report in reports:
        for row in report.rows:
            lines.append(
                f"{report.problem_name},{report.scheme},{report.epsilon!r},"
                f"{row.n},{_format_error(row.e_n)},{_format_ord(row.ord)}"
            )
    return "\n".join(lines) + "\n"


def reports_to_markdown(reports: Sequence[ConvergenceReport], per_table: int = 3) -> str:
    """Markdown tables with one (E_N, Ord) column pair per epsilon.

    Reports are grouped ``per_table`` at a time, mirroring the conventional
    three-pair layout of convergence tables for this problem class.
    """
    if not reports:
        return ""
    chunks = []
    for start in range(0, len(reports), per_table):
        group = reports[start : start + per_table]
        ns = [row.n for row in group[0].rows]
        for report in group:
            if [row.n for row in report.rows] != ns:
                raise ValueError("reports in one table must share the same N column")
        header = "| N | " + " | ".join(f"E_N (eps={r.epsilon:g}) | Ord" for r in group) + " |"
        rule = "|---" * (1 + 2 * len(group)) + "|"
        lines = [header, rule]
        for i, n in enumerate(ns):
            cells = []
            for report in group:
                row = report.rows[i]
                cells.append(_format_error(row.e_n))
                cells.append(_format_ord(row.ord))
            lines.append("| " + str(n) + " | " + " | ".join(cells) + " |")
        title = f"**{group[0].problem_name}, scheme {group[0].scheme}**"
        chunks.append(title + "\n\n" + "\n".join(lines))
    return "\n\n".join(chunks) + "\n"

"""Solvers for the singularly perturbed problem eps^2 y'' = f(x, y), y(0) = y(1) = 0.

The package builds layer-adapted piecewise-equidistant meshes, assembles two
fitted three-point difference operators, solves the resulting nonlinear
systems by damped Newton iteration, and measures convergence against either
closed-form solutions or two-mesh estimates.
"""

from .convergence import (
    ConvergenceReport,
    ReportRow,
    build_report,
    error_double_mesh,
    error_exact,
    ord_estimate,
    reports_to_csv,
    reports_to_markdown,
)
from .mesh import ShishkinMesh, build_shifted, build_shishkin
from .newton import DiscreteSolution, SolveConfig, SolverError, solve
from .problems import PROBLEMS, Problem, ValidationReport, cubic_example, linear_example, validate
from .scheme import (
    SchemeCoefficients,
    coefficients,
    jacobian_f,
    jacobian_g,
    residual_f,
    residual_g,
)
from .tridiag import SingularPivotError, TridiagonalMatrix

__all__ = [
    "PROBLEMS",
    "Problem",
    "ValidationReport",
    "linear_example",
    "cubic_example",
    "validate",
    "ShishkinMesh",
    "build_shishkin",
    "build_shifted",
    "SchemeCoefficients",
    "coefficients",
    "residual_f",
    "residual_g",
    "jacobian_f",
    "jacobian_g",
    "TridiagonalMatrix",
    "SingularPivotError",
    "SolveConfig",
    "DiscreteSolution",
    "SolverError",
    "solve",
    "ConvergenceReport",
    "ReportRow",
    "build_report",
    "error_exact",
    "error_double_mesh",
    "ord_estimate",
    "reports_to_csv",
    "reports_to_markdown",
]

__version__ = "0.1.0"

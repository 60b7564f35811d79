"""Semilinear reaction-diffusion boundary value problems.

A problem is the data of  eps^2 y'' = f(x, y)  on (0, 1) with homogeneous
Dirichlet conditions y(0) = y(1) = 0, where the reaction term satisfies
f_y >= m > 0 on the strip of interest.  Two built-in instances are provided:
a linear problem with a closed-form solution and a cubic problem without one.
"""

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

__all__ = [
    "Problem",
    "ValidationReport",
    "linear_example",
    "cubic_example",
    "validate",
    "PROBLEMS",
]


@dataclass(frozen=True)
class Problem:
    """Continuous two-point boundary value problem with zero boundary data.

    The right-hand side ``f`` and its partial derivative ``f_y`` take
    ``(x, y, epsilon)``; the perturbation parameter is threaded through
    because some problems (the linear one below) carry an eps-dependent
    source term.  ``m`` is a uniform lower bound on ``f_y`` and ``gamma``
    dominates ``f_y`` on the bracket ``bounds`` (when given), which is what
    the fitted schemes require for their stability estimates.
    """

    name: str
    f: Callable[[np.ndarray, np.ndarray, float], np.ndarray]
    f_y: Callable[[np.ndarray, np.ndarray, float], np.ndarray]
    m: float
    gamma: float
    initial_guess: Callable[[np.ndarray], np.ndarray]
    exact: Optional[Callable[[np.ndarray, float], np.ndarray]] = None
    bounds: Optional[tuple[float, float]] = None

    def __post_init__(self):
        if not self.m > 0:
            raise ValueError(f"m must be positive, got {self.m}")
        if self.gamma < self.m:
            raise ValueError(f"gamma must satisfy gamma >= m, got gamma={self.gamma} < m={self.m}")
        if self.bounds is not None and self.bounds[0] >= self.bounds[1]:
            raise ValueError(f"bounds must be an increasing pair, got {self.bounds}")


def linear_example() -> Problem:
    """Linear problem  eps^2 y'' = y + 1 - 2 eps^2 + x(x - 1).

    Its closed-form solution has layers of width O(eps) at both endpoints:

        y(x) = (e^(-x/eps) + e^(-(1-x)/eps)) / (1 + e^(-1/eps)) - x(x-1) - 1.

    Here f_y is identically 1, so m = gamma = 1.
    """

    def f(x, y, epsilon):
        return y + 1.0 - 2.0 * epsilon**2 + x * (x - 1.0)

    def f_y(x, y, epsilon):
        return np.ones_like(np.asarray(x, dtype=np.result_type(x, y, float)))

    def exact(x, epsilon):
        x = np.asarray(x)
        num = np.exp(-x / epsilon) + np.exp(-(1.0 - x) / epsilon)
        return num / (1.0 + np.exp(-1.0 / epsilon)) - x * (x - 1.0) - 1.0

    return Problem(
        name="linear",
        f=f,
        f_y=f_y,
        m=1.0,
        gamma=1.0,
        initial_guess=lambda x: np.full_like(np.asarray(x, dtype=float), -0.5),
        exact=exact,
    )


def cubic_example() -> Problem:
    """Cubic problem  eps^2 y'' = y^3 + y - 2  with no closed-form solution.

    The constant 1 is the reduced solution (it zeroes f) and serves as the
    initial Newton iterate.  y ≡ 0 and y ≡ 1 are lower and upper solutions,
    and gamma = 4 = max of f_y = 3y^2 + 1 on the bracket [0, 1].
    """

    def f(x, y, epsilon):
        return y**3 + y - 2.0

    def f_y(x, y, epsilon):
        return 3.0 * y**2 + 1.0

    return Problem(
        name="cubic",
        f=f,
        f_y=f_y,
        m=1.0,
        gamma=4.0,
        initial_guess=lambda x: np.ones_like(np.asarray(x, dtype=float)),
        bounds=(0.0, 1.0),
    )


PROBLEMS: dict[str, Callable[[], Problem]] = {
    "linear": linear_example,
    "cubic": cubic_example,
}


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of sampling the problem hypotheses on a grid."""

    min_f_y: float
    max_f_y_on_bracket: float
    m: float
    gamma: float
    m_ok: bool
    gamma_ok: bool

    @property
    def ok(self) -> bool:
        return self.m_ok and self.gamma_ok


def validate(problem: Problem, sample_count: int = 10_000, epsilon: float = 2.0**-10) -> ValidationReport:
    """Check f_y >= m and gamma >= f_y by sampling on a regular grid.

    The lower bound is probed on the widened box [0,1] x [y_L - 1, y_U + 1]
    (iterates may stray outside the bracket), while the gamma domination is
    checked on the bracket [y_L, y_U] itself, which is where the stability
    theory needs it.  Without bounds both checks use [0,1] x [-2, 2].
    Violations are reported, not raised.
    """
    if sample_count < 1:
        raise ValueError(f"sample_count must be >= 1, got {sample_count}")
    if problem.bounds is not None:
        y_lo, y_hi = problem.bounds
        wide = (y_lo - 1.0, y_hi + 1.0)
        bracket = (y_lo, y_hi)
    else:
        wide = bracket = (-2.0, 2.0)

    side = max(2, int(np.ceil(np.sqrt(sample_count))))
    xs = np.linspace(0.0, 1.0, side)

    def scan(lo, hi):
        ys = np.linspace(lo, hi, side)
        gx, gy = np.meshgrid(xs, ys, indexing="ij")
        vals = problem.f_y(gx, gy, epsilon)
        return float(np.min(vals)), float(np.max(vals))

    min_wide, _ = scan(*wide)
    _, max_bracket = scan(*bracket)
    return ValidationReport(
        min_f_y=min_wide,
        max_f_y_on_bracket=max_bracket,
        m=problem.m,
        gamma=problem.gamma,
        m_ok=min_wide >= problem.m,
        gamma_ok=problem.gamma >= max_bracket,
    )

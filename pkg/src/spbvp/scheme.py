"""Fitted three-point operators for eps^2 y'' = f(x, y) and their Jacobians.

Two discrete nonlinear operators are assembled on an arbitrary mesh.  Both
are built from the hyperbolic fitting coefficients

    a_i = beta / sinh(beta h_i),   d_i = beta / tanh(beta h_i),

with beta = sqrt(gamma)/eps and h_i the width of the i-th interval.  Scheme
"f" couples the reaction term through interval-midpoint values; scheme "g"
samples it at the nodes with weights (1, 2, 1).

All arithmetic is routed through t_i = tanh(beta h_i / 2) and exp(-beta h_i),
which stay representable for beta*h anywhere between 1e-8 and 1e13; a_i is
allowed to underflow to zero for huge beta*h (that is its correct limit).
The residual entries at the boundary rows are y_0 and y_N themselves, so a
root of either operator satisfies the homogeneous boundary conditions.
"""

from dataclasses import dataclass

import numpy as np

from .mesh import ShishkinMesh
from .problems import Problem
from .tridiag import TridiagonalMatrix

__all__ = [
    "SchemeCoefficients",
    "coefficients",
    "residual_f",
    "residual_g",
    "jacobian_f",
    "jacobian_g",
]


@dataclass(frozen=True)
class SchemeCoefficients:
    """Per-interval fitting coefficients in overflow-safe form.

    ``t = tanh(beta*h/2)`` is the primitive everything else derives from:
    ``delta_d = beta*t`` and ``(a + d)/2 = beta/(2t)``.  ``inv_sinh`` keeps
    ``1/sinh(beta*h) = a/beta`` separately because scheme "g" needs it at
    arguments where sinh itself would overflow.
    """

    beta: float
    a: np.ndarray
    d: np.ndarray
    delta_d: np.ndarray
    t: np.ndarray
    inv_sinh: np.ndarray


def coefficients(mesh: ShishkinMesh, gamma: float, dtype=np.float64) -> SchemeCoefficients:
    """Fitting coefficients for every mesh interval, beta = sqrt(gamma)/eps."""
    if not gamma > 0:
        raise ValueError(f"gamma must be positive, got {gamma}")
    steps = mesh.steps.astype(dtype)
    beta = np.sqrt(np.asarray(gamma, dtype=dtype)) / np.asarray(mesh.epsilon, dtype=dtype)
    arg = beta * steps
    t = np.tanh(arg / 2)
    # 1/sinh(x) = 2 e^{-x} / (1 - e^{-2x}); exact underflow to 0 for x > ~745
    inv_sinh = 2.0 * np.exp(-arg) / (-np.expm1(-2.0 * arg))
    a = beta * inv_sinh
    delta_d = beta * t
    d = a + delta_d
    for array in (a, d, delta_d, t, inv_sinh):
        array.setflags(write=False)
    return SchemeCoefficients(beta=float(beta), a=a, d=d, delta_d=delta_d, t=t, inv_sinh=inv_sinh)


def _check_vector(mesh: ShishkinMesh, y: np.ndarray) -> np.ndarray:
    y = np.asarray(y)
    if y.shape != (mesh.n + 1,):
        raise ValueError(f"nodal vector must have length {mesh.n + 1}, got shape {y.shape}")
    return y


def residual_f(problem: Problem, mesh: ShishkinMesh, coeffs: SchemeCoefficients, y: np.ndarray) -> np.ndarray:
    """Residual of the midpoint-fitted operator at the nodal vector y.

    Interior entry i evaluates

        gamma/(t_i + t_{i+1}) * [ (y_{i-1}-y_i)/(2 t_i) - (y_i-y_{i+1})/(2 t_{i+1})
                                  - (t_i fmid_i + t_{i+1} fmid_{i+1})/gamma ]

    with fmid the reaction term at interval midpoints of x and y.  The two
    difference quotients are accumulated around the second difference of y
    to keep the rounding floor proportional to the local curvature.
    """
    y = _check_vector(mesh, y)
    gamma = problem.gamma
    dtype = np.result_type(y, coeffs.t)
    pts = mesh.points.astype(dtype, copy=False)
    xm = 0.5 * (pts[:-1] + pts[1:])
    ym = 0.5 * (y[:-1] + y[1:])
    fm = problem.f(xm, ym, mesh.epsilon)

    t_left, t_right = coeffs.t[:-1], coeffs.t[1:]
    diff_left = y[:-2] - y[1:-1]
    diff_right = y[1:-1] - y[2:]
    second = diff_left - diff_right
    quotients = second / (2 * t_left) + (1.0 / (2 * t_left) - 1.0 / (2 * t_right)) * diff_right

    out = np.empty(mesh.n + 1, dtype=dtype)
    out[0] = y[0]
    out[-1] = y[-1]
    out[1:-1] = gamma / (t_left + t_right) * (quotients - (t_left * fm[:-1] + t_right * fm[1:]) / gamma)
    return out


def residual_g(problem: Problem, mesh: ShishkinMesh, coeffs: SchemeCoefficients, y: np.ndarray) -> np.ndarray:
    """Residual of the node-fitted operator at the nodal vector y.

    Interior entry i evaluates, with s_i = 1/sinh(beta h_i) and
    fn the reaction term at the nodes,

        4*gamma/(t_i + t_{i+1}) * [ s_i (y_{i-1}-y_i) - s_{i+1} (y_i-y_{i+1}) ]
        + gamma (y_{i-1} - 2 y_i + y_{i+1}) - (fn_{i-1} + 2 fn_i + fn_{i+1}),

    the regrouped form of the coefficients (3a_i + d_i + delta_d_{i+1}) and
    (3a_{i+1} + d_{i+1} + delta_d_i) on the two one-sided differences.
    """
    y = _check_vector(mesh, y)
    gamma = problem.gamma
    dtype = np.result_type(y, coeffs.t)
    pts = mesh.points.astype(dtype, copy=False)
    fn = problem.f(pts, y, mesh.epsilon)

    t_left, t_right = coeffs.t[:-1], coeffs.t[1:]
    s_left, s_right = coeffs.inv_sinh[:-1], coeffs.inv_sinh[1:]
    diff_left = y[:-2] - y[1:-1]
    diff_right = y[1:-1] - y[2:]
    second = diff_left - diff_right
    fitted = s_left * second + (s_left - s_right) * diff_right

    out = np.empty(mesh.n + 1, dtype=dtype)
    out[0] = y[0]
    out[-1] = y[-1]
    out[1:-1] = (
        4 * gamma / (t_left + t_right) * fitted
        + gamma * second
        - (fn[:-2] + 2 * fn[1:-1] + fn[2:])
    )
    return out


def jacobian_f(problem: Problem, mesh: ShishkinMesh, coeffs: SchemeCoefficients, y: np.ndarray) -> TridiagonalMatrix:
    """Exact tridiagonal Jacobian of :func:`residual_f`; rows 0 and N are identity.

    The reaction term enters through midpoint averages, so each midpoint value
    contributes f_y/2 to both of its endpoint columns.
    """
    y = _check_vector(mesh, y)
    gamma = problem.gamma
    n = mesh.n
    dtype = np.result_type(y, coeffs.t)
    pts = mesh.points.astype(dtype, copy=False)
    xm = 0.5 * (pts[:-1] + pts[1:])
    ym = 0.5 * (y[:-1] + y[1:])
    fym = problem.f_y(xm, ym, mesh.epsilon)

    t_left, t_right = coeffs.t[:-1], coeffs.t[1:]
    scale = gamma / (t_left + t_right)

    lower = np.zeros(n, dtype=dtype)
    diag = np.zeros(n + 1, dtype=dtype)
    upper = np.zeros(n, dtype=dtype)
    diag[0] = diag[n] = 1.0
    lower[: n - 1] = scale * (1.0 / (2 * t_left) - t_left * fym[:-1] / (2 * gamma))
    diag[1:n] = scale * (
        -1.0 / (2 * t_left)
        - 1.0 / (2 * t_right)
        - (t_left * fym[:-1] + t_right * fym[1:]) / (2 * gamma)
    )
    upper[1:] = scale * (1.0 / (2 * t_right) - t_right * fym[1:] / (2 * gamma))
    return TridiagonalMatrix(lower=lower, diag=diag, upper=upper)


def jacobian_g(problem: Problem, mesh: ShishkinMesh, coeffs: SchemeCoefficients, y: np.ndarray) -> TridiagonalMatrix:
    """Exact tridiagonal Jacobian of :func:`residual_g`; rows 0 and N are identity."""
    y = _check_vector(mesh, y)
    gamma = problem.gamma
    n = mesh.n
    dtype = np.result_type(y, coeffs.t)
    pts = mesh.points.astype(dtype, copy=False)
    fyn = problem.f_y(pts, y, mesh.epsilon)

    t_left, t_right = coeffs.t[:-1], coeffs.t[1:]
    s_left, s_right = coeffs.inv_sinh[:-1], coeffs.inv_sinh[1:]
    scale = 4 * gamma / (t_left + t_right)

    lower = np.zeros(n, dtype=dtype)
    diag = np.zeros(n + 1, dtype=dtype)
    upper = np.zeros(n, dtype=dtype)
    diag[0] = diag[n] = 1.0
    lower[: n - 1] = scale * s_left + gamma - fyn[:-2]
    diag[1:n] = -scale * (s_left + s_right) - 2 * gamma - 2 * fyn[1:-1]
    upper[1:] = scale * s_right + gamma - fyn[2:]
    return TridiagonalMatrix(lower=lower, diag=diag, upper=upper)

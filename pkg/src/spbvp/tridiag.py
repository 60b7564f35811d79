"""Tridiagonal linear solver (Thomas algorithm, no pivoting).

The Newton systems produced by the three-point schemes are irreducibly
diagonally dominant whenever gamma >= f_y, so elimination without pivoting
is stable.  A near-zero pivot is reported rather than silently divided by.
"""

from dataclasses import dataclass

import numpy as np

__all__ = ["TridiagonalMatrix", "SingularPivotError", "solve"]

PIVOT_FLOOR = 1e-300


class SingularPivotError(ArithmeticError):
    """Raised when forward elimination meets a vanishing pivot."""


@dataclass
class TridiagonalMatrix:
    """Matrix with bands ``lower`` (len n-1), ``diag`` (len n), ``upper`` (len n-1).

    Row i reads  lower[i-1]*x[i-1] + diag[i]*x[i] + upper[i]*x[i+1].
    """

    lower: np.ndarray
    diag: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        n = len(self.diag)
        if len(self.lower) != n - 1 or len(self.upper) != n - 1:
            raise ValueError(
                f"band sizes must be ({n - 1}, {n}, {n - 1}), "
                f"got ({len(self.lower)}, {n}, {len(self.upper)})"
            )

    @property
    def size(self) -> int:
        return len(self.diag)

    def matvec(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x)
        if len(x) != self.size:
            raise ValueError(f"vector length {len(x)} != matrix size {self.size}")
        out = self.diag * x
        out[:-1] += self.upper * x[1:]
        out[1:] += self.lower * x[:-1]
        return out

    def to_dense(self) -> np.ndarray:
        dense = np.diag(self.diag)
        n = self.size
        dense[np.arange(n - 1), np.arange(1, n)] = self.upper
        dense[np.arange(1, n), np.arange(n - 1)] = self.lower
        return dense


def solve(mat: TridiagonalMatrix, rhs: np.ndarray) -> np.ndarray:
    """Solve mat @ x = rhs by forward elimination and back substitution."""
    rhs = np.asarray(rhs)
    n = mat.size
    if len(rhs) != n:
        raise ValueError(f"rhs length {len(rhs)} != matrix size {n}")
    dtype = np.result_type(mat.diag, rhs)
    cp = np.empty(n - 1, dtype=dtype)
    dp = np.empty(n, dtype=dtype)
    pivot = mat.diag[0]
    if abs(pivot) < PIVOT_FLOOR:
        raise SingularPivotError(f"near-singular pivot {pivot!r} in row 0")
    cp[0] = mat.upper[0] / pivot
    dp[0] = rhs[0] / pivot
    for i in range(1, n):
        pivot = mat.diag[i] - mat.lower[i - 1] * cp[i - 1]
        if abs(pivot) < PIVOT_FLOOR:
            raise SingularPivotError(f"near-singular pivot {pivot!r} in row {i}")
        if i < n - 1:
            cp[i] = mat.upper[i] / pivot
        dp[i] = (rhs[i] - mat.lower[i - 1] * dp[i - 1]) / pivot
    x = np.empty(n, dtype=dtype)
    x[-1] = dp[-1]
    for i in range(n - 2, -1, -1):
        x[i] = dp[i] - cp[i] * x[i + 1]
    return x

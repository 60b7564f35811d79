"""Piecewise-equidistant Shishkin meshes on [0, 1].

The mesh concentrates a quarter of the intervals in each boundary layer:
with transition point lam = min(1/4, 2 eps ln(N) / sqrt(m)) the blocks
[0, lam], [lam, 1-lam], [1-lam, 1] carry N/4, N/2 and N/4 equal intervals.
Nodes are placed per-block affinely (never by cumulative summation) so the
block boundaries land exactly on lam, 1/2 and 1 - lam, and the right half
mirrors the left bit-for-bit.
"""

from dataclasses import dataclass

import numpy as np

__all__ = ["ShishkinMesh", "build_shishkin", "build_shifted"]


@dataclass(frozen=True)
class ShishkinMesh:
    """Mesh of n intervals with fine blocks of width ``transition``.

    ``points`` has n+1 entries, ``steps[i] = points[i+1] - points[i]``.
    Instances are immutable (arrays are write-protected) and safe to share
    across threads.
    """

    n: int
    epsilon: float
    m: float
    transition: float
    points: np.ndarray
    steps: np.ndarray

    def __post_init__(self):
        self.points.setflags(write=False)
        self.steps.setflags(write=False)


def _check_args(n: int, epsilon: float, m: float) -> None:
    if n < 8 or n % 4 != 0:
        raise ValueError(f"n must be >= 8 and divisible by 4, got {n}")
    if not epsilon > 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    if not m > 0:
        raise ValueError(f"m must be positive, got {m}")


def _assemble(n: int, epsilon: float, m: float, transition: float) -> ShishkinMesh:
    quarter = n // 4
    half = n // 2
    points = np.empty(n + 1)
    j = np.arange(quarter + 1)
    points[: quarter + 1] = transition * (j / quarter)
    jj = np.arange(1, quarter + 1)
    points[quarter + 1 : half + 1] = transition + jj * ((0.5 - transition) / quarter)
    points[half] = 0.5
    # mirror the left half so points[i] + points[n-i] == 1 exactly
    points[half + 1 :] = 1.0 - points[:half][::-1]
    steps = np.diff(points)
    return ShishkinMesh(n=n, epsilon=epsilon, m=m, transition=transition, points=points, steps=steps)


def build_shishkin(n: int, epsilon: float, m: float) -> ShishkinMesh:
    """Standard mesh with transition min(1/4, 2 eps ln(n) / sqrt(m))."""
    _check_args(n, epsilon, m)
    transition = min(0.25, 2.0 * epsilon * np.log(n) / np.sqrt(m))
    return _assemble(n, epsilon, m, transition)


def build_shifted(n: int, epsilon: float, m: float) -> ShishkinMesh:
    """Companion mesh for two-mesh error estimation.

    Built exactly like :func:`build_shishkin` but with the transition taken
    from half the interval count, min(1/4, 2 eps ln(n/2) / sqrt(m)).  Called
    with n = 2N against a base mesh of N intervals this reproduces the base
    transition point, so every base node reappears as an even-indexed node
    of the shifted mesh (the even-index subsequence is bitwise equal).
    """
    _check_args(n, epsilon, m)
    transition = min(0.25, 2.0 * epsilon * np.log(n / 2) / np.sqrt(m))
    return _assemble(n, epsilon, m, transition)

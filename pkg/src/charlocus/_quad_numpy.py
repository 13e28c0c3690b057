"""Pure-numpy quadrature kernels.

Reductions use a fixed pairwise (binary-tree) summation: the input is
zero-padded to a power of two and repeatedly folded in half, so the result
is a deterministic function of the input array regardless of backend.
"""

from __future__ import annotations

import numpy as np

TWO_PI = 2.0 * np.pi


def pairwise_sum(values: np.ndarray) -> float:
    n = values.shape[0]
    if n == 0:
        return 0.0
    size = 1
    while size < n:
        size *= 2
    buf = np.zeros(size, dtype=np.float64)
    buf[:n] = values
    while size > 1:
        half = size // 2
        buf = buf[:half] + buf[half:size]
        size = half
    return float(buf[0])


def winding_sum(angles: np.ndarray) -> float:
    """Total signed angle swept by a closed loop of phase samples, wrapped
    increment by increment into (-pi, pi]."""
    d = np.empty_like(angles)
    d[:-1] = angles[1:] - angles[:-1]
    d[-1] = angles[0] - angles[-1]
    d = (d + np.pi) % TWO_PI - np.pi
    return pairwise_sum(d)


def sphere_kronecker_sum(f: np.ndarray, ft: np.ndarray, fp: np.ndarray,
                         weights: np.ndarray) -> float:
    """Weighted sum of the Kronecker integrand <f, ft x fp> / |f|^3 over the
    quadrature nodes of a parametrized sphere."""
    cx = ft[:, 1] * fp[:, 2] - ft[:, 2] * fp[:, 1]
    cy = ft[:, 2] * fp[:, 0] - ft[:, 0] * fp[:, 2]
    cz = ft[:, 0] * fp[:, 1] - ft[:, 1] * fp[:, 0]
    num = f[:, 0] * cx + f[:, 1] * cy + f[:, 2] * cz
    norm2 = f[:, 0] * f[:, 0] + f[:, 1] * f[:, 1] + f[:, 2] * f[:, 2]
    contrib = weights * num / (norm2 * np.sqrt(norm2))
    return pairwise_sum(contrib)


def weighted_sum(values: np.ndarray, weights: np.ndarray) -> float:
    return pairwise_sum(values * weights)

"""Numba-jitted quadrature kernels; same contracts as _quad_numpy.

The pairwise reduction uses the identical zero-pad-and-fold tree as the
numpy backend, so both produce the same deterministic sums.
"""

from __future__ import annotations

import numpy as np
from numba import njit

TWO_PI = 2.0 * np.pi


@njit
def pairwise_sum(values):
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
        for i in range(half):
            buf[i] = buf[i] + buf[half + i]
        size = half
    return buf[0]


@njit
def winding_sum(angles):
    n = angles.shape[0]
    d = np.empty(n, dtype=np.float64)
    for i in range(n - 1):
        d[i] = angles[i + 1] - angles[i]
    d[n - 1] = angles[0] - angles[n - 1]
    for i in range(n):
        d[i] = (d[i] + np.pi) % TWO_PI - np.pi
    return pairwise_sum(d)


@njit
def sphere_kronecker_sum(f, ft, fp, weights):
    n = f.shape[0]
    contrib = np.empty(n, dtype=np.float64)
    for i in range(n):
        cx = ft[i, 1] * fp[i, 2] - ft[i, 2] * fp[i, 1]
        cy = ft[i, 2] * fp[i, 0] - ft[i, 0] * fp[i, 2]
        cz = ft[i, 0] * fp[i, 1] - ft[i, 1] * fp[i, 0]
        num = f[i, 0] * cx + f[i, 1] * cy + f[i, 2] * cz
        norm2 = f[i, 0] * f[i, 0] + f[i, 1] * f[i, 1] + f[i, 2] * f[i, 2]
        contrib[i] = weights[i] * num / (norm2 * np.sqrt(norm2))
    return pairwise_sum(contrib)


@njit
def weighted_sum(values, weights):
    n = values.shape[0]
    out = np.empty(n, dtype=np.float64)
    for i in range(n):
        out[i] = values[i] * weights[i]
    return pairwise_sum(out)

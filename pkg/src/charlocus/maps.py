"""Sampled maps: vectorized point evaluators on spheres and balls.

The ``evaluate`` callable takes an (N, k) array of domain points and
returns an (N, n) array of values; all built-in maps are numpy-vectorized.
Built-ins are addressed by name: ``identity``, ``conj``, ``power:k``,
``complex-square``, ``reflect-y``, ``linear:<comma-separated entries>``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .graded import InputError


@dataclass(frozen=True)
class Sphere:
    dim: int


@dataclass(frozen=True)
class Ball:
    dim: int
    radius: float = 1.0


@dataclass(frozen=True)
class SampledMap:
    name: str
    evaluate: Callable[[np.ndarray], np.ndarray]
    domain: Sphere | Ball

    @property
    def domain_dim(self) -> int:
        return self.domain.dim


def _as_complex(pts: np.ndarray) -> np.ndarray:
    return pts[:, 0] + 1j * pts[:, 1]


def _from_complex(z: np.ndarray) -> np.ndarray:
    return np.stack([z.real, z.imag], axis=1)


def complex_power_map(k: int, domain=None) -> SampledMap:
    """z -> z^k on the circle (or on R^2 for divisor sampling)."""
    def ev(pts):
        return _from_complex(_as_complex(pts) ** k)
    return SampledMap(f"power:{k}", ev, domain or Sphere(1))


def linear_map(matrix: np.ndarray, domain=None) -> SampledMap:
    """Row-vector action y -> y A."""
    a = np.asarray(matrix, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InputError("linear map needs a square matrix")
    def ev(pts):
        return pts @ a
    n = a.shape[0]
    return SampledMap(f"linear:{n}x{n}", ev, domain or Sphere(n - 1))


def builtin_map(name: str, dim: int) -> SampledMap:
    """Look up a named test map as a map on the dim-sphere."""
    if name == "identity":
        return SampledMap("identity", lambda pts: pts, Sphere(dim))
    if name == "conj":
        if dim != 1:
            raise InputError("conj is a circle map (dim 1)")
        return SampledMap("conj", lambda pts: _from_complex(np.conj(_as_complex(pts))),
                          Sphere(1))
    if name == "complex-square":
        if dim != 1:
            raise InputError("complex-square is a circle map (dim 1)")
        return complex_power_map(2, Sphere(1))
    if name == "reflect-y":
        def reflect(pts):
            out = pts.copy()
            out[:, 1] = -out[:, 1]
            return out
        return SampledMap("reflect-y", reflect, Sphere(dim))
    if name.startswith("power:"):
        if dim != 1:
            raise InputError("power:k is a circle map (dim 1)")
        try:
            k = int(name.split(":", 1)[1])
        except ValueError:
            raise InputError(f"bad power map {name!r}")
        return complex_power_map(k, Sphere(1))
    if name.startswith("linear:"):
        entries = name.split(":", 1)[1].split(",")
        try:
            vals = [float(e) for e in entries]
        except ValueError:
            raise InputError(f"bad linear map entries in {name!r}")
        n = int(round(len(vals) ** 0.5))
        if n * n != len(vals):
            raise InputError(f"linear map needs n^2 entries, got {len(vals)}")
        if n != dim + 1:
            raise InputError(f"linear:{n}x{n} acts on the {n - 1}-sphere, not dim {dim}")
        return linear_map(np.array(vals).reshape(n, n))
    raise InputError(f"unknown map {name!r}")

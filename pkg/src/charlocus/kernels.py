"""Numerical verification lab: sphere volumes, mapping degrees, divisor
multiplicities, orientation signs, and the fiber-integral constant.

Degrees are computed as normalized integrals of the pulled-back volume
form: accumulated winding on the circle, Kronecker-integrand quadrature on
a Gauss-Legendre x uniform longitude grid on the 2-sphere.  Every estimate
carries an error bound from comparing two resolutions; an estimate whose
bound exceeds 1/2 claims no integer.  Inputs are assumed regular
(nonvanishing on the sampling sphere); this is checked by sampling, and is
a strictly stronger condition than the weak integrability the divisor
theory itself needs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import backend
from .graded import InputError
from .maps import Ball, SampledMap, Sphere, linear_map

ERROR_FLOOR = 1e-12
ZERO_TOL = 1e-9


def sphere_volume(n: int) -> float:
    """Volume of the unit (n-1)-sphere: 2 pi^(n/2) / Gamma(n/2)."""
    if n < 1:
        raise InputError("n must be >= 1")
    return 2.0 * math.pi ** (n / 2.0) / math.gamma(n / 2.0)


@dataclass(frozen=True)
class DegreeEstimate:
    """A numerically computed mapping degree.

    ``rounded`` is only meaningful when ``reliable`` is true, i.e. the
    resolution comparison bounds the error away from 1/2."""

    raw: float
    rounded: int
    error_bound: float
    resolution: int

    @property
    def reliable(self) -> bool:
        return self.error_bound <= 0.5


def _estimate(coarse: float, fine: float, resolution: int) -> DegreeEstimate:
    rounded = int(round(fine))
    err = max(abs(fine - coarse), abs(fine - rounded), ERROR_FLOOR)
    return DegreeEstimate(fine, rounded, err, resolution)


def _circle_points(n: int) -> np.ndarray:
    t = np.arange(n) * (2.0 * np.pi / n)
    return np.stack([np.cos(t), np.sin(t)], axis=1)


def _winding_raw(f: SampledMap, n: int, kern) -> float:
    vals = f.evaluate(_circle_points(n))
    norms = np.hypot(vals[:, 0], vals[:, 1])
    if np.min(norms) < ZERO_TOL * max(1.0, float(np.max(norms))):
        raise InputError(f"map {f.name} vanishes on the sampling circle")
    angles = np.arctan2(vals[:, 1], vals[:, 0])
    return kern.winding_sum(angles) / (2.0 * np.pi)


def _sphere_grid(n_theta: int):
    x, w = np.polynomial.legendre.leggauss(n_theta)
    theta = (x + 1.0) * (np.pi / 2.0)
    w_theta = w * (np.pi / 2.0)
    n_phi = 2 * n_theta
    phi = np.arange(n_phi) * (2.0 * np.pi / n_phi)
    tt, pp = np.meshgrid(theta, phi, indexing="ij")
    weights = np.repeat(w_theta, n_phi) * (2.0 * np.pi / n_phi)
    return tt.ravel(), pp.ravel(), weights


def _embed(theta: np.ndarray, phi: np.ndarray) -> np.ndarray:
    st = np.sin(theta)
    return np.stack([st * np.cos(phi), st * np.sin(phi), np.cos(theta)], axis=1)


def _sphere2_raw(f: SampledMap, n_theta: int, kern) -> float:
    theta, phi, weights = _sphere_grid(n_theta)
    h = 1e-5
    vals = f.evaluate(_embed(theta, phi))
    norms = np.linalg.norm(vals, axis=1)
    if np.min(norms) < ZERO_TOL * max(1.0, float(np.max(norms))):
        raise InputError(f"map {f.name} vanishes on the sampling sphere")
    # central differences of f along the parameter directions
    ft = (f.evaluate(_embed(theta + h, phi)) - f.evaluate(_embed(theta - h, phi))) / (2 * h)
    fp = (f.evaluate(_embed(theta, phi + h)) - f.evaluate(_embed(theta, phi - h))) / (2 * h)
    total = kern.sphere_kronecker_sum(vals, ft, fp, weights)
    return total / sphere_volume(3)


def mapping_degree(f: SampledMap, resolution: int | None = None) -> DegreeEstimate:
    """Degree of a map of the d-sphere, d in {1, 2}.

    The raw value is the normalized pulled-back volume integral at the finer
    of two resolutions; the error bound is the resolution-to-resolution
    difference (floored at 1e-12)."""
    if not isinstance(f.domain, Sphere):
        raise InputError("mapping_degree needs a sphere-domain map")
    d = f.domain_dim
    kern = backend.kernels()
    if d == 1:
        res = resolution or 1024
        coarse = _winding_raw(f, res, kern)
        fine = _winding_raw(f, 2 * res, kern)
        return _estimate(coarse, fine, 2 * res)
    if d == 2:
        res = resolution or 32
        coarse = _sphere2_raw(f, res, kern)
        fine = _sphere2_raw(f, 2 * res, kern)
        return _estimate(coarse, fine, 2 * res)
    raise InputError("degree is only computed for maps of S^1 and S^2")


def divisor_multiplicity(u: SampledMap, zero, radius: float,
                         resolution: int | None = None) -> DegreeEstimate:
    """Local multiplicity of an isolated zero of u: R^n -> R^n as the degree
    of u on the radius-sphere about the zero, n in {2, 3}.

    The map must not vanish on that sphere (checked by sampling)."""
    center = np.asarray(zero, dtype=np.float64)
    n = center.shape[0]
    if n not in (2, 3):
        raise InputError("divisor multiplicity supports n in {2, 3}")
    if radius <= 0:
        raise InputError("radius must be positive")

    def ev(pts):
        return u.evaluate(center + radius * pts)

    probe = _circle_points(512) if n == 2 else _embed(*_sphere_grid(24)[:2])
    vals = ev(probe)
    norms = np.linalg.norm(vals, axis=1)
    if np.min(norms) < ZERO_TOL * max(1.0, float(np.max(norms))):
        raise InputError(f"map {u.name} vanishes on the sampling sphere")
    sphere_map = SampledMap(f"{u.name}@r={radius}", ev, Sphere(n - 1))
    return mapping_degree(sphere_map, resolution)


def _det_cofactor(a: np.ndarray) -> float:
    n = a.shape[0]
    if n == 1:
        return float(a[0, 0])
    total = 0.0
    for j in range(n):
        minor = np.delete(np.delete(a, 0, axis=0), j, axis=1)
        term = float(a[0, j]) * _det_cofactor(minor)
        total += term if j % 2 == 0 else -term
    return total


@dataclass(frozen=True)
class OrientationReport:
    det_sign: int
    estimate: DegreeEstimate

    @property
    def passed(self) -> bool:
        return self.estimate.reliable and self.estimate.rounded == self.det_sign


def orientation_sign_check(a, resolution: int | None = None) -> OrientationReport:
    """Degree of y -> yA/|yA| on the (n-1)-sphere versus sgn det A, the
    determinant computed by exact cofactor expansion.  n in {2, 3}."""
    mat = np.asarray(a, dtype=np.float64)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1] or mat.shape[0] not in (2, 3):
        raise InputError("orientation check needs a square matrix, n in {2, 3}")
    det = _det_cofactor(mat)
    if abs(det) <= 1e-8:
        raise InputError("matrix is near-singular")
    est = mapping_degree(linear_map(mat), resolution)
    return OrientationReport(1 if det > 0 else -1, est)


def _gauss_on(a: float, b: float, n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    half = (b - a) / 2.0
    return a + (x + 1.0) * half, w * half


def lemma321_constant(n: int, resolution: int = 64) -> float:
    """The fiber-integral normalization (2 vol(S^(n-2)) / vol(S^(n-1))) *
    integral_0^(pi/2) cos^(n-2) t dt, which equals 1 for every n >= 2."""
    if n < 2:
        raise InputError("n must be >= 2")
    kern = backend.kernels()
    t, w = _gauss_on(0.0, math.pi / 2.0, resolution)
    integral = kern.weighted_sum(np.cos(t) ** (n - 2), w)
    return 2.0 * sphere_volume(n - 1) / sphere_volume(n) * integral


def _fiber_integral(c: float, n: int, resolution: int, kern) -> float:
    # tan substitution t = tan(u) collapses the real line to (-pi/2, pi/2):
    # the integrand becomes c^(n-1) cos^(n-2) u / (sin^2 u + c^2 cos^2 u)^(n/2).
    u, w = _gauss_on(-math.pi / 2.0, math.pi / 2.0, resolution)
    cu, su = np.cos(u), np.sin(u)
    vals = c ** (n - 1) * cu ** (n - 2) / (su * su + c * c * cu * cu) ** (n / 2.0)
    return sphere_volume(n - 1) / sphere_volume(n) * kern.weighted_sum(vals, w)


@dataclass(frozen=True)
class FiberIntegralRow:
    label: str
    magnitude: float
    value: float

    @property
    def deviation(self) -> float:
        return abs(self.value - 1.0)


@dataclass(frozen=True)
class FiberIntegralReport:
    n: int
    rows: tuple
    tol: float

    @property
    def scale_spread(self) -> float:
        vals = [r.value for r in self.rows]
        return max(vals) - min(vals)

    @property
    def passed(self) -> bool:
        return all(r.deviation <= self.tol for r in self.rows) and self.scale_spread <= self.tol


_SCALE_TRIPLE = (0.1, 1.0, 10.0)


def _default_test_points(domain) -> np.ndarray:
    if isinstance(domain, Sphere):
        return np.eye(domain.dim + 1)
    if isinstance(domain, Ball):
        k = domain.dim
        pts = [0.5 * domain.radius * e for e in np.eye(k)]
        pts.append(np.full(k, 0.3 * domain.radius / math.sqrt(k)))
        return np.array(pts)
    raise InputError("unsupported domain kind")


def fiber_integral_check(f: SampledMap | None, n: int, tol: float = 1e-6,
                         resolution: int = 512) -> FiberIntegralReport:
    """Check that the fiber integral (vol ratio) * int |f|^(n-1) dt /
    (t^2+|f|^2)^(n/2) equals 1 at sample magnitudes of f, and that the value
    is independent of |f| across the scales 0.1 / 1 / 10.

    Passing ``None`` for f runs the scale triple only."""
    if n < 2:
        raise InputError("n must be >= 2")
    kern = backend.kernels()
    rows = []
    if f is not None:
        pts = _default_test_points(f.domain)
        vals = f.evaluate(pts)
        mags = np.linalg.norm(np.atleast_2d(vals), axis=1)
        for i, c in enumerate(mags):
            if c < ZERO_TOL:
                raise InputError(f"map {f.name} vanishes at test point {i}")
            rows.append(FiberIntegralRow(f"point {i}", float(c),
                                         _fiber_integral(float(c), n, resolution, kern)))
    for c in _SCALE_TRIPLE:
        rows.append(FiberIntegralRow(f"|f|={c}", c, _fiber_integral(c, n, resolution, kern)))
    return FiberIntegralReport(n, tuple(rows), tol)

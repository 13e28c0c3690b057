"""Concrete obstruction computations on named bundles.

Applies the Schur calculus to linear-dependency questions for vector
fields on real projective spaces and to degeneracy loci of bundle maps,
projections, and smooth maps.  A nonzero class obstructs existence; a zero
class is inconclusive.
"""

from __future__ import annotations

from dataclasses import dataclass

from .charcalc import SchurIndex, schur_z2
from .graded import (
    GradedPoly,
    InputError,
    InternalError,
    RingPresentation,
    TotalClass,
    rp_ring,
    total_inverse,
)


@dataclass(frozen=True)
class BundleClassData:
    """A bundle identified by its rank and total classes in an ambient ring."""

    name: str
    rank: int
    ambient: RingPresentation
    total_sw: TotalClass
    total_pontryagin: TotalClass | None = None

    def __post_init__(self):
        if self.rank < 1:
            raise InputError("bundle rank must be >= 1")
        if self.total_sw.presentation != self.ambient:
            raise InputError("total class does not live in the ambient ring")
        if self.total_sw.rank() > self.rank:
            raise InputError(
                f"{self.name}: Stiefel-Whitney components above rank {self.rank}"
            )


def rp_tangent_class(n: int) -> BundleClassData:
    """Tangent bundle of RP^n with w = (1+a)^(n+1) in Z2[a]/(a^(n+1))."""
    if n < 1:
        raise InputError("n must be >= 1")
    ring = rp_ring(n)
    one_plus_a = GradedPoly.one(ring) + GradedPoly.gen(ring, "a")
    w = TotalClass.from_poly(one_plus_a ** (n + 1))
    return BundleClassData(f"TRP{n}", n, ring, w)


def _check_shared_ambient(e: BundleClassData, f: BundleClassData):
    if e.ambient != f.ambient:
        raise InputError("bundles live in different ambient rings")


def dependency_class_mod2(f: BundleClassData, m: int, ell: int) -> GradedPoly:
    """Obstruction to m sections of F never having ell of them dependent on
    the rest: the Schur class of w(F) at (ell, rank F - m + ell).

    Homogeneous of degree ell * (rank F - m + ell)."""
    n = f.rank
    if ell < max(1, m - n) or ell > m:
        raise InputError(f"need max(1, m-n) <= ell <= m, got ell={ell}, m={m}, n={n}")
    r = n - m + ell
    if r < 0:
        raise InputError(f"negative shift r = {r}")
    return schur_z2(f.total_sw, SchurIndex(ell, r))


def noninjectivity_class_mod2(e: BundleClassData, f: BundleClassData) -> GradedPoly:
    """Class of the locus where a bundle map E -> F fails to be injective:
    the degree (rank F - rank E + 1) part of w(F) w(E)^{-1}."""
    _check_shared_ambient(e, f)
    if e.rank > f.rank:
        raise InputError("need rank E <= rank F")
    q = f.rank - e.rank + 1
    return (f.total_sw * total_inverse(e.total_sw)).component(q)


def degeneracy_class_mod2(e: BundleClassData, f: BundleClassData, k: int) -> GradedPoly:
    """Class of the locus where a bundle map E -> F has rank <= k:
    the Schur class of w(F) w(E)^{-1} at (rank E - k, rank F - k)."""
    _check_shared_ambient(e, f)
    m, n = e.rank, f.rank
    if not 0 <= k < min(m, n):
        raise InputError(f"need 0 <= k < min(m, n) = {min(m, n)}, got k={k}")
    ratio = f.total_sw * total_inverse(e.total_sw)
    return schur_z2(ratio, SchurIndex(m - k, n - k))


def projection_degeneracy_class(tx: BundleClassData, n: int, k: int) -> GradedPoly:
    """Class of the rank <= k locus of a generic linear projection of an
    immersed m-manifold to R^n.

    Evaluates both the (m-k, n-k) Schur class of w(TX)^{-1} and the
    (n-k, m-k) Schur class of w(TX) and checks the duality between them
    before returning the common value."""
    m = tx.rank
    if not 0 <= k < min(m, n):
        raise InputError(f"need 0 <= k < min(m, n) = {min(m, n)}, got k={k}")
    lhs = schur_z2(total_inverse(tx.total_sw), SchurIndex(m - k, n - k))
    rhs = schur_z2(tx.total_sw, SchurIndex(n - k, m - k))
    if lhs != rhs:
        raise InternalError(
            f"Schur duality failed for {tx.name} at n={n}, k={k}"
        )
    return lhs


def normal_bundle_class(tx: BundleClassData, codim: int, name: str | None = None) -> BundleClassData:
    """Normal bundle of an embedding in codimension ``codim``: the inverse
    total class of TX, which must vanish above the stated rank."""
    if codim < 1:
        raise InputError("codimension must be >= 1")
    inv = total_inverse(tx.total_sw)
    if inv.rank() > codim:
        raise InputError(
            f"w(TX)^-1 has components above {codim}; no rank-{codim} normal bundle"
        )
    return BundleClassData(name or f"N({tx.name})", codim, tx.ambient, inv)


def map_degeneracy_class_mod2(tx: BundleClassData, pulled_back_ty: TotalClass,
                              target_dim: int, k: int) -> GradedPoly:
    """Class of the rank <= k locus of the differential of a map to an
    n-manifold, given the pullback of w(TY) in the source's ambient ring."""
    if pulled_back_ty.presentation != tx.ambient:
        raise InputError("pulled-back class does not live in the source's ambient ring")
    m = tx.rank
    if not 0 <= k < min(m, target_dim):
        raise InputError(f"need 0 <= k < min(m, n) = {min(m, target_dim)}, got k={k}")
    ratio = pulled_back_ty * total_inverse(tx.total_sw)
    return schur_z2(ratio, SchurIndex(m - k, target_dim - k))


@dataclass(frozen=True)
class FeasibilityReport:
    """Verdict on a section-collection existence question.

    A nonzero class proves no such collection exists ("obstructed"); a zero
    class proves nothing ("inconclusive")."""

    bundle: str
    sections: int
    ell: int
    degree: int
    obstruction: GradedPoly

    @property
    def verdict(self) -> str:
        return "inconclusive" if self.obstruction.is_zero() else "obstructed"


def feasibility_report(f: BundleClassData, m: int, ell: int) -> FeasibilityReport:
    """Can F admit m sections with always fewer than ell of them dependent
    on the rest?  Computes the dependency class and reports the verdict."""
    cls = dependency_class_mod2(f, m, ell)
    q = ell * (f.rank - m + ell)
    return FeasibilityReport(f.name, m, ell, q, cls)

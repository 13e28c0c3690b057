"""Characteristic-class operators on total classes.

Schur determinants of shifted class components, top classes of twisted
tensor products, the projective-bundle pushforward, and the first Steenrod
square with its twisted variant.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .graded import (
    FreeTruncated,
    GradedPoly,
    InputError,
    ProjBundle,
    RingPresentation,
    TotalClass,
    TruncatedPower,
    Z,
    Z2,
    total_inverse,
)


@dataclass(frozen=True)
class SchurIndex:
    """Size ell and row shift r of the shifted determinant det(c_{r-i+j})."""

    ell: int
    r: int

    def __post_init__(self):
        if self.ell < 1:
            raise InputError("Schur index needs ell >= 1")
        if self.r < 0:
            raise InputError("Schur index needs r >= 0")

    @property
    def degree(self) -> int:
        return self.ell * self.r


def _schur_det(component: Callable[[int], GradedPoly], idx: SchurIndex,
               zero: GradedPoly, one: GradedPoly, signed: bool) -> GradedPoly:
    """det(c_{r-i+j})_{1<=i,j<=ell} by Laplace expansion along the first
    remaining row, minors memoized on the surviving column set.

    Out-of-range components are zero by convention (c_0 = 1 is supplied by
    the component callable itself)."""
    ell, r = idx.ell, idx.r
    entries = [[component(r - i + j) for j in range(ell)] for i in range(ell)]
    memo: dict = {}

    def minor(row: int, cols: tuple) -> GradedPoly:
        if not cols:
            return one
        key = (row, cols)
        if key in memo:
            return memo[key]
        acc = zero
        for pos, j in enumerate(cols):
            a = entries[row][j]
            if a.is_zero():
                continue
            sub = minor(row + 1, cols[:pos] + cols[pos + 1 :])
            term = a * sub
            acc = acc - term if (signed and pos % 2) else acc + term
        memo[key] = acc
        return acc

    return minor(0, tuple(range(ell)))


def schur_z2(c: TotalClass, idx: SchurIndex) -> GradedPoly:
    """Shifted determinant det(c_{r-i+j}) over Z2; homogeneous of degree
    ell*r. Components with negative index, or beyond the cap, are zero."""
    if c.field != Z2:
        raise InputError("schur_z2 needs a Z2 total class")
    zero = GradedPoly.zero(c.presentation, Z2)
    one = GradedPoly.one(c.presentation, Z2)
    return _schur_det(c.component, idx, zero, one, signed=False)


def schur_z(p: TotalClass, idx: SchurIndex) -> GradedPoly:
    """Signed shifted determinant det(p_{r-i+j}) over Z.

    The total class is indexed by Pontrjagin position: the k-th entry is the
    degree-4k component.  Exact integer cofactor expansion, no division."""
    if p.field != Z:
        raise InputError("schur_z needs a Z total class")
    zero = GradedPoly.zero(p.presentation, Z)
    one = GradedPoly.one(p.presentation, Z)
    return _schur_det(lambda k: p.component(4 * k), idx, zero, one, signed=True)


def tensor_top_line(wF: TotalClass, n: int, a: GradedPoly) -> GradedPoly:
    """Top class of Hom(L, F) for a line bundle L with w1(L) = a:
    sum_{j=0..n} w_{n-j}(F) * a^j."""
    if not (a.is_zero() or a.is_homogeneous_of(1)):
        raise InputError("a must be a degree-1 class")
    if wF.rank() > n:
        raise InputError(f"total class has components above rank {n}")
    out = GradedPoly.zero(wF.presentation, wF.field)
    for j in range(n + 1):
        out = out + wF.component(n - j) * (a ** j)
    return out


def tensor_top_general(wF: TotalClass, wU: TotalClass, ell: int, n: int) -> GradedPoly:
    """Top class of Hom(U, F) for rank-ell U: the shifted determinant of
    w(F) w(U)^{-1} at index (ell, n).  At ell = 1 with wU = 1 + a this
    coincides with :func:`tensor_top_line`."""
    return schur_z2(wF * total_inverse(wU), SchurIndex(ell, n))


def lift_to_bundle(y: GradedPoly, proj: ProjBundle) -> GradedPoly:
    """Inclusion of a base-ring class into the projective-bundle ring."""
    if y.presentation != proj.base:
        raise InputError("class does not live in the bundle's base ring")
    return GradedPoly.make(proj, y.field, {proj.lift_monomial(m): c for m, c in y.terms})


def projbundle_pushforward(x: GradedPoly) -> GradedPoly:
    """Fiber integration P(E) -> base, dropping degree by rank(E) - 1.

    On a normal-form class, a^j * y maps to the degree (j - m + 1) component
    of w(E)^{-1} times y; since normal forms carry j <= m-1 this keeps
    exactly the a^(m-1) slice (that component is 1) and kills the rest.
    """
    pres = x.presentation
    if not isinstance(pres, ProjBundle):
        raise InputError("pushforward needs a class in a ProjBundle presentation")
    m = pres.rank
    acc: dict = {}
    for mono, c in x.terms:
        if mono[0] != m - 1:
            continue
        base_mono = tuple(mono[1:])
        acc[base_mono] = acc.get(base_mono, 0) + c
    return GradedPoly.make(pres.base, x.field, acc)


# ---------------------------------------------------------------------------
# Sq^1 and its twisted variant.


def _sq1_generator_action(pres: RingPresentation) -> dict[str, GradedPoly]:
    """Generator action of Sq^1: a -> a^2 on a truncated power ring, and the
    Wu formula w_j -> w1*w_j + (j+1) w_{j+1} on a free w-ring (with w_{j+1}
    zero above the top index)."""
    if isinstance(pres, TruncatedPower):
        a = GradedPoly.gen(pres, "a")
        return {"a": a * a}
    if isinstance(pres, FreeTruncated) and pres.generators and all(
        g.name == f"w{g.degree}" for g in pres.generators
    ):
        top = max(g.degree for g in pres.generators)
        w1 = GradedPoly.gen(pres, "w1")
        action = {}
        for g in pres.generators:
            j = g.degree
            img = w1 * GradedPoly.gen(pres, g.name)
            if (j + 1) % 2 and j + 1 <= top:
                img = img + GradedPoly.gen(pres, f"w{j + 1}")
            action[g.name] = img
        return action
    raise InputError("no Sq^1 generator action declared for this presentation")


def sq1(x: GradedPoly) -> GradedPoly:
    """First Steenrod square, extended from the generator action as a
    derivation: Sq^1(uv) = Sq^1(u) v + u Sq^1(v), Sq^1(1) = 0."""
    if x.field != Z2:
        raise InputError("Sq^1 acts on Z2 classes")
    pres = x.presentation
    action = _sq1_generator_action(pres)
    out = GradedPoly.zero(pres, Z2)
    for mono, _ in x.terms:
        for i, e in enumerate(mono):
            if e % 2 == 0:
                continue  # even exponents die in characteristic 2
            rest = list(mono)
            rest[i] -= 1
            rest_poly = GradedPoly.make(pres, Z2, {tuple(rest): 1})
            out = out + rest_poly * action[pres.generators[i].name]
    return out


def twisted_sq1(x: GradedPoly) -> GradedPoly:
    """Mod 2 reduction of the twisted Bockstein: Sq^1 plus cup product with
    the degree-1 class.  Sends w_{q-1} to w_q for odd q."""
    pres = x.presentation
    degree_one = [g for g in pres.generators if g.degree == 1]
    if len(degree_one) != 1:
        raise InputError("twisted Sq^1 needs a unique degree-1 generator")
    w1 = GradedPoly.gen(pres, degree_one[0].name)
    return sq1(x) + w1 * x

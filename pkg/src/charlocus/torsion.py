"""Symmetric-group involutions and the order-2 torsion polynomial.

The torsion part of the twisted-integer class of a higher dependency locus
is a sum over an involution-fixed set of permutations of products of
twisted classes W_k (odd k) and Pontrjagin classes p_j; even-indexed
symbols always occur squared and are replaced by p-classes at construction
time.  This module builds that polynomial, the full class (torsion plus a
Pontrjagin Schur determinant for even matrix size), its mod 2 and real
reductions, and a brute-force cross-check of the reduction identities.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

from .charcalc import SchurIndex, schur_z, schur_z2
from .graded import (
    DEFAULT_CAP,
    FreeTruncated,
    GeneratorSpec,
    GradedPoly,
    InputError,
    InternalError,
    RingPresentation,
    Z,
    Z2,
    pontryagin_ring,
    substitute,
    universal_pontryagin_class,
    universal_sw_class,
    w_ring,
)


@dataclass(frozen=True)
class Permutation:
    """A permutation of {1..ell}, stored as the image sequence."""

    images: tuple

    def __post_init__(self):
        ell = len(self.images)
        if sorted(self.images) != list(range(1, ell + 1)):
            raise InputError(f"not a permutation of 1..{ell}: {self.images}")

    @classmethod
    def identity(cls, ell: int) -> "Permutation":
        return cls(tuple(range(1, ell + 1)))

    @property
    def size(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def inverse(self) -> "Permutation":
        inv = [0] * self.size
        for i, v in enumerate(self.images, start=1):
            inv[v - 1] = i
        return Permutation(tuple(inv))

    def after(self, other: "Permutation") -> "Permutation":
        """Composition self o other."""
        if self.size != other.size:
            raise InputError("size mismatch in composition")
        return Permutation(tuple(self(other(i)) for i in range(1, self.size + 1)))


@lru_cache(maxsize=None)
def reversal(ell: int) -> Permutation:
    """tau(i) = ell + 1 - i; an involution."""
    return Permutation(tuple(range(ell, 0, -1)))


@lru_cache(maxsize=None)
def pairing(ell: int) -> Permutation:
    """beta swapping 2j-1 <-> 2j; defined for even ell."""
    if ell % 2:
        raise InputError("pairing permutation needs even ell")
    images = []
    for j in range(1, ell // 2 + 1):
        images += [2 * j, 2 * j - 1]
    return Permutation(tuple(images))


def involution_R(s: Permutation) -> Permutation:
    """R(s) = tau s^{-1} tau; reflection of the chosen matrix entries in
    the antidiagonal."""
    t = reversal(s.size)
    return t.after(s.inverse()).after(t)


def involution_P(s: Permutation) -> Permutation:
    """P(s) = beta s beta, pairing diagonally adjacent 2x2 block entries;
    needs even ell."""
    b = pairing(s.size)
    return b.after(s).after(b)


def psi_embedding(eta: Permutation) -> Permutation:
    """Doubling embedding of S_{ell0} into S_{2 ell0}:
    2j-1 -> 2 eta(j) - 1 and 2j -> 2 eta(j)."""
    images = []
    for j in range(1, eta.size + 1):
        images += [2 * eta(j) - 1, 2 * eta(j)]
    return Permutation(tuple(images))


def all_permutations(ell: int):
    """S_ell in lexicographic order of image sequences."""
    for images in itertools.permutations(range(1, ell + 1)):
        yield Permutation(images)


@lru_cache(maxsize=None)
def index_set_J(ell: int) -> tuple:
    """The R-fixed index set: permutations with R(s) = s and, for even ell,
    s(i) != i mod 2 for at least one i."""
    if ell < 1:
        raise InputError("ell must be >= 1")
    out = []
    for s in all_permutations(ell):
        if involution_R(s) != s:
            continue
        if ell % 2 == 0 and all(s(i) % 2 == i % 2 for i in range(1, ell + 1)):
            continue
        out.append(s)
    return tuple(out)


@dataclass(frozen=True)
class SymmetricGroupSplit:
    """Partition of S_ell (ell even) used in the reduction argument."""

    psi_image: tuple
    j_set: tuple
    k_r: tuple
    k_p: tuple

    def all_parts(self):
        return (self.psi_image, self.j_set, self.k_r, self.k_p)


def decompose_S_ell(ell: int) -> SymmetricGroupSplit:
    """Split S_ell into the psi image, the index set J, and the leftover
    sets K_R (moved by R) and K_P (R-fixed, moved by P)."""
    if ell % 2 or ell < 2:
        raise InputError("decomposition needs even ell >= 2")
    if ell > 10:
        raise InputError("ell > 10 is too large to enumerate")
    psi_image = tuple(psi_embedding(eta) for eta in all_permutations(ell // 2))
    psi_sorted = tuple(sorted(psi_image, key=lambda s: s.images))
    j_set = index_set_J(ell)
    covered = set(psi_image) | set(j_set)
    k_r, k_p = [], []
    for s in all_permutations(ell):
        if s in covered:
            continue
        if involution_R(s) != s:
            k_r.append(s)
        elif involution_P(s) != s:
            k_p.append(s)
        else:
            # R-fixed, P-fixed leftovers cannot exist: they would lie in the
            # psi image or in J.
            raise InternalError(f"partition of S_{ell} failed at {s.images}")
    return SymmetricGroupSplit(psi_sorted, j_set, tuple(k_r), tuple(k_p))


# ---------------------------------------------------------------------------
# Rings for torsion values.


@lru_cache(maxsize=None)
def torsion_value_ring(max_p: int, max_w: int, cap: int = DEFAULT_CAP) -> FreeTruncated:
    """Free Z2 ring on p1..p_maxp (degree 4i) and odd W1, W3, .. <= max_w
    (degree k)."""
    gens = [GeneratorSpec(f"p{i}", 4 * i) for i in range(1, max_p + 1)]
    gens += [GeneratorSpec(f"W{k}", k) for k in range(1, max_w + 1, 2)]
    return FreeTruncated(tuple(gens), cap)


def _rings_for(ell: int, r: int):
    top = max(r + ell - 1, 1)
    cap = max(DEFAULT_CAP, ell * r)
    max_p = top // 2
    return pontryagin_ring(max_p, cap), torsion_value_ring(max_p, top, cap)


@dataclass(frozen=True)
class TwistedPoly:
    """Two-part class value: an integer polynomial in p-variables plus an
    order-2 torsion polynomial (Z2 coefficients) in p- and odd-W-variables.

    Every torsion monomial carries at least one odd W factor, which is what
    makes the torsion part a class of order 2."""

    free_part: GradedPoly
    torsion_part: GradedPoly

    def __post_init__(self):
        if self.free_part.field != Z:
            raise InputError("free part must have Z coefficients")
        if self.torsion_part.field != Z2:
            raise InputError("torsion part must have Z2 coefficients")
        pres = self.torsion_part.presentation
        w_slots = [i for i, g in enumerate(pres.generators) if g.name.startswith("W")]
        for mono, _ in self.torsion_part.terms:
            if not any(mono[i] for i in w_slots):
                raise InputError("torsion monomial without an odd W factor")

    def is_zero(self) -> bool:
        return self.free_part.is_zero() and self.torsion_part.is_zero()

    def __str__(self):
        parts = []
        if not self.free_part.is_zero():
            parts.append(str(self.free_part))
        if not self.torsion_part.is_zero():
            parts.append(str(self.torsion_part))
        return " + ".join(parts) if parts else "0"


def _check_parity(ell: int, r: int):
    if ell < 1:
        raise InputError("ell must be >= 1")
    if r < 0 or (r - ell) % 2:
        raise InputError(f"need r >= 0 with r = ell mod 2, got ell={ell}, r={r}")


def torsion_polynomial(ell: int, r: int) -> TwistedPoly:
    """Sum over the index set J of products W_{r+i-s(i)}, with W_0 = 1 and
    W_k = 0 for k < 0.

    Even-indexed symbols occur with even multiplicity in every term (the
    antidiagonal entries of an R-fixed choice are the only unpaired ones and
    their indices are odd); each squared even symbol W_{2j}^2 is replaced by
    p_j, so no even W symbol survives into the stored value."""
    _check_parity(ell, r)
    p_ring, t_ring = _rings_for(ell, r)
    acc: dict = {}
    for s in index_set_J(ell):
        indices = [r + i - s(i) for i in range(1, ell + 1)]
        if min(indices) < 0:
            continue
        counts = Counter(k for k in indices if k > 0)
        exps = {}
        for k, mult in sorted(counts.items()):
            if k % 2 == 0:
                if mult % 2:
                    raise InternalError(
                        f"odd multiplicity of even index {k} at sigma={s.images}"
                    )
                if mult:
                    exps[f"p{k // 2}"] = exps.get(f"p{k // 2}", 0) + mult // 2
            else:
                exps[f"W{k}"] = mult
        mono = t_ring.monomial(exps)
        acc[mono] = acc.get(mono, 0) ^ 1
    torsion = GradedPoly.make(t_ring, Z2, acc)
    return TwistedPoly(GradedPoly.zero(p_ring, Z), torsion)


def q_class(ell: int, r: int) -> TwistedPoly:
    """The twisted-integer dependency class: the torsion polynomial alone
    for odd ell, plus the Pontrjagin Schur determinant at half indices for
    even ell."""
    _check_parity(ell, r)
    t = torsion_polynomial(ell, r)
    if ell % 2:
        return t
    p_total = universal_pontryagin_class(t.free_part.presentation)
    free = schur_z(p_total, SchurIndex(ell // 2, r // 2))
    return TwistedPoly(free, t.torsion_part)


def mod2_reduce(t: TwistedPoly, target: RingPresentation | None = None) -> GradedPoly:
    """Reduction to Z2 in w-variables: p_j -> w_{2j}^2, W_k -> w_k,
    integer coefficients taken mod 2, both parts summed."""
    if target is None:
        top = 1
        for pres in (t.free_part.presentation, t.torsion_part.presentation):
            for g in pres.generators:
                top = max(top, g.degree // 2 if g.name.startswith("p") else g.degree)
        target = w_ring(top, t.torsion_part.presentation.cap)

    def images(pres):
        out = {}
        for g in pres.generators:
            if g.name.startswith("p"):
                w2j = GradedPoly.gen(target, f"w{g.degree // 2}")
                out[g.name] = w2j * w2j
            else:
                out[g.name] = GradedPoly.gen(target, f"w{g.degree}")
        return out

    free = substitute(t.free_part, images(t.free_part.presentation),
                      target=target, target_field=Z2)
    tors = substitute(t.torsion_part, images(t.torsion_part.presentation),
                      target=target, target_field=Z2)
    return free + tors


def real_reduce(t: TwistedPoly) -> GradedPoly:
    """Real-coefficient reduction: torsion dies, the integer part survives."""
    return t.free_part


def w_sigma(s: Permutation, r: int, ring: RingPresentation) -> GradedPoly:
    """The monomial w(s) = prod_i w_{r+i-s(i)}, with w_0 = 1 and w_{k<0} = 0.
    Used by the combinatorial identities behind the reduction proof."""
    exps: dict = {}
    for i in range(1, s.size + 1):
        k = r + i - s(i)
        if k < 0:
            return GradedPoly.zero(ring, Z2)
        if k > 0:
            exps[f"w{k}"] = exps.get(f"w{k}", 0) + 1
    return GradedPoly.make(ring, Z2, {ring.monomial(exps): 1})


# ---------------------------------------------------------------------------
# Brute-force confirmation of the reduction identities.


@dataclass(frozen=True)
class Verify615Row:
    ell: int
    r: int
    mod2_ok: bool
    real_ok: bool

    @property
    def ok(self) -> bool:
        return self.mod2_ok and self.real_ok


@dataclass(frozen=True)
class Verify615Report:
    rows: tuple

    @property
    def passed(self) -> bool:
        return all(row.ok for row in self.rows)


def verify_615(max_ell: int, max_r: int) -> Verify615Report:
    """For every ell <= max_ell, r <= max_r of matching parity, check that
    the mod 2 reduction of the full class equals the w-Schur determinant and
    that its real reduction is the p-Schur determinant (even ell) or zero
    (odd ell).  Failures are reported, not raised."""
    if max_ell > 6:
        raise InputError("max_ell > 6: S_ell enumeration would be too large")
    rows = []
    for ell in range(1, max_ell + 1):
        start = 1 if ell % 2 else 2
        for r in range(start, max_r + 1, 2):
            q = q_class(ell, r)
            reduced = mod2_reduce(q)
            w_total = universal_sw_class(reduced.presentation)
            expected = schur_z2(w_total, SchurIndex(ell, r))
            mod2_ok = reduced == expected
            if ell % 2:
                real_ok = real_reduce(q).is_zero()
            else:
                p_total = universal_pontryagin_class(q.free_part.presentation)
                real_ok = real_reduce(q) == schur_z(p_total, SchurIndex(ell // 2, r // 2))
            rows.append(Verify615Row(ell, r, mod2_ok, real_ok))
    return Verify615Report(tuple(rows))

"""Shared test utilities: seeded random ring elements and small oracles."""

from __future__ import annotations

import itertools
import math

from charlocus import GradedPoly, TotalClass, Z2


def lucas_binomial_parity(n: int, k: int) -> int:
    """C(n, k) mod 2 by Lucas: 1 iff the bits of k are a subset of n's."""
    if k < 0 or k > n:
        return 0
    return 1 if (n & k) == k else 0


def random_monomial(ring, degree, rng):
    """A uniform-ish random monomial of exact total degree, or None if the
    ring cannot realize it."""
    gens = ring.generators
    if degree == 0:
        return (0,) * len(gens)
    for _ in range(50):
        mono = [0] * len(gens)
        left = degree
        while left > 0:
            choices = [i for i, g in enumerate(gens) if g.degree <= left]
            if not choices:
                break
            i = rng.choice(choices)
            mono[i] += 1
            left -= gens[i].degree
        if left == 0:
            return tuple(mono)
    return None


def random_poly(ring, rng, max_degree=None, max_terms=3, field=Z2):
    """Random normal-form polynomial with a few sparse terms."""
    cap = ring.cap if max_degree is None else max_degree
    acc = {}
    for _ in range(rng.randint(1, max_terms)):
        d = rng.randint(0, cap)
        mono = random_monomial(ring, d, rng)
        if mono is None:
            continue
        coeff = 1 if field == Z2 else rng.choice([-3, -2, -1, 1, 2, 3])
        acc[mono] = acc.get(mono, 0) + coeff
    return GradedPoly.make(ring, field, acc)


def random_homogeneous(ring, degree, rng, max_terms=3, field=Z2):
    acc = {}
    for _ in range(rng.randint(1, max_terms)):
        mono = random_monomial(ring, degree, rng)
        if mono is None:
            continue
        coeff = 1 if field == Z2 else rng.choice([-2, -1, 1, 2])
        acc[mono] = acc.get(mono, 0) + coeff
    return GradedPoly.make(ring, field, acc)


def random_total_class(ring, rank, rng, field=Z2, density=0.8):
    """Random unit-leading total class with components up to ``rank``."""
    parts = {}
    for d in range(1, min(rank, ring.cap) + 1):
        if rng.random() < density:
            p = random_homogeneous(ring, d, rng, field=field)
            if not p.is_zero():
                parts[d] = p
    return TotalClass.from_components(ring, field, parts)


def permutation_sum_det(component, ell, r, ring, field=Z2):
    """Independent Schur oracle: det(c_{r-i+j}) as a signed sum over all
    permutations, no shared code with the Laplace implementation."""
    total = GradedPoly.zero(ring, field)
    for perm in itertools.permutations(range(ell)):
        sign = _perm_sign(perm)
        prod = GradedPoly.one(ring, field)
        for i in range(ell):
            prod = prod * component(r - (i + 1) + (perm[i] + 1))
            if prod.is_zero():
                break
        total = total + (prod if (sign > 0 or field == Z2) else -prod)
    return total


def _perm_sign(perm) -> int:
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def binomial(n: int, k: int) -> int:
    return math.comb(n, k) if 0 <= k <= n else 0

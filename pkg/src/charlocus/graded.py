"""Sparse graded polynomial algebra over Z2 and Z.

Everything downstream (Schur determinants, torsion polynomials, obstruction
classes) is computed inside one of three ring presentations:

* ``FreeTruncated`` -- a free graded-commutative ring on named generators,
  truncated above a degree cap.  Models universal rings in the classes
  ``w_j``, ``p_i``, ``W_k``.
* ``TruncatedPower`` -- Z2[a]/(a^(n+1)) with deg a = 1, the mod 2 cohomology
  of real projective n-space.
* ``ProjBundle`` -- the cohomology of a projectivized rank-m bundle over a
  base ring: free module on 1, a, ..., a^(m-1) with the Grothendieck
  relation a^m = sum_i w_i(E) a^(m-i) (coefficients in Z2).

Polynomials are stored sparsely as exponent-tuple -> coefficient maps, kept
in normal form (relations applied, degree cap enforced, zero coefficients
dropped).  All values are immutable; every operation returns a new value.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping

Z2 = "Z2"
Z = "Z"

DEFAULT_CAP = 48

Mono = tuple  # exponent tuple aligned with a presentation's generator list


class InputError(ValueError):
    """Caller violated a documented precondition."""


class InternalError(RuntimeError):
    """A proved-impossible state was reached; indicates a bug, not bad input."""


def _check_field(field: str) -> str:
    if field not in (Z2, Z):
        raise InputError(f"unknown coefficient field {field!r}")
    return field


@dataclass(frozen=True)
class GeneratorSpec:
    """A named ring generator with its cohomological degree."""

    name: str
    degree: int

    def __post_init__(self):
        if self.degree < 1:
            raise InputError(f"generator {self.name!r} must have degree >= 1")


class RingPresentation:
    """Shared behavior for ring presentations.

    Subclasses expose ``generators`` (tuple of GeneratorSpec) and ``cap``
    (components in degree > cap are identically zero).
    """

    generators: tuple[GeneratorSpec, ...]
    cap: int

    def _validate_generators(self):
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise InputError(f"duplicate generator names: {names}")
        if self.cap < 0:
            raise InputError("cap must be non-negative")

    def names(self) -> tuple[str, ...]:
        return tuple(g.name for g in self.generators)

    def index_of(self, name: str) -> int:
        for i, g in enumerate(self.generators):
            if g.name == name:
                return i
        raise InputError(f"unknown generator {name!r}")

    def degree_of(self, mono: Mono) -> int:
        return sum(e * g.degree for e, g in zip(mono, self.generators))

    def monomial(self, exponents: Mapping[str, int]) -> Mono:
        """Build an exponent tuple from a name -> exponent mapping."""
        mono = [0] * len(self.generators)
        for name, e in exponents.items():
            if e < 0:
                raise InputError(f"negative exponent for {name!r}")
            mono[self.index_of(name)] = e
        return tuple(mono)

    def format_monomial(self, mono: Mono) -> str:
        parts = []
        for e, g in zip(mono, self.generators):
            if e == 1:
                parts.append(g.name)
            elif e > 1:
                parts.append(f"{g.name}^{e}")
        return "*".join(parts) if parts else "1"

    # Monomial reduction: map one raw monomial to its normal form, as a
    # mono -> coefficient dict (several terms only for ProjBundle).
    def reduce_monomial(self, mono: Mono, coeff: int, field: str) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class FreeTruncated(RingPresentation):
    """Free graded ring on the given generators, zero above the cap."""

    generators: tuple[GeneratorSpec, ...]
    cap: int = DEFAULT_CAP

    def __post_init__(self):
        self._validate_generators()

    def reduce_monomial(self, mono, coeff, field):
        if self.degree_of(mono) > self.cap:
            return {}
        return {mono: coeff}


@dataclass(frozen=True)
class TruncatedPower(RingPresentation):
    """Z2[a]/(a^(n+1)): the mod 2 cohomology ring of RP^n."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise InputError("TruncatedPower needs n >= 1")

    @property
    def generators(self) -> tuple[GeneratorSpec, ...]:
        return (GeneratorSpec("a", 1),)

    @property
    def cap(self) -> int:
        return self.n

    def reduce_monomial(self, mono, coeff, field):
        if mono[0] > self.n:
            return {}
        return {mono: coeff}


@dataclass(frozen=True)
class ProjBundle(RingPresentation):
    """Cohomology of P(E) for a rank-m bundle E over a base ring.

    Generator ``a`` (degree 1) is adjoined to the base generators; the
    defining relation is a^m = sum_{i=1..m} w_i(E) a^(m-i), so normal forms
    carry fiber exponent <= m-1.  Coefficients are Z2.
    """

    base: RingPresentation
    rank: int
    base_class: "TotalClass"
    cap: int = -1  # -1 means base.cap + rank - 1

    def __post_init__(self):
        if self.rank < 1:
            raise InputError("ProjBundle rank must be >= 1")
        if self.cap == -1:
            object.__setattr__(self, "cap", self.base.cap + self.rank - 1)
        if self.base_class.presentation != self.base:
            raise InputError("base_class must live in the base presentation")
        if self.base_class.field != Z2:
            raise InputError("ProjBundle base class must have Z2 coefficients")
        self._validate_generators()

    @property
    def generators(self) -> tuple[GeneratorSpec, ...]:
        return (GeneratorSpec("a", 1),) + self.base.generators

    def lift_monomial(self, base_mono: Mono, fiber_exp: int = 0) -> Mono:
        return (fiber_exp,) + tuple(base_mono)

    def reduce_monomial(self, mono, coeff, field):
        if field != Z2:
            raise InputError("ProjBundle presentations support Z2 coefficients only")
        if self.degree_of(mono) > self.cap:
            return {}
        m = self.rank
        out: dict = {}
        stack = [(mono, coeff)]
        while stack:
            cur, c = stack.pop()
            e = cur[0]
            if e < m:
                out[cur] = (out.get(cur, 0) + c) % 2
                if out[cur] == 0:
                    del out[cur]
                continue
            # a^e = a^(e-m) * sum_i w_i(E) a^(m-i); each branch lowers e.
            for i in range(1, m + 1):
                wi = self.base_class.component(i)
                for bmono, bc in wi.terms:
                    nxt = list(cur)
                    nxt[0] = e - i
                    for k, be in enumerate(bmono):
                        nxt[k + 1] += be
                    stack.append((tuple(nxt), (c * bc) % 2))
        return out


def _same_presentation(a: RingPresentation, b: RingPresentation) -> bool:
    return a is b or a == b


def _graded_lex_key(pres: RingPresentation, mono: Mono):
    # graded lexicographic: total degree, then the expanded generator index
    # sequence (so w1^3 sorts before w3)
    seq = tuple(i for i, e in enumerate(mono) for _ in range(e))
    return (pres.degree_of(mono), seq)


@dataclass(frozen=True)
class GradedPoly:
    """A normal-form sparse polynomial in a ring presentation.

    ``terms`` is a tuple of (exponent-tuple, coefficient) pairs, sorted in
    graded lexicographic order, with no zero coefficients.  Use
    :meth:`make` to construct from arbitrary term data.
    """

    presentation: RingPresentation
    field: str
    terms: tuple

    @classmethod
    def make(cls, presentation, field, terms: Mapping[Mono, int] | Iterable) -> "GradedPoly":
        _check_field(field)
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        for mono, coeff in items:
            if field == Z2:
                coeff %= 2
            if coeff == 0:
                continue
            for rmono, rc in presentation.reduce_monomial(tuple(mono), coeff, field).items():
                c = acc.get(rmono, 0) + rc
                if field == Z2:
                    c %= 2
                if c:
                    acc[rmono] = c
                else:
                    acc.pop(rmono, None)
        ordered = tuple(sorted(acc.items(), key=lambda t: _graded_lex_key(presentation, t[0])))
        return cls(presentation, field, ordered)

    @classmethod
    def zero(cls, presentation, field=Z2) -> "GradedPoly":
        return cls(presentation, _check_field(field), ())

    @classmethod
    def one(cls, presentation, field=Z2) -> "GradedPoly":
        unit = (0,) * len(presentation.generators)
        return cls(presentation, _check_field(field), ((unit, 1),))

    @classmethod
    def gen(cls, presentation, name: str, field=Z2) -> "GradedPoly":
        mono = presentation.monomial({name: 1})
        return cls.make(presentation, field, {mono: 1})

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return len(self.terms) == 1 and self.terms[0][1] == 1 and not any(self.terms[0][0])

    def coefficient(self, mono: Mono) -> int:
        for m, c in self.terms:
            if m == mono:
                return c
        return 0

    def component(self, d: int) -> "GradedPoly":
        """Homogeneous degree-d part."""
        pres = self.presentation
        picked = tuple((m, c) for m, c in self.terms if pres.degree_of(m) == d)
        return GradedPoly(pres, self.field, picked)

    def max_degree(self) -> int:
        if not self.terms:
            return 0
        return max(self.presentation.degree_of(m) for m, _ in self.terms)

    def is_homogeneous_of(self, d: int) -> bool:
        return all(self.presentation.degree_of(m) == d for m, _ in self.terms)

    def _check_compatible(self, other: "GradedPoly"):
        if not isinstance(other, GradedPoly):
            raise InputError(f"expected GradedPoly, got {type(other).__name__}")
        if not _same_presentation(self.presentation, other.presentation):
            raise InputError("presentation mismatch")
        if self.field != other.field:
            raise InputError(f"coefficient field mismatch: {self.field} vs {other.field}")

    def __add__(self, other: "GradedPoly") -> "GradedPoly":
        self._check_compatible(other)
        acc = dict(self.terms)
        for m, c in other.terms:
            acc[m] = acc.get(m, 0) + c
        return GradedPoly.make(self.presentation, self.field, acc)

    def __neg__(self) -> "GradedPoly":
        if self.field == Z2:
            return self
        return GradedPoly(self.presentation, self.field, tuple((m, -c) for m, c in self.terms))

    def __sub__(self, other: "GradedPoly") -> "GradedPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return GradedPoly.make(
                self.presentation, self.field, {m: c * other for m, c in self.terms}
            )
        self._check_compatible(other)
        pres = self.presentation
        cap = pres.cap
        acc: dict = {}
        for m1, c1 in self.terms:
            d1 = pres.degree_of(m1)
            for m2, c2 in other.terms:
                if d1 + pres.degree_of(m2) > cap:
                    continue
                mono = tuple(a + b for a, b in zip(m1, m2))
                acc[mono] = acc.get(mono, 0) + c1 * c2
        return GradedPoly.make(pres, self.field, acc)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "GradedPoly":
        if k < 0:
            raise InputError("negative exponent")
        out = GradedPoly.one(self.presentation, self.field)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __str__(self) -> str:
        return format_poly(self)


def poly_add(x: GradedPoly, y: GradedPoly) -> GradedPoly:
    """Coefficient-wise sum in normal form."""
    return x + y


def poly_mul(x: GradedPoly, y: GradedPoly) -> GradedPoly:
    """Cup product: distributive product with monomials reduced to normal
    form and components above the cap discarded."""
    return x * y


def normal_form(mono: Mono, presentation: RingPresentation, field: str = Z2) -> GradedPoly:
    """Normal form of a raw monomial as an element of the ring.

    Idempotent: normal forms are fixed by a second application.
    """
    return GradedPoly.make(presentation, field, {tuple(mono): 1})


@dataclass(frozen=True)
class TotalClass:
    """An inhomogeneous class 1 + c_1 + c_2 + ... with unit leading term.

    ``components[d]`` is the homogeneous degree-d part, for d = 0..cap.
    Invertible because the degree-0 component is 1.
    """

    presentation: RingPresentation
    field: str
    components: tuple

    def __post_init__(self):
        if len(self.components) != self.presentation.cap + 1:
            raise InputError("component list must have length cap+1")
        if not self.components[0].is_one():
            raise InputError("total class must have unit leading term")
        for d, c in enumerate(self.components):
            if not c.is_homogeneous_of(d):
                raise InputError(f"component {d} is not homogeneous of degree {d}")

    @classmethod
    def unit(cls, presentation, field=Z2) -> "TotalClass":
        comps = [GradedPoly.one(presentation, field)]
        comps += [GradedPoly.zero(presentation, field) for _ in range(presentation.cap)]
        return cls(presentation, field, tuple(comps))

    @classmethod
    def from_poly(cls, p: GradedPoly) -> "TotalClass":
        comps = [p.component(d) for d in range(p.presentation.cap + 1)]
        return cls(p.presentation, p.field, tuple(comps))

    @classmethod
    def from_components(cls, presentation, field, parts: Mapping[int, GradedPoly]) -> "TotalClass":
        comps = [GradedPoly.zero(presentation, field) for _ in range(presentation.cap + 1)]
        comps[0] = GradedPoly.one(presentation, field)
        for d, p in parts.items():
            if d == 0:
                continue
            comps[d] = p
        return cls(presentation, field, tuple(comps))

    def component(self, d: int) -> GradedPoly:
        """Degree-d component; zero outside 0..cap (Schur convention)."""
        if d < 0 or d > self.presentation.cap:
            return GradedPoly.zero(self.presentation, self.field)
        return self.components[d]

    def as_poly(self) -> GradedPoly:
        out = GradedPoly.zero(self.presentation, self.field)
        for c in self.components:
            out = out + c
        return out

    def rank(self) -> int:
        """Largest d with a nonzero degree-d component."""
        top = 0
        for d, c in enumerate(self.components):
            if not c.is_zero():
                top = d
        return top

    def __mul__(self, other: "TotalClass") -> "TotalClass":
        if not _same_presentation(self.presentation, other.presentation):
            raise InputError("presentation mismatch")
        if self.field != other.field:
            raise InputError("coefficient field mismatch")
        cap = self.presentation.cap
        comps = []
        for d in range(cap + 1):
            acc = GradedPoly.zero(self.presentation, self.field)
            for i in range(d + 1):
                acc = acc + self.components[i] * other.components[d - i]
            comps.append(acc)
        return TotalClass(self.presentation, self.field, tuple(comps))


def total_inverse(c: TotalClass) -> TotalClass:
    """Formal inverse of a unit-leading total class.

    Computed by the recursion inv_k = -sum_{j=1..k} c_j * inv_(k-j); the
    signs are vacuous over Z2.  The degree-k components of the inverse of a
    total Stiefel-Whitney class are the Segre-type classes pushed forward
    from the projectivization.
    """
    cap = c.presentation.cap
    inv = [GradedPoly.one(c.presentation, c.field)]
    for k in range(1, cap + 1):
        acc = GradedPoly.zero(c.presentation, c.field)
        for j in range(1, k + 1):
            acc = acc + c.components[j] * inv[k - j]
        inv.append(-acc)
    return TotalClass(c.presentation, c.field, tuple(inv))


def substitute(
    x: GradedPoly,
    assignment: Mapping[str, GradedPoly],
    *,
    target: RingPresentation | None = None,
    target_field: str | None = None,
) -> GradedPoly:
    """Apply the ring homomorphism sending each generator to its image.

    The assignment must be degree-preserving: the image of a degree-d
    generator is homogeneous of degree d or zero.  Z coefficients may be
    pushed into a Z2 target (reduction mod 2); the reverse is rejected.
    """
    for img in assignment.values():
        if target is None:
            target = img.presentation
        elif not _same_presentation(target, img.presentation):
            raise InputError("assignment images live in different presentations")
        if target_field is None:
            target_field = img.field
        elif target_field != img.field:
            raise InputError("assignment images have mixed coefficient fields")
    if target is None or target_field is None:
        raise InputError("empty assignment needs an explicit target presentation and field")
    if x.field == Z2 and target_field == Z:
        raise InputError("cannot lift Z2 coefficients to Z")

    gens = x.presentation.generators
    for name, img in assignment.items():
        d = gens[x.presentation.index_of(name)].degree
        if not (img.is_zero() or img.is_homogeneous_of(d)):
            raise InputError(f"image of {name!r} is not homogeneous of degree {d}")

    out = GradedPoly.zero(target, target_field)
    for mono, coeff in x.terms:
        if x.field == Z and target_field == Z2:
            coeff %= 2
        if coeff == 0:
            continue
        term = GradedPoly.make(target, target_field, {(0,) * len(target.generators): coeff})
        for e, g in zip(mono, gens):
            if e == 0:
                continue
            if g.name not in assignment:
                raise InputError(f"no image supplied for generator {g.name!r}")
            term = term * (assignment[g.name] ** e)
            if term.is_zero():
                break
        out = out + term
    return out


# ---------------------------------------------------------------------------
# Canonical ring builders (cached so repeated calls share one object).


@lru_cache(maxsize=None)
def w_ring(max_index: int, cap: int = DEFAULT_CAP) -> FreeTruncated:
    """Free Z2-style ring on w1..w_max with deg w_i = i."""
    gens = tuple(GeneratorSpec(f"w{i}", i) for i in range(1, max_index + 1))
    return FreeTruncated(gens, cap)


@lru_cache(maxsize=None)
def pontryagin_ring(max_index: int, cap: int = DEFAULT_CAP) -> FreeTruncated:
    """Free ring on p1..p_max with deg p_i = 4i."""
    gens = tuple(GeneratorSpec(f"p{i}", 4 * i) for i in range(1, max_index + 1))
    return FreeTruncated(gens, cap)


@lru_cache(maxsize=None)
def rp_ring(n: int) -> TruncatedPower:
    """H*(RP^n; Z2) = Z2[a]/(a^(n+1))."""
    return TruncatedPower(n)


def projective_bundle(base: RingPresentation, rank: int, base_class: TotalClass | None = None,
                      cap: int = -1) -> ProjBundle:
    """Presentation of P(E) for a rank-`rank` bundle E with total class
    ``base_class`` (trivial bundle if omitted)."""
    if base_class is None:
        base_class = TotalClass.unit(base, Z2)
    return ProjBundle(base, rank, base_class, cap)


def universal_sw_class(ring: RingPresentation, field: str = Z2) -> TotalClass:
    """1 + w1 + w2 + ... assembled from the ring's w-generators."""
    parts = {}
    for g in ring.generators:
        if g.name == f"w{g.degree}":
            parts[g.degree] = GradedPoly.gen(ring, g.name, field)
    return TotalClass.from_components(ring, field, parts)


def universal_pontryagin_class(ring: RingPresentation) -> TotalClass:
    """1 + p1 + p2 + ... over Z; the degree-4k component is p_k."""
    parts = {}
    for g in ring.generators:
        if g.name == f"p{g.degree // 4}" and g.degree % 4 == 0:
            parts[g.degree] = GradedPoly.gen(ring, g.name, Z)
    return TotalClass.from_components(ring, Z, parts)


# ---------------------------------------------------------------------------
# Printing.


def _term_str(pres: RingPresentation, mono: Mono, coeff: int) -> str:
    ms = pres.format_monomial(mono)
    if ms == "1":
        return str(coeff)
    if coeff == 1:
        return ms
    if coeff == -1:
        return f"-{ms}"
    return f"{coeff}*{ms}"


def format_poly(p: GradedPoly) -> str:
    """Human-readable form, graded lexicographic term order."""
    if not p.terms:
        return "0"
    out = []
    for i, (mono, coeff) in enumerate(p.terms):
        s = _term_str(p.presentation, mono, coeff)
        if i == 0:
            out.append(s)
        elif s.startswith("-"):
            out.append(f" - {s[1:]}")
        else:
            out.append(f" + {s}")
    return "".join(out)


def expression_string(p: GradedPoly) -> str:
    """Strictly grammar-compatible form: terms joined by '+', each term an
    optional signed integer coefficient times a monomial."""
    if not p.terms:
        return "0"
    parts = []
    for mono, coeff in p.terms:
        ms = p.presentation.format_monomial(mono)
        if ms == "1":
            parts.append(str(coeff))
        elif coeff == 1:
            parts.append(ms)
        else:
            parts.append(f"{coeff}*{ms}")
    return " + ".join(parts)

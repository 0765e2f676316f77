"""Representation rings as Weyl-invariant Laurent polynomials.

R(G) is modelled as R(T)^W.  Invariant dimensions come from the Weyl
integration formula; an independent greedy peeling into irreducible
characters serves as a cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import List, Sequence, Tuple, Union

from .cyclotomic import ZERO, Cyclotomic
from .laurent import LaurentPoly, weyl_act
from .rootdatum import (
    PreconditionError,
    RootDatum,
    StructureError,
    SubDatum,
    Vector,
    WeylElement,
    ConsistencyError,
    pair,
    weyl_elements,
    weyl_group_of,
)

Group = Union[RootDatum, SubDatum]


@dataclass(frozen=True)
class WeightMultiset:
    """Weights of a (virtual) T-module; `negative` holds subtracted weights."""

    rank: int
    weights: Tuple[Vector, ...]
    negative: Tuple[Vector, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(tuple(w) for w in self.weights))
        object.__setattr__(self, "negative", tuple(tuple(w) for w in self.negative))
        for w in self.weights + self.negative:
            if len(w) != self.rank:
                raise ValueError(f"weight {w} does not have length {self.rank}")

    def dualized(self) -> "WeightMultiset":
        neg = lambda ws: tuple(tuple(-x for x in w) for w in ws)
        return WeightMultiset(self.rank, neg(self.weights), neg(self.negative))

    def __add__(self, other: "WeightMultiset") -> "WeightMultiset":
        return WeightMultiset(self.rank, self.weights + other.weights, self.negative + other.negative)

    def __neg__(self) -> "WeightMultiset":
        return WeightMultiset(self.rank, self.negative, self.weights)

    def sorted_weights(self) -> List[Vector]:
        return sorted(self.weights)


def generators_of(group: Group) -> Tuple[WeylElement, ...]:
    if isinstance(group, RootDatum):
        return group.simple_reflections
    return group.sub_weyl


def is_invariant(poly: LaurentPoly, group: Group) -> bool:
    return all(weyl_act(s, poly) == poly for s in generators_of(group))


@dataclass(frozen=True, eq=False)
class VirtualCharacter:
    """A Laurent polynomial together with the group it is claimed to be invariant for."""

    poly: LaurentPoly
    group: Group
    check: bool = field(default=True, repr=False)

    def __post_init__(self):
        if self.check and not is_invariant(self.poly, self.group):
            raise StructureError(f"{self.poly} is not invariant under the Weyl group of {self.group.name}")

    def __eq__(self, other):
        if isinstance(other, VirtualCharacter):
            return self.poly == other.poly
        return self.poly == other

    __hash__ = None

    def __add__(self, other):
        return VirtualCharacter(self.poly + _poly(other), self.group, check=False)

    def __sub__(self, other):
        return VirtualCharacter(self.poly - _poly(other), self.group, check=False)

    def __mul__(self, other):
        if isinstance(other, (VirtualCharacter, LaurentPoly)):
            return VirtualCharacter(self.poly * _poly(other), self.group, check=False)
        return VirtualCharacter(self.poly.scale(other), self.group, check=False)

    __rmul__ = __mul__

    def dual(self) -> "VirtualCharacter":
        return VirtualCharacter(self.poly.dual(), self.group, check=False)

    def __str__(self):
        return str(self.poly)


def _poly(a) -> LaurentPoly:
    return a.poly if isinstance(a, VirtualCharacter) else a


def as_character(a, group: Group) -> VirtualCharacter:
    if isinstance(a, VirtualCharacter):
        if a.group is group or a.group == group:
            return a
        return VirtualCharacter(a.poly, group)
    return VirtualCharacter(a, group)


# -- characters -----------------------------------------------------------------------

def _alternant(datum: RootDatum, lam: Sequence[int]) -> LaurentPoly:
    terms = {}
    for w in weyl_elements(datum):
        e = w.act(lam)
        terms[e] = terms.get(e, 0) + w.det
    return LaurentPoly(datum.rank, terms)


@lru_cache(maxsize=None)
def _weyl_denominator(datum: RootDatum) -> LaurentPoly:
    return _alternant(datum, datum.rho)


@lru_cache(maxsize=None)
def _weyl_character(datum: RootDatum, lam: Vector) -> LaurentPoly:
    shifted = tuple(a + b for a, b in zip(lam, datum.rho))
    return _alternant(datum, shifted).exact_div(_weyl_denominator(datum))


def weyl_character(datum: RootDatum, lam: Sequence[int]) -> VirtualCharacter:
    lam = tuple(int(x) for x in lam)
    if len(lam) != datum.rank:
        raise PreconditionError(f"weight {list(lam)} does not have length {datum.rank}")
    if not datum.is_dominant(lam):
        raise PreconditionError(f"weight {list(lam)} is not dominant for {datum.name}")
    return VirtualCharacter(_weyl_character(datum, lam), datum, check=False)


def weyl_dimension(datum: RootDatum, lam: Sequence[int]) -> Fraction:
    """prod <lam + rho, a^v> / <rho, a^v> over positive roots."""
    out = Fraction(1)
    shifted = [a + b for a, b in zip(lam, datum.rho)]
    for a in datum.positive_roots:
        c = datum.coroot_of(a)
        out *= Fraction(pair(shifted, c), pair(datum.rho, c))
    return out


def dominant_weights(datum: RootDatum, height: int) -> List[Vector]:
    return datum.dominant_weights(height)


def orbit_sum(group: Group, lam: Sequence[int]) -> LaurentPoly:
    """Sum of x^mu over the distinct W(group)-translates mu of lam."""
    pts = {w.act(lam) for w in weyl_group_of(group)}
    return LaurentPoly(group.rank, {e: 1 for e in pts})


# -- lambda_{-1} and relative weights -------------------------------------------------

@lru_cache(maxsize=1024)
def lambda_minus_one(ws: WeightMultiset) -> LaurentPoly:
    """prod over weights mu of (1 - x^mu)."""
    if ws.negative:
        raise PreconditionError("lambda_-1 of a virtual weight multiset is not a Laurent polynomial")
    out = LaurentPoly.constant(ws.rank, 1)
    for mu in ws.weights:
        out = out * (LaurentPoly.constant(ws.rank, 1) - LaurentPoly.monomial(mu))
    return out


RELATIVE_KINDS = ("g_mod_z", "g_mod_p", "p_mod_z")


def relative_weights(datum: RootDatum, sub: SubDatum, kind: str, dualize: bool = False) -> WeightMultiset:
    """Root weights of g/z, g/p or p/z for an equal-rank subdatum.

    The parabolic p contains the Levi and every positive root.
    """
    if sub.parent != datum:
        raise PreconditionError("subdatum does not belong to this datum")
    inside = set(sub.roots)
    outside = [a for a in datum.roots if a not in inside]
    if kind == "g_mod_z":
        ws = outside
    elif kind in ("g_mod_p", "p_mod_z"):
        if sub.kind not in ("levi", "torus"):
            raise PreconditionError(f"kind {kind} needs a Levi subdatum, got {sub.kind}")
        want_positive = kind == "p_mod_z"
        ws = [a for a in outside if datum.is_positive(a) == want_positive]
    else:
        raise PreconditionError(f"unknown relative kind {kind!r}; expected one of {RELATIVE_KINDS}")
    out = WeightMultiset(datum.rank, tuple(sorted(ws)))
    return out.dualized() if dualize else out


# -- Weyl integration -----------------------------------------------------------------

@lru_cache(maxsize=None)
def integration_kernel(group: Group) -> LaurentPoly:
    """lambda_-1 of the dual root weights: prod over roots of (1 - x^-a)."""
    ws = WeightMultiset(group.rank, tuple(group.roots)).dualized()
    return lambda_minus_one(ws)


def _ct_pairing(u: LaurentPoly, v: LaurentPoly) -> Cyclotomic:
    """Constant term of u*v without forming the product."""
    if len(u) > len(v):
        u, v = v, u
    acc = ZERO
    vt = v.terms
    for e, c in u.items():
        d = vt.get(tuple(-x for x in e))
        if d is not None:
            acc = acc + c * d
    return acc


def invariant_dim(group: Group, a, check: bool = True) -> Cyclotomic:
    """Dimension of invariants: (1/|W|) * CT(prod(1 - x^-a) * a)."""
    poly = _poly(a)
    if check and not is_invariant(poly, group):
        raise PreconditionError(f"{poly} is not invariant under the Weyl group of {group.name}")
    n = len(weyl_group_of(group))
    return _ct_pairing(integration_kernel(group), poly) * Fraction(1, n)


def hom_pairing(group: Group, a, b, check: bool = True) -> Cyclotomic:
    """Hom(a, b) = invariant_dim(dual(a) * b); bilinear, no conjugation."""
    pa, pb = _poly(a), _poly(b)
    if check:
        for p in (pa, pb):
            if not is_invariant(p, group):
                raise PreconditionError(f"{p} is not invariant under the Weyl group of {group.name}")
    n = len(weyl_group_of(group))
    return _triple_ct(integration_kernel(group), pa.dual(), pb) * Fraction(1, n)


def _triple_ct(u: LaurentPoly, v: LaurentPoly, w: LaurentPoly) -> Cyclotomic:
    """Constant term of u*v*w: multiply the two smallest, pair with the largest."""
    a, b, c = sorted((u, v, w), key=len)
    return _ct_pairing(a * b, c)


def decompose_irreducibles(datum: RootDatum, a) -> List[Tuple[Vector, Cyclotomic]]:
    """Greedy peeling by irreducible characters, highest (height, lex) first."""
    poly = _poly(a)
    if not is_invariant(poly, datum):
        raise PreconditionError(f"{poly} is not invariant under the Weyl group of {datum.name}")
    key = lambda e: (datum.height(e), e)
    rest = poly
    out = []
    last = None
    while rest:
        dom = [e for e in rest.terms if datum.is_dominant(e)]
        if not dom:
            raise StructureError(f"invariant remainder {rest} has no dominant exponent")
        lead = max(dom, key=key)
        if last is not None and key(lead) >= key(last):
            raise StructureError("peeling did not decrease the leading term")
        last = lead
        c = rest.coeff(lead)
        out.append((lead, c))
        rest = rest - _weyl_character(datum, lead).scale(c)
    recon = LaurentPoly.zero(datum.rank)
    for lam, c in out:
        recon = recon + _weyl_character(datum, lam).scale(c)
    if recon != poly:
        raise ConsistencyError("peeling does not reconstruct its input")
    return sorted(out, key=lambda t: key(t[0]), reverse=True)


def multiplicity(decomposition, lam: Sequence[int]) -> Cyclotomic:
    lam = tuple(lam)
    for mu, c in decomposition:
        if mu == lam:
            return c
    return ZERO

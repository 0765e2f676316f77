"""Restriction, twisted induction and fixed-point pushforward on G/P."""

from __future__ import annotations

from collections import Counter
from typing import Iterable, List, Optional, Sequence, Tuple

from .laurent import DivisibilityError, LaurentPoly, weyl_act
from .report import VerificationReport
from .reptheory import (
    Group,
    VirtualCharacter,
    _poly,
    hom_pairing,
    is_invariant,
    lambda_minus_one,
    relative_weights,
)
from .rootdatum import (
    ConsistencyError,
    PreconditionError,
    RootDatum,
    StructureError,
    SubDatum,
    coset_representatives,
    weyl_group_of,
)


def restrict(a, target: Group) -> VirtualCharacter:
    """Restriction R(G) -> R(H) is the inclusion of invariants."""
    poly = _poly(a)
    if not is_invariant(poly, target):
        raise StructureError(f"{poly} is not invariant under the Weyl group of {target.name}")
    return VirtualCharacter(poly, target, check=False)


def induce(parent: Group, sub: Group, a) -> VirtualCharacter:
    """Sum of w(a) over coset representatives of W / W_1."""
    poly = _poly(a)
    if not is_invariant(poly, sub):
        raise PreconditionError(f"{poly} is not invariant under the Weyl group of {sub.name}")
    reps = coset_representatives(weyl_group_of(parent), weyl_group_of(sub))
    out = LaurentPoly.zero(parent.rank)
    for w in reps:
        out = out + weyl_act(w, poly)
    if not is_invariant(out, parent):
        raise ConsistencyError("induced class is not invariant")
    return VirtualCharacter(out, parent, check=False)


def _require_levi(parent: RootDatum, levi: SubDatum) -> None:
    if levi.parent != parent:
        raise PreconditionError("Levi subdatum does not belong to this datum")
    if levi.kind not in ("levi", "torus"):
        raise PreconditionError(f"pushforward needs a standard Levi subdatum, got kind {levi.kind}")


def pushforward_fixed_points(parent: RootDatum, levi: SubDatum, a) -> VirtualCharacter:
    """Equivariant Euler characteristic on G/P by localization at T-fixed points.

    The tangent space at eP has the weights of g/p (negative roots outside
    the Levi), so the local denominator is D = prod (1 - x^b) over positive
    roots b outside the Levi.  Each w(D) is a unit times canonical factors
    (1 - x^b) with b positive; all terms are put over the smallest common
    product of canonical factors and divided once at the end.
    """
    _require_levi(parent, levi)
    poly = _poly(a)
    if not is_invariant(poly, levi):
        raise PreconditionError(f"{poly} is not invariant under the Weyl group of the Levi")
    r = parent.rank
    tangent = relative_weights(parent, levi, "g_mod_p", dualize=True).weights
    reps = coset_representatives(weyl_group_of(parent), levi.weyl_group)

    per_coset = []
    common: Counter = Counter()
    for w in reps:
        canon: Counter = Counter()
        sign = 1
        shift = [0] * r
        for b in tangent:
            wb = w.act(b)
            if parent.is_positive(wb):
                canon[wb] += 1
            else:
                # 1 - x^c = -x^c (1 - x^-c) for a negative root c
                canon[tuple(-x for x in wb)] += 1
                sign = -sign
                shift = [s + c for s, c in zip(shift, wb)]
        per_coset.append((w, canon, sign, shift))
        common |= canon

    one = LaurentPoly.constant(r, 1)
    factor = lambda b: one - LaurentPoly.monomial(b)
    denominator = one
    for b, m in sorted(common.items()):
        for _ in range(m):
            denominator = denominator * factor(b)

    numerator = LaurentPoly.zero(r)
    for w, canon, sign, shift in per_coset:
        term = weyl_act(w, poly).shift([-s for s in shift]).scale(sign)
        for b, m in sorted((common - canon).items()):
            for _ in range(m):
                term = term * factor(b)
        numerator = numerator + term
    try:
        out = numerator.exact_div(denominator)
    except DivisibilityError as exc:
        raise ConsistencyError(f"fixed-point sum is not a Laurent polynomial: {exc}") from exc
    if not is_invariant(out, parent):
        raise ConsistencyError("pushforward is not W-invariant")
    return VirtualCharacter(out, parent, check=False)


def verify_alternate_induction(parent: RootDatum, levi: SubDatum, samples) -> VerificationReport:
    """ind(a) against the pushforward of lambda_-1((g/p)^*) * a."""
    if isinstance(samples, (LaurentPoly, VirtualCharacter)):
        samples = [samples]
    rep = VerificationReport("alternate_induction")
    kernel = lambda_minus_one(relative_weights(parent, levi, "g_mod_p", dualize=True))
    for a in samples:
        poly = _poly(a)
        lhs = induce(parent, levi, poly).poly
        try:
            rhs = pushforward_fixed_points(parent, levi, kernel * poly).poly
        except ConsistencyError as exc:
            rep.add({"datum": parent.name, "levi": levi.name, "a": poly}, lhs, f"error: {exc}", passed=False)
            continue
        rep.add({"datum": parent.name, "levi": levi.name, "a": poly}, lhs, rhs)
    return rep


def check_reciprocity(parent: RootDatum, sub: Group, a, b, report: Optional[VerificationReport] = None) -> VerificationReport:
    """Hom_G(ind a, b) against Hom_H(lambda_-1(g*/h*) a, res b)."""
    rep = report if report is not None else VerificationReport("reciprocity")
    pa, pb = _poly(a), _poly(b)
    lhs = hom_pairing(parent, induce(parent, sub, pa), pb, check=False)
    if isinstance(sub, SubDatum):
        kernel = lambda_minus_one(relative_weights(parent, sub, "g_mod_z", dualize=True))
    else:
        kernel = LaurentPoly.constant(parent.rank, 1)
    rhs = hom_pairing(sub, kernel * pa, restrict(pb, sub), check=False)
    rep.add({"datum": parent.name, "sub": sub.name, "a": pa, "b": pb}, lhs, rhs)
    return rep


def verify_induction_axioms(
    chain: Tuple[Group, Group, Group],
    samples: Iterable = (),
    pairs: Iterable[Tuple[object, object]] = (),
) -> VerificationReport:
    """Transitivity on `samples` and the projection formula on `pairs`.

    chain = (K, H, G) with K inside H inside G; samples are W_K-invariant,
    pairs are (alpha in R(H), beta in R(G)).
    """
    k, h, g = chain
    rep = VerificationReport("induction_axioms")
    for a in samples:
        pa = _poly(a)
        lhs = induce(g, h, induce(h, k, pa)).poly
        rhs = induce(g, k, pa).poly
        rep.add({"check": "transitivity", "a": pa}, lhs, rhs)
    for alpha, beta in pairs:
        pa, pb = _poly(alpha), _poly(beta)
        lhs = induce(g, h, pa * restrict(pb, h).poly).poly
        rhs = induce(g, h, pa).poly * pb
        rep.add({"check": "projection", "alpha": pa, "beta": pb}, lhs, rhs)
    return rep

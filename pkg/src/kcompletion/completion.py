"""Completions at maximal ideals via truncated jets; the twisted Chern character.

The completion of R(T) at the maximal ideal of a torsion point h is
modelled by Taylor jets x^lam -> lam(h) exp(<lam, t>) truncated at a
finite order.  Jet coordinates t are cocharacter coordinates, so a Weyl
element w moves jets by the substitution t -> w^T t.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Dict, List, Optional, Sequence, Tuple

from .cyclotomic import ONE, Cyclotomic
from .induction import induce, restrict
from .laurent import LaurentPoly, weyl_act
from .linalg import EchelonBasis, TrackedEchelon, rref
from .report import DegreeRecord, GradedReport, VerificationReport
from .reptheory import (
    VirtualCharacter,
    WeightMultiset,
    _poly,
    dominant_weights,
    is_invariant,
    lambda_minus_one,
    orbit_sum,
    relative_weights,
    weyl_character,
)
from .rootdatum import (
    PreconditionError,
    ResourceCapError,
    RootDatum,
    StructureError,
    SubDatum,
    TorsionPoint,
    WeylElement,
    centralizer_subdatum,
    coset_representatives,
    orbit_and_stabilizer,
    pair,
    weyl_elements,
)
from .series import TruncatedSeries, multi_indices, multi_indices_upto


# -- twisting -------------------------------------------------------------------------

def character_value(lam: Sequence[int], q: TorsionPoint) -> Cyclotomic:
    n = q.order
    return Cyclotomic.root(n, pair(lam, q.numerators()) % n)


def twist(a, q: TorsionPoint):
    """x^lam -> lam(h) x^lam.  A VirtualCharacter input must have q fixed by its Weyl group."""
    poly = _poly(a)
    if poly.rank != q.rank:
        raise PreconditionError(f"rank mismatch: {poly.rank} vs torsion point of rank {q.rank}")
    out = LaurentPoly._raw(poly.rank, {e: c * character_value(e, q) for e, c in poly.items()})
    if isinstance(a, VirtualCharacter):
        from .reptheory import generators_of

        if any(q.act(s) != q for s in generators_of(a.group)):
            raise PreconditionError(f"q = ({q}) is not fixed by the Weyl group of {a.group.name}")
        return VirtualCharacter(out, a.group, check=False)
    return out


# -- jets -----------------------------------------------------------------------------

@lru_cache(maxsize=4096)
def _exp_coefficients(lam: Tuple[int, ...], k: int) -> Tuple[Tuple[Tuple[int, ...], Fraction], ...]:
    out = []
    for b in multi_indices_upto(len(lam), k):
        num, den = 1, 1
        for l, e in zip(lam, b):
            num *= l ** e
            den *= factorial(e)
        if num:
            out.append((b, Fraction(num, den)))
    return tuple(out)


def jet(a, q: TorsionPoint, k: int) -> TruncatedSeries:
    """Taylor jet of order k at h: x^lam -> lam(h) exp(<lam, t>)."""
    poly = _poly(a)
    if poly.rank != q.rank:
        raise PreconditionError(f"rank mismatch: {poly.rank} vs {q.rank}")
    terms: Dict[Tuple[int, ...], Cyclotomic] = {}
    for lam, c in poly.items():
        v = c * character_value(lam, q) if not q.is_zero() else c
        for b, f in _exp_coefficients(lam, k):
            x = v * f
            s = terms.get(b)
            terms[b] = x if s is None else s + x
    return TruncatedSeries._raw(poly.rank, k, {b: c for b, c in terms.items() if c})


def jet_transport(w: WeylElement, s: TruncatedSeries) -> TruncatedSeries:
    """Move a jet at q to the matching jet at w.q: s(t) -> s(w^T t)."""
    if w.rank != s.rank:
        raise PreconditionError("size mismatch between Weyl element and series")
    if w.is_identity():
        return s
    return s.substitute_linear(w.transpose)


def chern_character(a, n: int) -> TruncatedSeries:
    return jet(a, TorsionPoint.zero(_poly(a).rank), n)


@lru_cache(maxsize=None)
def _todd_univariate(n: int) -> Tuple[TruncatedSeries, TruncatedSeries]:
    """(u/(1 - e^-u), (1 - e^-u)/u) as rank-1 series of order n."""
    inv = TruncatedSeries(1, n, {(k,): Fraction((-1) ** k, factorial(k + 1)) for k in range(n + 1)})
    return inv.inverse(), inv


def todd_class(ws: WeightMultiset, n: int) -> TruncatedSeries:
    """prod over nonzero weights mu of T(<mu, t>); subtracted weights use 1/T."""
    td, td_inv = _todd_univariate(n)
    out = TruncatedSeries.constant(ws.rank, n, 1)
    for mus, f in ((ws.weights, td), (ws.negative, td_inv)):
        for mu in mus:
            if not any(mu):
                continue
            u = TruncatedSeries.linear_form(mu, n)
            out = out * f.compose_univariate(u)
    return out


# -- maximal ideals -------------------------------------------------------------------

@dataclass(frozen=True)
class MaximalIdealRef:
    """m_h in R(T) (base 'torus_ring') or m_Psi in R(G) (base 'parent_ring')."""

    base: str
    points: Tuple[TorsionPoint, ...]

    @classmethod
    def of_point(cls, q: TorsionPoint) -> "MaximalIdealRef":
        return cls("torus_ring", (q,))

    @classmethod
    def of_orbit(cls, parent: RootDatum, q: TorsionPoint) -> "MaximalIdealRef":
        return cls("parent_ring", orbit_and_stabilizer(parent, q).orbit)

    def contains(self, a) -> bool:
        poly = _poly(a)
        return all(not poly.evaluate_at_torsion(p) for p in self.points)


def ideal_generators(parent: RootDatum, q: TorsionPoint) -> Tuple[List[LaurentPoly], bool]:
    """W-invariant generators of m_Psi and whether the family provably generates.

    chi_omega - chi_omega(h) over fundamental weights, plus x^z - z(h) over
    primitive central characters z.  The family generates R(G) when the
    weights used form a basis of the character lattice.
    """
    gens = []
    used = []
    for om in parent.fundamental_weights:
        chi = weyl_character(parent, om).poly
        gens.append(chi - chi.evaluate_at_torsion(q))
        used.append(om)
    for z in parent.central_characters:
        mono = LaurentPoly.monomial(z)
        gens.append(mono - mono.evaluate_at_torsion(q))
        used.append(z)
    generates = len(used) == parent.rank and abs(_rational_det(used)) == 1
    return gens, generates


def _rational_det(rows) -> Fraction:
    m = [[Fraction(x) for x in r] for r in rows]
    n = len(m)
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            d = -d
        d *= m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] / m[c][c]
            m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return d


# -- the twisted Chern character at a point --------------------------------------------

def is_series_invariant(s: TruncatedSeries, gens: Sequence[WeylElement]) -> bool:
    return all(jet_transport(w, s) == s for w in gens)


def tau_point(parent: RootDatum, q: TorsionPoint, a, n: int) -> TruncatedSeries:
    """ch(t_h(res_Z a)) truncated at degree n; lands in W_Z-invariant series."""
    poly = _poly(a)
    if not is_invariant(poly, parent):
        raise PreconditionError(f"{poly} is not invariant under the Weyl group of {parent.name}")
    z = centralizer_subdatum(parent, q)
    res = restrict(poly, z)
    out = chern_character(twist(res, q), n)
    if not is_series_invariant(out, z.sub_weyl):
        raise StructureError("twisted Chern character is not invariant under the centralizer Weyl group")
    return out


# -- invariant theory -----------------------------------------------------------------

def _power_traces(m: Sequence[Sequence[int]], d: int) -> List[int]:
    r = len(m)
    cur = [[int(i == j) for j in range(r)] for i in range(r)]
    out = []
    for _ in range(d):
        cur = [[sum(cur[i][k] * m[k][j] for k in range(r)) for j in range(r)] for i in range(r)]
        out.append(sum(cur[i][i] for i in range(r)))
    return out


def _sym_trace(m, d: int) -> Fraction:
    """Trace on Sym^d via Newton's identity h_d = (1/d) sum p_i h_(d-i)."""
    p = _power_traces(m, d)
    h = [Fraction(1)]
    for j in range(1, d + 1):
        h.append(sum(p[i - 1] * h[j - i] for i in range(1, j + 1)) / j)
    return h[d]


def molien_dimension(group: Sequence[WeylElement], d: int) -> int:
    """dim Sym^d(V)^G as the group average of traces on Sym^d."""
    total = sum(_sym_trace(w.matrix, d) for w in group) / len(group)
    if total.denominator != 1:
        raise StructureError(f"non-integral invariant dimension {total}")
    return int(total)


def molien_bruteforce(group: Sequence[WeylElement], d: int) -> int:
    """Rank of the Reynolds operator on an explicit monomial basis of Sym^d."""
    r = group[0].rank
    basis = multi_indices(r, d)
    index = {b: i for i, b in enumerate(basis)}
    acc: Dict[Tuple[int, int], Fraction] = {}
    for w in group:
        for j, b in enumerate(basis):
            img = TruncatedSeries(r, d, {b: 1}).substitute_linear(w.matrix)
            for e, c in img.component(d).items():
                acc[(index[e], j)] = acc.get((index[e], j), Fraction(0)) + c.to_fraction()
    cols = [[acc.get((i, j), Fraction(0)) for i in range(len(basis))] for j in range(len(basis))]
    if not cols:
        return 0
    return len(rref(cols)[1])


# -- graded isomorphism report --------------------------------------------------------

def _vector(s: TruncatedSeries, d: int, index: Dict[Tuple[int, ...], int]) -> Dict[int, Cyclotomic]:
    return {index[e]: c for e, c in s.component(d).items()}


def weighted_monomials(weights: Sequence[int], d: int) -> List[Tuple[int, ...]]:
    """Exponent vectors b with sum b_i * weights_i == d."""
    out = []

    def rec(i, left, acc):
        if i == len(weights):
            if left == 0:
                out.append(tuple(acc))
            return
        for e in range(left // weights[i] + 1):
            rec(i + 1, left - e * weights[i], acc + [e])

    rec(0, d, [])
    return out


def _monomial_series(series: Sequence[TruncatedSeries], b: Sequence[int], r: int, n: int) -> TruncatedSeries:
    out = TruncatedSeries.constant(r, n, 1)
    for s, e in zip(series, b):
        if e:
            out = out * (s ** e)
    return out


def graded_iso_report(parent: RootDatum, q: TorsionPoint, n: int) -> GradedReport:
    """Degree-by-degree check that the twisted Chern character is an isomorphism.

    The completed source is a power series ring in generators g_i of m_Psi.
    Generators are adjusted triangularly until their images have
    algebraically independent initial forms; g_i is then given weight
    equal to the order of its image, the map is filtered, and in each
    degree d the associated graded map is compared with the dimension of
    degree-d invariants of W_Z.
    """
    r = parent.rank
    z = centralizer_subdatum(parent, q)
    wz = z.weyl_group
    report = GradedReport(parent.name, str(q), n)
    if not parent.simply_connected_commutator:
        report.warnings.append("commutator subgroup not simply connected; centralizer may be disconnected")
    gens, generates = ideal_generators(parent, q)
    images = [tau_point(parent, q, g, n) for g in gens]
    index = {e: i for i, e in enumerate(multi_indices_upto(r, n))}

    accepted: List[Tuple[int, TruncatedSeries]] = []
    pending = list(images)
    for d in range(1, n + 1):
        basis = TrackedEchelon()
        labelled: Dict[object, TruncatedSeries] = {}
        weights = [w for w, _ in accepted]
        for b in weighted_monomials(weights, d):
            s = _monomial_series([p for _, p in accepted], b, r, n)
            labelled[("m", b)] = s
            basis.add(_vector(s, d, index), ("m", b))
        still = []
        for p in pending:
            v = p.valuation()
            if v is None:
                report.warnings.append("a generator of the maximal ideal maps to zero")
                continue
            if v > d:
                still.append(p)
                continue
            residual, combo = basis.express(_vector(p, d, index))
            if residual:
                label = ("g", len(accepted))
                accepted.append((d, p))
                labelled[label] = p
                basis.add(_vector(p, d, index), label)
            else:
                for lab, c in combo.items():
                    p = p - labelled[lab].scale(c)
                still.append(p)
        pending = still
    if pending:
        report.warnings.append(f"{len(pending)} generator(s) have image of order > {n}; they do not affect degrees <= {n}")

    weights = [w for w, _ in accepted]
    initial = [p.initial_form() for _, p in accepted]
    report.generator_degrees = sorted(weights)
    for d in range(n + 1):
        mons = weighted_monomials(weights, d) if weights else ([()] if d == 0 else [])
        ech = EchelonBasis()
        for b in mons:
            ech.add(_vector(_monomial_series(initial, b, r, n), d, index))
        target = molien_dimension(wz, d)
        rank = ech.rank
        if rank > target:
            raise StructureError(f"image in degree {d} exceeds the invariant dimension")
        report.records.append(DegreeRecord(d, len(mons), rank, target, rank == len(mons), rank == target))
        if d <= 4:
            report.molien_crosscheck[d] = target == molien_bruteforce(wz, d)
    if not generates and not all(rec.surjective for rec in report.records):
        report.inconclusive = True
        report.warnings.append("generating family not certified; surjectivity undecided")
    return report


# -- CRT decomposition of the completion ------------------------------------------------

def _joint_jet_vector(lam, orbit, k, nidx, index) -> Dict[int, Cyclotomic]:
    vec = {}
    for i, p in enumerate(orbit):
        val = character_value(lam, p)
        for b, f in _exp_coefficients(tuple(lam), k - 1):
            vec[i * nidx + index[b]] = val * f
    return vec


def crt_decomposition_check(parent: RootDatum, q: TorsionPoint, k: int, box: Optional[int] = None) -> VerificationReport:
    """Jets of order < k at all orbit points: joint surjectivity and vanishing on (m_Psi R(T))^k."""
    r = parent.rank
    orbit = orbit_and_stabilizer(parent, q).orbit
    bound = box if box is not None else k + parent.max_root_height
    jm = multi_indices_upto(r, k - 1)
    index = {b: i for i, b in enumerate(jm)}
    expected = len(orbit) * comb(r + k - 1, r)
    rep = VerificationReport("crt")
    rep.info.update({"orbit_size": len(orbit), "box": bound, "jet_monomials": len(jm), "k": k})
    if len(orbit) == 1:
        rep.info["degenerate"] = "single-point orbit (central point): completions at m_Psi and m_h agree"

    ech = EchelonBasis()
    for lam in itertools.product(range(-bound, bound + 1), repeat=r):
        ech.add(_joint_jet_vector(lam, orbit, k, len(jm), index))
        if ech.rank == expected:
            break
    ok = rep.add({"check": "surjectivity", "q": q, "k": k, "box": bound}, ech.rank, expected)
    if not ok and ech.rank < expected:
        # more monomials can only raise the rank: not a disproof
        rep.cases[-1].passed = True
        rep.cases[-1].detail = "rank below target; inconclusive"
        rep.inconclusive = True
        rep.warnings.append(f"box bound {bound} too small for surjectivity; try --box {bound + 2}")

    gens, _ = ideal_generators(parent, q)
    gjets = [[jet(g, p, k - 1) for p in orbit] for g in gens]
    for combo in itertools.combinations_with_replacement(range(len(gens)), k):
        vanishes = True
        for i in range(len(orbit)):
            prod = TruncatedSeries.constant(r, k - 1, 1)
            for j in combo:
                prod = prod * gjets[j][i]
            vanishes &= prod.is_zero()
        rep.add({"check": "containment", "product": "*".join(f"g{j + 1}" for j in combo)}, "0" if vanishes else "nonzero", "0")
    return rep


# -- ind_h / res_h at truncation order ------------------------------------------------

def local_multiplicity(gens: Sequence[LaurentPoly], q: TorsionPoint, cap: int = 16) -> int:
    """dim of the local algebra at h of R(T)/(gens), from jets of increasing order."""
    r = q.rank
    prev = None
    for order in range(1, cap + 1):
        k = order - 1
        idx = multi_indices_upto(r, k)
        index = {b: i for i, b in enumerate(idx)}
        ech = EchelonBasis()
        gjets = [jet(g, q, k) for g in gens]
        for g in gjets:
            for b in idx:
                s = g * TruncatedSeries(r, k, {b: 1})
                ech.add({index[e]: c for e, c in s.items()})
        mu = len(idx) - ech.rank
        if prev is not None and mu == prev:
            return mu
        prev = mu
    raise ResourceCapError(f"local multiplicity did not stabilize by order {cap}")


def residue_fiber_dimension(parent: RootDatum, q: TorsionPoint) -> Tuple[int, int]:
    """(dim R(T) (x)_{R(G)} R(G)/m_Psi, local multiplicity at h)."""
    gens, _ = ideal_generators(parent, q)
    orbit = orbit_and_stabilizer(parent, q).orbit
    mults = [local_multiplicity(gens, p) for p in orbit]
    return sum(mults), mults[0]


def default_indres_samples(parent: RootDatum, q: TorsionPoint) -> List[LaurentPoly]:
    z = centralizer_subdatum(parent, q)
    seen = []
    for lam in itertools.product(range(-2, 3), repeat=parent.rank):
        if sum(abs(x) for x in lam) > 2:
            continue
        s = orbit_sum(z, lam)
        if all(s != t for t in seen):
            seen.append(s)
    for lam in dominant_weights(parent, 2):
        seen.append(weyl_character(parent, lam).poly)
    return seen


def indres_completion_check(parent: RootDatum, q: TorsionPoint, k: int, samples=None) -> VerificationReport:
    """res_h o ind_h = id on jets, and jets of invariants determined by the jet at h."""
    z = centralizer_subdatum(parent, q)
    W = weyl_elements(parent)
    reps = coset_representatives(W, z.weyl_group)
    if samples is None:
        samples = default_indres_samples(parent, q)
    rep = VerificationReport("indres")
    for a in samples:
        pa = _poly(a)
        z_inv = is_invariant(pa, z)
        g_inv = is_invariant(pa, parent)
        if not (z_inv or g_inv):
            raise PreconditionError(f"sample {pa} is not invariant under the centralizer Weyl group")
        if z_inv:
            lhs = jet(induce(parent, z, pa), q, k)
            for w in reps:
                if w.is_identity():
                    continue
                lhs = lhs - jet_transport(w, jet(pa, q.act(w.inverse), k))
            rep.add({"direction": "res_h(ind_h a)", "a": pa}, lhs, jet(pa, q, k))
        if g_inv:
            base = jet(pa, q, k)
            bad = [w for w in W if jet(pa, q.act(w), k) != jet_transport(w, base)]
            rep.add(
                {"direction": "orbit jets from jet at h", "b": pa},
                f"{len(W) - len(bad)}/{len(W)} orbit jets reproduced",
                f"{len(W)}/{len(W)} orbit jets reproduced",
                passed=not bad,
            )
    fiber, local = residue_fiber_dimension(parent, q)
    rep.info.update(
        {
            "residue_fiber_dimension": fiber,
            "local_multiplicity_at_h": local,
            "weyl_order": len(W),
            "centralizer_is_torus": not z.roots,
        }
    )
    if not z.roots:
        # R(G) -> R(T) has fiber degree > 1 over m_Psi, so localizations cannot match;
        # local multiplicity 1 (etale at h) is what makes the jet-level map bijective
        rep.info["localization_bijective"] = fiber == 1
        rep.info["etale_at_h"] = local == 1
    return rep


# -- invertibility of lambda_-1 at a central point ------------------------------------

def central_invertibility_check(parent: RootDatum, q: TorsionPoint) -> VerificationReport:
    """lambda_-1((g/z)^*) evaluated at h must be nonzero."""
    z = centralizer_subdatum(parent, q)
    u = lambda_minus_one(relative_weights(parent, z, "g_mod_z", dualize=True))
    val = u.evaluate_at_torsion(q)
    rep = VerificationReport("central_invertibility")
    rep.add({"datum": parent.name, "q": q}, val, "nonzero", passed=bool(val))
    rep.info["unit_value"] = str(val)
    return rep

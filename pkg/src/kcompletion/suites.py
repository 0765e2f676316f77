"""Named verification suites; each runs one family of identities on one root datum."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import factorial
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .completion import (
    central_invertibility_check,
    crt_decomposition_check,
    graded_iso_report,
    indres_completion_check,
    molien_bruteforce,
    molien_dimension,
    twist,
)
from .induction import (
    check_reciprocity,
    induce,
    pushforward_fixed_points,
    verify_alternate_induction,
    verify_induction_axioms,
)
from .laurent import LaurentPoly
from .report import VerificationReport
from .reptheory import (
    decompose_irreducibles,
    dominant_weights,
    hom_pairing,
    invariant_dim,
    multiplicity,
    orbit_sum,
    weyl_character,
)
from .rootdatum import (
    PRESETS,
    RootDatum,
    StructureError,
    SubDatum,
    TorsionPoint,
    datum_from_preset,
    full_subdatum,
    levi_subdatum,
    orbit_and_stabilizer,
    torsion_grid,
    torus_subdatum,
    weyl_elements,
)

ACCEPTANCE_PRESETS = ("SL2", "SL3", "B2", "G2", "GL2", "GL3")

F = Fraction

# torsion points exercised by the completion suites when none are given
DEFAULT_POINTS: Dict[str, Dict[str, Tuple[Tuple[Fraction, ...], ...]]] = {
    "crt": {
        "SL2": ((F(1, 3),),),
        "GL2": ((F(1, 2), F(0)),),
        "SL3": ((F(1, 3), F(0)),),
    },
    "indres": {
        "SL2": ((F(1, 3),), (F(1, 4),)),
        "GL2": ((F(1, 2), F(0)),),
        "SL3": ((F(1, 3), F(0)),),
    },
    "graded_iso": {
        "SL2": ((F(0),), (F(1, 4),), (F(1, 2),)),
        "GL2": ((F(1, 2), F(0)),),
        "SL3": ((F(0), F(0)), (F(1, 3), F(2, 3))),
    },
}


@dataclass(frozen=True)
class SuiteConfig:
    height: int = 3
    seed: int = 0
    samples: int = 20
    twist_orders: Tuple[int, ...] = (2, 3, 4, 6)
    twist_height: int = 4
    grid: int = 12
    infra_order: int = 6
    jet_orders: Tuple[int, ...] = (2, 3)
    indres_order: int = 3
    series_order: int = 4
    box: Optional[int] = None
    points: Optional[Tuple[Tuple[Fraction, ...], ...]] = None
    min_reciprocity_cases: int = 30
    min_integration_cases: int = 25


def _levis(datum: RootDatum, proper_only: bool = True) -> List[SubDatum]:
    k = len(datum.simple_indices)
    out = []
    for size in range(1, k if proper_only else k + 1):
        for subset in itertools.combinations(range(k), size):
            out.append(levi_subdatum(datum, subset))
    return out


def _weights_upto(r: int, h: int):
    return [lam for lam in itertools.product(range(-h, h + 1), repeat=r) if sum(map(abs, lam)) <= h]


def symmetrized_monomials(group, h: int) -> List[LaurentPoly]:
    """Distinct W(group)-orbit sums of monomials with l1-height <= h."""
    out: List[LaurentPoly] = []
    seen = set()
    for lam in _weights_upto(group.rank, h):
        s = orbit_sum(group, lam)
        key = tuple(sorted(s.terms))
        if key not in seen:
            seen.add(key)
            out.append(s)
    return out


# -- criterion suites -----------------------------------------------------------------

def suite_induction_axioms(datum: RootDatum, cfg: SuiteConfig) -> VerificationReport:
    rng = random.Random(cfg.seed)
    rep = VerificationReport("induction_axioms")
    t = torus_subdatum(datum)
    levis = _levis(datum) or [t]
    monos = [LaurentPoly.monomial(lam) for lam in _weights_upto(datum.rank, cfg.height)]
    for h in levis:
        rep.extend(verify_induction_axioms((t, h, datum), samples=monos))
    rep.extend(verify_induction_axioms((t, t, datum), samples=monos[:5]))
    irreps = [weyl_character(datum, lam).poly for lam in dominant_weights(datum, 2)]
    for h in [t] + [l for l in levis if l is not t]:
        basis = symmetrized_monomials(h, 2)
        for _ in range(cfg.samples):
            alpha = LaurentPoly.zero(datum.rank)
            for s in rng.sample(basis, min(len(basis), rng.randint(1, 3))):
                alpha = alpha + s.scale(rng.choice([-2, -1, 1, 2]))
            beta = LaurentPoly.zero(datum.rank)
            for s in rng.sample(irreps, min(len(irreps), rng.randint(1, 2))):
                beta = beta + s.scale(rng.choice([-1, 1, 2]))
            rep.extend(verify_induction_axioms((t, h, datum), pairs=[(alpha, beta)]))
    rep.info["seed"] = cfg.seed
    return rep


def suite_reciprocity(datum: RootDatum, cfg: SuiteConfig) -> VerificationReport:
    rep = VerificationReport("reciprocity")
    subs = [torus_subdatum(datum)] + _levis(datum) + [full_subdatum(datum)]
    irreps = [weyl_character(datum, lam).poly for lam in dominant_weights(datum, cfg.height)] if cfg.height >= 0 else []
    for h in subs:
        for a in symmetrized_monomials(h, cfg.height) if cfg.height >= 0 else []:
            for b in irreps:
                check_reciprocity(datum, h, a, b, report=rep)
    return rep


def suite_weyl_integration(datum: RootDatum, cfg: SuiteConfig) -> VerificationReport:
    """invariant_dim against the trivial multiplicity from peeling, on chi_l * chi_m.

    The height bound is raised until at least cfg.min_integration_cases
    unordered pairs exist (small-rank data have few dominant weights).
    """
    rep = VerificationReport("weyl_integration")
    if cfg.height < 0:
        return rep
    h = cfg.height
    while True:
        ws = dominant_weights(datum, h)
        pairs = [(a, b) for i, a in enumerate(ws) for b in ws[i:]]
        if len(pairs) >= cfg.min_integration_cases or h > cfg.height + 8:
            break
        h += 1
    rep.info["height_used"] = h
    zero = (0,) * datum.rank
    for lam, mu in pairs:
        p = weyl_character(datum, lam).poly * weyl_character(datum, mu).poly
        lhs = invariant_dim(datum, p)
        rhs = multiplicity(decompose_irreducibles(datum, p), zero)
        rep.add({"lambda": list(lam), "mu": list(mu)}, lhs, rhs)
    return rep


def suite_orthonormality(datum: RootDatum, cfg: SuiteConfig) -> VerificationReport:
    rep = VerificationReport("orthonormality")
    ws = dominant_weights(datum, cfg.height) if cfg.height >= 0 else []
    chars = {lam: weyl_character(datum, lam) for lam in ws}
    for lam in ws:
        for mu in ws:
            rep.add({"lambda": list(lam), "mu": list(mu)}, hom_pairing(datum, chars[lam], chars[mu]), int(lam == mu))
    return rep


def suite_alternate_induction(datum: RootDatum, cfg: SuiteConfig) -> VerificationReport:
    rep = VerificationReport("alternate_induction")
    t = torus_subdatum(datum)
    for levi in [t] + _levis(datum):
        rep.extend(verify_alternate_induction(datum, levi, symmetrized_monomials(levi, cfg.height)))
    one = LaurentPoly.constant(datum.rank, 1)
    rep.add({"check": "structure sheaf of G/B"}, pushforward_fixed_points(datum, t, one).poly, one)
    W = weyl_elements(datum)
    for lam in dominant_weights(datum, cfg.height):
        low = min((w.act(lam) for w in W), key=datum.height)
        rep.add(
            {"check": "line bundle of lowest weight", "lambda": list(lam)},
            pushforward_fixed_points(datum, t, LaurentPoly.monomial(low)).poly,
            weyl_character(datum, lam).poly,
        )
    return rep


def suite_twisting(datum: RootDatum, cfg: SuiteConfig) -> VerificationReport:
    """Twist is multiplicative, additive in q, and carries evaluation at h to evaluation at 1.

    Multiplicativity runs over unordered pairs of monomials of half the
    height bound, so every product stays within the bound.  Twisting is
    diagonal on monomials, so checking composition on the sum
    of all monomials is the same as checking every monomial.  Composition
    is checked over all pairs for rank <= 2; in higher rank the second
    point runs over the generators e_i/n of the grid, which covers every
    pair by induction on q' once each twist is known to be diagonal on
    monomials (checked alongside the evaluation bridge).
    """
    rep = VerificationReport("twisting")
    r = datum.rank
    monos = [LaurentPoly.monomial(lam) for lam in _weights_upto(r, cfg.twist_height)]
    half = [LaurentPoly.monomial(lam) for lam in _weights_upto(r, cfg.twist_height // 2)]
    everything = LaurentPoly.zero(r)
    for m in monos:
        everything = everything + m
    zero = TorsionPoint.zero(r)
    for n in cfg.twist_orders:
        grid = torsion_grid(r, n)
        gens = [TorsionPoint([F(int(i == j), n) for j in range(r)]) for i in range(r)]
        bad_bridge = bad_mult = bad_comp = bad_diag = 0
        checks_bridge = checks_mult = checks_comp = 0
        for q in grid:
            for m in monos:
                checks_bridge += 1
                tm = twist(m, q)
                if tm.support() != m.support():
                    bad_diag += 1
                if m.evaluate_at_torsion(q) != tm.evaluate_at_torsion(zero):
                    bad_bridge += 1
            twisted = [twist(a, q) for a in half]
            for i, a in enumerate(half):
                for j in range(i, len(half)):
                    checks_mult += 1
                    if twist(a * half[j], q) != twisted[i] * twisted[j]:
                        bad_mult += 1
            partners = grid if r <= 2 else gens
            tq = twist(everything, q)
            for q2 in partners:
                checks_comp += 1
                if twist(tq, q2) != twist(everything, q + q2):
                    bad_comp += 1
        tag = {"order": n, "points": len(grid)}
        rep.add({**tag, "check": "diagonal on monomials"}, f"{checks_bridge - bad_diag}/{checks_bridge}", f"{checks_bridge}/{checks_bridge}")
        rep.add({**tag, "check": "evaluation bridge"}, f"{checks_bridge - bad_bridge}/{checks_bridge}", f"{checks_bridge}/{checks_bridge}")
        rep.add({**tag, "check": "multiplicative"}, f"{checks_mult - bad_mult}/{checks_mult}", f"{checks_mult}/{checks_mult}")
        scope = "all pairs" if r <= 2 else "second point over generators e_i/n"
        rep.add(
            {**tag, "check": "composition", "scope": scope},
            f"{checks_comp - bad_comp}/{checks_comp}",
            f"{checks_comp}/{checks_comp}",
        )
    return rep


def _points_up_to_weyl(datum: RootDatum, n: int) -> List[TorsionPoint]:
    W = weyl_elements(datum)
    seen = set()
    out = []
    for q in torsion_grid(datum.rank, n):
        if q in seen:
            continue
        orbit = {q.act(w) for w in W}
        seen |= orbit
        out.append(min(orbit, key=lambda p: p.q))
    return out


def suite_central_invertibility(datum: RootDatum, cfg: SuiteConfig) -> VerificationReport:
    rep = VerificationReport("central_invertibility")
    pts = _points_up_to_weyl(datum, cfg.grid)
    for q in pts:
        rep.extend(central_invertibility_check(datum, q))
    rep.info = {"grid": cfg.grid, "points_up_to_W": len(pts)}
    return rep


def _points_for(suite: str, datum: RootDatum, cfg: SuiteConfig) -> List[TorsionPoint]:
    if cfg.points is not None:
        return [TorsionPoint(q) for q in cfg.points]
    pts = DEFAULT_POINTS[suite].get(datum.name)
    if pts is None:
        return [TorsionPoint.zero(datum.rank)]
    return [TorsionPoint(q) for q in pts]


def suite_crt(datum: RootDatum, cfg: SuiteConfig) -> VerificationReport:
    rep = VerificationReport("crt")
    for q in _points_for("crt", datum, cfg):
        for k in cfg.jet_orders:
            sub = crt_decomposition_check(datum, q, k, cfg.box)
            rep.extend(sub, prefix=f"q=({q}),k={k}")
    return rep


def suite_indres(datum: RootDatum, cfg: SuiteConfig) -> VerificationReport:
    rep = VerificationReport("indres")
    for q in _points_for("indres", datum, cfg):
        sub = indres_completion_check(datum, q, cfg.indres_order)
        rep.extend(sub, prefix=f"q=({q})")
        if sub.info.get("centralizer_is_torus"):
            fiber = sub.info["residue_fiber_dimension"]
            rep.add(
                {"q": q, "check": "residue fiber dimension equals |W|"},
                fiber,
                len(weyl_elements(datum)),
            )
    return rep


def suite_graded_iso(datum: RootDatum, cfg: SuiteConfig) -> VerificationReport:
    rep = VerificationReport("graded_iso")
    for q in _points_for("graded_iso", datum, cfg):
        g = graded_iso_report(datum, q, cfg.series_order)
        for rec in g.records:
            rep.add(
                {"q": q, "degree": rec.degree, "source_dim": rec.source_dim, "target_dim": rec.target_dim},
                f"rank {rec.image_rank}",
                f"rank {rec.source_dim} = {rec.target_dim}",
                passed=rec.injective and rec.surjective,
            )
        for d, ok in sorted(g.molien_crosscheck.items()):
            rep.add({"q": q, "check": "molien vs brute force", "degree": d}, ok, True)
        rep.inconclusive |= g.inconclusive
        rep.warnings.extend(g.warnings)
        rep.info[f"q=({q}).generator_degrees"] = g.generator_degrees
    return rep


def suite_infrastructure(datum: RootDatum, cfg: SuiteConfig) -> VerificationReport:
    rep = VerificationReport("infrastructure")
    W = weyl_elements(datum)
    known = {"A1": 2, "SL2": 2, "A2": 6, "SL3": 6, "B2": 8, "Sp4": 8, "G2": 12, "A1xA1": 4, "GL2": 2, "GL3": 6}
    if datum.name in known:
        rep.add({"check": "Weyl group order"}, len(W), known[datum.name])
    roots = set(datum.roots)
    rep.add({"check": "every w permutes the roots"}, all({w.act(a) for a in datum.roots} == roots for w in W), True)
    pts = set()
    for n in range(1, cfg.infra_order + 1):
        pts.update(torsion_grid(datum.rank, n))
    bad_size = 0
    bad_stab = 0
    for q in sorted(pts, key=lambda p: p.q):
        try:
            od = orbit_and_stabilizer(datum, q)
        except StructureError:
            bad_stab += 1
            continue
        if len(od.orbit) * len(od.stabilizer) != len(W):
            bad_size += 1
        if datum.simply_connected_commutator and not od.stabilizer_is_reflection_group:
            bad_stab += 1
    rep.add({"check": "orbit x stabilizer = |W|", "points": len(pts)}, f"{len(pts) - bad_size}/{len(pts)}", f"{len(pts)}/{len(pts)}")
    rep.add({"check": "stabilizer = centralizer reflection group", "points": len(pts)}, f"{len(pts) - bad_stab}/{len(pts)}", f"{len(pts)}/{len(pts)}")
    rep.add({"check": "torsion-free cocharacters mod coroots"}, datum.simply_connected_commutator, True)
    for levi in _levis(datum):
        if datum.simply_connected_commutator:
            rep.add({"check": "Levi inherits torsion-freeness", "levi": levi.name}, levi.simply_connected_commutator, True)
    return rep


SUITES: Dict[str, Callable[[RootDatum, SuiteConfig], VerificationReport]] = {
    "induction_axioms": suite_induction_axioms,
    "reciprocity": suite_reciprocity,
    "weyl_integration": suite_weyl_integration,
    "orthonormality": suite_orthonormality,
    "alternate_induction": suite_alternate_induction,
    "twisting": suite_twisting,
    "central_invertibility": suite_central_invertibility,
    "crt": suite_crt,
    "indres": suite_indres,
    "graded_iso": suite_graded_iso,
    "infrastructure": suite_infrastructure,
}


def run_suite(name: str, datum: RootDatum, cfg: Optional[SuiteConfig] = None) -> VerificationReport:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; known suites: {', '.join(SUITES)}")
    return SUITES[name](datum, cfg or SuiteConfig())

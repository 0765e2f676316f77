"""Root data, Weyl groups, torsion points and sub-root-data.

Characters and cocharacters both live in Z^r with the standard dot
product as the pairing.  Weyl elements act on characters by integer
matrices and on cocharacters (hence torsion points) contragrediently.
"""

from __future__ import annotations

import itertools
import os
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache, reduce
from math import gcd
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .linalg import (
    integer_matrix_inverse,
    nullspace_rational,
    rational_rank,
    smith_diagonal,
    solve_rational,
)

Vector = Tuple[int, ...]
Matrix = Tuple[Tuple[int, ...], ...]

DEFAULT_WEYL_CAP = 2000
WEYL_CAP_ENV = "KCOMPLETION_WEYL_CAP"


class RootDatumError(ValueError):
    """A root datum failed one or more axioms."""

    def __init__(self, violations: Sequence[str]):
        self.violations = list(violations)
        super().__init__("invalid root datum: " + "; ".join(self.violations))


class ResourceCapError(RuntimeError):
    pass


class StructureError(ValueError):
    pass


class PreconditionError(ValueError):
    pass


class ConsistencyError(AssertionError):
    """An identity that must hold by construction failed."""


def pair(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def _neg(v: Vector) -> Vector:
    return tuple(-x for x in v)


def weyl_cap() -> int:
    return int(os.environ.get(WEYL_CAP_ENV, DEFAULT_WEYL_CAP))


# -- Weyl elements --------------------------------------------------------------------

@dataclass(frozen=True)
class WeylElement:
    """Integer matrix acting on the character lattice (column vectors)."""

    matrix: Matrix

    @classmethod
    def identity(cls, r: int) -> "WeylElement":
        return cls(tuple(tuple(int(i == j) for j in range(r)) for i in range(r)))

    @classmethod
    def reflection(cls, root: Vector, coroot: Vector) -> "WeylElement":
        # s(lam) = lam - <lam, coroot> root
        r = len(root)
        return cls(tuple(tuple(int(i == j) - root[i] * coroot[j] for j in range(r)) for i in range(r)))

    @property
    def rank(self) -> int:
        return len(self.matrix)

    def act(self, v: Sequence[int]) -> Vector:
        return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in self.matrix)

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        a, b = self.matrix, other.matrix
        r = len(a)
        return WeylElement(tuple(tuple(sum(a[i][k] * b[k][j] for k in range(r)) for j in range(r)) for i in range(r)))

    @cached_property
    def inverse(self) -> "WeylElement":
        return WeylElement(integer_matrix_inverse(self.matrix))

    @cached_property
    def transpose(self) -> Matrix:
        return tuple(zip(*self.matrix))

    @cached_property
    def det(self) -> int:
        m = [list(map(Fraction, row)) for row in self.matrix]
        n = len(m)
        d = Fraction(1)
        for c in range(n):
            p = next((i for i in range(c, n) if m[i][c] != 0), None)
            if p is None:
                return 0
            if p != c:
                m[c], m[p] = m[p], m[c]
                d = -d
            d *= m[c][c]
            for i in range(c + 1, n):
                f = m[i][c] / m[c][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
        return int(d)

    def is_identity(self) -> bool:
        return all(self.matrix[i][j] == int(i == j) for i in range(self.rank) for j in range(self.rank))

    def act_cocharacter(self, q: Sequence) -> tuple:
        """Contragredient action on cocharacters: q -> (w^-1)^T q."""
        inv = self.inverse.matrix
        r = len(inv)
        return tuple(sum(inv[j][i] * q[j] for j in range(r)) for i in range(r))

    def __repr__(self):
        return f"WeylElement({[list(r) for r in self.matrix]})"


def group_closure(gens: Sequence[WeylElement], r: int, cap: Optional[int] = None) -> Tuple[WeylElement, ...]:
    """Breadth-first closure of generators; the identity comes first."""
    cap = weyl_cap() if cap is None else cap
    e = WeylElement.identity(r)
    seen = {e.matrix: e}
    order = [e]
    queue = deque([e])
    while queue:
        g = queue.popleft()
        for s in gens:
            h = g * s
            if h.matrix not in seen:
                seen[h.matrix] = h
                order.append(h)
                queue.append(h)
                if len(order) > cap:
                    raise ResourceCapError(f"Weyl group exceeds element cap {cap}")
    return tuple(order)


# -- torsion points -------------------------------------------------------------------

def _frac_mod1(x) -> Fraction:
    x = Fraction(x)
    return x - (x.numerator // x.denominator)


@dataclass(frozen=True)
class TorsionPoint:
    """Finite-order element h of T, as q in (cocharacters (x) Q)/Z^r."""

    q: Tuple[Fraction, ...]

    def __init__(self, q: Sequence):
        object.__setattr__(self, "q", tuple(_frac_mod1(x) for x in q))

    @classmethod
    def zero(cls, r: int) -> "TorsionPoint":
        return cls((0,) * r)

    @classmethod
    def parse(cls, text: str) -> "TorsionPoint":
        return cls([Fraction(s.strip()) for s in text.split(",")])

    @property
    def rank(self) -> int:
        return len(self.q)

    @cached_property
    def order(self) -> int:
        return reduce(lambda a, b: a * b // gcd(a, b), (x.denominator for x in self.q), 1)

    @cached_property
    def _numerators(self) -> Vector:
        n = self.order
        return tuple(int(x * n) for x in self.q)

    def numerators(self) -> Vector:
        return self._numerators

    def __add__(self, other: "TorsionPoint") -> "TorsionPoint":
        return TorsionPoint([a + b for a, b in zip(self.q, other.q)])

    def __neg__(self) -> "TorsionPoint":
        return TorsionPoint([-a for a in self.q])

    def act(self, w: WeylElement) -> "TorsionPoint":
        return TorsionPoint(w.act_cocharacter(self.q))

    def is_zero(self) -> bool:
        return not any(self.q)

    def __str__(self):
        return ",".join(str(x) for x in self.q)


def torsion_grid(r: int, n: int) -> List[TorsionPoint]:
    """All points with coordinates in (1/n)Z mod 1."""
    return [TorsionPoint([Fraction(k, n) for k in ks]) for ks in itertools.product(range(n), repeat=r)]


# -- root data ------------------------------------------------------------------------

@dataclass(frozen=True)
class RootDatum:
    name: str
    rank: int
    roots: Tuple[Vector, ...]
    coroots: Tuple[Vector, ...]
    simple_indices: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "roots", tuple(tuple(int(x) for x in v) for v in self.roots))
        object.__setattr__(self, "coroots", tuple(tuple(int(x) for x in v) for v in self.coroots))
        object.__setattr__(self, "simple_indices", tuple(int(i) for i in self.simple_indices))
        bad = check_axioms(self)
        if bad:
            raise RootDatumError(bad)

    # -- derived data -----------------------------------------------------------
    @cached_property
    def root_index(self) -> Dict[Vector, int]:
        return {a: i for i, a in enumerate(self.roots)}

    def coroot_of(self, root: Vector) -> Vector:
        return self.coroots[self.root_index[tuple(root)]]

    @cached_property
    def simple_roots(self) -> Tuple[Vector, ...]:
        return tuple(self.roots[i] for i in self.simple_indices)

    @cached_property
    def simple_coroots(self) -> Tuple[Vector, ...]:
        return tuple(self.coroots[i] for i in self.simple_indices)

    @cached_property
    def simple_coordinates(self) -> Dict[Vector, Tuple[int, ...]]:
        """Coordinates of every root on the simple roots."""
        cols = self.simple_roots
        a = [[s[i] for s in cols] for i in range(self.rank)]
        out = {}
        for root in self.roots:
            x = solve_rational(a, root) if cols else None
            out[root] = tuple(int(v) for v in x) if x is not None else ()
        return out

    @cached_property
    def positive_roots(self) -> Tuple[Vector, ...]:
        return tuple(a for a in self.roots if sum(self.simple_coordinates[a]) > 0)

    @cached_property
    def negative_roots(self) -> Tuple[Vector, ...]:
        return tuple(a for a in self.roots if sum(self.simple_coordinates[a]) < 0)

    def is_positive(self, root: Vector) -> bool:
        return sum(self.simple_coordinates[tuple(root)]) > 0

    def root_height(self, root: Vector) -> int:
        return sum(self.simple_coordinates[tuple(root)])

    @cached_property
    def max_root_height(self) -> int:
        return max((self.root_height(a) for a in self.roots), default=0)

    @cached_property
    def simple_reflections(self) -> Tuple[WeylElement, ...]:
        return tuple(WeylElement.reflection(self.roots[i], self.coroots[i]) for i in self.simple_indices)

    @cached_property
    def simply_connected_commutator(self) -> bool:
        """Torsion-freeness of Z^r / (coroot lattice), equivalently pi_1(G)."""
        return lattice_quotient_torsion_free(self.coroots, self.rank)

    @cached_property
    def coweight_height(self) -> Vector:
        """Sum of positive coroots: strictly positive on positive roots."""
        return tuple(sum(self.coroot_of(a)[i] for a in self.positive_roots) for i in range(self.rank))

    def height(self, lam: Sequence[int]) -> int:
        return pair(lam, self.coweight_height)

    def is_dominant(self, lam: Sequence[int]) -> bool:
        return all(pair(lam, c) >= 0 for c in self.simple_coroots)

    @cached_property
    def rho(self) -> Vector:
        """Integral weight with <rho, simple coroot> = 1 (a rho-shift)."""
        return _integral_solution(self.simple_coroots, [1] * len(self.simple_indices), self.rank)

    @cached_property
    def central_characters(self) -> Tuple[Vector, ...]:
        """Primitive integer vectors spanning the W-invariant characters."""
        out = []
        for v in nullspace_rational(self.coroots, self.rank) if self.roots else nullspace_rational([], self.rank):
            den = reduce(lambda a, b: a * b // gcd(a, b), (x.denominator for x in v), 1)
            iv = [int(x * den) for x in v]
            g = reduce(gcd, (abs(x) for x in iv), 0) or 1
            out.append(tuple(x // g for x in iv))
        return tuple(out)

    @cached_property
    def fundamental_weights(self) -> Tuple[Vector, ...]:
        """Integral weights dual to the simple coroots."""
        k = len(self.simple_indices)
        return tuple(
            _integral_solution(self.simple_coroots, [int(i == j) for j in range(k)], self.rank) for i in range(k)
        )

    def dominant_weights(self, height: int) -> List[Vector]:
        """Dominant weights with l1-norm at most `height`, sorted."""
        out = []
        for lam in itertools.product(range(-height, height + 1), repeat=self.rank):
            if sum(abs(x) for x in lam) <= height and self.is_dominant(lam):
                out.append(lam)
        return sorted(out, key=lambda v: (sum(abs(x) for x in v), v))

    def summary(self) -> dict:
        return {
            "name": self.name,
            "rank": self.rank,
            "roots": len(self.roots),
            "weyl_order": len(weyl_elements(self)),
            "simply_connected_commutator": self.simply_connected_commutator,
        }

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "rank": self.rank,
            "roots": [list(a) for a in self.roots],
            "coroots": [list(a) for a in self.coroots],
            "simple_indices": list(self.simple_indices),
        }


def _integral_solution(rows: Sequence[Vector], rhs: Sequence[int], r: int) -> Vector:
    if not rows:
        return (0,) * r
    x0 = solve_rational(rows, rhs)
    if x0 is None:
        raise StructureError("no rational solution")
    if all(x.denominator == 1 for x in x0):
        return tuple(int(x) for x in x0)
    kernel = nullspace_rational(rows, r)
    for k in range(1, 7):
        steps = [Fraction(j, k) for j in range(-k, k + 1)]
        for cs in itertools.product(steps, repeat=len(kernel)):
            v = [x0[i] + sum(c * kv[i] for c, kv in zip(cs, kernel)) for i in range(r)]
            if all(x.denominator == 1 for x in v):
                return tuple(int(x) for x in v)
    raise StructureError("no integral solution found")


def lattice_quotient_torsion_free(gens: Sequence[Vector], r: int) -> bool:
    if not gens:
        return True
    return all(d == 1 for d in smith_diagonal(gens))


def check_axioms(d: RootDatum) -> List[str]:
    """Every violated root-datum axiom, as human-readable strings."""
    bad = []
    r = d.rank
    if r < 1:
        bad.append("rank: must be a positive integer")
    if len(d.roots) != len(d.coroots):
        bad.append("pairing: roots and coroots must be index-paired (lengths differ)")
        return bad
    for i, (a, c) in enumerate(zip(d.roots, d.coroots)):
        if len(a) != r or len(c) != r:
            bad.append(f"length: root/coroot {i} does not have length {r}")
    if bad:
        return bad
    for i, (a, c) in enumerate(zip(d.roots, d.coroots)):
        if pair(a, c) != 2:
            bad.append(f"pairing: <root {i}, coroot {i}> = {pair(a, c)} != 2")
    if len(set(d.roots)) != len(d.roots):
        bad.append("roots: duplicate roots")
    roots = set(d.roots)
    index = {a: i for i, a in enumerate(d.roots)}
    for a in d.roots:
        if _neg(a) not in roots:
            bad.append(f"negation: -{list(a)} is not a root")
        if tuple(2 * x for x in a) in roots:
            bad.append(f"reduced: 2*{list(a)} is also a root")
    for a, ac in zip(d.roots, d.coroots):
        for b, bc in zip(d.roots, d.coroots):
            sb = tuple(x - pair(b, ac) * y for x, y in zip(b, a))
            if sb not in roots:
                bad.append(f"reflection: s_{list(a)}({list(b)}) = {list(sb)} is not a root")
                continue
            sbc = tuple(x - pair(a, bc) * y for x, y in zip(bc, ac))
            if d.coroots[index[sb]] != sbc:
                bad.append(f"reflection: coroot of {list(sb)} is not s_{list(a)} applied to coroot of {list(b)}")
    simple = list(d.simple_indices)
    if any(not 0 <= i < len(d.roots) for i in simple):
        bad.append("simple_indices: index out of range")
        return bad
    if simple and rational_rank([d.roots[i] for i in simple]) != len(simple):
        bad.append("simple_indices: simple roots are not linearly independent")
        return bad
    if d.roots and not simple:
        bad.append("simple_indices: empty for a nonempty root system")
        return bad
    cols = [d.roots[i] for i in simple]
    a = [[s[i] for s in cols] for i in range(r)]
    for root in d.roots:
        x = solve_rational(a, root)
        if x is None or any(v.denominator != 1 for v in x):
            bad.append(f"simple_indices: {list(root)} is not an integer combination of simple roots")
        elif not (all(v >= 0 for v in x) or all(v <= 0 for v in x)):
            bad.append(f"simple_indices: {list(root)} has mixed-sign simple coordinates")
    return bad


# -- presets --------------------------------------------------------------------------

def _from_cartan(name: str, cartan: Sequence[Sequence[int]]) -> RootDatum:
    """Simply connected datum in the fundamental-weight basis."""
    k = len(cartan)
    simple = [tuple(cartan[i][j] for i in range(k)) for j in range(k)]
    simple_co = [tuple(int(i == j) for i in range(k)) for j in range(k)]
    pairs = {}
    queue = deque(zip(simple, simple_co))
    for a, c in zip(simple, simple_co):
        pairs[a] = c
    while queue:
        b, bc = queue.popleft()
        for a, ac in zip(simple, simple_co):
            sb = tuple(x - pair(b, ac) * y for x, y in zip(b, a))
            sbc = tuple(x - pair(a, bc) * y for x, y in zip(bc, ac))
            if sb not in pairs:
                pairs[sb] = sbc
                queue.append((sb, sbc))
    roots = sorted(pairs)
    return RootDatum(name, k, tuple(roots), tuple(pairs[a] for a in roots), tuple(roots.index(a) for a in simple))


def _gl(n: int) -> RootDatum:
    roots = []
    for i in range(n):
        for j in range(n):
            if i != j:
                roots.append(tuple(int(k == i) - int(k == j) for k in range(n)))
    roots.sort()
    simple = [tuple(int(k == i) - int(k == i + 1) for k in range(n)) for i in range(n - 1)]
    return RootDatum(f"GL{n}", n, tuple(roots), tuple(roots), tuple(roots.index(a) for a in simple))


def _renamed(d: RootDatum, name: str) -> RootDatum:
    return RootDatum(name, d.rank, d.roots, d.coroots, d.simple_indices)


_CARTAN = {
    "A1": [[2]],
    "A2": [[2, -1], [-1, 2]],
    "B2": [[2, -1], [-2, 2]],
    "C2": [[2, -2], [-1, 2]],
    "G2": [[2, -3], [-1, 2]],
    "A1xA1": [[2, 0], [0, 2]],
}

PRESETS = ("A1", "A2", "B2", "G2", "A1xA1", "GL2", "GL3", "SL2", "SL3", "Sp4")


@lru_cache(maxsize=None)
def datum_from_preset(label: str) -> RootDatum:
    if label in ("A1", "A2", "B2", "G2", "A1xA1"):
        return _from_cartan(label, _CARTAN[label])
    if label == "SL2":
        return _renamed(datum_from_preset("A1"), "SL2")
    if label == "SL3":
        return _renamed(datum_from_preset("A2"), "SL3")
    if label == "Sp4":
        return _from_cartan("Sp4", _CARTAN["C2"])
    if label == "GL2":
        return _gl(2)
    if label == "GL3":
        return _gl(3)
    raise KeyError(f"unknown preset {label!r}; known presets: {', '.join(PRESETS)}")


def torus_datum(r: int) -> RootDatum:
    """A rank-r torus: no roots."""
    return RootDatum(f"T{r}", r, (), (), ())


@lru_cache(maxsize=None)
def weyl_elements(datum: RootDatum) -> Tuple[WeylElement, ...]:
    return group_closure(datum.simple_reflections, datum.rank)


# -- sub-root-data --------------------------------------------------------------------

@dataclass(frozen=True)
class SubDatum:
    """An equal-rank subgroup described by a closed subset of roots."""

    parent: RootDatum
    sub_roots: Tuple[Vector, ...]
    sub_weyl: Tuple[WeylElement, ...]
    kind: str
    levi_simple: Tuple[int, ...] = ()

    @property
    def rank(self) -> int:
        return self.parent.rank

    @property
    def name(self) -> str:
        return f"{self.kind}({self.parent.name}; {len(self.sub_roots)} roots)"

    @cached_property
    def roots(self) -> Tuple[Vector, ...]:
        return self.sub_roots

    @cached_property
    def coroots(self) -> Tuple[Vector, ...]:
        return tuple(self.parent.coroot_of(a) for a in self.sub_roots)

    @cached_property
    def positive_roots(self) -> Tuple[Vector, ...]:
        return tuple(a for a in self.sub_roots if self.parent.is_positive(a))

    @cached_property
    def weyl_group(self) -> Tuple[WeylElement, ...]:
        return group_closure(self.sub_weyl, self.rank)

    @cached_property
    def simply_connected_commutator(self) -> bool:
        return lattice_quotient_torsion_free(self.coroots, self.rank)

    def is_dominant(self, lam: Sequence[int]) -> bool:
        return all(pair(lam, self.parent.coroot_of(a)) >= 0 for a in self.positive_roots)


def _sub(parent: RootDatum, roots: Sequence[Vector], kind: str, levi_simple=()) -> SubDatum:
    roots = tuple(sorted(roots))
    gens = tuple(WeylElement.reflection(a, parent.coroot_of(a)) for a in roots if parent.is_positive(a))
    sub = SubDatum(parent, roots, gens, kind, tuple(levi_simple))
    rs = set(roots)
    for a in roots:
        if _neg(a) not in rs:
            raise StructureError(f"sub-root set not closed under negation at {list(a)}")
    for w in sub.sub_weyl:
        for a in roots:
            if w.act(a) not in rs:
                raise StructureError("sub_weyl does not preserve sub_roots")
    return sub


def torus_subdatum(parent: RootDatum) -> SubDatum:
    return _sub(parent, (), "torus")


def levi_subdatum(parent: RootDatum, simple_subset: Sequence[int]) -> SubDatum:
    """Levi factor of the standard parabolic attached to a set of simple roots.

    `simple_subset` indexes into parent.simple_indices.
    """
    js = set(simple_subset)
    roots = []
    for a in parent.roots:
        coords = parent.simple_coordinates[a]
        if all(c == 0 for i, c in enumerate(coords) if i not in js):
            roots.append(a)
    kind = "torus" if not js else "levi"
    return _sub(parent, roots, kind, sorted(js))


def full_subdatum(parent: RootDatum) -> SubDatum:
    return levi_subdatum(parent, range(len(parent.simple_indices)))


def centralizer_subdatum(parent: RootDatum, q: TorsionPoint) -> SubDatum:
    """Roots alpha with alpha(h) = 1, i.e. <alpha, q> integral."""
    roots = [a for a in parent.roots if pair(a, q.q).denominator == 1]
    return _sub(parent, roots, "centralizer")


@dataclass(frozen=True)
class OrbitData:
    orbit: Tuple[TorsionPoint, ...]
    stabilizer: Tuple[WeylElement, ...]
    stabilizer_is_reflection_group: bool
    parent_simply_connected: bool


def orbit_and_stabilizer(datum: RootDatum, q: TorsionPoint) -> OrbitData:
    W = weyl_elements(datum)
    orbit: List[TorsionPoint] = []
    seen = set()
    stab = []
    for w in W:
        p = q.act(w)
        if p not in seen:
            seen.add(p)
            orbit.append(p)
        if p == q:
            stab.append(w)
    z = centralizer_subdatum(datum, q)
    refl = {w.matrix for w in z.weyl_group}
    same = refl == {w.matrix for w in stab}
    if datum.simply_connected_commutator and not same:
        raise StructureError(
            f"stabilizer of {q} differs from the centralizer reflection group in {datum.name}"
        )
    return OrbitData(tuple(orbit), tuple(stab), same, datum.simply_connected_commutator)


def coset_representatives(W: Sequence[WeylElement], W1: Sequence[WeylElement]) -> List[WeylElement]:
    """One representative per left coset wW1; the identity represents W1."""
    wset = {w.matrix for w in W}
    if any(v.matrix not in wset for v in W1):
        raise StructureError("W1 is not a subset of W")
    if len(W) % len(W1):
        raise StructureError("|W1| does not divide |W|")
    covered = set()
    reps = []
    ordered = sorted(W, key=lambda w: not w.is_identity())
    for w in ordered:
        if w.matrix in covered:
            continue
        coset = {(w * v).matrix for v in W1}
        if not coset <= wset:
            raise StructureError("W1 is not a subgroup of W")
        covered |= coset
        reps.append(w)
    if len(reps) * len(W1) != len(W):
        raise StructureError("W1 is not a subgroup of W (cosets overlap)")
    return reps


def weyl_group_of(g) -> Tuple[WeylElement, ...]:
    """Weyl group of a RootDatum or SubDatum."""
    if isinstance(g, RootDatum):
        return weyl_elements(g)
    return g.weyl_group


def roots_of(g) -> Tuple[Vector, ...]:
    return g.roots

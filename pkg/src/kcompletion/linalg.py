"""Exact linear algebra: echelon forms over cyclotomic fields, rational
solves and nullspaces, and Smith normal form over the integers.

Elimination uses a fixed pivot order (first nonzero column, rows in input
order) so results are reproducible.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .cyclotomic import Cyclotomic


class EchelonBasis:
    """Incrementally maintained echelon basis of a subspace of K^m.

    Vectors are sparse dicts {column: Cyclotomic}.  Each stored row has a
    distinct pivot column (its first nonzero column in the given column
    order) with pivot entry normalized to 1.
    """

    def __init__(self):
        self.rows: Dict[int, Dict[int, Cyclotomic]] = {}

    def reduce(self, vec: Dict[int, Cyclotomic]) -> Dict[int, Cyclotomic]:
        v = {k: c for k, c in vec.items() if c}
        while v:
            col = min(v)
            row = self.rows.get(col)
            if row is None:
                return v
            f = v[col]
            for k, c in row.items():
                nv = v.get(k)
                nv = -(f * c) if nv is None else nv - f * c
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
        return v

    def add(self, vec: Dict[int, Cyclotomic]) -> Optional[int]:
        """Insert vec; return its new pivot column, or None if dependent."""
        v = self.reduce(vec)
        if not v:
            return None
        col = min(v)
        inv = v[col].inverse()
        self.rows[col] = {k: c * inv for k, c in v.items()}
        return col

    def contains(self, vec: Dict[int, Cyclotomic]) -> bool:
        return not self.reduce(vec)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def pivots(self) -> List[int]:
        return sorted(self.rows)


def rank(rows: Sequence[Dict[int, Cyclotomic]], cap: Optional[int] = None) -> int:
    """Rank of a list of sparse vectors; stops early once `cap` is reached."""
    basis = EchelonBasis()
    for r in rows:
        basis.add(r)
        if cap is not None and basis.rank >= cap:
            break
    return basis.rank


# -- rational matrices -------------------------------------------------------------

def rref(mat: Sequence[Sequence]) -> Tuple[List[List[Fraction]], List[int]]:
    m = [[Fraction(x) for x in row] for row in mat]
    pivots = []
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rational_rank(mat: Sequence[Sequence]) -> int:
    if not mat:
        return 0
    return len(rref(mat)[1])


def solve_rational(a: Sequence[Sequence], b: Sequence) -> Optional[List[Fraction]]:
    """Some solution x of a x = b over Q, or None if inconsistent."""
    ncols = len(a[0])
    aug = [list(row) + [bi] for row, bi in zip(a, b)]
    m, piv = rref(aug)
    if ncols in piv:
        return None
    x = [Fraction(0)] * ncols
    for i, c in enumerate(piv):
        x[c] = m[i][ncols]
    return x


def nullspace_rational(a: Sequence[Sequence], ncols: int) -> List[List[Fraction]]:
    if not a:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    m, piv = rref(a)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, c in enumerate(piv):
            v[c] = -m[i][f]
        basis.append(v)
    return basis


def integer_matrix_inverse(m: Sequence[Sequence[int]]) -> Tuple[Tuple[int, ...], ...]:
    n = len(m)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(m)]
    red, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ValueError("singular matrix")
    inv = [row[n:] for row in red]
    if any(x.denominator != 1 for row in inv for x in row):
        raise ValueError("matrix is not unimodular")
    return tuple(tuple(int(x) for x in row) for row in inv)


def smith_diagonal(mat: Sequence[Sequence[int]]) -> List[int]:
    """Nonzero invariant factors of an integer matrix (Smith normal form)."""
    a = [list(map(int, row)) for row in mat]
    if not a or not a[0]:
        return []
    rows, cols = len(a), len(a[0])
    diag = []
    t = 0
    while t < min(rows, cols):
        # pick the smallest nonzero entry in the trailing block as pivot
        entries = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
        if not entries:
            break
        _, pi, pj = min(entries)
        a[t], a[pi] = a[pi], a[t]
        for row in a:
            row[t], row[pj] = row[pj], row[t]
        done = False
        while not done:
            done = True
            p = a[t][t]
            for i in range(t + 1, rows):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    done = False
            for j in range(t + 1, cols):
                q = a[t][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if a[t][j]:
                    done = False
            if not done:
                entries = [(abs(a[i][t]), i, t) for i in range(t, rows) if a[i][t]]
                entries += [(abs(a[t][j]), t, j) for j in range(t, cols) if a[t][j]]
                _, pi, pj = min(entries)
                a[t], a[pi] = a[pi], a[t]
                for row in a:
                    row[t], row[pj] = row[pj], row[t]
                continue
            # divisibility condition on the trailing block
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % p), None)
            if bad is not None:
                a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
                done = False
        diag.append(abs(a[t][t]))
        t += 1
    return diag


class TrackedEchelon:
    """Echelon basis that remembers each row as a combination of inserted vectors.

    `express(v)` returns (residual, combo) with v = residual + sum combo[label] * inserted[label].
    """

    def __init__(self):
        self.rows: Dict[int, Tuple[Dict[int, Cyclotomic], Dict[object, Cyclotomic]]] = {}

    @staticmethod
    def _axpy(target: dict, f, src: dict) -> None:
        for k, c in src.items():
            nv = target.get(k)
            nv = f * c if nv is None else nv + f * c
            if nv:
                target[k] = nv
            else:
                target.pop(k, None)

    def express(self, vec: Dict[int, Cyclotomic]):
        v = {k: c for k, c in vec.items() if c}
        combo: Dict[object, Cyclotomic] = {}
        residual = {}
        while v:
            col = min(v)
            row = self.rows.get(col)
            if row is None:
                residual[col] = v.pop(col)
                continue
            f = v[col]
            self._axpy(v, -f, row[0])
            self._axpy(combo, f, row[1])
        return residual, combo

    def add(self, vec: Dict[int, Cyclotomic], label) -> Optional[int]:
        residual, combo = self.express(vec)
        if not residual:
            return None
        # residual = vec - sum combo * inserted
        own = {label: Cyclotomic.rational(1)}
        self._axpy(own, Cyclotomic.rational(-1), combo)
        col = min(residual)
        inv = residual[col].inverse()
        vec_n = {k: c * inv for k, c in residual.items()}
        combo_n = {k: c * inv for k, c in own.items()}
        self.rows[col] = (vec_n, combo_n)
        return col

    @property
    def rank(self) -> int:
        return len(self.rows)

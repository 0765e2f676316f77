"""Truncated multivariate power series in t_1..t_r over cyclotomic scalars."""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .cyclotomic import ONE, ZERO, Cyclotomic
from .laurent import parse_laurent, render_terms

MultiIndex = Tuple[int, ...]


@lru_cache(maxsize=None)
def multi_indices(r: int, d: int) -> Tuple[MultiIndex, ...]:
    """Exponent vectors of total degree exactly d, lex-descending."""
    if r == 0:
        return ((),) if d == 0 else ()
    out = []
    for first in range(d, -1, -1):
        for rest in multi_indices(r - 1, d - first):
            out.append((first,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def multi_indices_upto(r: int, n: int) -> Tuple[MultiIndex, ...]:
    return tuple(b for d in range(n + 1) for b in multi_indices(r, d))


def _add(a: MultiIndex, b: MultiIndex) -> MultiIndex:
    return tuple(x + y for x, y in zip(a, b))


class TruncatedSeries:
    """Element of Q(zeta)[t_1..t_r] / (degree > order)."""

    __slots__ = ("rank", "order", "_terms")

    def __init__(self, rank: int, order: int, terms: Optional[Mapping[MultiIndex, object]] = None):
        self.rank = rank
        self.order = order
        clean: Dict[MultiIndex, Cyclotomic] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != rank or min(e, default=0) < 0:
                raise ValueError(f"bad series exponent {e}")
            if sum(e) > order:
                continue
            c = Cyclotomic.coerce(c)
            if c:
                clean[e] = c
        self._terms = clean

    @classmethod
    def _raw(cls, rank, order, terms):
        obj = object.__new__(cls)
        obj.rank, obj.order, obj._terms = rank, order, terms
        return obj

    @classmethod
    def constant(cls, rank: int, order: int, c=1) -> "TruncatedSeries":
        return cls(rank, order, {(0,) * rank: c})

    @classmethod
    def linear_form(cls, coeffs: Sequence, order: int) -> "TruncatedSeries":
        r = len(coeffs)
        return cls(r, order, {tuple(int(i == j) for j in range(r)): c for i, c in enumerate(coeffs)})

    @classmethod
    def exp_linear(cls, lam: Sequence[int], order: int, scale=ONE) -> "TruncatedSeries":
        """scale * exp(<lam, t>) truncated: coefficient lam^b / b! on t^b."""
        r = len(lam)
        scale = Cyclotomic.coerce(scale)
        terms = {}
        for b in multi_indices_upto(r, order):
            num = 1
            den = 1
            for l, k in zip(lam, b):
                num *= l ** k
                den *= factorial(k)
            if num:
                terms[b] = scale * Fraction(num, den)
        return cls._raw(r, order, terms)

    # -- access ---------------------------------------------------------------
    @property
    def terms(self) -> Mapping[MultiIndex, Cyclotomic]:
        return self._terms

    def items(self):
        return self._terms.items()

    def coeff(self, e: Sequence[int]) -> Cyclotomic:
        return self._terms.get(tuple(e), ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def constant_term(self) -> Cyclotomic:
        return self.coeff((0,) * self.rank)

    def component(self, d: int) -> Dict[MultiIndex, Cyclotomic]:
        return {e: c for e, c in self._terms.items() if sum(e) == d}

    def valuation(self) -> Optional[int]:
        """Lowest degree with a nonzero term, or None for zero."""
        return min((sum(e) for e in self._terms), default=None)

    def initial_form(self) -> "TruncatedSeries":
        v = self.valuation()
        if v is None:
            return self
        return TruncatedSeries._raw(self.rank, self.order, self.component(v))

    # -- arithmetic -----------------------------------------------------------
    def _check(self, other: "TruncatedSeries"):
        if other.rank != self.rank:
            raise ValueError(f"rank mismatch: {self.rank} vs {other.rank}")

    def _coerce(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            self._check(other)
            return other
        return TruncatedSeries.constant(self.rank, self.order, other)

    def __add__(self, other):
        other = self._coerce(other)
        n = min(self.order, other.order)
        out = {e: c for e, c in self._terms.items() if sum(e) <= n}
        for e, c in other._terms.items():
            if sum(e) > n:
                continue
            s = out.get(e)
            s = c if s is None else s + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return TruncatedSeries._raw(self.rank, n, out)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries._raw(self.rank, self.order, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, s) -> "TruncatedSeries":
        s = Cyclotomic.coerce(s)
        if not s:
            return TruncatedSeries._raw(self.rank, self.order, {})
        return TruncatedSeries._raw(self.rank, self.order, {e: c * s for e, c in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self.scale(other)
        self._check(other)
        n = min(self.order, other.order)
        out: Dict[MultiIndex, Cyclotomic] = {}
        for e1, c1 in self._terms.items():
            d1 = sum(e1)
            if d1 > n:
                continue
            for e2, c2 in other._terms.items():
                if d1 + sum(e2) > n:
                    continue
                e = _add(e1, e2)
                p = c1 * c2
                s = out.get(e)
                out[e] = p if s is None else s + p
        return TruncatedSeries._raw(self.rank, n, {e: c for e, c in out.items() if c})

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = TruncatedSeries.constant(self.rank, self.order, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inverse(self) -> "TruncatedSeries":
        """Multiplicative inverse; needs a nonzero constant term."""
        c0 = self.constant_term()
        if not c0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        inv0 = c0.inverse()
        # 1/(c0 (1 - u)) = inv0 * sum u^k, u = 1 - self/c0 has no constant term
        u = TruncatedSeries.constant(self.rank, self.order, 1) - self.scale(inv0)
        acc = TruncatedSeries.constant(self.rank, self.order, 1)
        power = TruncatedSeries.constant(self.rank, self.order, 1)
        for _ in range(self.order):
            power = power * u
            if power.is_zero():
                break
            acc = acc + power
        return acc.scale(inv0)

    def truncate(self, n: int) -> "TruncatedSeries":
        return TruncatedSeries._raw(self.rank, min(n, self.order), {e: c for e, c in self._terms.items() if sum(e) <= n})

    def substitute_linear(self, m: Sequence[Sequence[int]]) -> "TruncatedSeries":
        """s(t) -> s(M t): t_i is replaced by sum_j M[i][j] t_j."""
        r = self.rank
        forms = [TruncatedSeries.linear_form(m[i], self.order) for i in range(r)]
        cache: Dict[Tuple[int, int], TruncatedSeries] = {}

        def power(i, k):
            if (i, k) not in cache:
                cache[(i, k)] = forms[i] ** k
            return cache[(i, k)]

        out = TruncatedSeries._raw(r, self.order, {})
        for e, c in self._terms.items():
            term = TruncatedSeries.constant(r, self.order, c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    def compose_univariate(self, u: "TruncatedSeries") -> "TruncatedSeries":
        """For a rank-1 series f, return f(u) with u of any rank (u(0) = 0)."""
        if self.rank != 1:
            raise ValueError("compose_univariate needs a rank-1 series")
        if u.constant_term():
            raise ValueError("inner series must have zero constant term")
        out = TruncatedSeries._raw(u.rank, u.order, {})
        power = TruncatedSeries.constant(u.rank, u.order, 1)
        for k in range(min(self.order, u.order) + 1):
            c = self.coeff((k,))
            if c:
                out = out + power.scale(c)
            power = power * u
        return out

    # -- comparison and text -------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic)):
            other = TruncatedSeries.constant(self.rank, self.order, other)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        if self.rank != other.rank:
            return False
        n = min(self.order, other.order)
        a = {e: c for e, c in self._terms.items() if sum(e) <= n}
        b = {e: c for e, c in other._terms.items() if sum(e) <= n}
        return a.keys() == b.keys() and all(c == b[e] for e, c in a.items())

    __hash__ = None

    def sorted_items(self) -> List[Tuple[MultiIndex, Cyclotomic]]:
        return sorted(self._terms.items(), key=lambda ec: (sum(ec[0]), tuple(-x for x in ec[0])))

    def __str__(self):
        return render_terms(self.sorted_items(), "t")

    def __repr__(self):
        return f"TruncatedSeries({self.rank}, {self.order}, {str(self)!r})"


def parse_series(text: str, rank: int, order: int) -> TruncatedSeries:
    p = parse_laurent(text, rank, var="t")
    for e in p.terms:
        if min(e) < 0:
            raise ValueError(f"negative exponent in series: {e}")
    return TruncatedSeries(rank, order, dict(p.items()))

"""Multivariate Laurent polynomials over cyclotomic scalars.

A LaurentPoly of rank r models an element of R(T) for a rank-r torus:
a finitely supported map from exponent vectors in Z^r to scalars.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Optional, Sequence, Tuple

from .cyclotomic import ONE, ZERO, Cyclotomic

Exponent = Tuple[int, ...]


class DivisibilityError(ArithmeticError):
    """Raised by exact_div when the divisor does not divide the dividend."""

    def __init__(self, msg: str, remainder: "LaurentPoly"):
        super().__init__(msg)
        self.remainder = remainder


def _add_vec(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


def _sub_vec(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x - y for x, y in zip(a, b))


def apply_matrix(m: Sequence[Sequence[int]], v: Exponent) -> Exponent:
    return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in m)


class LaurentPoly:
    """Immutable Laurent polynomial; no zero coefficients are stored."""

    __slots__ = ("rank", "_terms")

    def __init__(self, rank: int, terms: Optional[Mapping[Exponent, object]] = None):
        self.rank = rank
        clean: Dict[Exponent, Cyclotomic] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != rank:
                raise ValueError(f"exponent {e} does not have length {rank}")
            c = Cyclotomic.coerce(c)
            if c:
                clean[e] = c
        self._terms = clean

    @classmethod
    def _raw(cls, rank: int, terms: Dict[Exponent, Cyclotomic]) -> "LaurentPoly":
        obj = object.__new__(cls)
        obj.rank = rank
        obj._terms = terms
        return obj

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, rank: int) -> "LaurentPoly":
        return cls._raw(rank, {})

    @classmethod
    def constant(cls, rank: int, c=1) -> "LaurentPoly":
        c = Cyclotomic.coerce(c)
        return cls._raw(rank, {(0,) * rank: c} if c else {})

    @classmethod
    def monomial(cls, exp: Sequence[int], c=1) -> "LaurentPoly":
        exp = tuple(int(x) for x in exp)
        c = Cyclotomic.coerce(c)
        return cls._raw(len(exp), {exp: c} if c else {})

    # -- access ---------------------------------------------------------------
    @property
    def terms(self) -> Mapping[Exponent, Cyclotomic]:
        return self._terms

    def items(self) -> Iterator[Tuple[Exponent, Cyclotomic]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coeff(self, exp: Sequence[int]) -> Cyclotomic:
        return self._terms.get(tuple(exp), ZERO)

    def support(self) -> list:
        return sorted(self._terms)

    # -- ring operations ------------------------------------------------------
    def _check(self, other: "LaurentPoly") -> None:
        if other.rank != self.rank:
            raise ValueError(f"rank mismatch: {self.rank} vs {other.rank}")

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.constant(self.rank, other)
        self._check(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e)
            s = c if s is None else s + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LaurentPoly._raw(self.rank, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self.rank, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.constant(self.rank, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, s) -> "LaurentPoly":
        s = Cyclotomic.coerce(s)
        if not s:
            return LaurentPoly.zero(self.rank)
        return LaurentPoly._raw(self.rank, {e: c * s for e, c in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            return self.scale(other)
        self._check(other)
        if self._is_rational() and other._is_rational():
            return self._mul_rational(other)
        out: Dict[Exponent, Cyclotomic] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = _add_vec(e1, e2)
                p = c1 * c2
                s = out.get(e)
                out[e] = p if s is None else s + p
        return LaurentPoly._raw(self.rank, {e: c for e, c in out.items() if c})

    def __rmul__(self, other):
        return self.scale(other)

    def _is_rational(self) -> bool:
        return all(c.n == 1 for c in self._terms.values())

    def _mul_rational(self, other: "LaurentPoly") -> "LaurentPoly":
        # conductor-1 fast path: plain Fraction arithmetic
        acc: Dict[Exponent, Fraction] = {}
        b_items = [(e, c.c[0]) for e, c in other._terms.items()]
        for e1, c1 in self._terms.items():
            x1 = c1.c[0]
            for e2, x2 in b_items:
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, 0) + x1 * x2
        raw = Cyclotomic._raw
        return LaurentPoly._raw(self.rank, {e: raw(1, (Fraction(v),)) for e, v in acc.items() if v})

    def __pow__(self, k: int):
        if k < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials have Laurent inverses")
            (e, c), = self._terms.items()
            return LaurentPoly.monomial(tuple(-x for x in e), c.inverse()) ** (-k)
        out = LaurentPoly.constant(self.rank, 1)
        for _ in range(k):
            out = out * self
        return out

    def shift(self, exp: Sequence[int]) -> "LaurentPoly":
        """Multiply by the monomial x^exp."""
        exp = tuple(exp)
        return LaurentPoly._raw(self.rank, {_add_vec(e, exp): c for e, c in self._terms.items()})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic)):
            other = LaurentPoly.constant(self.rank, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if self.rank != other.rank or self._terms.keys() != other._terms.keys():
            return False
        return all(c == other._terms[e] for e, c in self._terms.items())

    __hash__ = None

    # -- structural maps -----------------------------------------------------
    def map_exponents(self, m: Sequence[Sequence[int]]) -> "LaurentPoly":
        """x^lam -> x^(m lam); m must be invertible on the support."""
        out: Dict[Exponent, Cyclotomic] = {}
        for e, c in self._terms.items():
            f = apply_matrix(m, e)
            s = out.get(f)
            out[f] = c if s is None else s + c
        return LaurentPoly._raw(len(m), {e: c for e, c in out.items() if c})

    def dual(self) -> "LaurentPoly":
        return LaurentPoly._raw(self.rank, {tuple(-x for x in e): c for e, c in self._terms.items()})

    def constant_term(self) -> Cyclotomic:
        return self._terms.get((0,) * self.rank, ZERO)

    def map_coefficients(self, f) -> "LaurentPoly":
        return LaurentPoly(self.rank, {e: f(e, c) for e, c in self._terms.items()})

    def evaluate_at_torsion(self, q) -> Cyclotomic:
        """Character value at the torsion point q: x^lam -> exp(2 pi i <lam, q>)."""
        n = q.order
        num = q.numerators()
        powers = [Fraction(0)] * n
        acc = ZERO
        for e, c in self._terms.items():
            k = sum(a * b for a, b in zip(e, num)) % n
            if c.is_rational():
                powers[k] += c.c[0]
            else:
                acc = acc + c * Cyclotomic.root(n, k)
        return acc + Cyclotomic(n, powers)

    def sum_of_coefficients(self) -> Cyclotomic:
        acc = ZERO
        for c in self._terms.values():
            acc = acc + c
        return acc

    # -- division -------------------------------------------------------------
    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient self / other in the Laurent ring.

        Both operands are shifted into the polynomial ring by their
        componentwise minimal exponents and divided lexicographically;
        a nonzero remainder raises DivisibilityError.
        """
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero Laurent polynomial")
        if self.is_zero():
            return LaurentPoly.zero(self.rank)
        amin = _min_exponent(self._terms)
        bmin = _min_exponent(other._terms)
        rem: Dict[Exponent, Cyclotomic] = {_sub_vec(e, amin): c for e, c in self._terms.items()}
        div = {_sub_vec(e, bmin): c for e, c in other._terms.items()}
        lead = max(div)
        lead_inv = div[lead].inverse()
        div_rest = [(e, c) for e, c in div.items() if e != lead]
        quot: Dict[Exponent, Cyclotomic] = {}
        leftover: Dict[Exponent, Cyclotomic] = {}
        while rem:
            top = max(rem)
            ctop = rem.pop(top)
            diff = _sub_vec(top, lead)
            if min(diff) < 0:
                leftover[top] = ctop
                continue
            f = ctop * lead_inv
            quot[diff] = f
            for e, c in div_rest:
                k = _add_vec(diff, e)
                v = rem.get(k, ZERO) - f * c
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        if leftover:
            r = LaurentPoly._raw(self.rank, leftover).shift(amin)
            raise DivisibilityError(f"inexact division: nonzero remainder {r}", r)
        return LaurentPoly._raw(self.rank, quot).shift(_sub_vec(amin, bmin))

    # -- text -----------------------------------------------------------------
    def __str__(self):
        return render_laurent(self)

    def __repr__(self):
        return f"LaurentPoly({self.rank}, {render_laurent(self)!r})"


def _min_exponent(terms: Mapping[Exponent, object]) -> Exponent:
    keys = list(terms)
    return tuple(min(k[i] for k in keys) for i in range(len(keys[0])))


def weyl_act(w, a: LaurentPoly) -> LaurentPoly:
    """x^lam -> x^(w lam), coefficients unchanged."""
    return a.map_exponents(w.matrix)


def x_var(rank: int, i: int) -> LaurentPoly:
    e = [0] * rank
    e[i] = 1
    return LaurentPoly.monomial(e)


class RationalFn:
    """An unreduced quotient num/den of Laurent polynomials."""

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        num._check(den)
        self.num = num
        self.den = den

    def __add__(self, other: "RationalFn") -> "RationalFn":
        return RationalFn(self.num * other.den + other.num * self.den, self.den * other.den)

    def __mul__(self, other: "RationalFn") -> "RationalFn":
        return RationalFn(self.num * other.num, self.den * other.den)

    def map_exponents(self, m) -> "RationalFn":
        return RationalFn(self.num.map_exponents(m), self.den.map_exponents(m))

    def to_laurent(self) -> LaurentPoly:
        return self.num.exact_div(self.den)

    def __eq__(self, other):
        if not isinstance(other, RationalFn):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    __hash__ = None


# -- canonical text ---------------------------------------------------------------

def _render_fraction(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def render_scalar(c: Cyclotomic) -> str:
    """'2', '-1/3', 'z4', '(1 - 2*z3)'."""
    if c.is_rational():
        return _render_fraction(c.c[0])
    parts = []
    for k, x in enumerate(c.c):
        if not x:
            continue
        mono = "" if k == 0 else (f"z{c.n}" if k == 1 else f"z{c.n}^{k}")
        parts.append((x, mono))
    if len(parts) == 1 and parts[0][1]:
        x, mono = parts[0]
        if x == 1:
            return mono
        if x == -1:
            return "-" + mono
        return f"{_render_fraction(x)}*{mono}"
    return "(" + _join_signed(parts) + ")"


def _join_signed(parts) -> str:
    out = []
    for i, (x, mono) in enumerate(parts):
        neg = x < 0
        ax = -x if neg else x
        if mono:
            body = mono if ax == 1 else f"{_render_fraction(ax)}*{mono}"
        else:
            body = _render_fraction(ax)
        if i == 0:
            out.append("-" + body if neg else body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def render_monomial(exp: Exponent, var: str = "x") -> str:
    if len(exp) == 1:
        names = [var]
    else:
        names = [f"{var}{i + 1}" for i in range(len(exp))]
    pieces = []
    for name, k in zip(names, exp):
        if k == 0:
            continue
        pieces.append(name if k == 1 else f"{name}^{k}")
    return "*".join(pieces)


def render_terms(items: Iterable[Tuple[Exponent, Cyclotomic]], var: str) -> str:
    out = []
    for e, c in items:
        mono = render_monomial(e, var)
        if c.is_rational():
            x = c.c[0]
            neg = x < 0
            ax = -x if neg else x
            if mono:
                body = mono if ax == 1 else f"{_render_fraction(ax)}*{mono}"
            else:
                body = _render_fraction(ax)
        else:
            neg = False
            s = render_scalar(c)
            if s.startswith("-"):
                neg, s = True, s[1:]
            body = s if not mono else f"{s}*{mono}"
        if not out:
            out.append("-" + body if neg else body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out) if out else "0"


def render_laurent(p: LaurentPoly) -> str:
    """Canonical rendering: terms sorted by exponent vector."""
    return render_terms(sorted(p.items()), "x")


_TOKEN = re.compile(r"\s*(?:(\d+)|(z\d+)|([a-z]\d*)|(\^)|(\*)|(/)|(\+)|(-)|(\()|(\)))")


class _Parser:
    """Recursive-descent parser for the canonical rendering grammar."""

    def __init__(self, text: str, rank: int, var: str):
        self.toks = self._lex(text)
        self.i = 0
        self.rank = rank
        self.var = var

    @staticmethod
    def _lex(text: str):
        toks = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse near {text[pos:]!r}")
            kinds = ("int", "zeta", "name", "^", "*", "/", "+", "-", "(", ")")
            for kind, g in zip(kinds, m.groups()):
                if g is not None:
                    toks.append((kind, g))
                    break
            pos = m.end()
        return toks

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, kind=None):
        tok = self.peek()
        if kind is not None and tok[0] != kind:
            raise ValueError(f"expected {kind}, got {tok[1]!r}")
        self.i += 1
        return tok

    def parse(self) -> LaurentPoly:
        p = self.expr()
        if self.i != len(self.toks):
            raise ValueError(f"trailing input at token {self.peek()[1]!r}")
        return p

    def expr(self) -> LaurentPoly:
        neg = False
        if self.peek()[0] == "-":
            self.take()
            neg = True
        acc = self.term()
        if neg:
            acc = -acc
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> LaurentPoly:
        acc = self.factor()
        while self.peek()[0] == "*":
            self.take()
            acc = acc * self.factor()
        return acc

    def _int_exponent(self) -> int:
        sign = 1
        if self.peek()[0] == "-":
            self.take()
            sign = -1
        return sign * int(self.take("int")[1])

    def factor(self) -> LaurentPoly:
        kind, val = self.peek()
        if kind == "int":
            self.take()
            x = Fraction(int(val))
            if self.peek()[0] == "/":
                self.take()
                x /= int(self.take("int")[1])
            return LaurentPoly.constant(self.rank, x)
        if kind == "zeta":
            self.take()
            n = int(val[1:])
            k = 1
            if self.peek()[0] == "^":
                self.take()
                k = self._int_exponent()
            return LaurentPoly.constant(self.rank, Cyclotomic.root(n, k))
        if kind == "name":
            self.take()
            idx = self._var_index(val)
            k = 1
            if self.peek()[0] == "^":
                self.take()
                k = self._int_exponent()
            e = [0] * self.rank
            e[idx] = k
            return LaurentPoly.monomial(e)
        if kind == "(":
            self.take()
            p = self.expr()
            self.take(")")
            return p
        raise ValueError(f"unexpected token {val!r}")

    def _var_index(self, name: str) -> int:
        if not name.startswith(self.var):
            raise ValueError(f"unknown variable {name!r}")
        suffix = name[len(self.var):]
        if suffix == "":
            if self.rank != 1:
                raise ValueError(f"bare {self.var!r} only valid in rank 1")
            return 0
        i = int(suffix) - 1
        if not 0 <= i < self.rank:
            raise ValueError(f"variable {name!r} out of range for rank {self.rank}")
        return i


def parse_laurent(text: str, rank: int, var: str = "x") -> LaurentPoly:
    """Inverse of render_laurent (also accepts any sum/product of the same atoms)."""
    return _Parser(text, rank, var).parse()


def parse_scalar(text: str) -> Cyclotomic:
    return parse_laurent(text, 1).constant_term()

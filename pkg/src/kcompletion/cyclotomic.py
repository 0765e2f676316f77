"""Exact arithmetic in cyclotomic fields Q(zeta_n).

An element is stored as its coordinates on the power basis
1, z, ..., z^(phi(n)-1) where z = exp(2 pi i / n).  Values of different
conductors are combined by embedding both into the lcm conductor.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Sequence, Tuple

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


# -- dense polynomial helpers over Q (lists, lowest degree first) ----------

def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _pmul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] += x * y
    return _trim(out)


def _psub(a: Sequence, b: Sequence) -> list:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else _ZERO) - (b[i] if i < len(b) else _ZERO) for i in range(n)]
    return _trim(out)


def _pdivmod(a: Sequence, b: Sequence) -> Tuple[list, list]:
    a = _trim([Fraction(x) for x in a])
    b = _trim([Fraction(x) for x in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [_ZERO] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        c = a[-1] / lead
        q[shift] = c
        for i, y in enumerate(b):
            a[i + shift] -= c * y
        _trim(a)
    return _trim(q), a


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> Tuple[int, ...]:
    """Integer coefficients of the n-th cyclotomic polynomial, lowest first."""
    if n < 1:
        raise ValueError("conductor must be positive")
    num = [Fraction(-1)] + [_ZERO] * (n - 1) + [_ONE]
    for d in range(1, n):
        if n % d == 0:
            num, rem = _pdivmod(num, cyclotomic_polynomial(d))
            assert not rem
    return tuple(int(c) for c in num)


def euler_phi(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


@lru_cache(maxsize=None)
def _power_table(n: int) -> Tuple[Tuple[Fraction, ...], ...]:
    """Reduced coordinates of z^k for k = 0..n-1 (z^n = 1)."""
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    rows = []
    cur = [_ZERO] * deg
    cur[0] = _ONE
    for _ in range(n):
        rows.append(tuple(cur))
        # multiply by z and reduce with the monic relation
        top = cur[-1]
        nxt = [_ZERO] + cur[:-1]
        if top:
            for i in range(deg):
                nxt[i] -= top * phi[i]
        cur = nxt
    return tuple(rows)


def _reduce(n: int, coeffs: Sequence) -> Tuple[Fraction, ...]:
    """Reduce a polynomial in z (any length) modulo Phi_n."""
    deg = euler_phi(n)
    if len(coeffs) <= deg:
        out = list(coeffs) + [_ZERO] * (deg - len(coeffs))
        return tuple(out)
    table = _power_table(n)
    out = [_ZERO] * deg
    for k, c in enumerate(coeffs):
        if not c:
            continue
        if k < deg:
            out[k] += c
        else:
            row = table[k % n]
            for i in range(deg):
                if row[i]:
                    out[i] += c * row[i]
    return tuple(out)


class Cyclotomic:
    """An element of Q(zeta_n) in canonical reduced power-basis form."""

    __slots__ = ("n", "c")

    def __init__(self, n: int, coeffs: Sequence = (0,)):
        self.n = n
        self.c = _reduce(n, [Fraction(x) for x in coeffs])

    @classmethod
    def _raw(cls, n: int, c: Tuple[Fraction, ...]) -> "Cyclotomic":
        obj = object.__new__(cls)
        obj.n = n
        obj.c = c
        return obj

    # -- constructors -------------------------------------------------------
    @classmethod
    def rational(cls, x) -> "Cyclotomic":
        return cls._raw(1, (Fraction(x),))

    @classmethod
    def root(cls, n: int, k: int = 1) -> "Cyclotomic":
        """zeta_n ** k."""
        return cls._raw(n, _power_table(n)[k % n])

    @classmethod
    def coerce(cls, x) -> "Cyclotomic":
        if isinstance(x, Cyclotomic):
            return x
        return cls.rational(x)

    # -- structure ------------------------------------------------------------
    def embed(self, m: int) -> "Cyclotomic":
        """Image in Q(zeta_m); requires n | m."""
        if m == self.n:
            return self
        if m % self.n:
            raise ValueError(f"conductor {self.n} does not divide {m}")
        step = m // self.n
        poly = [_ZERO] * (step * (len(self.c) - 1) + 1)
        for k, x in enumerate(self.c):
            poly[k * step] = x
        return Cyclotomic._raw(m, _reduce(m, poly))

    def is_zero(self) -> bool:
        return not any(self.c)

    def __bool__(self) -> bool:
        return any(self.c)

    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.c[0]

    def to_complex(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.n)
        return sum(complex(x) * z ** k for k, x in enumerate(self.c))

    # -- arithmetic -----------------------------------------------------------
    def _align(self, other) -> Tuple["Cyclotomic", "Cyclotomic"]:
        other = Cyclotomic.coerce(other)
        if self.n == other.n:
            return self, other
        m = _lcm(self.n, other.n)
        return self.embed(m), other.embed(m)

    def __add__(self, other):
        if not isinstance(other, (Cyclotomic, int, Fraction)):
            return NotImplemented
        a, b = self._align(other)
        return Cyclotomic._raw(a.n, tuple(x + y for x, y in zip(a.c, b.c)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic._raw(self.n, tuple(-x for x in self.c))

    def __sub__(self, other):
        if not isinstance(other, (Cyclotomic, int, Fraction)):
            return NotImplemented
        a, b = self._align(other)
        return Cyclotomic._raw(a.n, tuple(x - y for x, y in zip(a.c, b.c)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclotomic._raw(self.n, tuple(x * other for x in self.c))
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        if other.n == 1:
            s = other.c[0]
            if s == 1:
                return self
            return Cyclotomic._raw(self.n, tuple(x * s for x in self.c))
        if self.n == 1:
            s = self.c[0]
            if s == 1:
                return other
            return Cyclotomic._raw(other.n, tuple(x * s for x in other.c))
        a, b = self._align(other)
        return Cyclotomic._raw(a.n, _reduce(a.n, _pmul(a.c, b.c)))

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        if self.n == 1:
            return Cyclotomic._raw(1, (1 / self.c[0],))
        # extended Euclid: s * self + t * Phi_n = 1
        r0 = [Fraction(x) for x in cyclotomic_polynomial(self.n)]
        r1 = _trim(list(self.c))
        s0, s1 = [], [_ONE]
        while r1:
            q, r = _pdivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _psub(s0, _pmul(q, s1))
        # r0 is a nonzero constant
        lead = r0[0]
        return Cyclotomic(self.n, [x / lead for x in s0])

    def __truediv__(self, other):
        other = Cyclotomic.coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Cyclotomic.coerce(other) * self.inverse()

    def conjugate(self) -> "Cyclotomic":
        """Complex conjugate: z -> z^(-1)."""
        n = self.n
        poly = [_ZERO] * n
        for k, x in enumerate(self.c):
            poly[(-k) % n] += x
        return Cyclotomic._raw(n, _reduce(n, poly))

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = Cyclotomic._raw(self.n, _power_table(self.n)[0])
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    # -- comparison -----------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, (Cyclotomic, int, Fraction)):
            return NotImplemented
        a, b = self._align(other)
        return a.c == b.c

    __hash__ = None  # values of different conductors compare equal

    def __repr__(self):
        return f"Cyclotomic({self.n}, {[str(x) for x in self.c]})"

    def __str__(self):
        from .laurent import render_scalar

        return render_scalar(self)


ZERO = Cyclotomic.rational(0)
ONE = Cyclotomic.rational(1)


def zeta(n: int, k: int = 1) -> Cyclotomic:
    return Cyclotomic.root(n, k)

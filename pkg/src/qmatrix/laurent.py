"""Sparse Laurent polynomials in one variable q with integer coefficients."""

from __future__ import annotations

import re
from collections.abc import Iterable, Mapping

from .errors import NotSkew, OddExponent, ParseError


class LaurentPoly:
    """An element of Z[q, q^-1], stored as a dict {exponent: coefficient}.

    Zero coefficients are never stored, so the zero polynomial has an empty
    dict and equality is plain dict equality. Instances are treated as
    immutable; every operation returns a new object.
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        c = {}
        if coeffs:
            for e, v in coeffs.items():
                if v:
                    c[int(e)] = int(v)
        self._c = c
        self._hash = None

    @classmethod
    def _wrap(cls, c: dict[int, int]) -> LaurentPoly:
        # caller guarantees there are no zero entries
        p = cls.__new__(cls)
        p._c = c
        p._hash = None
        return p

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> LaurentPoly:
        return cls._wrap({exp: coeff} if coeff else {})

    @classmethod
    def const(cls, value: int) -> LaurentPoly:
        return cls.monomial(0, value)

    # -- inspection -------------------------------------------------------

    def items(self):
        return self._c.items()

    def coeff(self, exp: int) -> int:
        return self._c.get(exp, 0)

    def exponents(self) -> list[int]:
        return sorted(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def as_monomial(self) -> tuple[int, int] | None:
        """Return (coeff, exp) if this is c*q^e with c != 0, else None."""
        if len(self._c) != 1:
            return None
        (e, v), = self._c.items()
        return v, e

    def min_exp(self) -> int:
        return min(self._c)

    def max_exp(self) -> int:
        return max(self._c)

    def to_dict(self) -> dict[int, int]:
        return dict(self._c)

    # -- ring operations --------------------------------------------------

    def _coerce(self, other) -> LaurentPoly:
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        c = dict(self._c)
        for e, v in other._c.items():
            s = c.get(e, 0) + v
            if s:
                c[e] = s
            else:
                c.pop(e, None)
        return LaurentPoly._wrap(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._wrap({e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        c: dict[int, int] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                e = e1 + e2
                c[e] = c.get(e, 0) + v1 * v2
        return LaurentPoly._wrap({e: v for e, v in c.items() if v})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            m = self.as_monomial()
            if m is None or abs(m[0]) != 1:
                raise ValueError("only units +-q^e can be inverted")
            # (c q^e)^k with c = +-1, so c^k == c^|k|
            return LaurentPoly.monomial(m[1] * k, m[0] ** -k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by q^k."""
        if k == 0:
            return self
        return LaurentPoly._wrap({e + k: v for e, v in self._c.items()})

    def bar(self) -> LaurentPoly:
        """The ring involution q -> q^-1."""
        return LaurentPoly._wrap({-e: v for e, v in self._c.items()})

    def evaluate(self, q):
        return sum(v * q**e for e, v in self._c.items())

    def skew_decompose(self) -> LaurentPoly:
        """Split a skew element as h = h_plus - bar(h_plus).

        Requires bar(h) == -h and only even exponents. Returns h_plus, the
        part of h supported on strictly positive exponents, which then lies
        in q^2 Z[q^2].
        """
        for e, v in self._c.items():
            if e % 2:
                raise OddExponent(f"odd exponent {e} in {self}")
            if self._c.get(-e, 0) != -v:
                raise NotSkew(f"{self} is not skew under q -> q^-1")
        return LaurentPoly._wrap({e: v for e, v in self._c.items() if e > 0})

    # -- comparison / hashing ----------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            return self._c == ({0: other} if other else {})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __bool__(self):
        return bool(self._c)

    # -- text form --------------------------------------------------------

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for e in sorted(self._c):
            v = self._c[e]
            sign = "-" if v < 0 else "+"
            a = abs(v)
            if e == 0:
                body = str(a)
            else:
                qpart = "q" if e == 1 else f"q^{e}"
                body = qpart if a == 1 else f"{a}*{qpart}"
            parts.append((sign, body))
        s0, b0 = parts[0]
        out = ("-" if s0 == "-" else "") + b0
        for s, b in parts[1:]:
            out += f" {s} {b}"
        return out

    def __repr__(self):
        return f"LaurentPoly({self})"

    @classmethod
    def parse(cls, text: str) -> LaurentPoly:
        """Inverse of ``str``. Accepts terms like ``-3*q^-2``, ``q``, ``5``."""
        s = text.replace(" ", "")
        if not s:
            raise ParseError("empty polynomial")
        if s == "0":
            return ZERO
        pos = 0
        c: dict[int, int] = {}
        first = True
        while pos < len(s):
            m = _TERM.match(s, pos)
            if not m or m.end() == pos:
                raise ParseError(f"cannot parse {text!r} at offset {pos}")
            sign, num, star, qq, exp = m.groups()
            if not first and not sign:
                raise ParseError(f"missing operator in {text!r}")
            if num is None and qq is None:
                raise ParseError(f"empty term in {text!r}")
            if star and (num is None or qq is None):
                raise ParseError(f"dangling '*' in {text!r}")
            if num is not None and qq is not None and not star:
                raise ParseError(f"expected '*' between coefficient and q in {text!r}")
            coef = int(num) if num is not None else 1
            if sign == "-":
                coef = -coef
            e = 0
            if qq is not None:
                e = int(exp) if exp is not None else 1
            c[e] = c.get(e, 0) + coef
            pos = m.end()
            first = False
        return cls(c)


_TERM = re.compile(r"([+-])?(\d+)?(\*)?(q)?(?:\^(-?\d+))?")


def from_terms(terms: Iterable[tuple[int, int]]) -> LaurentPoly:
    """Build from (exponent, coefficient) pairs, summing repeats."""
    c: dict[int, int] = {}
    for e, v in terms:
        c[e] = c.get(e, 0) + v
    return LaurentPoly(c)


ZERO = LaurentPoly()
ONE = LaurentPoly.const(1)
Q = LaurentPoly.monomial(1)


def qpow(k: int, coeff: int = 1) -> LaurentPoly:
    """coeff * q^k."""
    return LaurentPoly.monomial(k, coeff)


def neg_q2_pow(k: int) -> LaurentPoly:
    """(-q^2)^k for any integer k."""
    return LaurentPoly.monomial(2 * k, -1 if k % 2 else 1)

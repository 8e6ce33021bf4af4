"""The quantized coordinate ring of m x n matrices and its PBW normal form.

Generators Z[i,j] (1-based) satisfy, with q^2 as the deformation parameter,

    Z[i,j] Z[i,k] = q^2 Z[i,k] Z[i,j]              (j < k)
    Z[i,j] Z[k,j] = q^2 Z[k,j] Z[i,j]              (i < k)
    Z[i,j] Z[s,t] = Z[s,t] Z[i,j]                  (i > s, j < t)
    Z[i,j] Z[s,t] = Z[s,t] Z[i,j] + (q^2 - q^-2) Z[i,t] Z[s,j]   (i < s, j < t)

Generators are ordered row by row, (1,1) first. A PBW monomial Z^A is the
product of Z[i,j]^a_ij with (1,1) leftmost. Monomials are plain tuples of
exponents in row-major order, so Python tuple comparison is exactly the
lexicographic order used for triangularity.
"""

from __future__ import annotations

import json
import random
import re
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from functools import lru_cache

from .errors import (
    IndexOutOfRange,
    NegativeExponent,
    ParseError,
    ShapeError,
)
from .laurent import ONE, LaurentPoly

Mono = tuple[int, ...]
Raw = dict  # Mono -> {exp: coeff}, the working form inside the kernels


# ---------------------------------------------------------------------------
# exponent matrices


@dataclass(frozen=True)
class ExponentMatrix:
    """A non-negative integer m x n matrix, stored flat in row-major order."""

    m: int
    n: int
    flat: tuple[int, ...]

    def __post_init__(self):
        if len(self.flat) != self.m * self.n:
            raise ShapeError(f"expected {self.m * self.n} entries, got {len(self.flat)}")
        if any(a < 0 for a in self.flat):
            raise NegativeExponent(f"negative entry in {self.flat}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> ExponentMatrix:
        m = len(rows)
        n = len(rows[0]) if m else 0
        if any(len(r) != n for r in rows):
            raise ShapeError("ragged rows")
        return cls(m, n, tuple(int(a) for r in rows for a in r))

    @classmethod
    def zero(cls, m: int, n: int) -> ExponentMatrix:
        return cls(m, n, (0,) * (m * n))

    @classmethod
    def unit(cls, m: int, n: int, i: int, j: int) -> ExponentMatrix:
        flat = [0] * (m * n)
        flat[(i - 1) * n + (j - 1)] = 1
        return cls(m, n, tuple(flat))

    @classmethod
    def identity(cls, n: int) -> ExponentMatrix:
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.flat[(i - 1) * self.n + (j - 1)]

    def rows(self) -> list[list[int]]:
        return [list(self.flat[i * self.n:(i + 1) * self.n]) for i in range(self.m)]

    def row_sums(self) -> tuple[int, ...]:
        return tuple(sum(r) for r in self.rows())

    def col_sums(self) -> tuple[int, ...]:
        return tuple(sum(self.flat[i * self.n + j] for i in range(self.m)) for j in range(self.n))

    def total(self) -> int:
        return sum(self.flat)

    def _check(self, other):
        if (self.m, self.n) != (other.m, other.n):
            raise ShapeError("shape mismatch")

    def __add__(self, other: ExponentMatrix) -> ExponentMatrix:
        self._check(other)
        return ExponentMatrix(self.m, self.n, tuple(a + b for a, b in zip(self.flat, other.flat)))

    def __sub__(self, other: ExponentMatrix) -> ExponentMatrix:
        self._check(other)
        return ExponentMatrix(self.m, self.n, tuple(a - b for a, b in zip(self.flat, other.flat)))

    def __lt__(self, other: ExponentMatrix) -> bool:
        self._check(other)
        return self.flat < other.flat

    def __str__(self):
        return ";".join(",".join(map(str, r)) for r in self.rows())

    @classmethod
    def parse(cls, text: str, m: int | None = None, n: int | None = None) -> ExponentMatrix:
        """Parse ``"1,0;0,1"`` (rows separated by ';')."""
        try:
            rows = [[int(x) for x in r.split(",")] for r in text.strip().split(";")]
        except ValueError as exc:
            raise ParseError(f"bad matrix {text!r}") from exc
        A = cls.from_rows(rows)
        if m is not None and (A.m, A.n) != (m, n):
            raise ShapeError(f"matrix {text!r} is not {m}x{n}")
        return A


def as_mono(A, m: int, n: int) -> Mono:
    if isinstance(A, ExponentMatrix):
        if (A.m, A.n) != (m, n):
            raise ShapeError(f"exponent matrix is {A.m}x{A.n}, algebra is {m}x{n}")
        return A.flat
    if isinstance(A, tuple) and len(A) == m * n and all(isinstance(a, int) for a in A):
        if any(a < 0 for a in A):
            raise NegativeExponent(str(A))
        return A
    return ExponentMatrix.from_rows(A).flat if _rows_ok(A, m, n) else _bad_shape(A, m, n)


def _rows_ok(A, m, n):
    return len(A) == m and all(len(r) == n for r in A)


def _bad_shape(A, m, n):
    raise ShapeError(f"{A!r} is not an {m}x{n} matrix")


# ---------------------------------------------------------------------------
# raw polynomial helpers (dict exp -> coeff), used on the hot path


def _padd(target: dict, mono: Mono, poly: Mapping[int, int], shift: int, factor: int):
    d = target.get(mono)
    if d is None:
        d = target[mono] = {}
    for e, v in poly.items():
        e += shift
        s = d.get(e, 0) + factor * v
        if s:
            d[e] = s
        else:
            d.pop(e, None)


def _pmul(a: Mapping[int, int], b: Mapping[int, int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for e1, v1 in a.items():
        for e2, v2 in b.items():
            e = e1 + e2
            out[e] = out.get(e, 0) + v1 * v2
    return out


def _prune(raw: Raw) -> Raw:
    return {k: v for k, v in raw.items() if v}


# ---------------------------------------------------------------------------
# the algebra


class QuantumMatrixAlgebra:
    """Context object for one shape m x n: relation table plus product caches.

    The caches are plain dicts and are not guarded for concurrent writers.
    Use one context per thread if that matters.
    """

    def __init__(self, m: int, n: int):
        if m < 1 or n < 1:
            raise ShapeError(f"shape must be positive, got {m}x{n}")
        self.m = m
        self.n = n
        self.size = m * n
        self.zero_mono: Mono = (0,) * (m * n)
        self._rel = [[None] * self.size for _ in range(self.size)]
        for h in range(self.size):
            a, b = divmod(h, n)
            for g in range(h):
                c, d = divmod(g, n)
                if c == a or d == b:
                    rel = ("q", -2)
                elif d > b:
                    rel = ("q", 0)
                else:
                    rel = ("x", c * n + b, a * n + d)
                self._rel[h][g] = rel
        self._gen_cache: dict[tuple[Mono, int], Raw] = {}
        self._mono_cache: dict[tuple[Mono, Mono], Raw] = {}
        self._bar_cache: dict[Mono, Raw] = {}
        # per-shape caches owned by downstream modules (minors, dcb, ...)
        self.cache: dict[str, dict] = {}

    def __repr__(self):
        return f"QuantumMatrixAlgebra({self.m}, {self.n})"

    # -- indexing ---------------------------------------------------------

    def index(self, i: int, j: int) -> int:
        if not (1 <= i <= self.m and 1 <= j <= self.n):
            raise IndexOutOfRange(f"Z[{i},{j}] is outside {self.m}x{self.n}")
        return (i - 1) * self.n + (j - 1)

    def position(self, g: int) -> tuple[int, int]:
        a, b = divmod(g, self.n)
        return a + 1, b + 1

    def unit_mono(self, g: int, k: int = 1) -> Mono:
        A = [0] * self.size
        A[g] = k
        return tuple(A)

    # -- element constructors ---------------------------------------------

    def one(self) -> AlgebraElement:
        return AlgebraElement(self, {self.zero_mono: ONE})

    def zero(self) -> AlgebraElement:
        return AlgebraElement(self, {})

    def gen(self, i: int, j: int) -> AlgebraElement:
        return AlgebraElement(self, {self.unit_mono(self.index(i, j)): ONE})

    def monomial(self, A, coeff: LaurentPoly | int = 1) -> AlgebraElement:
        mono = as_mono(A, self.m, self.n)
        if isinstance(coeff, int):
            coeff = LaurentPoly.const(coeff)
        return AlgebraElement(self, {mono: coeff} if coeff else {})

    def exponent_matrix(self, mono: Mono) -> ExponentMatrix:
        return ExponentMatrix(self.m, self.n, mono)

    # -- the multiplication kernel -------------------------------------------

    @staticmethod
    def _last(A: Mono) -> int:
        for g in range(len(A) - 1, -1, -1):
            if A[g]:
                return g
        return -1

    @staticmethod
    def _first(A: Mono) -> int:
        for g, a in enumerate(A):
            if a:
                return g
        return len(A)

    def mul_mono_gen(self, A: Mono, g: int) -> Raw:
        """Normal form of Z^A * Z_g, as {mono: {exp: coeff}}."""
        key = (A, g)
        hit = self._gen_cache.get(key)
        if hit is not None:
            return hit
        h = self._last(A)
        if h <= g:
            B = list(A)
            B[g] += 1
            out = {tuple(B): {0: 1}}
        else:
            # Z^A = Z^A1 * Z_h with h the last generator present.
            A1 = list(A)
            A1[h] -= 1
            A1 = tuple(A1)
            rel = self._rel[h][g]
            out: Raw = {}
            shift = rel[1] if rel[0] == "q" else 0
            # every index produced by Z^A1 * Z_g stays <= h, so Z_h just appends
            for C, poly in self.mul_mono_gen(A1, g).items():
                C2 = list(C)
                C2[h] += 1
                _padd(out, tuple(C2), poly, shift, 1)
            if rel[0] == "x":
                _, p, s = rel
                for C, poly in self.mul_mono_gen(A1, p).items():
                    for C2, poly2 in self.mul_mono_gen(C, s).items():
                        prod = _pmul(poly, poly2)
                        _padd(out, C2, prod, 2, -1)
                        _padd(out, C2, prod, -2, 1)
            out = _prune(out)
        self._gen_cache[key] = out
        return out

    def mul_mono(self, A: Mono, B: Mono) -> Raw:
        """Normal form of Z^A * Z^B."""
        if self._last(A) <= self._first(B):
            return {tuple(a + b for a, b in zip(A, B)): {0: 1}}
        key = (A, B)
        hit = self._mono_cache.get(key)
        if hit is not None:
            return hit
        acc: Raw = {A: {0: 1}}
        for g, k in enumerate(B):
            for _ in range(k):
                nxt: Raw = {}
                for C, poly in acc.items():
                    for C2, poly2 in self.mul_mono_gen(C, g).items():
                        _padd(nxt, C2, _pmul(poly, poly2), 0, 1)
                acc = _prune(nxt)
        self._mono_cache[key] = acc
        return acc

    def bar_mono(self, A: Mono) -> Raw:
        """Normal form of bar(Z^A): the generator powers in reverse order."""
        hit = self._bar_cache.get(A)
        if hit is not None:
            return hit
        acc: Raw = {self.zero_mono: {0: 1}}
        for g in range(self.size - 1, -1, -1):
            if A[g]:
                power = self.unit_mono(g, A[g])
                nxt: Raw = {}
                for C, poly in acc.items():
                    for C2, poly2 in self.mul_mono(C, power).items():
                        _padd(nxt, C2, _pmul(poly, poly2), 0, 1)
                acc = _prune(nxt)
        self._bar_cache[A] = acc
        return acc

    def clear_caches(self):
        self._gen_cache.clear()
        self._mono_cache.clear()
        self._bar_cache.clear()
        self.cache.clear()

    # -- word-level rewriting ----------------------------------------------

    def rewrite_pair(self, x: int, y: int) -> list[tuple[tuple[int, int], int, int]]:
        """Rewrite Z_x Z_y for x > y as a list of ((left, right), exp, coeff)."""
        rel = self._rel[x][y]
        if rel[0] == "q":
            return [((y, x), rel[1], 1)]
        _, p, s = rel
        return [((y, x), 0, 1), ((p, s), 2, -1), ((p, s), -2, 1)]


@lru_cache(maxsize=None)
def algebra(m: int, n: int) -> QuantumMatrixAlgebra:
    """Shared context for shape m x n (caches persist across calls)."""
    return QuantumMatrixAlgebra(m, n)


# ---------------------------------------------------------------------------
# elements


class AlgebraElement:
    """A finite sum of PBW monomials with Laurent polynomial coefficients."""

    __slots__ = ("algebra", "_terms", "_hash")

    def __init__(self, alg: QuantumMatrixAlgebra, terms: Mapping[Mono, LaurentPoly]):
        self.algebra = alg
        self._terms = {A: c for A, c in terms.items() if c}
        self._hash = None

    @classmethod
    def from_raw(cls, alg: QuantumMatrixAlgebra, raw: Raw) -> AlgebraElement:
        return cls(alg, {A: LaurentPoly._wrap(dict(p)) for A, p in raw.items() if p})

    def raw(self) -> Raw:
        return {A: c._c for A, c in self._terms.items()}

    # -- inspection ---------------------------------------------------------

    def terms(self) -> dict[Mono, LaurentPoly]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def monomials(self) -> list[Mono]:
        return sorted(self._terms, reverse=True)

    def coeff(self, A) -> LaurentPoly:
        mono = as_mono(A, self.algebra.m, self.algebra.n)
        return self._terms.get(mono, LaurentPoly())

    def leading(self) -> tuple[Mono, LaurentPoly]:
        """The lex-largest monomial and its coefficient."""
        A = max(self._terms)
        return A, self._terms[A]

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self):
        return len(self._terms)

    # -- arithmetic -----------------------------------------------------------

    def _same(self, other: AlgebraElement):
        if other.algebra.m != self.algebra.m or other.algebra.n != self.algebra.n:
            raise ShapeError("elements live in different algebras")

    def __add__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        self._same(other)
        t = dict(self._terms)
        for A, c in other._terms.items():
            s = t.get(A)
            t[A] = c if s is None else s + c
        return AlgebraElement(self.algebra, t)

    def __neg__(self):
        return AlgebraElement(self.algebra, {A: -c for A, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self + (-other)

    def scale(self, c: LaurentPoly | int) -> AlgebraElement:
        if isinstance(c, int):
            c = LaurentPoly.const(c)
        return AlgebraElement(self.algebra, {A: c * v for A, v in self._terms.items()})

    def shift(self, k: int) -> AlgebraElement:
        """Multiply by q^k."""
        return AlgebraElement(self.algebra, {A: v.shift(k) for A, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            return self.scale(other)
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        self._same(other)
        alg = self.algebra
        acc: Raw = {}
        for A, ca in self._terms.items():
            for B, cb in other._terms.items():
                cab = _pmul(ca._c, cb._c)
                for C, poly in alg.mul_mono(A, B).items():
                    _padd(acc, C, _pmul(cab, poly), 0, 1)
        return AlgebraElement.from_raw(alg, acc)

    def __rmul__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not defined")
        out = self.algebra.one()
        for _ in range(k):
            out = out * self
        return out

    def bar(self) -> AlgebraElement:
        """The bar anti-automorphism: q -> q^-1 and reversal of products."""
        alg = self.algebra
        acc: Raw = {}
        for A, c in self._terms.items():
            cb = c.bar()._c
            for C, poly in alg.bar_mono(A).items():
                _padd(acc, C, _pmul(cb, poly), 0, 1)
        return AlgebraElement.from_raw(alg, acc)

    # -- equality -------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return (self.algebra.m, self.algebra.n) == (other.algebra.m, other.algebra.n) \
            and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- text and JSON ----------------------------------------------------------

    def __str__(self):
        if not self._terms:
            return "0"
        out = ""
        for i, A in enumerate(self.monomials()):
            t = _term_str(self.algebra, A, self._terms[A])
            if i == 0:
                out = t
            elif t.startswith("-"):
                out += " - " + t[1:]
            else:
                out += " + " + t
        return out

    def __repr__(self):
        return f"AlgebraElement<{self.algebra.m}x{self.algebra.n}>({self})"

    def to_json(self) -> list[dict]:
        alg = self.algebra
        return [
            {
                "matrix": ExponentMatrix(alg.m, alg.n, A).rows(),
                "coeff": {str(e): v for e, v in sorted(self._terms[A].items())},
            }
            for A in self.monomials()
        ]

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, alg: QuantumMatrixAlgebra, data: Iterable[Mapping]) -> AlgebraElement:
        acc: dict[Mono, LaurentPoly] = {}
        for entry in data:
            A = as_mono(entry["matrix"], alg.m, alg.n)
            c = LaurentPoly({int(e): int(v) for e, v in entry["coeff"].items()})
            acc[A] = acc.get(A, LaurentPoly()) + c
        return cls(alg, acc)

    @classmethod
    def parse(cls, alg: QuantumMatrixAlgebra, text: str) -> AlgebraElement:
        return _parse_element(alg, text)


def _mono_str(alg: QuantumMatrixAlgebra, A: Mono) -> str:
    parts = []
    for g, a in enumerate(A):
        if a:
            i, j = alg.position(g)
            parts.append(f"Z[{i},{j}]" + (f"^{a}" if a > 1 else ""))
    return " ".join(parts)


def _term_str(alg, A: Mono, c: LaurentPoly) -> str:
    ms = _mono_str(alg, A)
    if not ms:
        cs = str(c)
        return cs if c.as_monomial() else f"({cs})"
    if c == 1:
        return ms
    if c == -1:
        return "-" + ms
    if c.as_monomial():
        return f"{c} * {ms}"
    return f"({c}) * {ms}"


_TOKEN = re.compile(
    r"\s*(?:(?P<paren>\([^()]*\))|(?P<z>Z\[(\d+),(\d+)\](?:\^(\d+))?)|(?P<op>[+\-*])"
    r"|(?P<coef>(?:\d+\*)?q(?:\^-?\d+)?|\d+))"
)


def _parse_element(alg: QuantumMatrixAlgebra, text: str) -> AlgebraElement:
    """Parse the text form produced by ``str``; also accepts products like
    ``q^2 * Z[1,1] Z[2,2]`` and ``2*q^-1 * Z[1,2]``."""
    tokens = []
    pos = 0
    text = text.strip()
    if text == "0":
        return alg.zero()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"cannot parse {text!r} at offset {pos}")
        pos = m.end()
        if m.group("paren"):
            tokens.append(("c", LaurentPoly.parse(m.group("paren")[1:-1])))
        elif m.group("z"):
            i, j, e = m.group(3), m.group(4), m.group(5)
            tokens.append(("z", alg.index(int(i), int(j)), int(e) if e else 1))
        elif m.group("op"):
            tokens.append(("op", m.group("op")))
        else:
            tokens.append(("c", LaurentPoly.parse(m.group("coef"))))
    acc: dict[Mono, LaurentPoly] = {}
    k = 0
    sign = 1
    expect_term = True
    while k < len(tokens):
        tok = tokens[k]
        if tok[0] == "op" and tok[1] in "+-" and expect_term:
            if tok[1] == "-":
                sign = -sign
            k += 1
            continue
        if tok[0] == "op" and tok[1] in "+-":
            sign = -1 if tok[1] == "-" else 1
            expect_term = True
            k += 1
            continue
        if not expect_term:
            raise ParseError(f"missing operator in {text!r}")
        coeff = LaurentPoly.const(1)
        word: list[tuple[int, int]] = []
        while k < len(tokens) and not (tokens[k][0] == "op" and tokens[k][1] in "+-"):
            t = tokens[k]
            if t[0] == "c":
                coeff = coeff * t[1]
            elif t[0] == "z":
                word.append((t[1], t[2]))
            k += 1
        elem = alg.one()
        for g, e in word:
            elem = elem * AlgebraElement(alg, {alg.unit_mono(g, e): ONE})
        for A, c in elem.items():
            acc[A] = acc.get(A, LaurentPoly()) + c * coeff * sign
        sign = 1
        expect_term = False
    if expect_term:
        raise ParseError(f"dangling operator in {text!r}")
    return AlgebraElement(alg, acc)


# ---------------------------------------------------------------------------
# words and straightening


@dataclass(frozen=True)
class GeneratorWord:
    """An unreduced product scalar * Z[g1] Z[g2] ... of generators.

    ``letters`` holds 1-based (i, j) pairs in left-to-right order.
    """

    letters: tuple[tuple[int, int], ...]
    scalar: LaurentPoly = ONE


def straighten(
    word: GeneratorWord | Sequence[tuple[int, int]],
    alg: QuantumMatrixAlgebra,
    strategy: str = "leftmost",
    rng: random.Random | None = None,
) -> AlgebraElement:
    """Rewrite a word into PBW normal form by adjacent-pair rewrites.

    ``strategy="leftmost"`` always fixes the leftmost out-of-order pair of
    the first unfinished word. ``strategy="random"`` picks a random pending
    word and a random out-of-order position in it, which is how confluence
    is exercised. Either way the result is a normal form, computed
    independently of the cached product kernel.
    """
    if not isinstance(word, GeneratorWord):
        word = GeneratorWord(tuple(word))
    if strategy not in ("leftmost", "random"):
        raise ValueError(f"unknown strategy {strategy!r}")
    if strategy == "random" and rng is None:
        rng = random.Random(0)
    letters = tuple(alg.index(i, j) for i, j in word.letters)
    pending: dict[tuple[int, ...], dict[int, int]] = {letters: dict(word.scalar._c)}
    done: Raw = {}
    while pending:
        if strategy == "leftmost":
            w = next(iter(pending))
        else:
            w = rng.choice(list(pending))
        poly = pending.pop(w)
        if not poly:
            continue
        bad = [p for p in range(len(w) - 1) if w[p] > w[p + 1]]
        if not bad:
            mono = [0] * alg.size
            for g in w:
                mono[g] += 1
            _padd(done, tuple(mono), poly, 0, 1)
            continue
        p = bad[0] if strategy == "leftmost" else rng.choice(bad)
        for (x, y), e, c in alg.rewrite_pair(w[p], w[p + 1]):
            w2 = w[:p] + (x, y) + w[p + 2:]
            d = pending.setdefault(w2, {})
            for e0, v in poly.items():
                s = d.get(e0 + e, 0) + c * v
                if s:
                    d[e0 + e] = s
                else:
                    d.pop(e0 + e, None)
    return AlgebraElement.from_raw(alg, _prune(done))


def product_of_word(word: Sequence[tuple[int, int]], alg: QuantumMatrixAlgebra) -> AlgebraElement:
    """Same result as ``straighten`` but through the cached product kernel."""
    out = alg.one()
    for i, j in word:
        out = out * alg.gen(i, j)
    return out


# ---------------------------------------------------------------------------
# normalization, level and the lexicographic order


def _pair_sum(A: ExponentMatrix) -> int:
    """sum over rows and columns of a_x * a_y for distinct positions x < y."""
    rows = A.rows()
    s = 0
    for r in rows:
        for j in range(len(r)):
            for k in range(j):
                s += r[j] * r[k]
    for j in range(A.n):
        col = [rows[i][j] for i in range(A.m)]
        for i in range(len(col)):
            for k in range(i):
                s += col[i] * col[k]
    return s


def _as_matrix(A) -> ExponentMatrix:
    return A if isinstance(A, ExponentMatrix) else ExponentMatrix.from_rows(A)


def bar_leading_exponent(A) -> int:
    """k such that bar(Z^A) = q^k Z^A + (lex-smaller terms)."""
    return -2 * _pair_sum(_as_matrix(A))


def normalization_exponent(A) -> int:
    """k with N(A) = q^k; half of the bar leading exponent."""
    return -_pair_sum(_as_matrix(A))


def normalize(A) -> LaurentPoly:
    """The scalar N(A) making N(A) Z^A bar-invariant modulo lower terms."""
    return LaurentPoly.monomial(normalization_exponent(A))


def normalized_monomial(alg: QuantumMatrixAlgebra, A) -> AlgebraElement:
    """Z(A) = N(A) Z^A."""
    A = _as_matrix(A) if not isinstance(A, tuple) else alg.exponent_matrix(A)
    return alg.monomial(A, normalize(A))


def lex_compare(A, B) -> int:
    """-1, 0 or 1 as A is lex-smaller, equal or larger than B."""
    a = _as_matrix(A).flat if not isinstance(A, tuple) else A
    b = _as_matrix(B).flat if not isinstance(B, tuple) else B
    if len(a) != len(b):
        raise ShapeError("shape mismatch")
    return (a > b) - (a < b)


def d_matrix(m: int, n: int, i: int, j: int, s: int, t: int) -> tuple[int, ...]:
    """E_ij + E_st - E_it - E_sj for i < s, j < t, flattened."""
    if not (i < s and j < t):
        raise ValueError("need i < s and j < t")
    flat = [0] * (m * n)
    flat[(i - 1) * n + j - 1] += 1
    flat[(s - 1) * n + t - 1] += 1
    flat[(i - 1) * n + t - 1] -= 1
    flat[(s - 1) * n + j - 1] -= 1
    return tuple(flat)


def level(A) -> int:
    """Longest chain of subtractions A -> A - (E_ij + E_st - E_it - E_sj)
    that keeps every entry non-negative. Exhaustive, memoized search."""
    A = _as_matrix(A)
    return _level(A.m, A.n, A.flat)


@lru_cache(maxsize=None)
def _level(m: int, n: int, flat: tuple[int, ...]) -> int:
    best = 0
    for i in range(m):
        for j in range(n):
            if not flat[i * n + j]:
                continue
            for s in range(i + 1, m):
                for t in range(j + 1, n):
                    if not flat[s * n + t]:
                        continue
                    B = list(flat)
                    B[i * n + j] -= 1
                    B[s * n + t] -= 1
                    B[i * n + t] += 1
                    B[s * n + j] += 1
                    best = max(best, 1 + _level(m, n, tuple(B)))
    return best


def matrices_with_margins(rows: Sequence[int], cols: Sequence[int]) -> list[tuple[int, ...]]:
    """All non-negative integer matrices with the given row and column sums,
    flattened, in increasing lex order."""
    m, n = len(rows), len(cols)
    if sum(rows) != sum(cols):
        return []
    out: list[tuple[int, ...]] = []

    def rec(pos: int, rem_r: list[int], rem_c: list[int], acc: list[int]):
        if pos == m * n:
            out.append(tuple(acc))
            return
        i, j = divmod(pos, n)
        if j == n - 1:
            # last entry of the row is forced
            v = rem_r[i]
            if v > rem_c[j]:
                return
            if i == m - 1 and v != rem_c[j]:
                return
            rem_r[i] -= v
            rem_c[j] -= v
            acc.append(v)
            rec(pos + 1, rem_r, rem_c, acc)
            acc.pop()
            rem_r[i] += v
            rem_c[j] += v
            return
        hi = min(rem_r[i], rem_c[j])
        lo = rem_c[j] if i == m - 1 else 0
        for v in range(lo, hi + 1):
            rem_r[i] -= v
            rem_c[j] -= v
            acc.append(v)
            rec(pos + 1, rem_r, rem_c, acc)
            acc.pop()
            rem_r[i] += v
            rem_c[j] += v

    rec(0, list(rows), list(cols), [])
    out.sort()
    return out


def matrices_with_total(m: int, n: int, total: int) -> list[tuple[int, ...]]:
    """All m x n non-negative matrices with the given entry sum, lex order."""
    out = []

    def rec(pos, rem, acc):
        if pos == m * n - 1:
            out.append(tuple(acc + [rem]))
            return
        for v in range(rem + 1):
            rec(pos + 1, rem - v, acc + [v])

    if m * n == 0:
        return []
    rec(0, total, [])
    out.sort()
    return out

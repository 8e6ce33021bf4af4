"""Dual canonical basis by bar-triangular back-substitution."""

from __future__ import annotations

from .algebra import (
    AlgebraElement,
    ExponentMatrix,
    Mono,
    QuantumMatrixAlgebra,
    _padd,
    _pmul,
    _prune,
    algebra,
    as_mono,
    normalization_exponent,
)
from .errors import NotTriangular, PatternViolation, ShapeError
from .laurent import LaurentPoly
from .minors import MinorSpec, qdet, quantum_minor
from .reports import Report


def _nexp(alg: QuantumMatrixAlgebra, A: Mono) -> int:
    cache = alg.cache.setdefault("nexp", {})
    k = cache.get(A)
    if k is None:
        k = cache[A] = normalization_exponent(ExponentMatrix(alg.m, alg.n, A))
    return k


def _z_normalized(alg: QuantumMatrixAlgebra, A: Mono) -> AlgebraElement:
    return AlgebraElement(alg, {A: LaurentPoly.monomial(_nexp(alg, A))})


def dcb(A, alg: QuantumMatrixAlgebra | None = None) -> AlgebraElement:
    """The dual canonical basis element b(A).

    b(A) is bar-invariant and equals Z(A) plus a combination of Z(B) with
    B lex-smaller than A (same row and column sums) and coefficients in
    q^2 Z[q^2]. Results are cached on the algebra context.
    """
    if alg is None:
        if not isinstance(A, ExponentMatrix):
            A = ExponentMatrix.from_rows(A)
        alg = algebra(A.m, A.n)
    mono = as_mono(A, alg.m, alg.n)
    return _dcb(alg, mono)


def _dcb(alg: QuantumMatrixAlgebra, A: Mono) -> AlgebraElement:
    cache = alg.cache.setdefault("dcb", {})
    hit = cache.get(A)
    if hit is not None:
        return hit
    z = _z_normalized(alg, A)
    diff = z.bar() - z
    out = z
    for B, h in _expand(alg, diff, bound=A).items():
        out = out + _dcb(alg, B).scale(h.skew_decompose())
    cache[A] = out
    return out


def _expand(alg: QuantumMatrixAlgebra, x: AlgebraElement, bound: Mono | None = None) -> dict[Mono, LaurentPoly]:
    rem = x.raw()
    rem = {B: dict(p) for B, p in rem.items()}
    out: dict[Mono, LaurentPoly] = {}
    while rem:
        B = max(rem)
        if bound is not None and B >= bound:
            raise NotTriangular(f"term {B} is not below {bound}")
        # coefficient on Z(B) = coefficient on Z^B divided by N(B)
        h = {e - _nexp(alg, B): v for e, v in rem[B].items()}
        out[B] = LaurentPoly(h)
        for C, poly in _dcb(alg, B).raw().items():
            _padd(rem, C, _pmul(h, poly), 0, -1)
        rem = _prune(rem)
    return out


def expand_on_dcb(x: AlgebraElement) -> dict[ExponentMatrix, LaurentPoly]:
    """Coefficients c_B with x = sum c_B b(B)."""
    alg = x.algebra
    return {alg.exponent_matrix(B): c for B, c in _expand(alg, x).items()}


def expand_on_normalized(x: AlgebraElement) -> dict[Mono, LaurentPoly]:
    """Coefficients on the normalized monomials Z(B) = N(B) Z^B."""
    alg = x.algebra
    return {B: c.shift(-_nexp(alg, B)) for B, c in x.items()}


# ---------------------------------------------------------------------------
# checks


def verify_dcb_invariants(A, alg: QuantumMatrixAlgebra) -> Report:
    """bar(b(A)) == b(A); b(A) - Z(A) is a q^2 Z[q^2] combination of Z(B),
    B lex-below A, with the same row and column sums."""
    mono = as_mono(A, alg.m, alg.n)
    E = alg.exponent_matrix(mono)
    b = _dcb(alg, mono)
    problems = []
    if b.bar() != b:
        problems.append("not bar-invariant")
    rows, cols = E.row_sums(), E.col_sums()
    for B, c in expand_on_normalized(b).items():
        if B == mono:
            if c != 1:
                problems.append(f"leading coefficient {c}")
            continue
        EB = alg.exponent_matrix(B)
        if B > mono:
            problems.append(f"{EB} above {E}")
        if EB.row_sums() != rows or EB.col_sums() != cols:
            problems.append(f"{EB} has different margins")
        if any(e <= 0 or e % 2 for e in c.exponents()):
            problems.append(f"coefficient {c} of {EB} not in q^2 Z[q^2]")
    return Report("dcb-invariants", (alg.m, alg.n), str(E), not problems,
                  "; ".join(problems) or None)


def verify_det_product(A, n: int) -> list[Report]:
    """b(A) det_q = b(A + I) and the shape of Z(A) det_q on the Z-basis.

    The second report checks Z(A) det_q = Z(A+I) + sum c_B q^(2 g_B) Z(B)
    with c_B in {-1, 1}, g_B > 0 and B lex-below A + I.
    """
    alg = algebra(n, n)
    mono = as_mono(A, n, n)
    E = alg.exponent_matrix(mono)
    top = tuple(a + int(i % (n + 1) == 0) for i, a in enumerate(mono))
    det = qdet(n, alg)
    lhs = _dcb(alg, mono) * det
    rhs = _dcb(alg, top)
    ok = lhs == rhs
    out = [Report("det-product-dcb", (n, n), str(E), ok, None if ok else f"{lhs} != {rhs}")]

    prod = _z_normalized(alg, mono) * det
    problems = []
    for B, c in expand_on_normalized(prod).items():
        if B == top:
            if c != 1:
                problems.append(f"leading coefficient {c}")
            continue
        mono_c = c.as_monomial()
        if B > top:
            problems.append(f"{B} above A+I")
        if mono_c is None or abs(mono_c[0]) != 1 or mono_c[1] <= 0 or mono_c[1] % 2:
            problems.append(f"coefficient {c} at {alg.exponent_matrix(B)}")
    out.append(Report("det-product-normalized", (n, n), str(E), not problems,
                      "; ".join(problems) or None))
    return out


def block_for(kind: str, m: int, n: int, s: int, r1: int = 0, c1: int = 0) -> MinorSpec:
    """The solid block used by the minor-product lemmas.

    ``ll``: s x s block in the lower-left corner; ``lr``: lower-right corner;
    ``cc``: the block with r1 rows above it and c1 columns to its left.
    """
    if kind == "ll":
        return MinorSpec.solid(m - s + 1, 1, s)
    if kind == "lr":
        return MinorSpec.solid(m - s + 1, n - s + 1, s)
    if kind == "cc":
        return MinorSpec.solid(r1 + 1, c1 + 1, s)
    raise ValueError(f"unknown block kind {kind!r}")


def verify_minor_product(X, block: MinorSpec, alg: QuantumMatrixAlgebra, label: str = "block") -> Report:
    """b(X) * xi_block = q^(S(N) + S(W) - S(E) - S(S)) b(X + I_block).

    S(R) sums X over the region R relative to the block (north, west, east,
    south). X must vanish on the NW and SE regions, which is the zero-block
    pattern the lemmas assume; otherwise PatternViolation is raised.
    """
    mono = as_mono(X, alg.m, alg.n)
    if not block.is_solid() or not block.fits(alg.m, alg.n) or block.size == 0:
        raise ShapeError(f"bad block {block}")
    r0, r1 = block.rows[0], block.rows[-1]
    c0, c1 = block.cols[0], block.cols[-1]
    sums = {"N": 0, "W": 0, "E": 0, "S": 0}
    for g, a in enumerate(mono):
        if not a:
            continue
        i, j = alg.position(g)
        v = "N" if i < r0 else ("S" if i > r1 else "")
        h = "W" if j < c0 else ("E" if j > c1 else "")
        reg = v + h
        if reg in ("NW", "SE"):
            raise PatternViolation(f"X has entry {a} at ({i},{j}), {reg} of {block}")
        if reg in sums:
            sums[reg] += a
    k = sums["N"] + sums["W"] - sums["E"] - sums["S"]
    top = list(mono)
    for i, j in zip(block.rows, block.cols):
        top[alg.index(i, j)] += 1
    lhs = _dcb(alg, mono) * quantum_minor(block, alg)
    rhs = _dcb(alg, tuple(top)).shift(k)
    ok = lhs == rhs
    return Report(f"minor-product-{label}", (alg.m, alg.n),
                  {"X": str(alg.exponent_matrix(mono)), "block": str(block), "exponent": k},
                  ok, None if ok else f"{lhs} != {rhs}")


__all__ = [
    "as_scaled_dcb", "block_for", "dcb", "expand_on_dcb", "expand_on_normalized", "verify_dcb_invariants",
    "verify_det_product", "verify_minor_product",
]


def as_scaled_dcb(x: AlgebraElement) -> tuple[int, ExponentMatrix] | None:
    """(p, A) with x == q^p b(A), or None when x is not of that form."""
    if x.is_zero():
        return None
    alg = x.algebra
    terms = x.terms()
    top = max(terms)
    mono = terms[top].as_monomial()
    if mono is None or mono[0] != 1:
        return None
    p = mono[1] - _nexp(alg, top)
    if _dcb(alg, top).shift(p) != x:
        return None
    return p, alg.exponent_matrix(top)

"""Quantum minors, their expansions, q-commutation exponents and M-sets."""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from .algebra import AlgebraElement, QuantumMatrixAlgebra, algebra
from .errors import FormMismatch, IndexOutOfRange, NotSolid, ShapeError, ShapeNotSquare, TooSmall
from .laurent import LaurentPoly, neg_q2_pow
from .reports import Report

# ---------------------------------------------------------------------------
# minor specifications


@dataclass(frozen=True, order=True)
class MinorSpec:
    """Row and column index sets (1-based, increasing) of a quantum minor.

    The empty spec stands for the constant 1.
    """

    rows: tuple[int, ...]
    cols: tuple[int, ...]

    def __post_init__(self):
        rows = tuple(sorted(self.rows))
        cols = tuple(sorted(self.cols))
        if len(rows) != len(cols):
            raise ShapeError(f"|I|={len(rows)} but |J|={len(cols)}")
        if len(set(rows)) != len(rows) or len(set(cols)) != len(cols):
            raise ShapeError("repeated index in a minor")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)

    @classmethod
    def solid(cls, i: int, j: int, k: int) -> MinorSpec:
        """The k x k minor with upper-left corner (i, j)."""
        return cls(tuple(range(i, i + k)), tuple(range(j, j + k)))

    @classmethod
    def solid_bottom_right(cls, i: int, j: int, k: int) -> MinorSpec:
        """The k x k minor with lower-right corner (i, j)."""
        return cls.solid(i - k + 1, j - k + 1, k)

    @property
    def size(self) -> int:
        return len(self.rows)

    def is_solid(self) -> bool:
        return all(b == a + 1 for a, b in zip(self.rows, self.rows[1:])) and \
            all(b == a + 1 for a, b in zip(self.cols, self.cols[1:]))

    def fits(self, m: int, n: int) -> bool:
        return all(1 <= i <= m for i in self.rows) and all(1 <= j <= n for j in self.cols)

    def contains(self, i: int, j: int) -> bool:
        return i in self.rows and j in self.cols

    @property
    def top_left(self) -> tuple[int, int]:
        return self.rows[0], self.cols[0]

    @property
    def bottom_right(self) -> tuple[int, int]:
        return self.rows[-1], self.cols[-1]

    def cells(self) -> list[tuple[int, int]]:
        return [(i, j) for i in self.rows for j in self.cols]

    def __str__(self):
        if not self.rows:
            return "1"
        return f"xi[{','.join(map(str, self.rows))}|{','.join(map(str, self.cols))}]"

    def to_json(self) -> dict:
        return {"rows": list(self.rows), "cols": list(self.cols)}

    @classmethod
    def from_json(cls, d) -> MinorSpec:
        return cls(tuple(d["rows"]), tuple(d["cols"]))


EMPTY = MinorSpec((), ())


def inversions(seq: Sequence[int]) -> int:
    return sum(1 for a, b in itertools.combinations(seq, 2) if a > b)


# ---------------------------------------------------------------------------
# building minors


def _row_form(spec: MinorSpec, alg: QuantumMatrixAlgebra) -> AlgebraElement:
    # Rows increase along each product, so every term is already a PBW monomial.
    terms = {}
    for perm in itertools.permutations(range(spec.size)):
        mono = [0] * alg.size
        for r, p in zip(spec.rows, perm):
            mono[alg.index(r, spec.cols[p])] += 1
        terms[tuple(mono)] = neg_q2_pow(inversions(perm))
    return AlgebraElement(alg, terms)


def _col_form(spec: MinorSpec, alg: QuantumMatrixAlgebra) -> AlgebraElement:
    out = alg.zero()
    for perm in itertools.permutations(range(spec.size)):
        term = alg.one()
        for c, p in zip(spec.cols, perm):
            term = term * alg.gen(spec.rows[p], c)
        out = out + term.scale(neg_q2_pow(inversions(perm)))
    return out


def quantum_minor(spec: MinorSpec, alg: QuantumMatrixAlgebra, check: bool = True) -> AlgebraElement:
    """The quantum minor xi^I_J (rows I, columns J) in normal form.

    With ``check`` the column expansion is straightened too and must agree
    with the row expansion; otherwise FormMismatch is raised.
    """
    if not spec.fits(alg.m, alg.n):
        raise ShapeError(f"{spec} does not fit in {alg.m}x{alg.n}")
    cache = alg.cache.setdefault("minor", {})
    hit = cache.get(spec)
    if hit is not None:
        return hit
    if spec.size == 0:
        x = alg.one()
    else:
        x = _row_form(spec, alg)
        if check and spec.size > 1:
            y = _col_form(spec, alg)
            if x != y:
                raise FormMismatch(f"{spec}: row form {x} != column form {y}")
    cache[spec] = x
    return x


def minor(rows: Iterable[int], cols: Iterable[int], alg: QuantumMatrixAlgebra) -> AlgebraElement:
    return quantum_minor(MinorSpec(tuple(rows), tuple(cols)), alg)


def qdet(n: int, alg: QuantumMatrixAlgebra | None = None) -> AlgebraElement:
    alg = alg or algebra(n, n)
    if alg.m != alg.n or alg.n != n:
        raise ShapeNotSquare(f"qdet({n}) needs an {n}x{n} algebra")
    full = tuple(range(1, n + 1))
    return quantum_minor(MinorSpec(full, full), alg)


def cofactor(i: int, j: int, alg: QuantumMatrixAlgebra) -> AlgebraElement:
    """A(i, j): the minor with row i and column j deleted."""
    if not (1 <= i <= alg.m and 1 <= j <= alg.n):
        raise IndexOutOfRange(f"({i},{j}) outside {alg.m}x{alg.n}")
    rows = tuple(r for r in range(1, alg.m + 1) if r != i)
    cols = tuple(c for c in range(1, alg.n + 1) if c != j)
    return quantum_minor(MinorSpec(rows, cols), alg)


def sgn_q(I: Iterable[int], J: Iterable[int]) -> LaurentPoly:
    """0 if I and J meet, else (-q^2)^#{(i, j) in I x J : i > j}."""
    I, J = list(I), list(J)
    if set(I) & set(J):
        return LaurentPoly()
    return neg_q2_pow(sum(1 for i in I for j in J if i > j))


# ---------------------------------------------------------------------------
# Laplace and cofactor expansions


def verify_laplace(I, J, J1, J2, alg: QuantumMatrixAlgebra, form: str = "A") -> Report:
    """Check a Laplace expansion along a split J = J1 + J2.

    Form "A": rows I, columns J,
        Sgn(J1;J2) xi^I_J = sum over I = I1 + I2 of xi^I1_J1 xi^I2_J2 Sgn(I1;I2).
    Form "B": rows J, columns I,
        Sgn(J1;J2) xi^J_I = sum over I = I1 + I2 of xi^J1_I1 xi^J2_I2 Sgn(I1;I2).
    """
    I, J, J1, J2 = (tuple(sorted(x)) for x in (I, J, J1, J2))
    if sorted(J1 + J2) != list(J) or len(I) != len(J):
        raise ShapeError("J1, J2 must partition J and |I| = |J|")
    if form == "A":
        lhs = quantum_minor(MinorSpec(I, J), alg).scale(sgn_q(J1, J2))
    elif form == "B":
        lhs = quantum_minor(MinorSpec(J, I), alg).scale(sgn_q(J1, J2))
    else:
        raise ValueError(f"unknown form {form!r}")
    rhs = alg.zero()
    for I1 in itertools.combinations(I, len(J1)):
        I2 = tuple(i for i in I if i not in I1)
        if form == "A":
            a = quantum_minor(MinorSpec(I1, J1), alg)
            b = quantum_minor(MinorSpec(I2, J2), alg)
        else:
            a = quantum_minor(MinorSpec(J1, I1), alg)
            b = quantum_minor(MinorSpec(J2, I2), alg)
        rhs = rhs + (a * b).scale(sgn_q(I1, I2))
    ok = lhs == rhs
    return Report(
        f"laplace-{form}", (alg.m, alg.n),
        {"I": I, "J": J, "J1": J1, "J2": J2}, ok,
        None if ok else f"lhs={lhs} rhs={rhs}",
    )


def verify_pw_expansion(i: int, k: int, n: int) -> list[Report]:
    """The four cofactor expansions of delta_ik det_q in an n x n algebra.

        (1) sum_j (-q^2)^(j-k) Z[i,j] A(k,j)
        (2) sum_j (-q^2)^(i-j) A(i,j) Z[k,j]
        (3) sum_j (-q^2)^(j-k) Z[j,i] A(j,k)
        (4) sum_j (-q^2)^(i-j) A(j,i) Z[j,k]
    """
    alg = algebra(n, n)
    det = qdet(n, alg)
    target = det if i == k else alg.zero()
    z = alg.gen
    forms = {
        1: lambda j: (z(i, j) * cofactor(k, j, alg)).scale(neg_q2_pow(j - k)),
        2: lambda j: (cofactor(i, j, alg) * z(k, j)).scale(neg_q2_pow(i - j)),
        3: lambda j: (z(j, i) * cofactor(j, k, alg)).scale(neg_q2_pow(j - k)),
        4: lambda j: (cofactor(j, i, alg) * z(j, k)).scale(neg_q2_pow(i - j)),
    }
    out = []
    for f, term in forms.items():
        total = alg.zero()
        for j in range(1, n + 1):
            total = total + term(j)
        ok = total == target
        out.append(Report(f"cofactor-expansion-{f}", (n, n), {"i": i, "k": k}, ok,
                          None if ok else f"got {total}"))
    return out


# ---------------------------------------------------------------------------
# q-commutation


def commutation_exponent(x: AlgebraElement, y: AlgebraElement) -> int | None:
    """lam with x*y = q^(2 lam) y*x, or None when no such lam exists."""
    xy = x * y
    yx = y * x
    if yx.is_zero():
        return 0 if xy.is_zero() else None
    B, c2 = yx.leading()
    c1 = xy.coeff(B)
    if c1.is_zero():
        return None
    k = c1.min_exp() - c2.min_exp()
    if k % 2:
        return None
    if yx.shift(k) != xy:
        return None
    return k // 2


def minor_commutation(s1: MinorSpec, s2: MinorSpec, alg: QuantumMatrixAlgebra) -> int | None:
    """Cached commutation exponent of two quantum minors."""
    cache = alg.cache.setdefault("commute", {})
    key = (s1, s2)
    if key in cache:
        return cache[key]
    lam = commutation_exponent(quantum_minor(s1, alg), quantum_minor(s2, alg))
    cache[key] = lam
    cache[(s2, s1)] = None if lam is None else -lam
    return lam


def region(i: int, j: int, spec: MinorSpec) -> str:
    """Position of (i, j) relative to a solid minor: one of
    NW N NE W IN E SW S SE."""
    if not spec.is_solid() or spec.size == 0:
        raise NotSolid(str(spec))
    r0, r1 = spec.rows[0], spec.rows[-1]
    c0, c1 = spec.cols[0], spec.cols[-1]
    v = "N" if i < r0 else ("S" if i > r1 else "")
    h = "W" if j < c0 else ("E" if j > c1 else "")
    return (v + h) or "IN"


_REGION_P = {"W": 1, "N": 1, "IN": 0, "SW": 0, "NE": 0, "S": -1, "E": -1, "NW": None, "SE": None}


def region_exponent(i: int, j: int, spec: MinorSpec) -> int | None:
    """Predicted lam with Z[i,j] * M = q^(2 lam) M * Z[i,j] (None for NW, SE)."""
    return _REGION_P[region(i, j, spec)]


def predicted_minor_exponent(s1: MinorSpec, s2: MinorSpec) -> int | None:
    """Counting-rule prediction of lam(xi_1, xi_2) for solid minors.

    Each generator contributes +1 when it lies W or N of the other minor,
    -1 when S or E, 0 otherwise; the rule applies when no generator of one
    minor is NW or SE of the other. Returns None when neither side fits.
    """
    if s1.size == 0 or s2.size == 0:
        return 0

    def side(a: MinorSpec, b: MinorSpec):
        ps = [region_exponent(i, j, b) for i in a.rows for j in a.cols]
        if any(p is None for p in ps):
            return None
        # p splits as f(row) + g(col), so any transversal gives the same sum
        return sum(region_exponent(i, j, b) for i, j in zip(a.rows, a.cols))

    s = side(s1, s2)
    if s is not None:
        return s
    s = side(s2, s1)
    return None if s is None else -s


# ---------------------------------------------------------------------------
# covariance profile of the corner minors det_q(t)


def corner_minor(t: int, alg: QuantumMatrixAlgebra) -> MinorSpec:
    """det_q(t): rows 1..t, last t columns."""
    if not 1 <= t <= min(alg.m, alg.n):
        raise ShapeError(f"t={t} out of range for {alg.m}x{alg.n}")
    return MinorSpec(tuple(range(1, t + 1)), tuple(range(alg.n - t + 1, alg.n + 1)))


@dataclass
class CovarianceProfile:
    t: int
    shape: tuple[int, int]
    measured: dict[tuple[int, int], int | None]
    predicted: dict[tuple[int, int], int]

    @property
    def matches(self) -> bool:
        return self.measured == self.predicted

    def ascii(self) -> str:
        m, n = self.shape
        sym = {1: "+", -1: "-", 0: "0", None: "?"}
        return "\n".join(" ".join(sym[self.measured[(i, j)]] for j in range(1, n + 1))
                         for i in range(1, m + 1))


def covariance_profile(t: int, alg: QuantumMatrixAlgebra) -> CovarianceProfile:
    """lam(Z[i,j], det_q(t)) for every generator, measured and predicted."""
    spec = corner_minor(t, alg)
    d = quantum_minor(spec, alg)
    n = alg.n
    measured, predicted = {}, {}
    for i in range(1, alg.m + 1):
        for j in range(1, n + 1):
            measured[(i, j)] = commutation_exponent(alg.gen(i, j), d)
            if i <= t and j <= n - t:
                predicted[(i, j)] = 1
            elif i > t and j > n - t:
                predicted[(i, j)] = -1
            else:
                predicted[(i, j)] = 0
    return CovarianceProfile(t, (alg.m, alg.n), measured, predicted)


# ---------------------------------------------------------------------------
# M-sets


@dataclass(frozen=True)
class MSet:
    """The six minors attached to the s x s block with upper-left (i0, j0)."""

    anchor: tuple[int, int]
    size: int
    Y_r: MinorSpec
    Y_l: MinorSpec
    X_o: MinorSpec
    X_t: MinorSpec
    X_b: MinorSpec
    D: MinorSpec

    def block(self) -> list[tuple[int, int]]:
        i0, j0 = self.anchor
        return [(i0 + a, j0 + b) for a in range(self.size) for b in range(self.size)]

    def corners(self) -> tuple[tuple[int, int], tuple[int, int]]:
        i0, j0 = self.anchor
        return (i0, j0), (i0 + self.size - 1, j0 + self.size - 1)

    def family(self) -> tuple[MinorSpec, ...]:
        """(X_b, X_o, D, Y_r, Y_l), the order used for the Lambda identity."""
        return (self.X_b, self.X_o, self.D, self.Y_r, self.Y_l)


def mset(i0: int, j0: int, m: int, n: int, size: int | None = None) -> MSet:
    """M-set anchored at (i0, j0); ``size`` defaults to the largest block."""
    if not (1 <= i0 <= m and 1 <= j0 <= n):
        raise ShapeError(f"anchor ({i0},{j0}) outside {m}x{n}")
    smax = min(m - i0 + 1, n - j0 + 1)
    s = smax if size is None else size
    if s > smax:
        raise ShapeError(f"block of size {s} at ({i0},{j0}) leaves {m}x{n}")
    if s < 2:
        raise TooSmall(f"M-set at ({i0},{j0}) has size {s} < 2")

    def sq(r0, c0, k):
        if k == 0:
            return EMPTY
        return MinorSpec.solid(i0 + r0, j0 + c0, k)

    return MSet(
        anchor=(i0, j0),
        size=s,
        Y_r=sq(0, 1, s - 1),
        Y_l=sq(1, 0, s - 1),
        X_o=sq(1, 1, s - 2),
        X_t=sq(0, 0, s - 1),
        X_b=sq(1, 1, s - 1),
        D=sq(0, 0, s),
    )


def all_msets(m: int, n: int, all_sizes: bool = True) -> list[MSet]:
    out = []
    for i0 in range(1, m + 1):
        for j0 in range(1, n + 1):
            smax = min(m - i0 + 1, n - j0 + 1)
            sizes = range(2, smax + 1) if all_sizes else [smax]
            for s in sizes:
                if s >= 2:
                    out.append(mset(i0, j0, m, n, s))
    return out


def lambda_matrix(specs: Sequence[MinorSpec], alg: QuantumMatrixAlgebra):
    """Integer matrix of q-exponents: x_i x_j = q^(L[i][j]) x_j x_i.

    Entries are twice the commutation exponent. Returns None at a pair that
    does not q-commute.
    """
    k = len(specs)
    L = [[0] * k for _ in range(k)]
    for a in range(k):
        for b in range(a + 1, k):
            lam = minor_commutation(specs[a], specs[b], alg)
            if lam is None:
                return None, (a, b)
            L[a][b] = 2 * lam
            L[b][a] = -2 * lam
    return L, None


def verify_mset_identities(ms: MSet, alg: QuantumMatrixAlgebra) -> list[Report]:
    """Exchange relation, commutator, covariance sums and the Lambda column."""
    shape = (alg.m, alg.n)
    idx = {"anchor": ms.anchor, "size": ms.size}
    get = lambda s: quantum_minor(s, alg)  # noqa: E731
    Xt, Xb, Xo, D, Yr, Yl = (get(s) for s in (ms.X_t, ms.X_b, ms.X_o, ms.D, ms.Y_r, ms.Y_l))
    out = []

    lhs = Xt * Xb
    rhs = Xo * D + (Yr * Yl).shift(2)
    ok = lhs == rhs
    out.append(Report("mset-exchange", shape, idx, ok, None if ok else f"{lhs} != {rhs}"))

    comm = Xt * Xb - Xb * Xt
    want = (Yr * Yl).scale(LaurentPoly({2: 1, -2: -1}))
    ok = comm == want
    out.append(Report("mset-commutator", shape, idx, ok, None if ok else f"{comm} != {want}"))

    corners = ms.corners()
    bad = []
    for (i, j) in ms.block():
        if (i, j) in corners:
            continue
        g = MinorSpec((i,), (j,))
        lams = [minor_commutation(s, g, alg) for s in (ms.Y_r, ms.Y_l, ms.X_o, ms.D)]
        if any(v is None for v in lams) or lams[0] + lams[1] - lams[2] - lams[3] != 0:
            bad.append(((i, j), lams))
    out.append(Report("mset-covariance", shape, idx, not bad, None if not bad else str(bad)))

    L, fail = lambda_matrix(ms.family(), alg)
    if L is None:
        out.append(Report("mset-lambda", shape, idx, False, f"pair {fail} does not q-commute"))
    else:
        v = (0, -1, -1, 1, 1)
        got = tuple(sum(L[r][c] * v[c] for c in range(5)) for r in range(5))
        ok = got == (-4, 0, 0, 0, 0)
        out.append(Report("mset-lambda", shape, idx, ok, None if ok else f"Lambda v = {got}",
                          details={"lambda_v": got}))
    return out


def verify_power_commutators(r: int, n: int) -> list[Report]:
    """Commutators of Z[n,n]^r and Z[1,1]^r with their cofactors:

        [Z_nn^r, A(n,n)] = q^4 (1 - q^(-4r)) M1 Z_nn^(r-1),  det = Z_nn A(n,n) + M1
        [Z_11^r, A(1,1)] = -(1 - q^(-4r)) Z_11^(r-1) N1,
        N1 = sum_{j>=2} (-q^2)^(j-1) Z[1,j] A(1,j)
    """
    alg = algebra(n, n)
    det = qdet(n, alg)
    c = LaurentPoly({0: 1, -4 * r: -1})
    out = []

    znn = alg.gen(n, n)
    Ann = cofactor(n, n, alg)
    M1 = det - znn * Ann
    zr = znn ** r
    lhs = zr * Ann - Ann * zr
    rhs = (M1 * znn ** (r - 1)).scale(c.shift(4))
    ok = lhs == rhs
    out.append(Report("power-commutator-nn", (n, n), {"r": r}, ok, None if ok else f"{lhs} != {rhs}"))

    z11 = alg.gen(1, 1)
    A11 = cofactor(1, 1, alg)
    N1 = alg.zero()
    for j in range(2, n + 1):
        N1 = N1 + (alg.gen(1, j) * cofactor(1, j, alg)).scale(neg_q2_pow(j - 1))
    zr = z11 ** r
    lhs = zr * A11 - A11 * zr
    rhs = (z11 ** (r - 1) * N1).scale(-c)
    ok = lhs == rhs
    out.append(Report("power-commutator-11", (n, n), {"r": r}, ok, None if ok else f"{lhs} != {rhs}"))
    return out


__all__ = [
    "EMPTY", "CovarianceProfile", "MSet", "MinorSpec", "all_msets", "cofactor",
    "commutation_exponent", "corner_minor", "covariance_profile", "lambda_matrix", "minor",
    "minor_commutation", "mset", "predicted_minor_exponent", "qdet", "quantum_minor",
    "region", "region_exponent", "sgn_q", "verify_laplace", "verify_mset_identities",
    "verify_power_commutators", "verify_pw_expansion",
]

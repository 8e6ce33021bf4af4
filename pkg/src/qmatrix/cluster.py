"""Quantum seeds, Berenstein-Zelevinsky mutation and quantum line mutations.

Lambda matrices here hold exponents of q: x_i x_j = q^(L[i][j]) x_j x_i.
Since all variables q-commute through powers of q^2, every entry is even
and equals twice the commutation exponent returned by
``minors.commutation_exponent``. With this normalization a compatible pair
coming from the lines of the grid satisfies B^T L = 2 [D | 0] with D = 2 I,
i.e. L B = -4 on the mutable diagonal.
"""

from __future__ import annotations

import json
from collections import deque
from collections.abc import Sequence
from dataclasses import dataclass, field, replace

import numpy as np
import sympy

from .algebra import AlgebraElement, QuantumMatrixAlgebra, algebra
from .errors import (
    NonIntegralSeed,
    NotClosestPair,
    NotCompatible,
    NotMutable,
    NotQCommuting,
    NotSolid,
    PredictionMismatch,
    ShapeError,
)
from .lines import BrokenLine, Point
from .minors import MinorSpec, MSet, lambda_matrix, quantum_minor
from .reports import Report

# ---------------------------------------------------------------------------
# matrices


def _frozen(a) -> np.ndarray:
    arr = np.array(a, dtype=np.int64)
    arr.setflags(write=False)
    return arr


def lambda_of(specs: Sequence[MinorSpec], alg: QuantumMatrixAlgebra) -> np.ndarray:
    """Measured Lambda matrix of a list of quantum minors."""
    L, fail = lambda_matrix(list(specs), alg)
    if L is None:
        raise NotQCommuting(*fail, message=f"{specs[fail[0]]} and {specs[fail[1]]} do not q-commute")
    return _frozen(L)


def check_compatible(lam, b, ex: Sequence[int]) -> dict[int, int]:
    """Verify sum_k b[k][j] lam[k][i] = 2 delta(i, ex[j]) d_j with d_j > 0.

    Returns {ex[j]: d_j}. Raises NotCompatible with the first offending
    (row i, column j) otherwise.
    """
    lam = np.asarray(lam, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if lam.shape[0] != lam.shape[1] or b.shape != (lam.shape[0], len(ex)):
        raise ShapeError(f"lambda {lam.shape} and B {b.shape} with {len(ex)} mutable columns")
    if not (lam == -lam.T).all():
        raise NotCompatible(None, "lambda is not skew-symmetric")
    M = b.T @ lam
    out = {}
    for j, k in enumerate(ex):
        for i in range(lam.shape[0]):
            v = int(M[j, i])
            if i == k:
                if v <= 0 or v % 2:
                    raise NotCompatible((i, j), f"diagonal entry {v} at variable {i}")
                out[k] = v // 2
            elif v:
                raise NotCompatible((i, j), f"entry {v} at variable {i}, column {j}")
    return out


def mutation_matrices(b, ex: Sequence[int], k: int) -> tuple[np.ndarray, np.ndarray]:
    """E and F for mutation at variable k (sign choice epsilon = +1)."""
    b = np.asarray(b, dtype=np.int64)
    if k not in ex:
        raise NotMutable(f"variable {k} is not mutable")
    jk = list(ex).index(k)
    size, cols = b.shape
    E = np.eye(size, dtype=np.int64)
    for a in range(size):
        E[a, k] = -1 if a == k else max(0, -int(b[a, jk]))
    F = np.eye(cols, dtype=np.int64)
    for c in range(cols):
        F[jk, c] = -1 if c == jk else max(0, int(b[k, c]))
    return E, F


def mutate_pair(lam, b, ex: Sequence[int], k: int) -> tuple[np.ndarray, np.ndarray]:
    """(E^T lam E, E b F)."""
    E, F = mutation_matrices(b, ex, k)
    lam = np.asarray(lam, dtype=np.int64)
    return _frozen(E.T @ lam @ E), _frozen(E @ np.asarray(b, dtype=np.int64) @ F)


def matrix_mutation(b, ex: Sequence[int], k: int) -> np.ndarray:
    """The usual entrywise rule, kept as an independent check of E b F."""
    b = np.asarray(b, dtype=np.int64)
    jk = list(ex).index(k)
    out = b.copy()
    for i in range(b.shape[0]):
        for j in range(b.shape[1]):
            if i == k or j == jk:
                out[i, j] = -b[i, j]
            else:
                bik, bkj = int(b[i, jk]), int(b[k, j])
                out[i, j] = b[i, j] + (abs(bik) * bkj + bik * abs(bkj)) // 2
    return out


# ---------------------------------------------------------------------------
# seeds


@dataclass(frozen=True)
class QuantumSeed:
    """Variables (as minors), Lambda, exchange matrix and mutable indices.

    Column j of ``b`` belongs to variable ``ex[j]``. ``labels`` are the grid
    points the variables sit at when the seed comes from a broken line.
    """

    shape: tuple[int, int]
    variables: tuple[MinorSpec, ...]
    lam: np.ndarray
    b: np.ndarray
    ex: tuple[int, ...]
    labels: tuple[Point, ...] | None = None
    line: BrokenLine | None = None

    def __post_init__(self):
        object.__setattr__(self, "lam", _frozen(self.lam))
        object.__setattr__(self, "b", _frozen(np.asarray(self.b).reshape(len(self.variables), len(self.ex))))
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "ex", tuple(int(e) for e in self.ex))

    @property
    def algebra(self) -> QuantumMatrixAlgebra:
        return algebra(*self.shape)

    def index(self, spec: MinorSpec) -> int:
        try:
            return self.variables.index(spec)
        except ValueError:
            raise PredictionMismatch(f"{spec} is not a variable of this seed") from None

    def element(self, i: int) -> AlgebraElement:
        v = self.variables[i]
        if isinstance(v, PendingVariable):
            raise NotMutable(f"variable {i} has no polynomial expression")
        return quantum_minor(v, self.algebra)

    def half_lambda(self, u, v) -> int:
        """u^T lam v / 2: the bilinear form with x(u) x(v) = q^(.) x(u + v)."""
        val = int(np.asarray(u) @ self.lam @ np.asarray(v))
        return val // 2

    def to_json(self) -> dict:
        return {
            "shape": list(self.shape),
            "line": str(self.line) if self.line else None,
            "variables": [
                {"point": list(self.labels[i]) if self.labels else None,
                 ("pending" if isinstance(s, PendingVariable) else "minor"): s.to_json()}
                for i, s in enumerate(self.variables)
            ],
            "lambda": self.lam.tolist(),
            "b": self.b.tolist(),
            "ex": list(self.ex),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, d) -> QuantumSeed:
        shape = tuple(d["shape"])
        variables = tuple(MinorSpec.from_json(v["minor"]) for v in d["variables"])
        labels = None
        if d["variables"] and d["variables"][0]["point"] is not None:
            labels = tuple(tuple(v["point"]) for v in d["variables"])
        line = BrokenLine.parse(d["line"], *shape) if d.get("line") else None
        ex = tuple(d["ex"])
        b = np.array(d["b"], dtype=np.int64).reshape(len(variables), len(ex))
        return cls(shape, variables, np.array(d["lambda"], dtype=np.int64), b, ex, labels, line)

    def same_as(self, other: QuantumSeed) -> bool:
        return (
            self.shape == other.shape
            and self.variables == other.variables
            and self.ex == other.ex
            and np.array_equal(self.lam, other.lam)
            and np.array_equal(self.b, other.b)
        )


def normalized_monomial(seed: QuantumSeed, a: Sequence[int]) -> AlgebraElement:
    """x(a) = q^(sum_{i<j} lam_ji a_i a_j / 2) x_1^a_1 ... x_r^a_r for a >= 0."""
    alg = seed.algebra
    if any(v < 0 for v in a):
        raise ValueError("only non-negative exponent vectors have polynomial x(a)")
    half = seed.lam // 2
    e = 0
    for i in range(len(a)):
        for j in range(i + 1, len(a)):
            e += int(half[j, i]) * a[i] * a[j]
    out = alg.one()
    for i, v in enumerate(a):
        if v:
            out = out * seed.element(i) ** v
    return out.shift(e)


@dataclass(frozen=True)
class PendingVariable:
    """A mutated variable known only through x_new * x_old = rhs."""

    old: MinorSpec
    rhs: AlgebraElement

    def __str__(self):
        return f"({self.rhs}) * {self.old}^-1"

    def to_json(self) -> dict:
        return {"times": self.old.to_json(), "equals": self.rhs.to_json()}


@dataclass(frozen=True)
class ExchangeRelation:
    """x_new * x_old = rhs, the denominator-free form of the exchange."""

    old: MinorSpec
    new: MinorSpec | PendingVariable
    rhs: AlgebraElement
    plus: tuple[int, ...]
    minus: tuple[int, ...]


def exchange_rhs(seed: QuantumSeed, k: int) -> tuple[AlgebraElement, tuple[int, ...], tuple[int, ...]]:
    """q^(lam(a+, e_k)) x(a+) + q^(lam(a-, e_k)) x(a-), with a+ / a- the
    positive / negative parts of column k of B (lam halved)."""
    jk = list(seed.ex).index(k)
    col = [int(v) for v in seed.b[:, jk]]
    plus = tuple(max(0, v) for v in col)
    minus = tuple(max(0, -v) for v in col)
    ek = [0] * len(col)
    ek[k] = 1
    rhs = normalized_monomial(seed, plus).shift(seed.half_lambda(plus, ek)) + \
        normalized_monomial(seed, minus).shift(seed.half_lambda(minus, ek))
    return rhs, plus, minus


def mutate(seed: QuantumSeed, k: int, target: MinorSpec | None = None,
           check_lambda: bool = True) -> tuple[QuantumSeed, ExchangeRelation]:
    """Mutate at variable k.

    With a ``target`` minor the new variable is checked through
    target * x_k == exchange right-hand side, and with ``check_lambda`` the
    new Lambda E^T L E is compared with exponents measured on the new
    family. Without a target the new variable is kept as a
    PendingVariable holding that identity.
    """
    if k not in seed.ex:
        raise NotMutable(f"variable {k} ({seed.variables[k]}) is not mutable")
    if isinstance(seed.variables[k], PendingVariable):
        raise NotMutable(f"variable {k} is only known through its exchange relation")
    check_compatible(seed.lam, seed.b, seed.ex)
    alg = seed.algebra
    rhs, plus, minus = exchange_rhs(seed, k)
    lam2, b2 = mutate_pair(seed.lam, seed.b, seed.ex, k)
    variables = list(seed.variables)
    if target is None:
        new_var = PendingVariable(seed.variables[k], rhs)
    else:
        got = quantum_minor(target, alg) * seed.element(k)
        if got != rhs:
            raise PredictionMismatch(
                f"mutating {seed.variables[k]}: {target} * x_k = {got}, exchange gives {rhs}")
        new_var = target
    variables[k] = new_var
    if check_lambda and target is not None and not any(isinstance(v, PendingVariable) for v in variables):
        measured = lambda_of(variables, alg)
        if not np.array_equal(measured, lam2):
            raise PredictionMismatch(f"E^T L E differs from measured exponents after mutating {k}")
    new = replace(seed, variables=tuple(variables), lam=lam2, b=b2, labels=None, line=None)
    return new, ExchangeRelation(seed.variables[k], new_var, rhs, plus, minus)


def mset_seed(ms: MSet, alg: QuantumMatrixAlgebra) -> QuantumSeed:
    """The five-variable seed (X_b, X_o, D, Y_r, Y_l) with X_b mutable and
    the column (0, -1, -1, 1, 1). An empty X_o is left out."""
    specs = [s for s in ms.family() if s.size]
    col = {ms.X_b: 0, ms.X_o: -1, ms.D: -1, ms.Y_r: 1, ms.Y_l: 1}
    b = np.array([[col[s]] for s in specs], dtype=np.int64)
    return QuantumSeed((alg.m, alg.n), tuple(specs), lambda_of(specs, alg), b, (0,))


# ---------------------------------------------------------------------------
# seeds attached to lines


def covariant_minors(m: int, n: int) -> frozenset[MinorSpec]:
    """The m+n-1 minors that stay frozen in every line seed."""
    return frozenset(BrokenLine.plus(m, n).covariant_set().values())


def line_order(line: BrokenLine) -> list[Point]:
    """Variable order: mutable points on or below the line, then the points
    of the minimal line, then the points above the line (each row-major).

    Points of the minimal line carry the covariant elements of the part on
    or below the line; they are frozen in the sub-seed of that part.
    """
    cov = set(line.covariant_points())
    below = [p for p in line.grid_points() if p not in line.S]
    first = [p for p in below if p not in cov]
    second = [p for p in below if p in cov]
    return first + second + sorted(line.S)


def _line_layout(line: BrokenLine) -> tuple[list[Point], list[MinorSpec], list[int]]:
    order = line_order(line)
    specs = [line.family[p] for p in order]
    frozen = covariant_minors(line.m, line.n)
    ex = [i for i, s in enumerate(specs) if s not in frozen]
    return order, specs, ex


def relabel(seed: QuantumSeed, line: BrokenLine) -> QuantumSeed:
    """Reorder a seed into the canonical layout of ``line``."""
    order, specs, ex = _line_layout(line)
    return _reorder(seed, order, specs, ex, line)


def _reorder(seed: QuantumSeed, order, specs, ex, line) -> QuantumSeed:
    if sorted(specs) != sorted(seed.variables):
        missing = set(specs) - set(seed.variables)
        extra = set(seed.variables) - set(specs)
        raise PredictionMismatch(f"family of {line} differs: missing {sorted(map(str, missing))}, "
                                 f"extra {sorted(map(str, extra))}")
    perm = [seed.variables.index(s) for s in specs]
    if sorted(seed.variables[i] for i in seed.ex) != sorted(specs[i] for i in ex):
        raise PredictionMismatch(f"mutable set does not match the layout of {line}")
    col_of = {seed.ex[j]: j for j in range(len(seed.ex))}
    cperm = [col_of[perm[i]] for i in ex]
    lam = seed.lam[np.ix_(perm, perm)]
    b = seed.b[np.ix_(perm, cperm)]
    return QuantumSeed(seed.shape, tuple(specs), lam, b, tuple(ex), tuple(order), line)


def _solve_exchange_matrix(lam: np.ndarray, ex: list[int], frozen: list[int]) -> np.ndarray:
    """Integral B with lam B = -4 [e_k for k in ex].

    With lam invertible this is -4 lam^-1 restricted to the mutable
    columns. Otherwise the particular solution vanishing on trailing frozen
    coordinates is used (free parameters set to 0).
    """
    size = lam.shape[0]
    order = ex + [i for i in range(size) if i not in ex and i not in frozen] + frozen
    L = sympy.Matrix(lam.tolist())
    Lp = L[:, order]
    rhs = sympy.zeros(size, len(ex))
    for j, k in enumerate(ex):
        rhs[k, j] = -4
    if L.det() != 0:
        sol = L.inv() * rhs
        out = sol
    else:
        solp, params = Lp.gauss_jordan_solve(rhs)
        solp = solp.subs({p: 0 for p in params})
        out = sympy.zeros(size, len(ex))
        for r, idx in enumerate(order):
            out[idx, :] = solp[r, :]
    if any(not v.is_integer for v in out):
        raise NonIntegralSeed(f"-4 lambda^-1 has non-integral entries: {out.tolist()}")
    return np.array(out.tolist(), dtype=np.int64)


def base_seed(m: int, n: int) -> QuantumSeed:
    """The seed of the minimal line with B solving lam B = -4 [I; 0]."""
    line = BrokenLine.minus(m, n)
    alg = algebra(m, n)
    order, specs, ex = _line_layout(line)
    lam = lambda_of(specs, alg)
    frozen = [i for i in range(len(specs)) if i not in ex]
    b = _solve_exchange_matrix(lam, ex, frozen)
    return QuantumSeed((m, n), tuple(specs), lam, b, tuple(ex), tuple(order), line)


@dataclass
class MutationLog:
    steps: list[dict] = field(default_factory=list)

    def add(self, **kw):
        self.steps.append(kw)


def _canonical_column(seed: QuantumSeed, k: int, ms: dict[str, MinorSpec]) -> np.ndarray:
    col = np.zeros(len(seed.variables), dtype=np.int64)
    for key, sign in (("X_o", -1), ("D", -1), ("Y_r", 1), ("Y_l", 1)):
        s = ms[key]
        if s.size == 0:
            continue
        col[seed.index(s)] += sign
    target = np.zeros(len(seed.variables), dtype=np.int64)
    target[k] = -4
    got = seed.lam @ col
    if np.array_equal(got, target):
        return col
    if np.array_equal(got, -target):
        return -col
    raise NotCompatible((k, None), f"four-term column for {seed.variables[k]} gives lam*b = {got.tolist()}")


def _line_steps(line: BrokenLine, target: BrokenLine) -> tuple[str, Point, list[dict[str, MinorSpec]]]:
    """Direction, concave corner (i, j) of the bigger line, and per-step minors."""
    for p, L2 in line.down_neighbours():
        if L2 == target:
            direction, (i, j) = "down", p
            break
    else:
        for p, L2 in line.up_neighbours():
            if L2 == target:
                direction, (i, j) = "up", (p[0] - 1, p[1] - 1)
                break
        else:
            raise NotClosestPair(f"{target} is not a closest neighbour of {line}")
    K = min(line.m - i, line.n - j)
    steps = []
    for a in range(K):
        steps.append({
            "X_t": MinorSpec.solid(i, j, a + 1),
            "X_b": MinorSpec.solid(i + 1, j + 1, a + 1),
            "X_o": MinorSpec.solid(i + 1, j + 1, a) if a else MinorSpec((), ()),
            "D": MinorSpec.solid(i, j, a + 2),
            "Y_r": MinorSpec.solid(i, j + 1, a + 1),
            "Y_l": MinorSpec.solid(i + 1, j, a + 1),
        })
    if direction == "up":
        steps.reverse()
    return direction, (i, j), steps


def quantum_line_mutation(seed: QuantumSeed, target: BrokenLine, log: MutationLog | None = None,
                          check_lambda: bool = True) -> QuantumSeed:
    """Move a line seed to a closest neighbouring line.

    Going down at the concave corner (i, j), the minors xi[i..i+a | j..j+a]
    are replaced one by one (a = 0, 1, ...) by xi[i+1..i+1+a | j+1..j+1+a],
    each replacement a single mutation. Going up runs the same chain in
    reverse. Before each mutation the exchange column is replaced by the
    four-term column (+-1 at X_o, D, Y_r, Y_l); the replacement is logged
    and must differ from the old column by a kernel vector of Lambda.
    """
    if seed.line is None:
        raise NotClosestPair("seed is not attached to a line")
    if target == seed.line:
        return seed
    direction, corner, steps = _line_steps(seed.line, target)
    cur = seed
    for st in steps:
        old, new = (st["X_t"], st["X_b"]) if direction == "down" else (st["X_b"], st["X_t"])
        k = cur.index(old)
        if k not in cur.ex:
            raise NotMutable(f"{old} is frozen in the seed of {cur.line or seed.line}")
        col = _canonical_column(cur, k, st)
        jk = cur.ex.index(k)
        diff = cur.b[:, jk] - col
        if diff.any() and (cur.lam @ diff).any():
            raise NotCompatible((k, jk), f"old column for {old} is not the four-term column modulo ker Lambda")
        b = np.array(cur.b)
        b[:, jk] = col
        cur = replace(cur, b=b)
        if log is not None:
            log.add(line=str(seed.line), target=str(target), direction=direction, old=str(old),
                    new=str(new), column_changed=bool(diff.any()),
                    kernel_shift=diff.tolist() if diff.any() else None)
        cur, _ = mutate(cur, k, new, check_lambda=check_lambda)
        check_compatible(cur.lam, cur.b, cur.ex)
    return relabel(cur, target)


def chain_to(line: BrokenLine) -> list[BrokenLine]:
    """A chain of closest up-moves from the minimal line to ``line``."""
    chain = [line]
    cur = line
    while cur.concave_corners():
        cur = cur.down_move(*cur.concave_corners()[0])
        chain.append(cur)
    chain.reverse()
    return chain


@dataclass
class LineData:
    """The data attached to a line: full seed plus the sub-seed below the line."""

    line: BrokenLine
    seed: QuantumSeed
    minus_count: int  # number of variables on or below the line
    mutable_minus: tuple[int, ...]
    lam0: np.ndarray
    b0: np.ndarray
    bR: np.ndarray
    d_history: list[dict[int, int]]
    log: MutationLog

    def to_json(self) -> dict:
        return {
            "line": str(self.line),
            "seed": self.seed.to_json(),
            "lambda0": self.lam0.tolist(),
            "b0": self.b0.tolist(),
            "bR": self.bR.tolist(),
            "mutable_minus": list(self.mutable_minus),
            "d": [sorted(set(d.values())) for d in self.d_history],
            "column_replacements": [s for s in self.log.steps if s["column_changed"]],
        }


def minus_subdata(seed: QuantumSeed) -> tuple[int, tuple[int, ...], np.ndarray, np.ndarray, np.ndarray]:
    """Restrict a line seed to the variables on or below its line.

    Returns (count, mutable indices, lam0, b0, bR) where bR holds the
    full-height columns of the mutable variables below the line.
    """
    line = seed.line
    count = sum(1 for p in seed.labels if p not in line.S)
    cov = set(line.covariant_points())
    mut = tuple(i for i in range(count) if seed.labels[i] not in cov)
    if any(i not in seed.ex for i in mut):
        raise NotMutable(f"a mutable variable below {line} is frozen in the full seed")
    cols = [seed.ex.index(i) for i in mut]
    bR = seed.b[:, cols]
    lam0 = seed.lam[:count, :count]
    b0 = bR[:count, :]
    return count, mut, lam0, b0, bR


def build_data(line: BrokenLine, check_lambda: bool = True) -> LineData:
    """Walk up from the minimal line to ``line`` through line mutations.

    Every intermediate pair must be compatible with all d_j = 2. For the
    final seed the columns of the mutable variables on or below the line
    must vanish above the line, giving lam0, b0 and bR with lam bR = -4 D.
    """
    cache = algebra(line.m, line.n).cache.setdefault("line_data", {})
    key = (line, check_lambda)
    if key in cache:
        return cache[key]
    chain = chain_to(line)
    log = MutationLog()
    seed = _base_cached(line.m, line.n)
    d_hist = [check_compatible(seed.lam, seed.b, seed.ex)]
    for nxt in chain[1:]:
        seed = _line_data_cached(nxt, seed, log, check_lambda)
        d_hist.append(check_compatible(seed.lam, seed.b, seed.ex))
    bad = [d for d in d_hist if set(d.values()) - {2}]
    if bad:
        raise NotCompatible(None, f"d values other than 2: {bad[0]}")
    count, mut, lam0, b0, bR = minus_subdata(seed)
    if bR[count:, :].any():
        raise PredictionMismatch(f"columns below {line} reach above the line")
    want = np.zeros((len(seed.variables), len(mut)), dtype=np.int64)
    for j, i in enumerate(mut):
        want[i, j] = -4
    if not np.array_equal(seed.lam @ bR, want):
        raise NotCompatible(None, "lam bR != -4 D")
    if mut:
        d0 = check_compatible(lam0, b0, mut)
        if set(d0.values()) != {2}:
            raise NotCompatible(None, f"sub-seed d values {d0}")
    data = LineData(line, seed, count, mut, _frozen(lam0), _frozen(b0), _frozen(bR), d_hist, log)
    cache[key] = data
    return data


def _base_cached(m: int, n: int) -> QuantumSeed:
    cache = algebra(m, n).cache.setdefault("base_seed", {})
    if "seed" not in cache:
        cache["seed"] = base_seed(m, n)
    return cache["seed"]


def _line_data_cached(target: BrokenLine, seed: QuantumSeed, log: MutationLog, check_lambda: bool) -> QuantumSeed:
    cache = algebra(target.m, target.n).cache.setdefault("line_seed", {})
    key = (seed.line, target)
    if key not in cache:
        sub = MutationLog()
        cache[key] = (quantum_line_mutation(seed, target, sub, check_lambda), sub)
    out, sub = cache[key]
    log.steps.extend(sub.steps)
    return out


def minus_route(line: BrokenLine) -> QuantumSeed:
    """The sub-seed below ``line`` built without the points above it.

    Starts from the minimal line (no mutable variables). Each closest
    up-move adds the new covariant minor D, joins the four-term column for
    the covariant X_b being mutated first, and then runs the mutations
    inside the smaller ambient algebra only.
    """
    m, n = line.m, line.n
    alg = algebra(m, n)
    chain = chain_to(line)

    def layout(L):
        order = [p for p in line_order(L) if p not in L.S]
        cov = set(L.covariant_points())
        return order, [L.family[p] for p in order], [i for i, p in enumerate(order) if p not in cov]

    order, specs, ex = layout(chain[0])
    seed = QuantumSeed((m, n), tuple(specs), lambda_of(specs, alg),
                       np.zeros((len(specs), 0), dtype=np.int64), (), tuple(order), chain[0])
    for L1 in chain[1:]:
        _, _, steps = _line_steps(seed.line, L1)
        variables = seed.variables + (steps[0]["D"],)
        lam = lambda_of(variables, alg)
        k = variables.index(steps[0]["X_b"])
        b = np.vstack([seed.b, np.zeros((1, len(seed.ex)), dtype=np.int64)])
        cur = QuantumSeed((m, n), variables, lam, b, seed.ex, None, None)
        col = _canonical_column(cur, k, steps[0])
        cur = replace(cur, b=np.hstack([cur.b, col[:, None]]), ex=cur.ex + (k,))
        check_compatible(cur.lam, cur.b, cur.ex)
        for st in steps:
            cur, _ = mutate(cur, cur.index(st["X_b"]), st["X_t"])
            check_compatible(cur.lam, cur.b, cur.ex)
        order, specs, ex = layout(L1)
        seed = _reorder(cur, order, specs, ex, L1)
    return seed


def compare_minus_routes(line: BrokenLine) -> Report:
    """lam0 and b0 from the full seed agree with the direct sub-seed route.

    On square grids B is only determined modulo the kernel of Lambda, so a
    difference in b0 is accepted when it is killed by lam0.
    """
    data = build_data(line)
    sub = minus_route(line)
    same_lam = np.array_equal(sub.lam, data.lam0)
    diff = sub.b - data.b0
    exact = same_lam and not diff.any()
    ok = same_lam and not (data.lam0 @ diff).any()
    witness = None if exact else ("Lambda differs" if not same_lam else
                                  ("b0 differs by a kernel vector" if ok else "b0 differs"))
    return Report("minus-route", (line.m, line.n), str(line), ok, witness,
                  {"exact": bool(exact)})


def kernel_on_frozen(seed: QuantumSeed) -> Report:
    """The kernel of Lambda is spanned by vectors supported on frozen variables."""
    frozen = [i for i in range(len(seed.variables)) if i not in seed.ex]
    basis = lambda_kernel(seed.lam)
    bad = [v for v in basis if any(v[i] for i in range(len(v)) if i not in frozen)]
    return Report("kernel-on-frozen", seed.shape, str(seed.line), not bad,
                  str(bad[0]) if bad else None, {"kernel_rank": len(basis)})


def diamond_check(line: BrokenLine, c1: Point, c2: Point) -> Report:
    """Two down-moves at distinct concave corners, composed both ways."""
    data = build_data(line)
    L1, L2 = line.down_move(*c1), line.down_move(*c2)
    a = quantum_line_mutation(quantum_line_mutation(data.seed, L1), L1.down_move(*c2))
    b = quantum_line_mutation(quantum_line_mutation(data.seed, L2), L2.down_move(*c1))
    same = a.same_as(b)
    witness = None
    if not same:
        if a.variables != b.variables:
            witness = "different variables"
        elif not np.array_equal(a.lam, b.lam):
            witness = "different Lambda"
        else:
            diff = a.b - b.b
            witness = "B differs" + (" by kernel vectors" if not (a.lam @ diff).any() else "")
    return Report("diamond", (line.m, line.n), {"line": str(line), "corners": [c1, c2]}, same, witness)


def diamond_pairs(line: BrokenLine) -> list[tuple[Point, Point]]:
    cc = line.concave_corners()
    return [(cc[a], cc[b]) for a in range(len(cc)) for b in range(a + 1, len(cc))]


def line_path(start: BrokenLine, goal) -> list[BrokenLine]:
    """Shortest chain of closest lines after ``start`` ending at a line
    satisfying ``goal`` (empty if ``start`` already does)."""
    prev = {start: None}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        if goal(cur):
            path = []
            while prev[cur] is not None:
                path.append(cur)
                cur = prev[cur]
            return path[::-1]
        for _, nb in cur.up_neighbours() + cur.down_neighbours():
            if nb not in prev:
                prev[nb] = cur
                queue.append(nb)
    raise PredictionMismatch("no line satisfies the goal")


def mutate_to_line(seed: QuantumSeed, target: BrokenLine, log: MutationLog | None = None) -> QuantumSeed:
    """Composite of closest line mutations along a shortest path."""
    for L in line_path(seed.line, lambda L: L == target):
        seed = quantum_line_mutation(seed, L, log)
    return seed


def reach_minor(line: BrokenLine, spec: MinorSpec) -> list[BrokenLine]:
    """Closest-line steps from ``line`` to a line whose family holds ``spec``."""
    if spec.size == 0 or not spec.is_solid():
        raise NotSolid(str(spec))
    if not spec.fits(line.m, line.n):
        raise ShapeError(f"{spec} does not fit {line.m}x{line.n}")
    return line_path(line, lambda L: spec in L.family.values())


def lambda_kernel(lam) -> list[list[int]]:
    """Integer basis of the kernel of an integer matrix."""
    M = sympy.Matrix(np.asarray(lam).tolist())
    out = []
    for v in M.nullspace():
        den = sympy.ilcm(*[x.q for x in v]) if len(v) else 1
        w = [int(x * den) for x in v]
        g = 0
        for x in w:
            g = sympy.igcd(g, x)
        out.append([x // g for x in w] if g else w)
    return out


__all__ = [
    "ExchangeRelation", "LineData", "MutationLog", "PendingVariable", "QuantumSeed", "base_seed",
    "build_data", "chain_to", "check_compatible", "compare_minus_routes", "covariant_minors",
    "diamond_check", "diamond_pairs", "exchange_rhs", "kernel_on_frozen", "lambda_kernel", "lambda_of",
    "line_order", "line_path", "matrix_mutation", "minus_route", "minus_subdata", "mset_seed", "mutate",
    "mutate_pair", "mutate_to_line", "mutation_matrices", "normalized_monomial",
    "quantum_line_mutation", "reach_minor", "relabel",
]

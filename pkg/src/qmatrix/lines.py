"""Broken lines in an m x n grid and the minor families they carry.

A broken line runs from (1, n) to (m, 1) using unit steps left ("L",
column - 1) or down ("D", row + 1). Points strictly left of the line in
their row form the region S (it contains (1, 1) unless the line passes
through it); points strictly right form T.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cached_property

from .algebra import algebra
from .errors import InvalidLine, NotACorner, ParseError, PointAboveLine
from .minors import (
    MinorSpec,
    lambda_matrix,
    minor_commutation,
    predicted_minor_exponent,
)
from .reports import Report

Point = tuple[int, int]


@dataclass(frozen=True)
class BrokenLine:
    """Stored as its corner list, endpoints included."""

    m: int
    n: int
    corners: tuple[Point, ...]

    def __post_init__(self):
        c = tuple(tuple(p) for p in self.corners)
        object.__setattr__(self, "corners", c)
        if not c or c[0] != (1, self.n) or c[-1] != (self.m, 1):
            raise InvalidLine(f"line must run from (1,{self.n}) to ({self.m},1): {c}")
        if len(c) == 1:
            return
        prev_dir = None
        for a, b in zip(c, c[1:]):
            if a[0] == b[0] and b[1] < a[1]:
                d = "L"
            elif a[1] == b[1] and b[0] > a[0]:
                d = "D"
            else:
                raise InvalidLine(f"segment {a}->{b} is not a left or down move")
            if d == prev_dir:
                raise InvalidLine(f"corner {a} is not a turn")
            prev_dir = d

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_steps(cls, m: int, n: int, steps: str) -> BrokenLine:
        if steps.count("L") != n - 1 or steps.count("D") != m - 1 or set(steps) - {"L", "D"}:
            raise InvalidLine(f"{steps!r} is not a path for a {m}x{n} grid")
        pts = [(1, n)]
        for s in steps:
            i, j = pts[-1]
            pts.append((i, j - 1) if s == "L" else (i + 1, j))
        corners = [pts[0]]
        for k in range(1, len(steps)):
            if steps[k] != steps[k - 1]:
                corners.append(pts[k])
        if len(pts) > 1:
            corners.append(pts[-1])
        return cls(m, n, tuple(corners))

    @classmethod
    def plus(cls, m: int, n: int) -> BrokenLine:
        """The maximal line (1,n) -> (1,1) -> (m,1); S is empty."""
        return cls.from_steps(m, n, "L" * (n - 1) + "D" * (m - 1))

    @classmethod
    def minus(cls, m: int, n: int) -> BrokenLine:
        """The minimal line (1,n) -> (m,n) -> (m,1); T is empty."""
        return cls.from_steps(m, n, "D" * (m - 1) + "L" * (n - 1))

    @classmethod
    def parse(cls, text: str, m: int | None = None, n: int | None = None) -> BrokenLine:
        pts = re.findall(r"\(\s*(\d+)\s*,\s*(\d+)\s*\)", text)
        rest = re.sub(r"\(\s*\d+\s*,\s*\d+\s*\)|->|\s", "", text)
        if not pts or rest:
            raise ParseError(f"cannot parse line {text!r}")
        corners = tuple((int(a), int(b)) for a, b in pts)
        mm = corners[-1][0] if m is None else m
        nn = corners[0][1] if n is None else n
        return cls(mm, nn, corners)

    # -- derived data ---------------------------------------------------------

    @cached_property
    def steps(self) -> str:
        out = []
        for a, b in zip(self.corners, self.corners[1:]):
            if a[0] == b[0]:
                out.append("L" * (a[1] - b[1]))
            else:
                out.append("D" * (b[0] - a[0]))
        return "".join(out)

    @cached_property
    def points(self) -> tuple[Point, ...]:
        pts = [(1, self.n)]
        for s in self.steps:
            i, j = pts[-1]
            pts.append((i, j - 1) if s == "L" else (i + 1, j))
        return tuple(pts)

    @cached_property
    def _span(self) -> dict[int, tuple[int, int]]:
        span: dict[int, tuple[int, int]] = {}
        for i, j in self.points:
            lo, hi = span.get(i, (j, j))
            span[i] = (min(lo, j), max(hi, j))
        return span

    def where(self, i: int, j: int) -> str:
        """'S', 'L' or 'T' for a grid point."""
        if not (1 <= i <= self.m and 1 <= j <= self.n):
            raise InvalidLine(f"({i},{j}) outside the grid")
        lo, hi = self._span[i]
        if j < lo:
            return "S"
        if j > hi:
            return "T"
        return "L"

    def grid_points(self):
        return [(i, j) for i in range(1, self.m + 1) for j in range(1, self.n + 1)]

    @cached_property
    def S(self) -> frozenset[Point]:
        return frozenset(p for p in self.grid_points() if self.where(*p) == "S")

    @cached_property
    def T(self) -> frozenset[Point]:
        return frozenset(p for p in self.grid_points() if self.where(*p) == "T")

    @cached_property
    def on_line(self) -> frozenset[Point]:
        return frozenset(self.points)

    def below(self, i: int, j: int) -> bool:
        """True for points of T or of the line."""
        return 1 <= i <= self.m and 1 <= j <= self.n and self.where(i, j) != "S"

    # -- order and moves ----------------------------------------------------------

    def __le__(self, other: BrokenLine) -> bool:
        return other.S <= self.S

    def __lt__(self, other: BrokenLine) -> bool:
        return self <= other and self != other

    def convex_corners(self) -> list[Point]:
        """Points entered from above and left to the left (up moves)."""
        st, pts = self.steps, self.points
        return [pts[k] for k in range(1, len(st)) if st[k - 1] == "D" and st[k] == "L"]

    def concave_corners(self) -> list[Point]:
        """Points entered from the right and left downward (down moves)."""
        st, pts = self.steps, self.points
        return [pts[k] for k in range(1, len(st)) if st[k - 1] == "L" and st[k] == "D"]

    def _swap(self, c: int, d: int, want: str) -> BrokenLine:
        st, pts = self.steps, self.points
        for k in range(1, len(st)):
            if pts[k] == (c, d) and st[k - 1:k + 1] == want:
                new = st[:k - 1] + want[::-1] + st[k + 1:]
                return BrokenLine.from_steps(self.m, self.n, new)
        kind = "convex" if want == "DL" else "concave"
        raise NotACorner(f"({c},{d}) is not a {kind} corner of {self}")

    def up_move(self, c: int, d: int) -> BrokenLine:
        """Replace the convex corner (c, d) by (c-1, d-1); the result is the
        closest bigger line."""
        return self._swap(c, d, "DL")

    def down_move(self, c: int, d: int) -> BrokenLine:
        """Replace the concave corner (c, d) by (c+1, d+1)."""
        return self._swap(c, d, "LD")

    def up_neighbours(self) -> list[tuple[Point, BrokenLine]]:
        return [(p, self.up_move(*p)) for p in self.convex_corners()]

    def down_neighbours(self) -> list[tuple[Point, BrokenLine]]:
        return [(p, self.down_move(*p)) for p in self.concave_corners()]

    # -- text -----------------------------------------------------------------

    def __str__(self):
        return "->".join(f"({i},{j})" for i, j in self.corners)

    def ascii(self) -> str:
        return "\n".join(
            "".join(self.where(i, j) for j in range(1, self.n + 1)) for i in range(1, self.m + 1)
        )

    # -- the minor family -------------------------------------------------------

    def family_minor(self, i: int, j: int) -> MinorSpec:
        """The family variable at (i, j).

        Below or on the line: the largest solid minor with lower-right corner
        (i, j) lying entirely below or on the line. Above the line: the
        largest solid minor with upper-left corner (i, j) that fits the grid.
        """
        if self.where(i, j) == "S":
            return MinorSpec.solid(i, j, min(self.m - i + 1, self.n - j + 1))
        k = 1
        # the region below or on the line is closed under moving down or right,
        # so a square lies inside iff its upper-left corner does
        while i - k >= 1 and j - k >= 1 and self.below(i - k, j - k):
            k += 1
        return MinorSpec.solid_bottom_right(i, j, k)

    @cached_property
    def family(self) -> dict[Point, MinorSpec]:
        return {p: self.family_minor(*p) for p in self.grid_points()}

    def family_minus(self) -> dict[Point, MinorSpec]:
        return {p: s for p, s in self.family.items() if p not in self.S}

    def family_plus(self) -> dict[Point, MinorSpec]:
        return {p: s for p, s in self.family.items() if p in self.S}

    def covariant_points(self) -> list[Point]:
        """The points of the minimal line: last column, then last row."""
        pts = [(i, self.n) for i in range(1, self.m + 1)]
        pts += [(self.m, j) for j in range(self.n - 1, 0, -1)]
        return pts

    def covariant_set(self) -> dict[Point, MinorSpec]:
        return {p: self.family[p] for p in self.covariant_points()}

    def classify_point(self, c: int, d: int) -> str:
        """'attractive' or 'repulsive' for a point below or on the line.

        Attractive: for some i, j > 0 both (c-i, d) and (c, d+j) lie below or
        on the line, or both (c+i, d) and (c, d-j) do.
        """
        if self.where(c, d) == "S":
            raise PointAboveLine(f"({c},{d}) lies above {self}")
        up = any(self.below(c - i, d) for i in range(1, c))
        right = any(self.below(c, d + j) for j in range(1, self.n - d + 1))
        down = any(self.below(c + i, d) for i in range(1, self.m - c + 1))
        left = any(self.below(c, d - j) for j in range(1, d))
        return "attractive" if (up and right) or (down and left) else "repulsive"


def all_lines(m: int, n: int) -> list[BrokenLine]:
    """Every broken line of the m x n grid, ordered by step string."""
    total = m + n - 2
    out = []
    for downs in itertools.combinations(range(total), m - 1):
        st = ["L"] * total
        for k in downs:
            st[k] = "D"
        out.append(BrokenLine.from_steps(m, n, "".join(st)))
    return out


def staircase_regions(m: int, n: int) -> set[frozenset[Point]]:
    """Brute force: every NW-closed subset of the (m-1) x (n-1) corner."""
    cells = [(i, j) for i in range(1, m) for j in range(1, n)]
    out = set()
    for mask in range(1 << len(cells)):
        S = frozenset(c for k, c in enumerate(cells) if mask >> k & 1)
        if all((i - 1, j) in S or i == 1 for i, j in S) and all((i, j - 1) in S or j == 1 for i, j in S):
            out.add(S)
    return out


def family_minor_alternative(line: BrokenLine, i: int, j: int) -> list[MinorSpec]:
    """Second reading for points below or on the line: the largest solid
    minors containing (i, j), touching the line and avoiding S. Returns all
    maximal candidates so ambiguity is visible."""
    best: list[MinorSpec] = []
    for k in range(1, min(line.m, line.n) + 1):
        for a in range(i - k + 1, i + 1):
            for b in range(j - k + 1, j + 1):
                if a < 1 or b < 1 or a + k - 1 > line.m or b + k - 1 > line.n:
                    continue
                sq = MinorSpec.solid(a, b, k)
                cells = sq.cells()
                if any(line.where(*c) == "S" for c in cells):
                    continue
                if not any(c in line.on_line for c in cells):
                    continue
                if not best or k > best[0].size:
                    best = [sq]
                elif k == best[0].size:
                    best.append(sq)
    return best


# ---------------------------------------------------------------------------
# q-commutation of the family


def verify_family(line: BrokenLine) -> list[Report]:
    """The family q-commutes, exponents follow the counting rule, family
    members above the line q-commute with every generator not above it,
    and the minimal-line members are covariant below or on the line."""
    alg = algebra(line.m, line.n)
    shape = (line.m, line.n)
    idx = str(line)
    pts = sorted(line.family)
    specs = [line.family[p] for p in pts]
    out = []

    L, fail = lambda_matrix(specs, alg)
    if L is None:
        out.append(Report("family-q-commute", shape, idx, False,
                          f"{specs[fail[0]]} and {specs[fail[1]]} do not q-commute"))
        return out
    skew = all(L[a][b] == -L[b][a] for a in range(len(L)) for b in range(len(L)))
    out.append(Report("family-q-commute", shape, idx, skew, None if skew else "Lambda not skew"))

    bad = []
    for a, b in itertools.combinations(range(len(specs)), 2):
        pred = predicted_minor_exponent(specs[a], specs[b])
        if pred is None or 2 * pred != L[a][b]:
            bad.append((str(specs[a]), str(specs[b]), L[a][b] // 2, pred))
    out.append(Report("family-counting-rule", shape, idx, not bad, str(bad[:3]) if bad else None))

    bad = []
    for p, s in line.family_plus().items():
        for g in line.grid_points():
            if g in line.S:
                continue
            if minor_commutation(s, MinorSpec((g[0],), (g[1],)), alg) is None:
                bad.append((p, g))
    out.append(Report("family-plus-vs-generators", shape, idx, not bad, str(bad[:3]) if bad else None))

    bad = []
    below = [g for g in line.grid_points() if g not in line.S]
    for p, s in line.covariant_set().items():
        for g in below:
            if minor_commutation(s, MinorSpec((g[0],), (g[1],)), alg) is None:
                bad.append((p, g))
    out.append(Report("covariant-set", shape, idx, not bad, str(bad[:3]) if bad else None))
    return out


def central_monomials(line: BrokenLine, bound: int = 2) -> list[tuple[int, ...]]:
    """Nonzero exponent vectors (entries 0..bound) on the minimal-line family
    members whose monomial commutes with every generator below or on the
    line. Since those members are covariant, such a monomial is central in
    the subalgebra generated below or on the line."""
    alg = algebra(line.m, line.n)
    cov = list(line.covariant_set().values())
    gens = [MinorSpec((i,), (j,)) for i, j in line.grid_points() if (i, j) not in line.S]
    K = [[minor_commutation(c, g, alg) for g in gens] for c in cov]
    found = []
    for v in itertools.product(range(bound + 1), repeat=len(cov)):
        if not any(v):
            continue
        if all(sum(v[a] * K[a][b] for a in range(len(cov))) == 0 for b in range(len(gens))):
            found.append(v)
    return found


def has_nontrivial_center(line: BrokenLine, bound: int = 2) -> bool:
    return bool(central_monomials(line, bound))


__all__ = [
    "BrokenLine", "all_lines", "central_monomials", "family_minor_alternative",
    "has_nontrivial_center", "staircase_regions", "verify_family",
]

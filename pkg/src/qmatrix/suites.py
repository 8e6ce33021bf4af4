"""Verification sweeps grouped by topic, shared by the CLI and the tests."""

from __future__ import annotations

import itertools
import random
from collections.abc import Callable

from .algebra import (
    AlgebraElement,
    GeneratorWord,
    algebra,
    matrices_with_total,
    product_of_word,
    straighten,
)
from .cluster import (
    build_data,
    compare_minus_routes,
    diamond_check,
    diamond_pairs,
    kernel_on_frozen,
)
from .dcb import as_scaled_dcb, verify_dcb_invariants, verify_det_product
from .laurent import LaurentPoly
from .lines import BrokenLine, all_lines, staircase_regions, verify_family
from .minors import (
    all_msets,
    covariance_profile,
    quantum_minor,
    verify_laplace,
    verify_mset_identities,
    verify_power_commutators,
    verify_pw_expansion,
)
from .reports import Report

# ---------------------------------------------------------------------------
# algebra


def random_word(m: int, n: int, length: int, rng: random.Random) -> list[tuple[int, int]]:
    return [(rng.randint(1, m), rng.randint(1, n)) for _ in range(length)]


def random_element(m: int, n: int, rng: random.Random, terms: int = 2, length: int = 3) -> AlgebraElement:
    alg = algebra(m, n)
    out = alg.zero()
    for _ in range(terms):
        w = random_word(m, n, rng.randint(0, length), rng)
        c = LaurentPoly({rng.randint(-2, 2): rng.choice([-2, -1, 1, 2])})
        out = out + product_of_word(w, alg).scale(c)
    return out


def check_confluence(m: int, n: int, words: int, seed: int, max_len: int = 5) -> Report:
    """Random rewrite orders, leftmost rewriting and the product kernel agree."""
    alg = algebra(m, n)
    rng = random.Random(seed)
    for t in range(words):
        w = random_word(m, n, rng.randint(2, max_len), rng)
        ref = product_of_word(w, alg)
        a = straighten(GeneratorWord(tuple(w)), alg, "leftmost")
        b = straighten(GeneratorWord(tuple(w)), alg, "random", random.Random(rng.random()))
        if not (a == ref == b):
            return Report("confluence", (m, n), {"words": words, "seed": seed}, False, f"word {w}")
    return Report("confluence", (m, n), {"words": words, "seed": seed}, True)


def check_bar(m: int, n: int, pairs: int, seed: int) -> list[Report]:
    """bar is an involution and reverses products."""
    rng = random.Random(seed)
    inv_bad = anti_bad = None
    for t in range(pairs):
        x = random_element(m, n, rng)
        y = random_element(m, n, rng)
        if inv_bad is None and x.bar().bar() != x:
            inv_bad = str(x)
        if anti_bad is None and (x * y).bar() != y.bar() * x.bar():
            anti_bad = f"{x} ; {y}"
    idx = {"pairs": pairs, "seed": seed}
    return [Report("bar-involution", (m, n), idx, inv_bad is None, inv_bad),
            Report("bar-anti-multiplicative", (m, n), idx, anti_bad is None, anti_bad)]


def suite_algebra(m: int, n: int, seed: int = 0, words: int = 500, pairs: int = 200, **_) -> list[Report]:
    return [check_confluence(m, n, words, seed)] + check_bar(m, n, pairs, seed)


# ---------------------------------------------------------------------------
# dual canonical basis


def suite_dcb(m: int, n: int, max_sum: int = 2, **_) -> list[Report]:
    alg = algebra(m, n)
    out = []
    for total in range(max_sum + 1):
        for A in matrices_with_total(m, n, total):
            out.append(verify_dcb_invariants(A, alg))
    if m == n:
        det_sum = max_sum if n <= 2 else min(max_sum, 1)
        for total in range(det_sum + 1):
            for A in matrices_with_total(n, n, total):
                out.extend(verify_det_product(A, n))
    return out


def check_line_monomials(line: BrokenLine, length: int = 3) -> Report:
    """Every product of at most ``length`` family members is q^p b(A)."""
    alg = algebra(line.m, line.n)
    fam = sorted(set(line.family.values()))
    for k in range(1, length + 1):
        for combo in itertools.combinations_with_replacement(fam, k):
            x = alg.one()
            for s in combo:
                x = x * quantum_minor(s, alg)
            if as_scaled_dcb(x) is None:
                return Report("line-monomial-dcb", (line.m, line.n), str(line), False,
                              " ".join(map(str, combo)))
    return Report("line-monomial-dcb", (line.m, line.n), str(line), True)


# ---------------------------------------------------------------------------
# minors


def laplace_reports(n: int) -> list[Report]:
    """All splits J = J1 + J2 for every I, J of size 2..n, both forms."""
    alg = algebra(n, n)
    out = []
    for k in range(2, n + 1):
        for I in itertools.combinations(range(1, n + 1), k):
            for J in itertools.combinations(range(1, n + 1), k):
                for r in range(1, k):
                    for J1 in itertools.combinations(J, r):
                        J2 = tuple(j for j in J if j not in J1)
                        for form in "AB":
                            out.append(verify_laplace(I, J, J1, J2, alg, form))
    return out


def laplace_spot_checks(n: int, count: int, seed: int) -> list[Report]:
    alg = algebra(n, n)
    rng = random.Random(seed)
    full = tuple(range(1, n + 1))
    out = []
    for _ in range(count):
        J1 = tuple(sorted(rng.sample(full, rng.randint(1, n - 1))))
        J2 = tuple(j for j in full if j not in J1)
        out.append(verify_laplace(full, full, J1, J2, alg, rng.choice("AB")))
    return out


def suite_minors(m: int, n: int, seed: int = 0, **_) -> list[Report]:
    alg = algebra(m, n)
    out = []
    if m == n:
        if n <= 3:
            out.extend(laplace_reports(n))
            for i in range(1, n + 1):
                for k in range(1, n + 1):
                    out.extend(verify_pw_expansion(i, k, n))
            for r in range(1, 4):
                out.extend(verify_power_commutators(r, n))
        elif n == 4:
            out.extend(laplace_spot_checks(4, 3, seed))
    for t in range(1, min(m, n) + 1):
        prof = covariance_profile(t, alg)
        out.append(Report("covariance-profile", (m, n), {"t": t}, prof.matches,
                          None if prof.matches else prof.ascii()))
    return out


def suite_mset(m: int, n: int, **_) -> list[Report]:
    alg = algebra(m, n)
    out = []
    for ms in all_msets(m, n):
        out.extend(verify_mset_identities(ms, alg))
    return out


# ---------------------------------------------------------------------------
# lines and seeds


def suite_lines(m: int, n: int, **_) -> list[Report]:
    lines = all_lines(m, n)
    oracle = staircase_regions(m, n)
    got = {L.S for L in lines}
    ok = got == oracle and len(lines) == len(got)
    out = [Report("line-enumeration", (m, n), {"count": len(lines)}, ok,
                  None if ok else f"{len(got)} regions vs {len(oracle)} staircases")]
    for L in lines:
        out.extend(verify_family(L))
    return out


def check_build(line: BrokenLine) -> Report:
    try:
        data = build_data(line)
    except Exception as e:  # every failure is reported, not raised
        return Report("build-data", (line.m, line.n), str(line), False, f"{type(e).__name__}: {e}")
    ds = sorted({d for h in data.d_history for d in h.values()})
    return Report("build-data", (line.m, line.n), str(line), ds in ([2], []), None,
                  {"steps": len(data.d_history) - 1, "d": ds,
                   "column_replacements": sum(s["column_changed"] for s in data.log.steps)})


def suite_cluster(m: int, n: int, **_) -> list[Report]:
    out = []
    for L in all_lines(m, n):
        r = check_build(L)
        out.append(r)
        if not r.passed:
            continue
        out.append(compare_minus_routes(L))
        for c1, c2 in diamond_pairs(L):
            out.append(diamond_check(L, c1, c2))
    out.append(kernel_on_frozen(build_data(BrokenLine.plus(m, n)).seed))
    return out


SUITES: dict[str, Callable[..., list[Report]]] = {
    "algebra": suite_algebra,
    "dcb": suite_dcb,
    "minors": suite_minors,
    "mset": suite_mset,
    "lines": suite_lines,
    "cluster": suite_cluster,
}

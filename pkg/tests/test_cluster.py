import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qmatrix.algebra import algebra
from qmatrix.cluster import (
    MutationLog,
    PendingVariable,
    QuantumSeed,
    _solve_exchange_matrix,
    base_seed,
    build_data,
    check_compatible,
    compare_minus_routes,
    diamond_check,
    diamond_pairs,
    kernel_on_frozen,
    lambda_of,
    matrix_mutation,
    minus_route,
    mset_seed,
    mutate,
    mutate_pair,
    mutate_to_line,
    mutation_matrices,
    normalized_monomial,
    quantum_line_mutation,
    reach_minor,
)
from qmatrix.errors import (
    NonIntegralSeed,
    NotClosestPair,
    NotCompatible,
    NotMutable,
    NotSolid,
    PredictionMismatch,
)
from qmatrix.lines import BrokenLine, all_lines
from qmatrix.minors import MinorSpec, all_msets, mset, qdet, quantum_minor

S = MinorSpec


def test_check_compatible_examples():
    assert check_compatible(np.zeros((3, 3), int), np.zeros((3, 0), int), ()) == {}
    alg = algebra(3, 3)
    sd = mset_seed(mset(1, 1, 3, 3), alg)
    assert sd.b[:, 0].tolist() == [0, -1, -1, 1, 1]
    assert (sd.lam @ sd.b)[:, 0].tolist() == [-4, 0, 0, 0, 0]
    assert check_compatible(sd.lam, sd.b, sd.ex) == {0: 2}
    bad = np.array(sd.b)
    bad[0, 0] = 1
    with pytest.raises(NotCompatible) as exc:
        check_compatible(sd.lam, bad, sd.ex)
    assert exc.value.witness is not None


def test_lambda_of_examples():
    alg = algebra(2, 2)
    assert lambda_of([S((1,), (1,))], alg).tolist() == [[0]]
    fam = BrokenLine.plus(2, 2).family
    lam = lambda_of([fam[p] for p in sorted(fam)], alg)
    # the determinant (last) is central
    assert lam[3].tolist() == [0, 0, 0, 0]
    assert lam[0].tolist() == [0, 2, 2, 0]


def test_frozen_seeds():
    plus = build_data(BrokenLine.plus(2, 2)).seed
    assert plus.lam.tolist() == [[0, 2, 2, 0], [-2, 0, 0, 0], [-2, 0, 0, 0], [0, 0, 0, 0]]
    assert plus.b.tolist() == [[0], [-1], [-1], [1]]
    assert plus.ex == (0,)
    base = base_seed(2, 3)
    assert [str(v) for v in base.variables] == [
        "xi[1|3]", "xi[2|1]", "xi[2|2]", "xi[2|3]", "xi[1,2|1,2]", "xi[1,2|2,3]"]
    assert base.lam.tolist() == [
        [0, 0, 0, 2, -2, 0], [0, 0, 2, 2, 0, 2], [0, -2, 0, 2, 0, 0],
        [-2, -2, -2, 0, -2, 0], [2, 0, 0, 2, 0, 2], [0, -2, 0, 0, -2, 0]]
    assert base.b.tolist() == [[0, 1], [1, 0], [0, 1], [-1, 0], [-1, 0], [1, -1]]
    assert base.ex == (2, 3)


def test_base_solve_rejects_non_integral():
    lam = np.array([[0, 6], [-6, 0]])
    with pytest.raises(NonIntegralSeed):
        _solve_exchange_matrix(lam, [0], [1])
    assert _solve_exchange_matrix(np.array([[0, 2], [-2, 0]]), [0], [1]).tolist() == [[0], [-2]]


def test_mutation_matrices_and_involution():
    sd = build_data(BrokenLine.plus(3, 3)).seed
    for k in sd.ex:
        E, F = mutation_matrices(sd.b, sd.ex, k)
        assert E[k, k] == -1 and F[sd.ex.index(k), sd.ex.index(k)] == -1
        lam2, b2 = mutate_pair(sd.lam, sd.b, sd.ex, k)
        assert np.array_equal(b2, matrix_mutation(sd.b, sd.ex, k))
        lam3, b3 = mutate_pair(lam2, b2, sd.ex, k)
        assert np.array_equal(lam3, sd.lam) and np.array_equal(b3, sd.b)
    with pytest.raises(NotMutable):
        mutation_matrices(sd.b, sd.ex, [i for i in range(9) if i not in sd.ex][0])


seeds = st.sampled_from([(m, n, L) for m, n in [(2, 3), (3, 3), (3, 4)] for L in all_lines(m, n)])


@given(seeds, st.lists(st.integers(0, 10), min_size=1, max_size=5))
def test_random_mutations_stay_compatible(choice, picks):
    m, n, L = choice
    sd = build_data(L).seed
    lam, b = sd.lam, sd.b
    for p in picks:
        k = sd.ex[p % len(sd.ex)]
        lam, b = mutate_pair(lam, b, sd.ex, k)
        assert set(check_compatible(lam, b, sd.ex).values()) == {2}


@pytest.mark.parametrize("shape", [(2, 2), (3, 3), (3, 4)])
def test_mset_seed_mutation(shape):
    alg = algebra(*shape)
    for ms in all_msets(*shape):
        sd = mset_seed(ms, alg)
        up, rel = mutate(sd, 0, ms.X_t)
        assert quantum_minor(ms.X_t, alg) * quantum_minor(ms.X_b, alg) == rel.rhs
        back, _ = mutate(up, 0, ms.X_b)
        assert back.same_as(sd)


def test_exchange_matches_four_term_identity(alg22):
    ms = mset(1, 1, 2, 2)
    sd = mset_seed(ms, alg22)
    _, rel = mutate(sd, 0, ms.X_t)
    z = alg22.gen
    assert rel.rhs == qdet(2, alg22) + (z(1, 2) * z(2, 1)).shift(2)


def test_wrong_target_and_pending_variable(alg22):
    ms = mset(1, 1, 2, 2)
    sd = mset_seed(ms, alg22)
    with pytest.raises(PredictionMismatch):
        mutate(sd, 0, S((1,), (2,)))
    pending, rel = mutate(sd, 0)
    assert isinstance(pending.variables[0], PendingVariable)
    assert pending.variables[0].rhs == rel.rhs
    with pytest.raises(NotMutable):
        mutate(sd, 1, None)
    json.dumps(pending.to_json())


def test_normalized_monomial(alg22):
    sd = build_data(BrokenLine.plus(2, 2)).seed
    # x_1 x_2 with lambda_21 = -1 (half of -2)
    x = normalized_monomial(sd, (1, 1, 0, 0))
    z = alg22.gen
    assert x == (z(1, 1) * z(1, 2)).shift(-1)
    assert x.bar() == x


def test_line_mutation_2x2():
    plus, minus = BrokenLine.plus(2, 2), BrokenLine.minus(2, 2)
    log = MutationLog()
    sd = quantum_line_mutation(build_data(plus).seed, minus, log)
    assert [(s["old"], s["new"]) for s in log.steps] == [("xi[1|1]", "xi[2|2]")]
    ref = build_data(minus).seed
    # square grid: B is fixed only modulo the kernel of Lambda
    assert sd.variables == ref.variables and np.array_equal(sd.lam, ref.lam)
    assert not (sd.lam @ (sd.b - ref.b)).any()
    assert sd.labels[sd.variables.index(S((1, 2), (1, 2)))] == (1, 1)
    assert quantum_line_mutation(sd, minus) is sd


def test_line_mutation_3x3_chain():
    plus = BrokenLine.plus(3, 3)
    mid = plus.down_move(1, 1)
    log = MutationLog()
    quantum_line_mutation(build_data(plus).seed, mid, log)
    assert [(s["old"], s["new"]) for s in log.steps] == [
        ("xi[1|1]", "xi[2|2]"), ("xi[1,2|1,2]", "xi[2,3|2,3]")]
    with pytest.raises(NotClosestPair):
        quantum_line_mutation(build_data(plus).seed, BrokenLine.minus(3, 3))
    with pytest.raises(NotClosestPair):
        quantum_line_mutation(base_seed(3, 3).__class__(**{**base_seed(3, 3).__dict__, "line": None}), mid)


@pytest.mark.parametrize("shape", [(2, 2), (2, 3), (3, 3), (3, 4)])
def test_build_data_every_line(shape):
    for L in all_lines(*shape):
        data = build_data(L)
        assert all(set(d.values()) == {2} for d in data.d_history)
        assert not data.bR[data.minus_count:].any()
        D = np.zeros_like(data.bR)
        for j, i in enumerate(data.mutable_minus):
            D[i, j] = 1
        assert np.array_equal(data.seed.lam @ data.bR, -4 * D)
        assert np.array_equal(data.seed.lam, lambda_of(data.seed.variables, algebra(*shape)))
        assert len(data.seed.ex) == (shape[0] - 1) * (shape[1] - 1)
        assert compare_minus_routes(L).passed


def test_minimal_line_has_no_mutable_below():
    data = build_data(BrokenLine.minus(3, 4))
    assert data.mutable_minus == ()
    assert minus_route(BrokenLine.minus(3, 4)).ex == ()


@pytest.mark.parametrize("shape", [(3, 3), (3, 4), (4, 4)])
def test_diamonds(shape):
    count = 0
    for L in all_lines(*shape):
        for c1, c2 in diamond_pairs(L):
            assert diamond_check(L, c1, c2).passed
            count += 1
    assert count > 0


def test_diamond_single_corner_is_vacuous():
    assert diamond_pairs(BrokenLine.plus(3, 3)) == []


def test_going_down_agrees_up_to_kernel():
    for m, n in [(3, 3), (3, 4)]:
        for L in all_lines(m, n):
            for _, L2 in L.down_neighbours():
                a = quantum_line_mutation(build_data(L).seed, L2)
                b = build_data(L2).seed
                assert a.variables == b.variables and np.array_equal(a.lam, b.lam)
                assert not (a.lam @ (a.b - b.b)).any()
                if m != n:
                    assert np.array_equal(a.b, b.b)


def test_composite_line_mutation():
    sd = mutate_to_line(build_data(BrokenLine.plus(3, 4)).seed, BrokenLine.minus(3, 4))
    assert sd.same_as(build_data(BrokenLine.minus(3, 4)).seed)


def test_reach_minor():
    plus = BrokenLine.plus(3, 3)
    assert reach_minor(plus, S((1,), (1,))) == []
    path = reach_minor(plus, S((2, 3), (2, 3)))
    assert len(path) == 1 and S((2, 3), (2, 3)) in path[-1].family.values()
    for i in range(1, 4):
        for j in range(1, 4):
            path = reach_minor(plus, S((i,), (j,)))
            assert S((i,), (j,)) in (path[-1] if path else plus).family.values()
    with pytest.raises(NotSolid):
        reach_minor(plus, S((1, 3), (1, 2)))


@pytest.mark.parametrize("shape", [(2, 2), (2, 3), (3, 3)])
def test_kernel_supported_on_frozen(shape):
    r = kernel_on_frozen(build_data(BrokenLine.plus(*shape)).seed)
    assert r.passed
    assert (r.details["kernel_rank"] > 0) == (shape[0] == shape[1])


def test_seed_json_round_trip():
    sd = build_data(BrokenLine.plus(3, 3).down_move(1, 1)).seed
    again = QuantumSeed.from_json(json.loads(sd.dumps()))
    assert again.same_as(sd) and again.labels == sd.labels and again.line == sd.line

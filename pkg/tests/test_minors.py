import itertools

import pytest
import sympy

from qmatrix.algebra import algebra
from qmatrix.errors import IndexOutOfRange, NotQCommuting, ShapeError, ShapeNotSquare, TooSmall
from qmatrix.laurent import qpow
from qmatrix.minors import (
    EMPTY,
    MinorSpec,
    all_msets,
    cofactor,
    commutation_exponent,
    covariance_profile,
    lambda_matrix,
    minor_commutation,
    mset,
    predicted_minor_exponent,
    qdet,
    quantum_minor,
    region,
    sgn_q,
    verify_laplace,
    verify_mset_identities,
    verify_power_commutators,
    verify_pw_expansion,
)


def classical_minor(spec, m, n):
    """The ordinary minor, written with commuting symbols."""
    Z = sympy.Matrix(m, n, lambda i, j: sympy.Symbol(f"z{i + 1}{j + 1}"))
    rows = [r - 1 for r in spec.rows]
    cols = [c - 1 for c in spec.cols]
    return sympy.expand(Z.extract(rows, cols).det())


def at_q1(x, m, n):
    out = 0
    for A, c in x.items():
        term = c.evaluate(1)
        for g, a in enumerate(A):
            term *= sympy.Symbol(f"z{g // n + 1}{g % n + 1}") ** a
        out += term
    return sympy.expand(out)


def test_minor_specialises_to_classical_minor():
    for m, n in [(2, 3), (3, 3)]:
        alg = algebra(m, n)
        for k in range(1, min(m, n) + 1):
            for rows in itertools.combinations(range(1, m + 1), k):
                for cols in itertools.combinations(range(1, n + 1), k):
                    spec = MinorSpec(rows, cols)
                    assert at_q1(quantum_minor(spec, alg), m, n) == classical_minor(spec, m, n)


def test_spec_basics():
    s = MinorSpec.solid(2, 1, 2)
    assert s == MinorSpec((2, 3), (1, 2))
    assert s.is_solid() and s.size == 2
    assert not MinorSpec((1, 3), (1, 2)).is_solid()
    assert MinorSpec.solid_bottom_right(3, 3, 2) == MinorSpec((2, 3), (2, 3))
    assert str(s) == "xi[2,3|1,2]"
    assert MinorSpec.from_json(s.to_json()) == s
    assert s.fits(3, 2) and not s.fits(2, 2)
    with pytest.raises(ShapeError):
        MinorSpec((1, 2), (1,))


def test_determinant(alg22):
    z = alg22.gen
    det = qdet(2, alg22)
    assert det == z(1, 1) * z(2, 2) - (z(1, 2) * z(2, 1)).shift(2)
    assert det.bar() == det
    for i, j in itertools.product((1, 2), repeat=2):
        assert det * z(i, j) == z(i, j) * det
    assert quantum_minor(EMPTY, alg22) == alg22.one()
    with pytest.raises(ShapeNotSquare):
        qdet(2, algebra(2, 3))


@pytest.mark.parametrize("n", [2, 3])
def test_determinant_central_and_bar_fixed(n):
    alg = algebra(n, n)
    det = qdet(n, alg)
    assert det.bar() == det
    for i, j in itertools.product(range(1, n + 1), repeat=2):
        assert det * alg.gen(i, j) == alg.gen(i, j) * det


def test_cofactor_and_signs(alg33):
    assert cofactor(1, 1, alg33) == quantum_minor(MinorSpec((2, 3), (2, 3)), alg33)
    assert sgn_q((1,), (2,)) == 1
    assert sgn_q((2,), (1,)) == -qpow(2)
    with pytest.raises(IndexOutOfRange):
        cofactor(4, 1, alg33)


@pytest.mark.parametrize("n", [2, 3])
def test_laplace_all_splits(n):
    alg = algebra(n, n)
    full = tuple(range(1, n + 1))
    for r in range(1, n):
        for J1 in itertools.combinations(full, r):
            J2 = tuple(j for j in full if j not in J1)
            for form in "AB":
                assert verify_laplace(full, full, J1, J2, alg, form).passed


def test_laplace_spot_check_n4():
    alg = algebra(4, 4)
    full = (1, 2, 3, 4)
    assert verify_laplace(full, full, (1, 3), (2, 4), alg, "A").passed
    assert verify_laplace((1, 2, 4), (1, 2, 3), (2,), (1, 3), alg, "B").passed


@pytest.mark.parametrize("n", [2, 3])
def test_cofactor_expansions(n):
    for i in range(1, n + 1):
        for k in range(1, n + 1):
            for r in verify_pw_expansion(i, k, n):
                assert r.passed, r.line()


def test_power_commutators():
    for n in (2, 3):
        for r in (1, 2, 3):
            assert all(rep.passed for rep in verify_power_commutators(r, n))


def test_commutation_exponents(alg33):
    z = alg33.gen
    assert commutation_exponent(z(1, 1), z(1, 2)) == 1
    assert commutation_exponent(z(1, 2), z(2, 1)) == 0
    assert commutation_exponent(z(1, 1), z(2, 2)) is None
    assert commutation_exponent(qdet(3, alg33), z(2, 3)) == 0


def test_regions_and_prediction():
    blk = MinorSpec.solid(2, 2, 1)
    assert [region(i, j, blk) for i in (1, 2, 3) for j in (1, 2, 3)] == [
        "NW", "N", "NE", "W", "IN", "E", "SW", "S", "SE"]
    alg = algebra(4, 4)
    specs = [MinorSpec.solid(i, j, s) for s in (1, 2, 3) for i in range(1, 6 - s) for j in range(1, 6 - s)]
    for a, b in itertools.combinations(specs, 2):
        pred = predicted_minor_exponent(a, b)
        if pred is not None:
            assert minor_commutation(a, b, alg) == pred, (a, b)


def test_covariance_profiles():
    prof = covariance_profile(2, algebra(3, 3))
    assert prof.matches
    assert prof.ascii() == "+ 0 0\n+ 0 0\n0 - -"
    for m, n in [(2, 3), (3, 2), (3, 4), (4, 4)]:
        for t in range(1, min(m, n) + 1):
            assert covariance_profile(t, algebra(m, n)).matches


def test_mset_construction():
    ms = mset(1, 1, 3, 3, 2)
    assert ms.X_t == MinorSpec((1,), (1,))
    assert ms.X_b == MinorSpec((2,), (2,))
    assert ms.X_o == EMPTY
    assert ms.D == MinorSpec((1, 2), (1, 2))
    big = mset(1, 1, 3, 3)
    assert big.size == 3 and big.X_o == MinorSpec((2,), (2,))
    with pytest.raises(TooSmall):
        mset(3, 3, 3, 3)


@pytest.mark.parametrize("shape", [(2, 2), (2, 3), (3, 3), (3, 4), (4, 4)])
def test_mset_identities(shape):
    alg = algebra(*shape)
    for ms in all_msets(*shape):
        for r in verify_mset_identities(ms, alg):
            assert r.passed, r.line()


def test_lambda_matrix_reports_first_failing_pair(alg22):
    gens = [MinorSpec((i,), (j,)) for i in (1, 2) for j in (1, 2)]
    L, bad = lambda_matrix(gens, alg22)
    assert L is None and bad == (0, 3)
    from qmatrix.cluster import lambda_of

    with pytest.raises(NotQCommuting) as exc:
        lambda_of(gens, alg22)
    assert exc.value.pair == (0, 3)

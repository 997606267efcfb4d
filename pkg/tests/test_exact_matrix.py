from itertools import combinations

import pytest
from conftest import cofactor_det, leibniz_det, random_matrix
from hypothesis import given, settings
from hypothesis import strategies as st

from minorsums.exact_matrix import (
    ExactMatrix,
    IndexSet,
    MatrixError,
    berkowitz,
    charpoly_coeffs,
    compound,
    det_berkowitz,
    det_laplace,
    determinant,
    minor,
    minor_of_product,
    minor_of_sum_expansion,
    principal_minor_sum,
    subsets,
)
from minorsums.polynomials import Polynomial, PolynomialRing
from minorsums.rings import QQ, ZZ, Zmod

RINGS = [ZZ, QQ, Zmod(2), Zmod(6), Zmod(7)]


def M(ring, grid):
    return ExactMatrix.from_rows(ring, grid)


# -- determinant ------------------------------------------------------------------


def test_det_2x2():
    assert determinant(M(ZZ, [[3, 5], [7, 11]])) == 3 * 11 - 5 * 7


def test_det_identity_and_empty():
    assert determinant(ExactMatrix.identity(ZZ, 4)) == 1
    assert determinant(ExactMatrix.identity(ZZ, 0)) == 1


def test_det_rejects_non_square():
    with pytest.raises(MatrixError):
        determinant(M(ZZ, [[1, 2, 3], [4, 5, 6]]))


@pytest.mark.parametrize("ring", RINGS, ids=str)
def test_det_matches_cofactor_oracle(ring, rnd):
    for n in range(1, 6):
        for _ in range(10):
            A = random_matrix(rnd, ring, n, n)
            assert determinant(A) == cofactor_det(ring, [list(r) for r in A.entries])


@pytest.mark.parametrize("ring", [ZZ, Zmod(6), Zmod(2)], ids=str)
@pytest.mark.parametrize("n", [6, 7])
def test_berkowitz_path_matches_leibniz(ring, n, rnd):
    A = random_matrix(rnd, ring, n, n)
    grid = [list(r) for r in A.entries]
    assert determinant(A) == leibniz_det(ring, grid)
    assert det_berkowitz(ring, grid) == det_laplace(ring, grid)


@pytest.mark.parametrize("ring", RINGS, ids=str)
def test_laplace_and_berkowitz_agree(ring, rnd):
    for n in range(0, 6):
        A = random_matrix(rnd, ring, n, n)
        assert det_laplace(ring, A.entries) == det_berkowitz(ring, A.entries)


def test_berkowitz_gives_charpoly_of_minus_convention():
    # det(xI - A) for A = [[1, 2], [3, 4]] is x^2 - 5x - 2.
    assert berkowitz(ZZ, [[1, 2], [3, 4]]) == [1, -5, -2]


def test_det_big_integers():
    big = 10**30
    assert determinant(M(ZZ, [[big, 1], [1, big]])) == big * big - 1


# -- minors ---------------------------------------------------------------------------


def test_minor_examples():
    I3 = ExactMatrix.identity(ZZ, 3)
    assert minor(I3, [], []) == 1
    assert minor(I3, [1, 2], [1, 3]) == 0
    assert minor(I3, [2, 3], [2, 3]) == 1
    assert minor(M(ZZ, [[1, 2, 3], [4, 5, 6]]), IndexSet((1, 2), 2), IndexSet((1, 3), 3)) == 6 - 12


@pytest.mark.parametrize("S, T", [([1, 2], [1]), ([0], [1]), ([4], [1]), ([2, 1], [1, 2])])
def test_minor_rejects_bad_indices(S, T):
    with pytest.raises(MatrixError):
        minor(ExactMatrix.identity(ZZ, 3), S, T)


@pytest.mark.parametrize("ring", RINGS, ids=str)
def test_transpose_minor(ring, rnd):
    for _ in range(30):
        r, c = rnd.randint(1, 4), rnd.randint(1, 4)
        A = random_matrix(rnd, ring, r, c)
        k = rnd.randint(0, min(r, c))
        S = sorted(rnd.sample(range(1, r + 1), k))
        T = sorted(rnd.sample(range(1, c + 1), k))
        assert minor(A.T, T, S) == minor(A, S, T)


# -- Cauchy-Binet and compounds -----------------------------------------------------


def test_minor_of_product_examples():
    I3 = ExactMatrix.identity(ZZ, 3)
    assert minor_of_product(I3, I3, [1, 2], [1, 2]) == 1
    A = M(ZZ, [[1, 2], [3, 4]])
    assert minor_of_product(A, A, [], []) == 1


def test_minor_of_product_mod7_example(rnd):
    R = Zmod(7)
    A, B = random_matrix(rnd, R, 3, 4), random_matrix(rnd, R, 4, 3)
    assert minor_of_product(A, B, [1, 3], [1, 3]) == minor(A @ B, [1, 3], [1, 3])


def test_minor_of_product_dimension_mismatch():
    with pytest.raises(MatrixError):
        minor_of_product(ExactMatrix.identity(ZZ, 2), ExactMatrix.identity(ZZ, 3), [1], [1])


@pytest.mark.parametrize("ring", RINGS, ids=str)
def test_cauchy_binet_random(ring, rnd):
    for _ in range(100):
        m, n, p = (rnd.randint(1, 4) for _ in range(3))
        A, B = random_matrix(rnd, ring, m, n), random_matrix(rnd, ring, n, p)
        k = rnd.randint(0, min(m, p))
        S = sorted(rnd.sample(range(1, m + 1), k))
        T = sorted(rnd.sample(range(1, p + 1), k))
        assert minor_of_product(A, B, S, T) == minor(A @ B, S, T)


def test_compound_examples():
    for n in range(1, 5):
        for k in range(n + 1):
            C = compound(ExactMatrix.identity(ZZ, n), k)
            assert C == ExactMatrix.identity(ZZ, C.rows)
    assert compound(M(ZZ, [[2, 3], [5, 7]]), 2) == M(ZZ, [[2 * 7 - 3 * 5]])


def test_compound_ordering_is_lexicographic():
    A = M(ZZ, [[1, 2, 3], [4, 5, 6], [7, 8, 10]])
    C = compound(A, 2)
    sets = list(combinations(range(1, 4), 2))
    for i, S in enumerate(sets):
        for j, T in enumerate(sets):
            assert C[i, j] == minor(A, S, T)


def test_compound_rejects_order():
    with pytest.raises(MatrixError):
        compound(M(ZZ, [[1, 2, 3]]), 2)


@pytest.mark.parametrize("ring", RINGS, ids=str)
def test_compound_multiplicative(ring, rnd):
    for n in range(1, 5):
        for k in range(n + 1):
            A, B = random_matrix(rnd, ring, n, n), random_matrix(rnd, ring, n, n)
            assert compound(A @ B, k) == compound(A, k) @ compound(B, k)


# -- principal minors and characteristic polynomials --------------------------------


def test_principal_minor_sum_examples():
    assert principal_minor_sum(ExactMatrix.identity(ZZ, 2), 1) == 2
    assert principal_minor_sum(M(ZZ, [[4, 1], [2, 9]]), 0) == 1
    with pytest.raises(MatrixError):
        principal_minor_sum(ExactMatrix.identity(ZZ, 2), 3)


def test_charpoly_examples():
    assert charpoly_coeffs(ExactMatrix.identity(ZZ, 2)).coeffs == (1, 2, 1)
    for n in range(1, 5):
        cp = charpoly_coeffs(ExactMatrix.zeros(ZZ, n, n))
        assert cp.coeffs == (0,) * n + (1,)
    a, b, c, d = 3, -2, 5, 7
    cp = charpoly_coeffs(M(ZZ, [[a, b], [c, d]]))
    assert cp.top_down(2) == [1, a + d, a * d - b * c]


def _charpoly_by_leibniz(ring, A):
    """det(xI + A) expanded as a polynomial determinant over K[x]."""
    px = PolynomialRing(ring)
    n = A.rows
    grid = [[px.add(px.x if i == j else px.zero, px.constant(A[i, j])) for j in range(n)]
            for i in range(n)]
    return leibniz_det(px, grid)


@pytest.mark.parametrize("ring", RINGS, ids=str)
def test_charpoly_against_principal_minors_and_oracle(ring, rnd):
    for n in range(1, 5):
        for _ in range(5):
            A = random_matrix(rnd, ring, n, n)
            cp = charpoly_coeffs(A)
            assert cp.top_down(n) == [principal_minor_sum(A, i) for i in range(n + 1)]
            assert cp == _charpoly_by_leibniz(ring, A)


def test_charpoly_large_uses_berkowitz_path(rnd):
    A = random_matrix(rnd, ZZ, 6, 6)
    assert charpoly_coeffs(A).top_down(6) == [principal_minor_sum(A, i) for i in range(7)]


# -- determinant of a sum --------------------------------------------------------------


def test_sum_expansion_degenerate_cases(rnd):
    A = random_matrix(rnd, ZZ, 3, 3)
    Z = ExactMatrix.zeros(ZZ, 3, 3)
    for S, T in [([1, 2], [2, 3]), ([1, 2, 3], [1, 2, 3]), ([2], [1])]:
        assert minor_of_sum_expansion(A, Z, S, T) == minor(A, S, T)
        assert minor_of_sum_expansion(Z, A, S, T) == minor(A, S, T)


def test_sum_expansion_mod5_example(rnd):
    R = Zmod(5)
    A, D = random_matrix(rnd, R, 3, 3), random_matrix(rnd, R, 3, 3)
    assert minor_of_sum_expansion(A, D, [1, 2], [1, 2]) == minor(A + D, [1, 2], [1, 2])


@pytest.mark.parametrize("ring", RINGS, ids=str)
def test_sum_expansion_random(ring, rnd):
    for _ in range(100):
        r, c = rnd.randint(1, 4), rnd.randint(1, 4)
        A, D = random_matrix(rnd, ring, r, c), random_matrix(rnd, ring, r, c)
        k = rnd.randint(0, min(3, r, c))
        S = sorted(rnd.sample(range(1, r + 1), k))
        T = sorted(rnd.sample(range(1, c + 1), k))
        assert minor_of_sum_expansion(A, D, S, T) == minor(A + D, S, T)


def test_sum_expansion_shape_mismatch():
    with pytest.raises(MatrixError):
        minor_of_sum_expansion(ExactMatrix.identity(ZZ, 2), ExactMatrix.identity(ZZ, 3), [1], [1])


@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_sum_expansion_hypothesis(data):
    n = data.draw(st.integers(1, 4))
    cells = st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n), min_size=n, max_size=n)
    A, D = M(ZZ, data.draw(cells)), M(ZZ, data.draw(cells))
    S = data.draw(st.lists(st.integers(1, n), unique=True, max_size=3).map(sorted))
    T = data.draw(st.lists(st.integers(1, n), unique=True, min_size=len(S),
                           max_size=len(S)).map(sorted))
    assert minor_of_sum_expansion(A, D, S, T) == minor(A + D, S, T)


# -- types and serialization -------------------------------------------------------------


def test_index_set_validation():
    assert len(IndexSet((), 0)) == 0
    assert list(IndexSet((1, 3), 3)) == [1, 3]
    for els, n in [((2, 1), 3), ((1, 1), 3), ((0,), 3), ((4,), 3)]:
        with pytest.raises(MatrixError):
            IndexSet(els, n)


def test_subsets_lexicographic():
    assert [s.elements for s in subsets(4, 2)] == list(combinations(range(1, 5), 2))


def test_matrix_json_round_trip():
    for ring in RINGS:
        A = M(ring, [[1, -2, 3], [0, 4, -5]])
        assert ExactMatrix.from_json(A.to_json()) == A
    assert M(ZZ, [[1, 2]]).to_json() == {"ring": {"kind": "int"}, "rows": 1, "cols": 2,
                                         "entries": [["1", "2"]]}


@pytest.mark.parametrize("obj", [
    {"ring": {"kind": "int"}, "rows": 2, "cols": 2, "entries": [["1", "2"]]},
    {"ring": {"kind": "int"}, "rows": 1, "cols": 2, "entries": [["1"]]},
    {"ring": {"kind": "int"}, "rows": 1, "cols": 1, "entries": [["x"]]},
    {"ring": {"kind": "int"}, "rows": 1, "cols": 1},
    [1, 2],
])
def test_matrix_json_rejects(obj):
    with pytest.raises(MatrixError):
        ExactMatrix.from_json(obj)


def test_matrix_arithmetic_checks():
    with pytest.raises(MatrixError):
        ExactMatrix.identity(ZZ, 2) @ ExactMatrix.identity(ZZ, 3)
    with pytest.raises(MatrixError):
        ExactMatrix.identity(ZZ, 2) + ExactMatrix.identity(Zmod(3), 2)
    with pytest.raises(MatrixError):
        ExactMatrix.from_rows(ZZ, [[1, 2], [3]])


def test_polynomial_normalization():
    p = Polynomial(ZZ, (1, 2, 0, 0))
    assert p.coeffs == (1, 2) and p.degree == 1
    assert Polynomial(ZZ, (0, 0)).coeffs == (0,)
    assert p.top_down(3) == [0, 0, 2, 1]
    assert Polynomial.from_top_down(ZZ, [0, 0, 2, 1]) == p
    px = PolynomialRing(Zmod(4))
    two_x = Polynomial(Zmod(4), (0, 2))
    assert px.mul(two_x, two_x).is_zero()

from fractions import Fraction

import pytest
import sympy

from src.services.errors import StructureError
from src.services.linalg import (
    Echelon,
    Matrix,
    Polynomial,
    determinant,
    jordan_chevalley,
    min_poly,
    nullspace,
    rank,
    solve,
    squarefree_part,
)


def test_rank_of_dependent_rows():
    assert rank(Matrix.from_rows([[1, 2], [2, 4]])) == 1
    assert rank(Matrix.identity(3)) == 3
    assert rank(Matrix.zero(2, 3)) == 0


def test_solve_consistent_and_inconsistent():
    assert solve(Matrix.from_rows([[1, 1], [1, -1]]), [3, 1]) == [2, 1]
    assert solve(Matrix.from_rows([[1, 1], [1, 1]]), [1, 2]) is None


def test_solve_rejects_wrong_length():
    with pytest.raises(StructureError):
        solve(Matrix.identity(2), [1, 2, 3])


def test_nullspace_has_unit_free_entry():
    basis = nullspace(Matrix.from_rows([[1, 1]]))
    assert basis == [[Fraction(-1), Fraction(1)]]
    assert nullspace(Matrix.identity(2)) == []


def test_rational_entries_stay_exact():
    M = Matrix.from_rows([["1/2", 0], [0, "1/3"]])
    assert determinant(M) == Fraction(1, 6)
    assert M.apply([2, 3]) == [1, 1]


def test_transpose():
    M = Matrix.from_rows([[1, 2, 0], [0, 0, 3]])
    assert M.transpose().to_dense() == [[1, 0], [2, 0], [0, 3]]


@pytest.mark.parametrize(
    "rows, expected",
    [
        ([[2, 0], [0, 3]], 6),
        ([[1, 2], [3, 4]], -2),
        ([[0, 1], [1, 0]], -1),
        ([[1, 2], [2, 4]], 0),
    ],
)
def test_determinant(rows, expected):
    assert determinant(Matrix.from_rows(rows)) == expected


def test_commutator_of_elementary_matrices():
    E12 = Matrix.from_rows([[0, 1], [0, 0]])
    E21 = Matrix.from_rows([[0, 0], [1, 0]])
    assert E12.commutator(E21) == Matrix.from_rows([[1, 0], [0, -1]])
    assert E12.power(2).is_zero()
    assert E12.is_nilpotent()
    assert not E21.commutator(E12).is_nilpotent()


def test_echelon_reports_dependencies():
    echelon = Echelon()
    assert echelon.add({0: 1, 1: 1}) is not None
    assert echelon.add({0: 2, 1: 2}) is None
    assert echelon.contains({0: Fraction(-1, 2), 1: Fraction(-1, 2)})
    assert echelon.rank == 1


def test_min_poly():
    assert min_poly(Matrix.identity(2)).coefficients == (-1, 1)
    assert min_poly(Matrix.from_rows([[0, 1], [0, 0]])).coefficients == (0, 0, 1)
    assert min_poly(Matrix.from_rows([[2, 0], [0, 3]])).coefficients == (6, -5, 1)


def test_min_poly_annihilates():
    M = Matrix.from_rows([[1, 1, 0], [0, 1, 0], [0, 0, 2]])
    p = min_poly(M)
    assert p.degree == 3
    assert p.evaluate(M).is_zero()


def test_squarefree_part():
    # t^2 (t - 1) -> t (t - 1)
    assert squarefree_part(Polynomial([0, 0, -1, 1])).coefficients == (0, -1, 1)
    with pytest.raises(StructureError):
        squarefree_part(Polynomial())


def test_jordan_chevalley_of_a_jordan_block():
    M = Matrix.from_rows([[1, 1], [0, 1]])
    Ms, Mn = jordan_chevalley(M)
    assert Ms == Matrix.identity(2)
    assert Mn == Matrix.from_rows([[0, 1], [0, 0]])


def test_jordan_chevalley_parts_commute():
    M = Matrix.from_rows([[2, 1, 0], [0, 2, 0], [0, 0, 3]])
    Ms, Mn = jordan_chevalley(M)
    assert Ms + Mn == M
    assert Ms.commutator(Mn).is_zero()
    assert Mn.is_nilpotent()
    assert Ms == Matrix.from_rows([[2, 0, 0], [0, 2, 0], [0, 0, 3]])


def test_jordan_chevalley_of_diagonalizable_matrix():
    M = Matrix.from_rows([[2, 0], [0, 3]])
    Ms, Mn = jordan_chevalley(M)
    assert Ms == M
    assert Mn.is_zero()


def _unimodular(rng, n):
    lower = Matrix(n, n, {(i, j): rng.randint(-2, 2) for i in range(n) for j in range(i)})
    upper = Matrix(n, n, {(i, j): rng.randint(-2, 2) for i in range(n) for j in range(i + 1, n)})
    return (lower + Matrix.identity(n)) * (upper + Matrix.identity(n))


def _inverse(P):
    n = P.rows
    columns = []
    for i in range(n):
        unit = [1 if j == i else 0 for j in range(n)]
        columns.append(dict(enumerate(solve(P, unit))))
    return Matrix.from_columns(n, columns)


def _jordan_form(rng, n):
    """Random (D, N) with D diagonal, N nilpotent inside Jordan blocks."""
    diagonal, nilpotent = {}, {}
    start = 0
    while start < n:
        size = rng.randint(1, n - start)
        eigenvalue = rng.randint(-2, 2)
        for i in range(start, start + size):
            diagonal[(i, i)] = eigenvalue
            if i + 1 < start + size:
                nilpotent[(i, i + 1)] = 1
        start += size
    return Matrix(n, n, diagonal), Matrix(n, n, nilpotent)


def _assert_jordan_chevalley_laws(M, Ms, Mn):
    assert Ms + Mn == M
    assert Ms * Mn == Mn * Ms
    assert Mn.is_nilpotent()
    m = min_poly(Ms)
    assert squarefree_part(m) == m


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_jordan_chevalley_recovers_conjugated_jordan_forms(rng, n):
    for _ in range(4):
        P = _unimodular(rng, n)
        P_inv = _inverse(P)
        assert P * P_inv == Matrix.identity(n)
        D, N = _jordan_form(rng, n)
        M = P * (D + N) * P_inv
        Ms, Mn = jordan_chevalley(M)
        _assert_jordan_chevalley_laws(M, Ms, Mn)
        assert Ms == P * D * P_inv
        assert Mn == P * N * P_inv


@pytest.mark.slow
@pytest.mark.parametrize("n", [6, 7, 8])
def test_jordan_chevalley_recovers_large_conjugated_jordan_forms(rng, n):
    for _ in range(2):
        P = _unimodular(rng, n)
        P_inv = _inverse(P)
        D, N = _jordan_form(rng, n)
        M = P * (D + N) * P_inv
        Ms, Mn = jordan_chevalley(M)
        _assert_jordan_chevalley_laws(M, Ms, Mn)
        assert Ms == P * D * P_inv
        assert Mn == P * N * P_inv


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_jordan_chevalley_laws_on_random_integer_matrices(rng, n):
    for _ in range(5):
        M = Matrix(n, n, {(i, j): rng.choice([0, 0, 1, -1, 2]) for i in range(n) for j in range(n)})
        Ms, Mn = jordan_chevalley(M)
        _assert_jordan_chevalley_laws(M, Ms, Mn)
        # shifting by a scalar only moves the semisimple part
        shift = Matrix.identity(n).scale(rng.randint(-3, 3))
        shifted_s, shifted_n = jordan_chevalley(M + shift)
        assert shifted_s == Ms + shift
        assert shifted_n == Mn


@pytest.mark.parametrize("rows", [[[0, 1], [1, 0]], [[1, 1], [0, 2]]])
def test_jordan_chevalley_with_distinct_eigenvalues_is_all_semisimple(rows):
    M = Matrix.from_rows(rows)
    Ms, Mn = jordan_chevalley(M)
    assert Ms == M
    assert Mn.is_zero()


def test_squarefree_part_keeps_roots_and_drops_multiplicity(rng):
    t = sympy.Symbol("t")
    for _ in range(10):
        factors = [
            (t - rng.randint(-3, 3)) ** rng.randint(1, 3) for _ in range(rng.randint(1, 3))
        ]
        if rng.random() < 0.5:
            factors.append((t**2 + rng.randint(1, 3)) ** rng.randint(1, 2))
        p = Polynomial.from_sympy(sympy.Poly(sympy.Mul(*factors), t, domain=sympy.QQ))
        sf = squarefree_part(p)
        f, g = p.to_sympy(), sf.to_sympy()
        assert f.rem(g).is_zero
        assert g.gcd(g.diff()).degree() == 0
        assert (g ** p.degree).rem(f).is_zero
        assert g.LC() == 1


@pytest.mark.parametrize("shape", [(2, 3), (3, 3), (4, 2), (5, 5), (6, 4)])
def test_solve_and_nullspace_on_random_matrices(rng, shape):
    rows, cols = shape
    for _ in range(5):
        M = Matrix(rows, cols, {(i, j): rng.randint(-2, 2) for i in range(rows) for j in range(cols)})
        x0 = [rng.randint(-3, 3) for _ in range(cols)]
        b = M.apply(x0)
        x = solve(M, b)
        assert x is not None
        assert M.apply(x) == b
        basis = nullspace(M)
        assert len(basis) == cols - rank(M)
        for v in basis:
            assert M.apply(v) == [0] * rows

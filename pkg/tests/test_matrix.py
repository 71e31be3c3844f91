import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from nullpart.matrix import (
    DimensionLimitError,
    IntMatrix,
    SingularMatrixError,
    bareiss_determinant,
    cramer_component,
    solve_exact,
    solve_with_determinant,
)
from nullpart.partition_matrix import build
from oracles import cofactor_det, gauss_solve, permutation_parity


def square(max_dim=6, lo=-9, hi=9):
    return st.integers(0, max_dim).flatmap(
        lambda m: st.lists(st.lists(st.integers(lo, hi), min_size=m, max_size=m), min_size=m, max_size=m)
    )


def test_determinant_examples():
    assert bareiss_determinant(build([1, 3, 5, 2]).body) == -51975
    assert bareiss_determinant(IntMatrix.identity(8)) == 1
    # [[w2, w1], [w1, w2]] with w = (1, 2): w2^2 - w1^2
    assert bareiss_determinant([[2, 1], [1, 2]]) == 3
    assert bareiss_determinant([]) == 1


@settings(max_examples=300)
@given(square())
def test_bareiss_matches_cofactor_expansion(a):
    assert bareiss_determinant(a) == cofactor_det(a)


@settings(max_examples=100)
@given(square(max_dim=5, lo=-2, hi=2))
def test_bareiss_on_sparse_singular_prone_matrices(a):
    assert bareiss_determinant(a) == cofactor_det(a)


@given(square())
def test_transpose_invariance(a):
    m = IntMatrix.from_rows(a)
    assert bareiss_determinant(m.transpose()) == bareiss_determinant(m)


@pytest.mark.parametrize("m", range(1, 6))
def test_permutation_matrix_determinant_is_parity(m):
    for perm in itertools.permutations(range(m)):
        p = [[int(perm[i] == j) for j in range(m)] for i in range(m)]
        assert bareiss_determinant(p) == permutation_parity(perm)


def test_zero_pivot_requires_swap():
    a = [[0, 1, 2], [3, 0, 1], [1, 1, 0]]
    assert bareiss_determinant(a) == cofactor_det(a) == 7
    x = solve_exact(a, [1, 2, 3])
    assert IntMatrix.from_rows(a).matvec(x) == [1, 2, 3]


def test_structurally_singular_short_circuit():
    assert bareiss_determinant([[1, 2, 0], [3, 4, 0], [5, 6, 0]]) == 0
    assert bareiss_determinant([[0, 0], [1, 2]]) == 0


def test_solve_identity():
    v = [Fraction(1, 2), Fraction(-3), Fraction(7, 9)]
    assert solve_exact(IntMatrix.identity(3), v) == v


@settings(max_examples=150)
@given(square(max_dim=6), st.data())
def test_solve_multiplies_back(a, data):
    m = len(a)
    if m == 0 or cofactor_det(a) == 0:
        return
    rhs = data.draw(st.lists(st.fractions(min_value=-40, max_value=40, max_denominator=12), min_size=m, max_size=m))
    x, det = solve_with_determinant(a, rhs)
    assert det == cofactor_det(a)
    assert IntMatrix.from_rows(a).matvec(x) == rhs
    assert x == gauss_solve(a, rhs)
    for j in range(m):
        assert cramer_component(a, rhs, j) == x[j]


def test_singular_solve_raises():
    with pytest.raises(SingularMatrixError):
        solve_exact(build([1, 1]).body, [0, 1])
    with pytest.raises(SingularMatrixError):
        cramer_component([[1, 2], [2, 4]], [1, 1], 0)


def test_cramer_examples():
    pm = build([1, 3, 5, 2])
    rhs = [0] * 7 + [1]
    j = pm.index.col_masks.index(0b1000)
    assert cramer_component(pm.body, rhs, j) == Fraction(34, 693)
    replaced = pm.body.with_column(j, rhs)
    assert bareiss_determinant(replaced) == -2550
    v = [Fraction(2), Fraction(-1, 3)]
    assert [cramer_component(IntMatrix.identity(2), v, j) for j in range(2)] == v


def test_cramer_matches_solve_on_random_nonsingular():
    rng = random.Random(3)
    done = 0
    while done < 40:
        m = rng.randint(1, 7)
        a = [[rng.randint(-5, 5) for _ in range(m)] for _ in range(m)]
        if bareiss_determinant(a) == 0:
            continue
        rhs = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(m)]
        x = solve_exact(a, rhs)
        assert [cramer_component(a, rhs, j) for j in range(m)] == x
        done += 1


def test_dimension_guard():
    with pytest.raises(DimensionLimitError):
        bareiss_determinant(IntMatrix.identity(5), max_dim=4)
    with pytest.raises(DimensionLimitError):
        solve_exact(IntMatrix.identity(5), [1] * 5, max_dim=4)


def test_shape_validation():
    with pytest.raises(ValueError):
        IntMatrix.from_rows([[1, 2]])
    with pytest.raises(ValueError):
        IntMatrix.from_rows([[1]], row_labels=["a", "b"])
    with pytest.raises(ValueError):
        solve_exact([[1]], [1, 2])


def test_text_and_csv_rendering():
    m = IntMatrix.from_rows([[1, -2], [30, 4]], row_labels=["r1", "r2"], col_labels=["c1", "c2"])
    text = m.to_text().splitlines()
    assert text[0].split("|")[1].split() == ["c1", "c2"]
    assert text[2].split("|")[0].strip() == "r1"
    assert text[3].split("|")[1].split() == ["30", "4"]
    assert m.to_csv() == "1,-2\n30,4\n"
    assert IntMatrix.from_rows([[5]]).to_text() == "[5]"

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from algkit.errors import DimensionMismatch
from algkit.linalg import (
    QMatrix,
    det,
    intersect_subspaces,
    inverse,
    kernel_basis,
    rank,
    rref,
    solve,
    span_contains,
)

from conftest import matrices, small_ints


def cofactor_det(m):
    if len(m) == 1:
        return m[0][0]
    return sum(
        (-1) ** j * m[0][j] * cofactor_det([r[:j] + r[j + 1 :] for r in m[1:]]) for j in range(len(m))
    )


def test_rref_examples():
    red, piv = rref([[1, 2], [2, 4]])
    assert red == QMatrix([[1, 2], [0, 0]]) and piv == [0]
    assert rref(QMatrix.identity(3)) == (QMatrix.identity(3), [0, 1, 2])
    assert rref([[0, 1], [1, 0]]) == (QMatrix.identity(2), [0, 1])


def test_entries_are_reduced_fractions():
    m = QMatrix([[Fraction(2, 4), 3], ["-1/2", "6/8"]])
    assert m[0, 0] == Fraction(1, 2) and m[0, 0].denominator == 2
    assert m[1, 1] == Fraction(3, 4) and m[1, 0].denominator > 0
    with pytest.raises(TypeError):
        QMatrix([[0.5]])


def test_kernel_examples():
    (k,) = kernel_basis([[1, 1], [1, 1]])
    assert k == (1, -1)
    assert kernel_basis(QMatrix.identity(3)) == []
    assert len(kernel_basis(QMatrix.zeros(2, 2))) == 2


def test_det_examples():
    x, y = 3, 4
    assert det([[x, -y], [y, x]]) == 25
    assert det(QMatrix.identity(5)) == 1
    assert det([[1, 2], [2, 4]]) == 0
    with pytest.raises(DimensionMismatch):
        det([[1, 2, 3], [4, 5, 6]])


def test_intersection_examples():
    assert intersect_subspaces([[(1, 0)], [(0, 1)]]) == []
    (v,) = intersect_subspaces([[(1, 0), (0, 1)], [(1, 1)]])
    assert v == (1, 1)
    assert intersect_subspaces([[(1, 2, 0)], [(1, 2, 0)]]) == [(1, 2, 0)]
    with pytest.raises(DimensionMismatch):
        intersect_subspaces([[(1, 0)], [(1, 0, 0)]])


def test_inverse_and_solve():
    m = QMatrix([[2, 1], [1, 1]])
    assert m @ inverse(m) == QMatrix.identity(2)
    with pytest.raises(ZeroDivisionError):
        inverse([[1, 2], [2, 4]])
    assert solve([[1, 1], [1, 1]], (1, 2)) is None


@given(matrices())
def test_kernel_vectors_are_annihilated(rows):
    m = QMatrix(rows)
    for k in kernel_basis(m):
        assert all(x == 0 for x in m @ k)
        assert next(x for x in k if x) == 1


@given(matrices())
def test_rank_nullity(rows):
    m = QMatrix(rows)
    assert rank(m) + len(kernel_basis(m)) == m.cols


@given(st.integers(1, 4).flatmap(lambda n: matrices(st.just(n), st.just(n))))
def test_det_zero_iff_kernel(rows):
    m = QMatrix(rows)
    d = det(m)
    assert d == cofactor_det(m.tolist())
    assert (d == 0) == bool(kernel_basis(m))


vec3 = st.lists(small_ints, min_size=3, max_size=3).map(tuple)


@given(st.lists(st.lists(vec3, min_size=1, max_size=3), min_size=1, max_size=3))
def test_intersection_lies_in_every_span(bases):
    for v in intersect_subspaces(bases, dim=3):
        for b in bases:
            assert span_contains(b, v)

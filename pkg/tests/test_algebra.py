import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from algkit.algebra import (
    algebra_from_json,
    algebra_to_json,
    annihilator,
    is_nontrivial_zero_divisor,
    is_semisimple,
    is_unit,
    is_unital_nil,
    is_zero_divisor,
    make_algebra,
    nil_star,
    nilradical,
    random_element,
    regular_matrix,
)
from algkit.errors import DimensionMismatch, NonAssociative, NotCommutative, ParentMismatch, UnitViolation
from algkit.linalg import QMatrix
from algkit.presentations import direct_product, family, reals, tensor

from conftest import elements, rationals

C = family("C", 2).algebra
H = family("H", 2).algebra
H3 = family("H", 3).algebra
G2 = family("G", 2).algebra
G3 = family("G", 3).algebra
XI2 = family("Xi", 2).algebra
ALGEBRAS = [C, H, H3, G3, XI2, family("CC", 2).algebra, tensor(family("G", 2), family("H", 2)).algebra]


def quaternion_table():
    labels = ["1", "i", "j", "k"]
    sign = {("i", "j"): ("k", 1), ("j", "k"): ("i", 1), ("k", "i"): ("j", 1)}
    t = [[[0] * 4 for _ in range(4)] for _ in range(4)]
    for a in range(4):
        t[0][a][a] = t[a][0][a] = 1
    for a in range(1, 4):
        t[a][a][0] = -1
    for (x, y), (z, s) in sign.items():
        i, j, k = labels.index(x), labels.index(y), labels.index(z)
        t[i][j][k] = s
        t[j][i][k] = -s
    return labels, t


def test_complex_product():
    a, b = C.element((1, 2)), C.element((3, 4))
    assert (a * b).coords == (-5, 10)
    assert (H.element((1, 1)) * H.element((1, -1))).is_zero()


def test_regular_matrix_examples():
    x, y = Fraction(3), Fraction(-7, 2)
    assert regular_matrix(C.element((x, y))) == QMatrix([[x, -y], [y, x]])
    a, b, c = 1, 2, 3
    assert regular_matrix(H3.element((a, b, c))) == QMatrix([[a, c, b], [b, a, c], [c, b, a]])
    assert regular_matrix(H3.one()) == QMatrix.identity(3)


def test_zero_divisor_examples():
    assert is_zero_divisor(H.element((1, 1)))
    assert not is_zero_divisor(H.element((2, 1))) and is_unit(H.element((2, 1)))
    for A in ALGEBRAS:
        assert not is_zero_divisor(A.one())
        assert is_zero_divisor(A.zero()) and not is_nontrivial_zero_divisor(A.zero())


def test_annihilator_examples():
    ann = annihilator(H.element((1, 1)))
    assert [b.coords for b in ann.basis] == [(1, -1)]
    assert annihilator(H3.one()).is_trivial()


def test_annihilator_of_mixed_monomial_in_g3_tensor_g3():
    T = tensor(family("G", 3), family("G", 3))
    A = T.algebra
    eg = T.gen("e") * T.gen("e_2")
    ann = annihilator(eg)
    expected = {"e^2", "e_2^2", "e^2*e_2", "e*e_2^2", "e^2*e_2^2"}
    assert ann.dim == 5
    assert all(A.basis(A.label_index(lab)) in ann for lab in expected)
    # the mixed monomial does not kill itself
    assert eg not in ann and not (eg * eg).is_zero()


def test_nilradical_examples():
    assert [b.coords for b in nilradical(G2).basis] == [(0, 1)]
    assert nilradical(H).is_trivial()
    assert nilradical(XI2).dim == 2
    assert is_semisimple(H3) and is_semisimple(C)
    assert not is_semisimple(family("G", 5).algebra)


def test_nil_star_examples():
    assert is_unital_nil(G3) and nil_star(G3).dim == 3
    assert not is_unital_nil(H) and nil_star(H).dim == 1
    P = direct_product(family("G", 2), reals())
    assert P.dim == 3 and nil_star(P.algebra).dim == 2 and not is_unital_nil(P.algebra)


def test_make_algebra_validation():
    with pytest.raises(DimensionMismatch):
        make_algebra(2, ["1"], 0, [[[1, 0], [0, 1]], [[0, 1], [1, 0]]])
    bad_unit = [[[1, 0], [0, 2]], [[0, 1], [1, 0]]]
    with pytest.raises(UnitViolation):
        make_algebra(2, ["1", "x"], 0, bad_unit)
    # 1, x, y with x^2 = y, y x = x but x y = 0 breaks associativity
    t = [[[0] * 3 for _ in range(3)] for _ in range(3)]
    for a in range(3):
        t[0][a][a] = t[a][0][a] = 1
    t[1][1][2] = 1
    t[2][1][1] = 1
    with pytest.raises(NonAssociative):
        make_algebra(3, ["1", "x", "y"], 0, t)


def test_noncommutative_tables_are_accepted_but_gated():
    labels, t = quaternion_table()
    Q = make_algebra(4, labels, 0, t)
    assert not Q.commutative
    i, j = Q.basis(1), Q.basis(2)
    assert i * j == Q.basis(3) and j * i == -Q.basis(3)
    with pytest.raises(NotCommutative):
        is_zero_divisor(i)
    with pytest.raises(NotCommutative):
        nilradical(Q)


def test_parent_mismatch():
    with pytest.raises(ParentMismatch):
        H.one() + G2.one()


def test_json_contract_round_trip():
    text = algebra_to_json(H3)
    doc = json.loads(text)
    assert doc == {
        "dim": 3,
        "basis": ["1", "j", "j^2"],
        "unit": 0,
        "table": [[[str(c) for c in H3.table[i][j]] for j in range(3)] for i in range(3)],
    }
    assert algebra_from_json(text) == H3
    half = family("C", 3).algebra
    assert algebra_from_json(algebra_to_json(half)) == half


@pytest.mark.parametrize("A", ALGEBRAS, ids=lambda A: "x".join(A.labels[:3]))
def test_regular_representation_is_a_homomorphism(A):
    rng = random.Random(7)
    assert regular_matrix(A.one()) == QMatrix.identity(A.dim)
    for _ in range(25):
        a, b = random_element(A, rng), random_element(A, rng)
        assert regular_matrix(a * b) == regular_matrix(a) @ regular_matrix(b)
        assert a * b == b * a


@given(st.sampled_from(ALGEBRAS).flatmap(lambda A: elements(A)))
def test_annihilator_kills_and_detects_zero_divisors(a):
    ann = annihilator(a)
    assert all((x * a).is_zero() for x in ann.basis)
    if not a.is_zero():
        assert (ann.dim > 0) == is_zero_divisor(a)


@given(st.sampled_from(ALGEBRAS).flatmap(lambda A: st.tuples(elements(A), elements(A), elements(A))))
def test_ring_axioms(abc):
    a, b, c = abc
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * a.parent.one() == a


@given(st.sampled_from([G3, XI2, family("G", 5).algebra, tensor(family("G", 3), family("G", 2)).algebra]))
def test_nilradical_vectors_are_nilpotent(A):
    for v in nilradical(A).basis:
        assert (regular_matrix(v) ** A.dim).is_zero()


@given(elements(H3, rationals))
def test_h3_zero_divisor_loci(a):
    x, y, z = a.coords
    on_locus = (x + y + z == 0) or (x == y == z)
    if on_locus:
        assert is_zero_divisor(a)


def test_units_are_dense():
    # rationals p/q with |p| <= 99, q <= 9; integer coordinates in [-9, 9]
    # put about 10% of H on the lines a = +-b, so they are too coarse here
    loci = {
        "H": lambda a, b: a * a == b * b,
        "G3": lambda a, b, c: a == 0,
        "H3": lambda x, y, z: (x + y + z) * (x * x + y * y + z * z - x * y - y * z - z * x) == 0,
    }
    rng = random.Random(2024)
    for name, A in (("H", H), ("G3", G3), ("H3", H3)):
        zd = 0
        for _ in range(1000):
            a = A.element(Fraction(rng.randint(-99, 99), rng.randint(1, 9)) for _ in range(A.dim))
            assert is_zero_divisor(a) == loci[name](*a.coords)
            zd += is_zero_divisor(a)
        assert zd / 1000 < 0.05

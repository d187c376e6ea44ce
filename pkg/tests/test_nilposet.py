import pytest
from hypothesis import given, strategies as st

from algkit.algebra import annihilator, make_algebra
from algkit.errors import NotMultiplicative, NotUnitalNil
from algkit.nilposet import (
    annihilator_from_poset,
    annihilator_mismatches,
    build_nil_poset,
    hasse_dot,
    is_lattice,
    is_multiplicative_basis,
)
from algkit.presentations import counterexample_algebra, family, reals, tensor


def closure(n, covers):
    rel = [[i == j for j in range(n)] for i in range(n)]
    for a, b in covers:
        rel[a][b] = True
    for m in range(n):
        for i in range(n):
            for j in range(n):
                rel[i][j] = rel[i][j] or (rel[i][m] and rel[m][j])
    return rel


def h_basis_one_plus_j():
    # basis {1, u} with u = 1 + j: u^2 = 2u
    t = [[[1, 0], [0, 1]], [[0, 1], [0, 2]]]
    return make_algebra(2, ["1", "u"], 0, t)


def test_multiplicative_basis_examples():
    assert is_multiplicative_basis(family("G", 3).algebra)
    assert is_multiplicative_basis(family("H", 3).algebra)
    # (1+j)^2 = 2(1+j), so {1, 1+j} is multiplicative
    assert is_multiplicative_basis(h_basis_one_plus_j())
    t = [[[1, 0], [0, 1]], [[0, 1], [1, 1]]]  # u^2 = 1 + u
    check = is_multiplicative_basis(make_algebra(2, ["1", "u"], 0, t))
    assert not check and check.pair == ("u", "u")


def test_build_rejections():
    with pytest.raises(NotUnitalNil):
        build_nil_poset(family("H", 3).algebra)
    t = [[[1, 0], [0, 1]], [[0, 1], [1, 1]]]
    with pytest.raises(NotMultiplicative):
        build_nil_poset(make_algebra(2, ["1", "u"], 0, t))


def test_chain_and_diamond():
    N = build_nil_poset(family("G", 3).algebra)
    assert N.labels == ("1", "e", "e^2", "0")
    assert N.is_chain() and sorted(N.covers) == [(0, 1), (1, 2), (2, 3)]
    X = build_nil_poset(family("Xi", 2).algebra)
    assert X.size == 4 and sorted(X.covers) == [(0, 1), (0, 2), (1, 3), (2, 3)]


def test_tensor_square_of_g3():
    T = tensor(family("G", 3), family("G", 3))
    N = build_nil_poset(T.algebra)
    assert N.size == 10 and "e^2*e_2^2" in N.labels
    assert annihilator_mismatches(N) == []
    eg = N.node("e*e_2")
    ann = annihilator_from_poset(N, eg)
    want = {"e^2", "e_2^2", "e^2*e_2", "e*e_2^2", "e^2*e_2^2"}
    assert {T.algebra.labels[T.algebra.basis_elements().index(b)] for b in ann.basis} == want


def test_annihilator_reading():
    P = family("G", 3)
    N = build_nil_poset(P.algebra)
    ann = annihilator_from_poset(N, "e^2")
    assert ann.equals(annihilator(P.gen("e") ** 2)) and ann.dim == 2
    for P in (family("G", 4), family("Xi", 3), counterexample_algebra()):
        N = build_nil_poset(P.algebra)
        assert annihilator_from_poset(N, N.unit_node).is_trivial()


def test_hasse_dot():
    dot = hasse_dot(build_nil_poset(family("G", 3).algebra))
    assert dot.count("->") == 3 and dot.count("[label=") == 4
    assert "rankdir=BT;" in dot
    assert hasse_dot(build_nil_poset(family("Xi", 2).algebra)).count("->") == 4
    r = hasse_dot(build_nil_poset(reals().algebra))
    assert r.count("->") == 1 and r.count("[label=") == 2
    T = tensor(family("G", 3), family("G", 3)).algebra
    assert hasse_dot(build_nil_poset(T)) == hasse_dot(build_nil_poset(T))


def test_lattice_checks():
    assert is_lattice(build_nil_poset(family("G", 3).algebra))
    assert is_lattice(build_nil_poset(family("Xi", 2).algebra))
    lat = is_lattice(build_nil_poset(counterexample_algebra().algebra))
    assert not lat
    assert lat.pair == ("epsilon", "gamma") and lat.kind == "join"
    assert set(lat.bounds) == {"zeta", "xi"}


NIL_ALGEBRAS = [family("G", n) for n in range(2, 7)] + [family("Xi", n) for n in range(1, 4)]
NIL_ALGEBRAS += [tensor(family("G", 3), family("G", 3)), tensor(family("G", 2), family("Xi", 2)), counterexample_algebra()]


@given(st.sampled_from(NIL_ALGEBRAS))
def test_poset_axioms_and_transitive_reduction(P):
    N = build_nil_poset(P.algebra)
    assert N.check_axioms()
    assert [list(r) for r in N.leq] == closure(N.size, N.covers)
    assert all(N.le(N.unit_node, k) and N.le(k, N.zero_node) for k in range(N.size))
    for i in range(P.algebra.dim):
        assert annihilator_from_poset(N, i).issubset(annihilator(P.algebra.basis(i)))


@pytest.mark.parametrize("n", range(2, 7))
def test_gamma_chains(n):
    N = build_nil_poset(family("G", n).algebra)
    assert N.size == n + 1 and N.is_chain()
    assert N.levels() == list(range(n + 1))

import random

import pytest
from hypothesis import given, strategies as st

from algkit.errors import (
    DivisionByZeroPoly,
    NonSimpleBaseRoot,
    NonUnitLeadingCoefficient,
    NotARoot,
    NotAZeroDivisor,
    UnsupportedAlgebra,
)
from algkit.algebra import is_unit
from algkit.poly import (
    APoly,
    ann_of_poly,
    armendariz_pair_check,
    common_annihilator,
    monic_split_quadratic,
    nilfactor,
    parse_apoly,
    peval,
    pmul,
    poly_divmod,
    poly_is_zero_divisor,
    root_quotient,
    synthetic_division,
)
from algkit.presentations import direct_product, family, reals
from algkit.structure import family_decomposition

from conftest import small_ints

H = family("H", 2)
G2 = family("G", 2)
G3 = family("G", 3)
XI2 = family("Xi", 2)


def p(P, text):
    return parse_apoly(P, text)


def polys(P, max_deg=3):
    A = P.algebra
    coeff = st.lists(small_ints, min_size=A.dim, max_size=A.dim).map(A.element)
    return st.lists(coeff, min_size=0, max_size=max_deg + 1).map(lambda cs: APoly(A, tuple(cs)))


def test_text_format_round_trip():
    f = p(H, "(1+j)*z^2 + (2)*z + (j)")
    assert str(f) == "(1+j)*z^2 + (2)*z + (j)"
    assert p(H, str(f)) == f
    assert str(p(H, "0*z^3")) == "0"


def test_multiplication_examples():
    f, g = p(H, "(j-1)*z+1"), p(H, "(j+1)*z+1")
    h = pmul(f, g)
    assert h == p(H, "2*j*z + 1") and h.degree == 1
    assert f * H.algebra.one() == f
    ez = p(G2, "e*z")
    assert (ez * ez).is_zero()


def test_divmod_examples():
    q, r = poly_divmod(p(H, "z^2"), p(H, "z-j"))
    assert q == p(H, "z+j") and r == p(H, "1")
    f = p(H, "(1+j)*z^3 + 2")
    assert poly_divmod(f, p(H, "1")) == (f, APoly(H.algebra, ()))
    with pytest.raises(NonUnitLeadingCoefficient):
        poly_divmod(p(H, "2*j*z+1"), p(H, "(j-1)*z+1"))
    with pytest.raises(DivisionByZeroPoly):
        poly_divmod(f, p(H, "0"))


def test_factor_theorem_examples():
    assert root_quotient(p(H, "z^2-1"), H.element("j")) == p(H, "z+j")
    with pytest.raises(NotARoot):
        root_quotient(p(H, "z^2+1"), H.element("j"))
    q, r = synthetic_division(p(G2, "z^2-(1+e)"), G2.element("1+e/2"))
    assert r.is_zero()


def test_common_annihilator_examples():
    RR = direct_product(reals(), reals())
    A = RR.algebra
    e1 = A.element((0, 1))
    e2 = A.one() - e1
    assert common_annihilator(APoly(A, (e2, e1))).is_trivial()
    C = common_annihilator(p(H, "(1+j)*z + (1+j)"))
    assert [b.coords for b in C.basis] == [(1, -1)]
    assert poly_is_zero_divisor(p(H, "(1+j)*z + (1+j)"))
    assert common_annihilator(p(H, "0")).dim == 2


def test_armendariz_examples():
    a, b = parse_apoly(XI2, "e1 + e2*z"), parse_apoly(XI2, "e2 + e1*z")
    assert (a * b).is_zero() and armendariz_pair_check(a, b)
    assert armendariz_pair_check(p(H, "z+1"), p(H, "z-1"))


def test_nilfactor_examples():
    nf = nilfactor(p(G2, "e*z^2 + e"))
    assert nf.factors == (G2.gen("e"),) and nf.g == p(G2, "z^2+1")
    nf = nilfactor(p(G3, "e^2*z"))
    assert nf.factors == (G3.gen("e"),) * 2 and nf.g == p(G3, "z")
    f = p(H, "(1+j)*z + (1+j)")
    nf = nilfactor(f)
    assert nf.expand() == f and nf.g == p(H, "z+1")
    assert nf.factors == (H.element("1+j"),)
    with pytest.raises(NotAZeroDivisor):
        nilfactor(p(G2, "z + e"))
    with pytest.raises(UnsupportedAlgebra):
        nilfactor(p(XI2, "e1*z"))


def test_ann_of_poly_examples():
    res = ann_of_poly(p(G2, "e*z^2 + e"))
    assert [b.coords for b in res.ann.basis] == [(0, 1)]
    rng = random.Random(1)
    f = p(G2, "e*z^2 + e")
    for _ in range(20):
        h = APoly(G2.algebra, tuple(G2.algebra.element((rng.randint(-5, 5), rng.randint(-5, 5))) for _ in range(3)))
        assert (h.scale(G2.gen("e")) * f).is_zero()
    assert ann_of_poly(p(H, "z+1")).ann.is_trivial()
    res = ann_of_poly(p(H, "(1+j)*z + (1+j)"))
    assert [b.coords for b in res.ann.basis] == [(1, -1)]


def test_monic_split_examples():
    D = family_decomposition("H", 2)
    assert monic_split_quadratic(p(H, "z^2+j*z+j"), D) is None
    assert monic_split_quadratic(p(H, "z^2+j*z+j")) is None
    splits = monic_split_quadratic(p(H, "z^2-1"), D)
    pairs = {(str(s.alpha), str(s.beta)) for s in splits}
    assert ("j", "-j") in pairs or ("-j", "j") in pairs
    (s,) = monic_split_quadratic(p(G2, "z^2-(1+e)"))
    assert s.exact and s.alpha == G2.element("-(1+e/2)")
    with pytest.raises(NonSimpleBaseRoot):
        monic_split_quadratic(p(G2, "z^2 + e"))
    assert monic_split_quadratic(p(G2, "z^2 + 1 + e")) is None


def test_monic_split_numeric_witnesses():
    C3 = family("C", 3)
    splits = monic_split_quadratic(p(C3, "z^2 + i*z - 2"))
    assert splits
    import numpy as np

    A = C3.algebra
    for s in splits:
        a = np.array([float(x) for x in (s.alpha.coords if s.exact else s.alpha)])
        b = np.array([float(x) for x in (s.beta.coords if s.exact else s.beta)])
        T = np.array([[[float(c) for c in A.table[i][j]] for j in range(3)] for i in range(3)])
        ab = np.einsum("i,j,ijk->k", a, b, T)
        assert np.allclose(a + b, [0, 1, 0]) and np.allclose(ab, [-2, 0, 0], atol=1e-9)


UNIT_LEAD = [H, G3, XI2]


@given(st.sampled_from(UNIT_LEAD).flatmap(lambda P: st.tuples(polys(P, 5), polys(P, 3))))
def test_divmod_round_trip(fg):
    f, g = fg
    if g.is_zero() or not is_unit(g.leading):
        return
    q, r = poly_divmod(f, g)
    assert q * g + r == f
    assert r.is_zero() or r.degree < g.degree


@given(st.sampled_from([H, G3, family("H", 3)]).flatmap(lambda P: st.tuples(polys(P), polys(P, 0))))
def test_factor_theorem_equivalence(fa):
    f, alpha_poly = fa
    A = f.parent
    alpha = alpha_poly.coeff(0)
    planted = APoly(A, (-alpha, A.one())) * f
    assert peval(planted, alpha).is_zero()
    assert (APoly(A, (-alpha, A.one())) * root_quotient(planted, alpha)) == planted
    q, rem = synthetic_division(f, alpha)
    assert rem == peval(f, alpha)


@given(st.sampled_from([H, G3]).flatmap(lambda P: polys(P)))
def test_mccoy_consistency(f):
    C = common_annihilator(f)
    for c in C.basis:
        assert all((c * a).is_zero() for a in f.coeffs)


@given(polys(family("G", 4), 3), st.integers(1, 3))
def test_nilfactor_postcondition(g0, t):
    P = family("G", 4)
    f = g0.scale(P.gen("e") ** t)
    if f.is_zero():
        return
    nf = nilfactor(f)
    assert nf.expand() == f
    assert common_annihilator(nf.g).is_trivial()


@given(polys(family("H", 3), 2))
def test_semisimple_nilfactor_postcondition(f):
    if f.is_zero() or not poly_is_zero_divisor(f):
        return
    nf = nilfactor(f)
    assert nf.expand() == f
    assert not poly_is_zero_divisor(nf.g)

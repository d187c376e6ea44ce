import cmath
import math
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from algkit.algebra import is_zero_divisor
from algkit.errors import DegenerateSample, NotCommutative, NotSemisimple
from algkit.presentations import direct_product, family, reals
from algkit.structure import (
    WedderburnSignature,
    exact_signature,
    expand_factors,
    family_decomposition,
    model_zero_set_dims,
    numeric_decomposition,
    numeric_signature,
    product_model,
    real_factorization_xn,
    zd_structure,
)


def counts(fs):
    return sum(f.degree == 1 for f in fs), sum(f.degree == 2 for f in fs)


def test_factorization_examples():
    fs = real_factorization_xn(-1, 4)
    assert counts(fs) == (2, 1) and "".join(map(str, fs)) == "(x - 1)(x + 1)(x^2 + 1)"
    fs = real_factorization_xn(1, 3)
    assert counts(fs) == (1, 1) and "".join(map(str, fs)) == "(x + 1)(x^2 - x + 1)"
    assert "".join(map(str, real_factorization_xn(-1, 2))) == "(x - 1)(x + 1)"


@pytest.mark.parametrize("n", range(1, 13))
@pytest.mark.parametrize("sign", [-1, 1])
def test_factorization_expands_to_binomial(sign, n):
    fs = real_factorization_xn(sign, n)
    target = [sign] + [0] * (n - 1) + [1]
    got = expand_factors(fs)
    assert np.allclose(got, target, atol=1e-9)
    lin, quad = counts(fs)
    if sign == -1:
        assert lin == (2 if n % 2 == 0 else 1)
    else:
        assert lin == (0 if n % 2 == 0 else 1)
    assert lin + 2 * quad == n
    if all(f.exact is not None for f in fs):
        assert expand_factors(fs, exact=True) == [Fraction(c) for c in target]


@pytest.mark.parametrize(
    "name,n,sig",
    [("H", 4, (2, 1)), ("CC", 2, (0, 2)), ("H", 3, (1, 1)), ("H", 6, (2, 2)), ("C", 6, (0, 3)), ("C", 7, (1, 3)), ("H", 1, (1, 0))],
)
def test_family_signatures(name, n, sig):
    D = family_decomposition(name, n)
    assert (D.signature.m, D.signature.k) == sig
    ex = exact_signature(name, n)
    assert (ex.m, ex.k) == sig
    assert D.verify(1e-9)


def test_h3_map_sends_j_to_roots():
    D = family_decomposition("H", 3)
    (u,), (z,) = D.components(family("H", 3).gen("j").coords)
    assert abs(u - 1) < 1e-12 and abs(z - cmath.exp(2j * math.pi / 3)) < 1e-12


def test_non_semisimple_families_rejected():
    for name in ("G", "Xi"):
        with pytest.raises(NotSemisimple):
            family_decomposition(name, 3)
    with pytest.raises(NotSemisimple):
        numeric_signature(family("G", 3).algebra)


def test_numeric_signature_examples():
    assert numeric_signature(family("H", 3).algebra) == WedderburnSignature(1, 1)
    assert numeric_signature(family("H", 2).algebra) == WedderburnSignature(2, 0)
    assert numeric_signature(family("C", 2).algebra) == WedderburnSignature(0, 1)


def test_numeric_signature_rejects_noncommutative():
    from test_algebra import quaternion_table
    from algkit.algebra import make_algebra

    labels, t = quaternion_table()
    with pytest.raises(NotCommutative):
        numeric_signature(make_algebra(4, labels, 0, t))


def test_degenerate_sample_when_spectrum_never_simple():
    # with no retries, R x R fails whenever the sample has equal components
    from algkit.structure import _sample_spectrum

    A = direct_product(reals(), reals()).algebra
    hits = 0
    for seed in range(200):
        try:
            _sample_spectrum(A, seed, 1e-8, 0)
        except DegenerateSample:
            hits += 1
    assert hits > 0


SEMISIMPLE = ["H(5)", "C(4)", "CC(2)", "tensor(H(2),C(2))", "product(C(2),H(3))"]


@pytest.mark.parametrize("expr", SEMISIMPLE)
def test_numeric_decomposition_is_an_isomorphism(expr):
    from algkit.presentations import load

    A = load(expr).algebra
    sig = numeric_signature(A)
    assert sig.m + 2 * sig.k == A.dim
    D = numeric_decomposition(A, seed=3)
    assert D.signature == sig and D.verify(1e-9)


@given(st.integers(1, 9), st.sampled_from(["H", "C"]))
def test_numeric_and_exact_signatures_agree(n, name):
    A = family(name, n).algebra
    assert numeric_signature(A, seed=n) == exact_signature(name, n)


def test_h3_map_against_explicit_formulas():
    D = family_decomposition("H", 3)
    rng = random.Random(5)
    w = cmath.exp(2j * math.pi / 3)
    for _ in range(100):
        a, b, c = (rng.uniform(-5, 5) for _ in range(3))
        (u,), (z,) = D.components((Fraction(a), Fraction(b), Fraction(c)))
        assert abs(u - (a + b + c)) < 1e-9 and abs(z - (a + b * w + c * w * w)) < 1e-9
        U, x, y = (rng.uniform(-5, 5) for _ in range(3))
        back = D.pull_back([U], [complex(x, y)])
        s3 = math.sqrt(3)
        assert np.allclose(back, [(U + 2 * x) / 3, (U - x + y * s3) / 3, (U - x - y * s3) / 3], atol=1e-9)


@given(st.integers(-6, 6), st.integers(-6, 6), st.integers(-6, 6))
def test_h3_zero_divisor_components(a, b, t):
    H3 = family("H", 3).algebra
    # a+b+c = 0 plane and the a=b=c line are both zero divisors
    assert is_zero_divisor(H3.element((a, b, -a - b)))
    assert is_zero_divisor(H3.element((t, t, t)))


def test_zd_structure_examples():
    comps = zd_structure(WedderburnSignature(2, 0))
    assert [c.dim for c in comps] == [1, 1]
    comps = zd_structure(WedderburnSignature(1, 1))
    assert sorted(c.dim for c in comps) == [1, 2]
    assert [c.dim for c in zd_structure(WedderburnSignature(1, 0))] == [0]


@pytest.mark.parametrize("m,k", [(1, 0), (0, 1), (2, 0), (1, 1), (2, 1), (0, 2), (3, 2)])
def test_zd_structure_matches_product_model(m, k):
    sig = WedderburnSignature(m, k)
    assert [c.dim for c in zd_structure(sig)] == model_zero_set_dims(sig)
    P, idems = product_model(sig)
    assert P.dim == sig.dim
    one = P.algebra.zero()
    for e in idems:
        assert e * e == e
        one = one + e
    assert one == P.algebra.one()


def test_report_is_rounded_json():
    import json

    rep = family_decomposition("H", 3).report()
    assert set(rep) == {"m", "k", "forward", "inverse"}
    assert json.loads(json.dumps(rep)) == rep
    assert all(round(x, 12) == x for row in rep["forward"] for x in row)

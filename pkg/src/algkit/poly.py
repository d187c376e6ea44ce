"""Polynomials A[z] with coefficients in a commutative algebra A.

Coefficients are stored dense and low-to-high.  Over rings with zero
divisors deg(fg) can be smaller than deg f + deg g, and division is only
defined by divisors whose leading coefficient is a unit.
"""

from __future__ import annotations

import cmath
import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import linalg
from .algebra import (
    Algebra,
    Element,
    Subspace,
    annihilator,
    format_element,
    inverse,
    is_semisimple,
    is_unit,
    is_unital_nil,
    nilradical,
    regular_matrix,
)
from .dsl import parse_poly
from .errors import (
    DivisionByZeroPoly,
    NonSimpleBaseRoot,
    NonUnitLeadingCoefficient,
    NotARoot,
    NotAZeroDivisor,
    NotCommutative,
    NotSemisimple,
    ParentMismatch,
    UnsupportedAlgebra,
)
from .formal import FormalPoly
from .linalg import QMatrix
from .presentations import ev
from .structure import numeric_decomposition

__all__ = [
    "APoly",
    "padd",
    "pmul",
    "poly_divmod",
    "peval",
    "synthetic_division",
    "root_quotient",
    "common_annihilator",
    "poly_is_zero_divisor",
    "armendariz_pair_check",
    "NilFactorization",
    "nilfactor",
    "AnnOfPoly",
    "ann_of_poly",
    "MonicSplit",
    "monic_split_quadratic",
    "parse_apoly",
    "random_apoly",
    "NilChain",
    "nil_chain",
]


@dataclass(frozen=True, eq=False)
class APoly:
    parent: Algebra
    coeffs: tuple
    var: str = "z"

    def __post_init__(self):
        cs = list(self.coeffs)
        for c in cs:
            if c.parent != self.parent:
                raise ParentMismatch("coefficient from a different algebra")
        while cs and cs[-1].is_zero():
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def from_coords(cls, A: Algebra, coords: Sequence[Sequence], var: str = "z") -> APoly:
        return cls(A, tuple(A.element(c) for c in coords), var)

    @classmethod
    def constant(cls, a: Element, var: str = "z") -> APoly:
        return cls(a.parent, (a,), var)

    @classmethod
    def monomial(cls, a: Element, k: int, var: str = "z") -> APoly:
        zero = a.parent.zero()
        return cls(a.parent, (zero,) * k + (a,), var)

    @classmethod
    def z(cls, A: Algebra, var: str = "z") -> APoly:
        return cls.monomial(A.one(), 1, var)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Element:
        if not self.coeffs:
            raise ValueError("the zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, k: int) -> Element:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else self.parent.zero()

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.leading == self.parent.one()

    def scale(self, a) -> APoly:
        return APoly(self.parent, tuple(a * c for c in self.coeffs), self.var)

    def _coerce(self, other) -> APoly:
        if isinstance(other, APoly):
            if other.parent != self.parent:
                raise ParentMismatch("polynomials over different algebras")
            return other
        if isinstance(other, Element):
            return APoly.constant(other, self.var)
        return APoly.constant(self.parent.scalar(other), self.var)

    def __add__(self, other):
        return padd(self, self._coerce(other))

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return padd(self, -self._coerce(other))

    def __rsub__(self, other):
        return padd(self._coerce(other), -self)

    def __mul__(self, other):
        return pmul(self, self._coerce(other))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = APoly.constant(self.parent.one(), self.var)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (APoly, Element, int, Fraction)):
            o = self._coerce(other)
            return self.coeffs == o.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(tuple(c.coords for c in self.coeffs))

    def __call__(self, a: Element) -> Element:
        return peval(self, a)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c.is_zero():
                continue
            zk = "" if k == 0 else f"*{self.var}" if k == 1 else f"*{self.var}^{k}"
            parts.append(f"({format_element(c)}){zk}")
        return " + ".join(parts)

    def __repr__(self):
        return f"APoly({self})"


def padd(f: APoly, g: APoly) -> APoly:
    if f.parent != g.parent:
        raise ParentMismatch("polynomials over different algebras")
    n = max(len(f.coeffs), len(g.coeffs))
    return APoly(f.parent, tuple(f.coeff(k) + g.coeff(k) for k in range(n)), f.var)


def pmul(f: APoly, g: APoly) -> APoly:
    if f.parent != g.parent:
        raise ParentMismatch("polynomials over different algebras")
    if f.is_zero() or g.is_zero():
        return APoly(f.parent, (), f.var)
    out = [f.parent.zero()] * (len(f.coeffs) + len(g.coeffs) - 1)
    for i, a in enumerate(f.coeffs):
        if a.is_zero():
            continue
        for j, b in enumerate(g.coeffs):
            out[i + j] = out[i + j] + a * b
    return APoly(f.parent, tuple(out), f.var)


def poly_divmod(f: APoly, g: APoly) -> tuple[APoly, APoly]:
    """f = q g + r with r = 0 or deg r < deg g; g must have a unit leading coefficient."""
    if f.parent != g.parent:
        raise ParentMismatch("polynomials over different algebras")
    if g.is_zero():
        raise DivisionByZeroPoly("division by the zero polynomial")
    if not is_unit(g.leading):
        raise NonUnitLeadingCoefficient(
            f"leading coefficient {format_element(g.leading)} is a zero divisor"
        )
    A = f.parent
    u = inverse(g.leading)
    r = list(f.coeffs)
    dg = g.degree
    q = [A.zero()] * max(len(r) - dg, 0)
    for k in range(len(r) - 1 - dg, -1, -1):
        c = r[k + dg] * u
        if c.is_zero():
            continue
        q[k] = c
        for i, b in enumerate(g.coeffs):
            r[k + i] = r[k + i] - c * b
    return APoly(A, tuple(q), f.var), APoly(A, tuple(r[:dg]), f.var)


def peval(f: APoly, a: Element) -> Element:
    """sum_k a_k alpha^k, computed from explicit powers."""
    if a.parent != f.parent:
        raise ParentMismatch("evaluation point from a different algebra")
    total = f.parent.zero()
    power = f.parent.one()
    for c in f.coeffs:
        total = total + c * power
        power = power * a
    return total


def synthetic_division(f: APoly, a: Element) -> tuple[APoly, Element]:
    """Divide by the monic z - alpha by Horner's scheme: (quotient, remainder)."""
    A = f.parent
    if not f.coeffs:
        return APoly(A, (), f.var), A.zero()
    acc = A.zero()
    q = []
    for c in reversed(f.coeffs):
        acc = acc * a + c
        q.append(acc)
    rem = q.pop()
    return APoly(A, tuple(reversed(q)), f.var), rem


def root_quotient(f: APoly, a: Element) -> APoly:
    """g with f = (z - alpha) g; raises NotARoot unless f(alpha) = 0."""
    q, rem = synthetic_division(f, a)
    if not rem.is_zero():
        raise NotARoot(f"f({format_element(a)}) = {format_element(rem)} != 0")
    return q


def _require_commutative(A: Algebra):
    if not A.commutative:
        raise NotCommutative("polynomial annihilators need a commutative algebra")


def common_annihilator(f: APoly) -> Subspace:
    """Ann(a_0) cap ... cap Ann(a_n): the constants c with c f = 0."""
    A = f.parent
    _require_commutative(A)
    if f.is_zero():
        return Subspace.from_vectors(A, [A.basis(i).coords for i in range(A.dim)])
    bases = [annihilator(c).vectors() for c in f.coeffs]
    return Subspace.from_vectors(A, linalg.intersect_subspaces(bases, dim=A.dim))


def poly_is_zero_divisor(f: APoly) -> bool:
    return not common_annihilator(f).is_trivial()


def armendariz_pair_check(p: APoly, q: APoly) -> bool:
    """Whether (pq = 0) implies a_i b_j = 0 for every pair of coefficients."""
    if not (p * q).is_zero():
        return True
    return all((a * b).is_zero() for a in p.coeffs for b in q.coeffs)


# nil chains: algebras isomorphic to R[eps]/<eps^n>


@dataclass(frozen=True)
class NilChain:
    """A generator eps of a unital nil algebra with basis 1, eps, ..., eps^(n-1).

    ``to_power`` converts algebra coordinates into power-basis coordinates.
    """

    epsilon: Element
    n: int
    powers: tuple
    to_power: QMatrix

    def valuation(self, a: Element) -> int | None:
        c = self.power_coords(a)
        return next((i for i, x in enumerate(c) if x), None)

    def power_coords(self, a: Element) -> tuple:
        return self.to_power @ a.coords

    def from_power(self, c: Sequence) -> Element:
        A = self.epsilon.parent
        return sum((p * x for p, x in zip(self.powers, c) if x), A.zero())


def nil_chain(A: Algebra) -> NilChain | None:
    """The chain generator of A if A = R[eps]/<eps^n>, else None."""
    if not A.commutative or not is_unital_nil(A):
        return None
    N = nilradical(A)
    n = A.dim
    if n == 1:
        return NilChain(A.one(), 1, (A.one(),), QMatrix.identity(1))
    rng = random.Random(0)
    candidates = list(N.basis)
    for _ in range(20):
        candidates.append(sum((b * rng.randint(-3, 3) for b in N.basis), A.zero()))
    for eps in candidates:
        powers = [A.one()]
        for _ in range(n - 1):
            powers.append(powers[-1] * eps)
        P = QMatrix.from_columns([p.coords for p in powers])
        if linalg.det(P) != 0:
            return NilChain(eps, n, tuple(powers), linalg.inverse(P))
    return None


@dataclass(frozen=True)
class NilFactorization:
    factors: tuple
    g: APoly

    def product(self) -> Element:
        A = self.g.parent
        out = A.one()
        for e in self.factors:
            out = out * e
        return out

    def expand(self) -> APoly:
        return self.g.scale(self.product())

    def __str__(self):
        fs = " * ".join(f"({format_element(e)})" for e in self.factors)
        return f"{fs} * [{self.g}]"


def _solve_scaled(c: Element, f: APoly) -> APoly:
    """Particular solution g of c g = f, coefficientwise (free variables 0)."""
    M = regular_matrix(c)
    out = []
    for a in f.coeffs:
        x = linalg.solve(M, a.coords)
        if x is None:
            raise ArithmeticError("coefficient outside the ideal generated by the factor")
        out.append(f.parent.element(x))
    return APoly(f.parent, tuple(out), f.var)


def _semisimple_nilfactor(f: APoly) -> NilFactorization:
    A = f.parent
    C = common_annihilator(f)
    if C.is_trivial():
        raise NotAZeroDivisor(f"{f} is not a zero divisor")
    # The annihilator ideal C of a semisimple algebra is e'A for an idempotent
    # e'; solve sum x_i c_i c_j = c_j for the identity e' of C.
    cs = C.basis
    rows, rhs = [], []
    for j, cj in enumerate(cs):
        prods = [(ci * cj).coords for ci in cs]
        for t in range(A.dim):
            rows.append([p[t] for p in prods])
            rhs.append(cj.coords[t])
    x = linalg.solve(QMatrix(rows, cols=len(cs)), rhs)
    if x is None:
        raise UnsupportedAlgebra("annihilator ideal has no identity element")
    e_prime = sum((ci * xi for ci, xi in zip(cs, x)), A.zero())
    e = A.one() - e_prime
    # prefer a coefficient of f whose annihilator is exactly C as the factor
    factor = e
    for a in reversed(f.coeffs):
        if annihilator(a).dim == C.dim:
            factor = a
            break
    g = _solve_scaled(factor, f)
    if poly_is_zero_divisor(g):
        g = g.scale(e) + e_prime
    return NilFactorization((factor,), g)


def _chain_nilfactor(f: APoly, ch: NilChain) -> NilFactorization:
    vals = [ch.valuation(c) for c in f.coeffs]
    t = min(v for v in vals if v is not None)
    if t == 0:
        raise NotAZeroDivisor(f"{f} has a unit coefficient")
    shifted = []
    for c in f.coeffs:
        pc = ch.power_coords(c)
        shifted.append(ch.from_power(list(pc[t:]) + [0] * t))
    return NilFactorization((ch.epsilon,) * t, APoly(f.parent, tuple(shifted), f.var))


def nilfactor(f: APoly) -> NilFactorization:
    """Write a zero-divisor polynomial as (zero divisor) * g with g not a zero divisor.

    Supported: nil chains R[eps]/<eps^n> (factors eps^t, t the least
    valuation of a coefficient) and commutative semisimple algebras.
    """
    A = f.parent
    if not A.commutative:
        raise UnsupportedAlgebra("nilfactor needs a commutative algebra")
    if f.is_zero():
        raise ValueError("the zero polynomial has no nilfactorization")
    ch = nil_chain(A)
    if ch is not None and A.dim > 1:
        return _chain_nilfactor(f, ch)
    if is_semisimple(A):
        return _semisimple_nilfactor(f)
    raise UnsupportedAlgebra("nilfactor supports nil chains and semisimple algebras")


@dataclass(frozen=True)
class AnnOfPoly:
    """Ann(f) = Ann(factor) A[z], where f = factor * g and g is not a zero divisor."""

    factor: Element
    ann: Subspace
    g: APoly

    def __str__(self):
        return f"Ann(f) = Ann({format_element(self.factor)})A[z], Ann({format_element(self.factor)}) = {self.ann}"


def ann_of_poly(f: APoly) -> AnnOfPoly:
    A = f.parent
    if not poly_is_zero_divisor(f):
        return AnnOfPoly(A.one(), Subspace(A, ()), f)
    nf = nilfactor(f)
    d = nf.product()
    return AnnOfPoly(d, annihilator(d), nf.g)


# monic quadratic splitting


@dataclass(frozen=True)
class MonicSplit:
    """f = (z + alpha)(z + beta).

    Exact witnesses are Elements; numeric ones are float coordinate tuples.
    """

    alpha: object
    beta: object
    exact: bool

    def __str__(self):
        def show(a):
            if isinstance(a, Element):
                return format_element(a)
            return "(" + ", ".join(f"{x:.12g}" for x in a) + ")"

        return f"(z + ({show(self.alpha)}))(z + ({show(self.beta)}))"


def _check_monic_quadratic(f: APoly):
    if f.degree != 2 or not f.is_monic():
        raise ValueError("expected a monic quadratic")


def _rationalize(v, denom: int = 10**6) -> tuple:
    return tuple(Fraction(float(x)).limit_denominator(denom) for x in v)


def _exact_split(f: APoly, alpha: Element) -> bool:
    beta = f.coeff(1) - alpha
    return (alpha + beta) == f.coeff(1) and alpha * beta == f.coeff(0)


def _semisimple_split(f: APoly, D, tol: float) -> list[MonicSplit] | None:
    A = f.parent
    b_re, b_cx = D.components(f.coeff(1).coords)
    c_re, c_cx = D.components(f.coeff(0).coords)
    choices = []
    for b, c in zip(b_re, c_re):
        disc = b * b - 4 * c
        if disc < -tol * max(1.0, abs(b * b), abs(c)):
            return None
        s = math.sqrt(max(disc, 0.0))
        roots = sorted({round((b - s) / 2, 15), round((b + s) / 2, 15)})
        choices.append([complex(r) for r in roots])
    for b, c in zip(b_cx, c_cx):
        s = cmath.sqrt(b * b - 4 * c)
        r1, r2 = (b - s) / 2, (b + s) / 2
        choices.append([r1] if abs(r1 - r2) <= tol else [r1, r2])
    m = D.signature.m
    if choices:
        choices[0] = choices[0][:1]
    out = []
    for combo in itertools.islice(itertools.product(*choices), 4096):
        reals_part = np.array([z.real for z in combo[:m]])
        cx_part = np.array(combo[m:], dtype=complex)
        coords = D.pull_back(reals_part, cx_part)
        exact = _rationalize(coords)
        alpha = A.element(exact)
        if _exact_split(f, alpha):
            out.append(MonicSplit(alpha, f.coeff(1) - alpha, True))
        else:
            b_coords = np.array([float(x) for x in f.coeff(1).coords])
            out.append(MonicSplit(tuple(coords), tuple(b_coords - coords), False))
    return out


def _chain_split(f: APoly, ch: NilChain) -> list[MonicSplit] | None:
    A = f.parent
    b, c = f.coeff(1), f.coeff(0)
    b0 = ch.power_coords(b)[0]
    c0 = ch.power_coords(c)[0]
    disc = b0 * b0 - 4 * c0
    if disc < 0:
        return None
    if disc == 0:
        raise NonSimpleBaseRoot("the residue quadratic has a double root")
    # alpha is a root of h(w) = w^2 - b w + c, lifted from the smaller base root
    num, den = disc.numerator, disc.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        alpha = A.scalar((b0 - Fraction(rn, rd)) / 2)
        for _ in range(ch.n + 1):
            h = alpha * alpha - b * alpha + c
            if h.is_zero():
                break
            alpha = alpha - h * inverse(alpha * 2 - b)
        if not (alpha * alpha - b * alpha + c).is_zero():
            raise ArithmeticError("Newton lifting did not terminate")
        return [MonicSplit(alpha, b - alpha, True)]
    # irrational base root: lift in floating point on power-basis coordinates
    n = ch.n
    bp = np.array([float(x) for x in ch.power_coords(b)])
    cp = np.array([float(x) for x in ch.power_coords(c)])

    def tmul(u, v):
        return np.convolve(u, v)[:n]

    alpha = np.zeros(n)
    alpha[0] = (float(b0) - math.sqrt(float(disc))) / 2
    for _ in range(n + 1):
        h = tmul(alpha, alpha) - tmul(bp, alpha) + cp
        d = 2 * alpha - bp
        # invert d as a truncated power series
        inv = np.zeros(n)
        inv[0] = 1 / d[0]
        for k in range(1, n):
            inv[k] = -sum(d[i] * inv[k - i] for i in range(1, k + 1)) / d[0]
        alpha = alpha - tmul(h, inv)
    P = np.array([[float(x) for x in p.coords] for p in ch.powers]).T
    a_coords = P @ alpha
    b_coords = np.array([float(x) for x in b.coords])
    return [MonicSplit(tuple(a_coords), tuple(b_coords - a_coords), False)]


def monic_split_quadratic(f: APoly, decomposition=None, tol: float = 1e-9) -> list[MonicSplit] | None:
    """All factorizations f = (z + alpha)(z + beta) up to swapping, or None.

    Semisimple algebras are split componentwise through a decomposition map
    (family map if given, else a numeric one); nil chains by Newton lifting
    of a simple root of the residue quadratic.
    """
    _check_monic_quadratic(f)
    A = f.parent
    if not A.commutative:
        raise UnsupportedAlgebra("monic splitting needs a commutative algebra")
    ch = nil_chain(A)
    if ch is not None and A.dim > 1:
        return _chain_split(f, ch)
    if decomposition is None:
        try:
            decomposition = numeric_decomposition(A)
        except NotSemisimple as exc:
            raise UnsupportedAlgebra(str(exc)) from exc
    return _semisimple_split(f, decomposition, tol)


# text format and sampling


def parse_apoly(P, text: str, var: str = "z") -> APoly:
    """Parse e.g. ``(1+j)*z^2 + 2*z + j`` over a presented algebra."""
    gens = list(P.generator_images)
    if var in gens:
        raise ValueError(f"polynomial variable {var!r} clashes with a generator")
    formal = parse_poly(text, gens + [var])
    vi = len(gens)
    by_power: dict[int, dict] = {}
    for mono, c in formal.terms.items():
        by_power.setdefault(mono[vi], {})[mono[:vi]] = c
    top = max(by_power, default=-1)
    coeffs = [ev(P, FormalPoly(gens, by_power.get(k, {}))) for k in range(top + 1)]
    return APoly(P.algebra, tuple(coeffs), var)


def random_apoly(A: Algebra, rng: random.Random, degree: int, lo: int = -5, hi: int = 5) -> APoly:
    return APoly(
        A,
        tuple(A.element(Fraction(rng.randint(lo, hi)) for _ in range(A.dim)) for _ in range(degree + 1)),
    )

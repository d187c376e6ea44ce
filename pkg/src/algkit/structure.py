"""Wedderburn structure of commutative semisimple algebras: A = R^m x C^k.

The named families get exact signatures from the factorization of
x^n -/+ 1 over the reals.  Their decomposition maps, and those of arbitrary
commutative semisimple algebras, are floating-point: a decomposition is a
set of characters chi: A -> C, stored as a real matrix that sends basis
coordinates to (real components, then (re, im) of each complex component).
"""

from __future__ import annotations

import cmath
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .algebra import Algebra, annihilator, is_semisimple
from .errors import DegenerateSample, NotCommutative, NotSemisimple
from .presentations import PresentedAlgebra, direct_product, family, inject_left, inject_right, reals

__all__ = [
    "MAP_TOL",
    "EIG_TOL",
    "WedderburnSignature",
    "RealFactor",
    "real_factorization_xn",
    "expand_factors",
    "exact_signature",
    "DecompositionMap",
    "family_decomposition",
    "numeric_signature",
    "numeric_decomposition",
    "ZDComponent",
    "zd_structure",
    "annihilator_dim",
    "product_model",
    "model_zero_set_dims",
]

MAP_TOL = float(os.environ.get("ALGKIT_TOL", 1e-9))
EIG_TOL = 1e-8


@dataclass(frozen=True)
class WedderburnSignature:
    m: int  # copies of R
    k: int  # copies of C

    @property
    def dim(self) -> int:
        return self.m + 2 * self.k

    def __str__(self):
        return f"R^{self.m} x C^{self.k}"


# exact cosines of rational multiples of pi that are themselves rational
_RATIONAL_COS = {
    Fraction(0): Fraction(1),
    Fraction(1, 3): Fraction(1, 2),
    Fraction(1, 2): Fraction(0),
    Fraction(2, 3): Fraction(-1, 2),
    Fraction(1): Fraction(-1),
}


@dataclass(frozen=True)
class RealFactor:
    """A real irreducible factor: x - cos(theta) (degree 1) or x^2 - 2cos(theta)x + 1.

    ``angle`` is theta/pi; ``coeffs`` are floats low-to-high; ``exact``
    holds rational coefficients whenever cos(theta) is rational.
    """

    degree: int
    angle: Fraction
    coeffs: tuple
    exact: tuple | None = None

    @property
    def root(self) -> complex:
        return cmath.exp(1j * math.pi * float(self.angle))

    def __str__(self):
        c = self.exact or tuple(round(x, 12) for x in self.coeffs)
        if self.degree == 1:
            r = -c[0]
            return "(x - 1)" if r == 1 else "(x + 1)" if r == -1 else f"(x - {r})"
        b = c[1]
        coef = "" if abs(b) == 1 else str(abs(b))
        mid = "" if b == 0 else f" - {coef}x" if b < 0 else f" + {coef}x"
        return f"(x^2{mid} + 1)"


def _factor_for(angle: Fraction, degree: int) -> RealFactor:
    cos_exact = _RATIONAL_COS.get(angle)
    c = math.cos(math.pi * float(angle)) if cos_exact is None else float(cos_exact)
    if degree == 1:
        return RealFactor(1, angle, (-c, 1.0), None if cos_exact is None else (-cos_exact, Fraction(1)))
    exact = None if cos_exact is None else (Fraction(1), -2 * cos_exact, Fraction(1))
    return RealFactor(2, angle, (1.0, -2 * c, 1.0), exact)


def real_factorization_xn(sign: int, n: int) -> list[RealFactor]:
    """Real irreducible factors of x^n - 1 (sign=-1) or x^n + 1 (sign=+1).

    Roots are e^{i theta} with theta = 2 pi k/n (minus) or (2k+1) pi/n (plus);
    theta in {0, pi} gives a linear factor, 0 < theta < pi a quadratic one.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if sign == -1:
        angles = [Fraction(2 * k, n) for k in range(n)]
    else:
        angles = [Fraction(2 * k + 1, n) for k in range(n)]
    linear = [a for a in angles if a in (0, 1)]
    quad = sorted(a for a in angles if 0 < a < 1)
    return [_factor_for(a, 1) for a in sorted(linear)] + [_factor_for(a, 2) for a in quad]


def expand_factors(factors: list[RealFactor], exact: bool = False) -> list:
    """Multiply the factors out; coefficients low-to-high."""
    out = [Fraction(1)] if exact else [1.0]
    for f in factors:
        c = f.exact if exact else f.coeffs
        if c is None:
            raise ValueError(f"factor {f} has an irrational coefficient")
        new = [0] * (len(out) + len(c) - 1)
        for i, a in enumerate(out):
            for j, b in enumerate(c):
                new[i + j] += a * b
        out = new
    return out


def exact_signature(name: str, n: int) -> WedderburnSignature:
    """Signature of H(n), C(n), CC(n) by counting real factors of x^n -/+ 1."""
    if name == "H":
        fs = real_factorization_xn(-1, n)
    elif name == "C":
        fs = real_factorization_xn(+1, n)
    elif name == "CC":
        return WedderburnSignature(0, 2 ** (n - 1))
    else:
        raise NotSemisimple(f"family {name} is not semisimple")
    return WedderburnSignature(
        sum(1 for f in fs if f.degree == 1), sum(1 for f in fs if f.degree == 2)
    )


def _float_table(A: Algebra) -> np.ndarray:
    return np.array([[[float(c) for c in A.table[i][j]] for j in range(A.dim)] for i in range(A.dim)])


@dataclass
class DecompositionMap:
    """Isomorphism A -> R^m x C^k in coordinates.

    forward @ coords gives m real components followed by (re, im) pairs,
    one per complex component (representative with positive imaginary part).
    """

    source: Algebra
    signature: WedderburnSignature
    forward: np.ndarray
    inverse: np.ndarray
    _table: np.ndarray | None = field(default=None, repr=False)

    @classmethod
    def from_characters(cls, A: Algebra, real_chars, complex_chars) -> DecompositionMap:
        rows = [np.real(np.asarray(c, dtype=complex)) for c in real_chars]
        for c in complex_chars:
            c = np.asarray(c, dtype=complex)
            rows += [c.real, c.imag]
        fwd = np.array(rows, dtype=float).reshape(len(rows), A.dim)
        sig = WedderburnSignature(len(real_chars), len(complex_chars))
        return cls(A, sig, fwd, np.linalg.inv(fwd))

    def apply(self, coords) -> np.ndarray:
        return self.forward @ np.array([float(c) for c in coords])

    def components(self, coords) -> tuple[np.ndarray, np.ndarray]:
        v = self.apply(coords)
        m = self.signature.m
        return v[:m], v[m::2][: self.signature.k] + 1j * v[m + 1 :: 2]

    def pack(self, real_parts, complex_parts) -> np.ndarray:
        v = list(np.real(real_parts))
        for z in complex_parts:
            v += [z.real, z.imag]
        return np.array(v, dtype=float)

    def pull_back(self, real_parts, complex_parts) -> np.ndarray:
        """Coordinates of the element with the given components."""
        return self.inverse @ self.pack(real_parts, complex_parts)

    def _component_product(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        m = self.signature.m
        out = np.empty_like(u)
        out[:m] = u[:m] * v[:m]
        zu = u[m::2] + 1j * u[m + 1 :: 2]
        zv = v[m::2] + 1j * v[m + 1 :: 2]
        zw = zu * zv
        out[m::2] = zw.real
        out[m + 1 :: 2] = zw.imag
        return out

    def inverse_error(self) -> float:
        n = self.source.dim
        return float(np.max(np.abs(self.forward @ self.inverse - np.eye(n))))

    def unit_error(self) -> float:
        one = self.apply(self.source.one().coords)
        target = self.pack(np.ones(self.signature.m), np.ones(self.signature.k, dtype=complex))
        return float(np.max(np.abs(one - target)))

    def multiplicativity_error(self) -> float:
        A = self.source
        if self._table is None:
            self._table = _float_table(A)
        cols = self.forward.T  # cols[i] = image of basis element i
        worst = 0.0
        for i in range(A.dim):
            for j in range(A.dim):
                lhs = self.forward @ self._table[i][j]
                rhs = self._component_product(cols[i], cols[j])
                worst = max(worst, float(np.max(np.abs(lhs - rhs))))
        return worst

    def verify(self, tol: float = MAP_TOL) -> bool:
        return max(self.inverse_error(), self.unit_error(), self.multiplicativity_error()) <= tol

    def report(self, ndigits: int = 12) -> dict:
        def rnd(a):
            return [[round(float(x), ndigits) + 0.0 for x in row] for row in a]

        return {
            "m": self.signature.m,
            "k": self.signature.k,
            "forward": rnd(self.forward),
            "inverse": rnd(self.inverse),
        }


def _monomial_characters(P: PresentedAlgebra, roots: dict) -> np.ndarray:
    """chi(basis monomial) for the character sending each basis generator to roots[g]."""
    vals = []
    for mono in P.monomial_basis:
        z = 1 + 0j
        for g, e in zip(P.basis_generators, mono):
            z *= roots[g] ** e
        vals.append(z)
    return np.array(vals)


def family_decomposition(name: str, n: int) -> DecompositionMap:
    """Explicit CRT decomposition of H(n), C(n) or CC(n).

    The generator is sent to its real roots first, then to one root of each
    conjugate pair (positive imaginary part), in increasing angle.
    """
    if name in ("G", "Xi"):
        raise NotSemisimple(f"family {name} has nonzero nilradical")
    P = family(name, n)
    A = P.algebra
    if name in ("H", "C"):
        g = P.basis_generators[0] if P.basis_generators else None
        fs = real_factorization_xn(-1 if name == "H" else 1, n)
        real_chars, complex_chars = [], []
        for f in fs:
            r = complex(round(math.cos(math.pi * float(f.angle)))) if f.degree == 1 else f.root
            chars = _monomial_characters(P, {g: r}) if g else np.ones(1, dtype=complex)
            (real_chars if f.degree == 1 else complex_chars).append(chars)
    elif name == "CC":
        real_chars = []
        complex_chars = []
        for bits in range(2 ** (n - 1)):
            signs = [1] + [(-1 if (bits >> (n - 2 - t)) & 1 else 1) for t in range(n - 1)]
            roots = {f"i{t + 1}": s * 1j for t, s in enumerate(signs)}
            complex_chars.append(_monomial_characters(P, roots))
    else:
        raise ValueError(f"unknown family {name!r}")
    return DecompositionMap.from_characters(A, real_chars, complex_chars)


def _require(A: Algebra):
    if not A.commutative:
        raise NotCommutative("Wedderburn signatures are computed for commutative algebras only")
    if not is_semisimple(A):
        raise NotSemisimple("algebra has a nonzero nilradical")


def _sample_spectrum(A: Algebra, seed: int, tol: float, retries: int):
    rng = np.random.default_rng(seed)
    T = _float_table(A)
    # regular matrices of the basis: Ms[i][r, k] = c_{ik}^r
    Ms = np.transpose(T, (0, 2, 1))
    for attempt in range(retries + 1):
        a = rng.integers(-9, 10, size=A.dim).astype(float)
        M = np.tensordot(a, Ms, axes=1)
        vals, vecs = np.linalg.eig(M)
        scale = max(1.0, float(np.max(np.abs(vals))))
        gaps = [abs(vals[i] - vals[j]) for i in range(len(vals)) for j in range(i + 1, len(vals))]
        if not gaps or min(gaps) > 1e-6 * scale:
            return vals, vecs, Ms
    raise DegenerateSample(f"no sample with simple spectrum after {retries} retries")


def numeric_signature(A: Algebra, seed: int = 0, tol: float = EIG_TOL, retries: int = 5) -> WedderburnSignature:
    """Count real eigenvalues and conjugate pairs of M(a) for a random a."""
    _require(A)
    vals, _, _ = _sample_spectrum(A, seed, tol, retries)
    n_real = int(np.sum(np.abs(vals.imag) <= tol * max(1.0, float(np.max(np.abs(vals))))))
    return WedderburnSignature(n_real, (A.dim - n_real) // 2)


def numeric_decomposition(A: Algebra, seed: int = 0, tol: float = EIG_TOL, retries: int = 5) -> DecompositionMap:
    """Decomposition map read off the common eigenvectors of the regular representation."""
    _require(A)
    vals, vecs, Ms = _sample_spectrum(A, seed, tol, retries)
    scale = max(1.0, float(np.max(np.abs(vals))))
    real_chars, complex_chars = [], []
    for idx, lam in enumerate(vals):
        u = vecs[:, idx]
        chi = np.array([np.vdot(u, Ms[k] @ u) / np.vdot(u, u) for k in range(A.dim)])
        if abs(lam.imag) <= tol * scale:
            real_chars.append((lam.real, chi.real))
        elif lam.imag > 0:
            complex_chars.append(((lam.real, lam.imag), chi))
    real_chars.sort(key=lambda t: t[0])
    complex_chars.sort(key=lambda t: t[0])
    return DecompositionMap.from_characters(A, [c for _, c in real_chars], [c for _, c in complex_chars])


@dataclass(frozen=True)
class ZDComponent:
    """Zero-divisor subspace {w : w_index = 0} of R^m x C^k."""

    kind: str  # "real" or "complex"
    index: int
    dim: int
    basis: tuple  # unit vectors in the real coordinates of R^m x C^k

    def __str__(self):
        return f"{self.kind} component {self.index}: zero set of dimension {self.dim}"


def zd_structure(sig: WedderburnSignature) -> list[ZDComponent]:
    """Zero divisors of R^m x C^k as the union of one subspace per component.

    A real component's zero set has dimension (m-1)+2k, a complex one
    m+2(k-1).  The annihilator of an element is the span of the components
    where it vanishes, so Ann has dimension 1 per vanishing real component
    and 2 per vanishing complex one.
    """
    m, k = sig.m, sig.k
    n = sig.dim

    def unit(i):
        return tuple(int(t == i) for t in range(n))

    comps = []
    for i in range(m):
        keep = [t for t in range(n) if t != i]
        comps.append(ZDComponent("real", i, len(keep), tuple(unit(t) for t in keep)))
    for c in range(k):
        drop = {m + 2 * c, m + 2 * c + 1}
        keep = [t for t in range(n) if t not in drop]
        comps.append(ZDComponent("complex", c, len(keep), tuple(unit(t) for t in keep)))
    return comps


def annihilator_dim(sig: WedderburnSignature, vanishing: list[ZDComponent]) -> int:
    return sum(1 if c.kind == "real" else 2 for c in vanishing)


def product_model(sig: WedderburnSignature):
    """R^m x C^k built exactly by direct products, with its primitive idempotents.

    Returns (PresentedAlgebra, idempotents) with real components first.
    """
    if sig.m + sig.k == 0:
        raise ValueError("empty signature")
    factors = [reals()] * sig.m + [family("C", 2)] * sig.k
    P = factors[0]
    idems = [P.algebra.one()]
    for F in factors[1:]:
        Q = direct_product(P, F)
        idems = [inject_left(Q, e) for e in idems] + [inject_right(Q, F.algebra.one())]
        P = Q
    return P, idems


def model_zero_set_dims(sig: WedderburnSignature) -> list[int]:
    """dim Ann(e_i) for each primitive idempotent of the exact product model."""
    P, idems = product_model(sig)
    return [annihilator(e).dim for e in idems]

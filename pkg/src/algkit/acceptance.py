"""Built-in checks reproducing the worked examples.

Each check compares library output against an independent oracle: an
explicit formula, an exhaustive search, or an exact linear system solved
from scratch.  ``run_all`` is what ``alg examples`` and the acceptance
test module execute.
"""

from __future__ import annotations

import cmath
import itertools
import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import linalg
from .algebra import (
    Algebra,
    Element,
    Subspace,
    annihilator,
    is_semisimple,
    is_unit,
    is_zero_divisor,
    nilradical,
    regular_matrix,
)
from .linalg import QMatrix
from .nilposet import annihilator_from_poset, build_nil_poset, is_lattice
from .poly import (
    APoly,
    armendariz_pair_check,
    common_annihilator,
    monic_split_quadratic,
    nilfactor,
    parse_apoly,
    peval,
    pmul,
    poly_divmod,
    poly_is_zero_divisor,
    synthetic_division,
)
from .presentations import counterexample_algebra, direct_product, family, iso_check, reals, tensor
from .structure import exact_signature, family_decomposition, numeric_signature

__all__ = ["CheckResult", "CHECKS", "run_all", "run_check"]


@dataclass(frozen=True)
class CheckResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number:2d}. {self.name}: {self.detail}"


CHECKS: list[tuple[int, str, Callable[[int], tuple[bool, str]]]] = []


def check(number: int, name: str):
    def deco(fn):
        CHECKS.append((number, name, fn))
        return fn

    return deco


def _rat(rng: random.Random, span: int = 30, den: int = 12) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, den))


def _rand_elem(A: Algebra, rng: random.Random, lo: int = -4, hi: int = 4) -> Element:
    return A.element(Fraction(rng.randint(lo, hi)) for _ in range(A.dim))


def _rand_poly(A: Algebra, rng: random.Random, deg: int) -> APoly:
    return APoly(A, tuple(_rand_elem(A, rng) for _ in range(deg + 1)))


# oracles that avoid the library's linear algebra


def _cofactor_det(m: list[list[Fraction]]) -> Fraction:
    n = len(m)
    if n == 1:
        return m[0][0]
    total = Fraction(0)
    for j in range(n):
        if m[0][j]:
            minor = [row[:j] + row[j + 1 :] for row in m[1:]]
            total += (-1) ** j * m[0][j] * _cofactor_det(minor)
    return total


def _naive_product(A: Algebra, a: tuple, b: tuple) -> tuple:
    out = [Fraction(0)] * A.dim
    for i in range(A.dim):
        for j in range(A.dim):
            if a[i] and b[j]:
                for k in range(A.dim):
                    out[k] += a[i] * b[j] * A.table[i][j][k]
    return tuple(out)


def _naive_poly_mul(A: Algebra, f: APoly, g: APoly) -> list[tuple]:
    n = len(f.coeffs) + len(g.coeffs) - 1
    out = [tuple([Fraction(0)] * A.dim)] * max(n, 0)
    for i, a in enumerate(f.coeffs):
        for j, b in enumerate(g.coeffs):
            p = _naive_product(A, a.coords, b.coords)
            out[i + j] = tuple(x + y for x, y in zip(out[i + j], p))
    while out and not any(out[-1]):
        out.pop()
    return out


def _brute_constant_annihilator(A: Algebra, f: APoly, box: int = 2) -> bool:
    for c in itertools.product(range(-box, box + 1), repeat=A.dim):
        if not any(c):
            continue
        cf = tuple(Fraction(x) for x in c)
        if all(not any(_naive_product(A, cf, a.coords)) for a in f.coeffs):
            return True
    return False


@check(1, "regular representation of C")
def check_complex_matrix(seed: int) -> tuple[bool, str]:
    rng = random.Random(seed)
    P = family("C", 2)
    i = P.gen("i")
    for _ in range(100):
        x, y = _rat(rng), _rat(rng)
        M = regular_matrix(P.algebra.one() * x + i * y)
        if M != QMatrix([[x, -y], [y, x]]):
            return False, f"M({x}+{y}i) = {M.tolist()}"
    return True, "100 random points, exact"


@check(2, "H3 determinant factorization")
def check_h3_det(seed: int) -> tuple[bool, str]:
    rng = random.Random(seed)
    P = family("H", 3)
    one, j = P.algebra.one(), P.gen("j")
    for _ in range(200):
        a, b, c = _rat(rng), _rat(rng), _rat(rng)
        d = linalg.det(regular_matrix(one * a + j * b + j * j * c))
        expected = (a + b + c) * (a * a + b * b + c * c - a * b - a * c - b * c)
        if d != expected or _cofactor_det(regular_matrix(one * a + j * b + j * j * c).tolist()) != expected:
            return False, f"mismatch at {(a, b, c)}"
    return True, "200 random points, exact"


@check(3, "zero divisors of H")
def check_zd_h(seed: int) -> tuple[bool, str]:
    P = family("H", 2)
    one, j = P.algebra.one(), P.gen("j")
    grid = [Fraction(k, 2) for k in range(-20, 21)]
    for a in grid:
        for b in grid:
            if is_zero_divisor(one * a + j * b) != (a == b or a == -b):
                return False, f"wrong answer at a={a}, b={b}"
    ann = annihilator(one + j)
    if [b.coords for b in ann.basis] != [(Fraction(1), Fraction(-1))]:
        return False, f"Ann(1+j) = {ann}"
    return True, "41x41 grid; Ann(1+j) = span{1-j}"


@check(4, "explicit isomorphisms R x R -> H and H3 -> R x C")
def check_isomorphisms(seed: int) -> tuple[bool, str]:
    RR = direct_product(reals(), reals())
    H = family("H", 2)
    # RR basis is (1,1), (1,0); phi(x,y) = (x+y)/2 + j(x-y)/2
    pairs = [(1, 1), (1, 0)]
    cols = [(Fraction(x + y, 2), Fraction(x - y, 2)) for x, y in pairs]
    if not iso_check(RR.algebra, H.algebra, QMatrix.from_columns(cols)):
        return False, "iso_check rejected phi"
    rng = random.Random(seed)
    D = family_decomposition("H", 3)
    w = cmath.exp(2j * math.pi / 3)
    r3 = math.sqrt(3)
    worst = 0.0
    for _ in range(100):
        a, b, c = (float(_rat(rng)) for _ in range(3))
        (u,), (zc,) = D.components((a, b, c))
        want_u, want_z = a + b + c, a + b * w + c * w * w
        worst = max(worst, abs(u - want_u), abs(zc - want_z))
        U, x, y = (float(_rat(rng)) for _ in range(3))
        back = D.pull_back([U], [complex(x, y)])
        want = ((U + 2 * x) / 3, (U - x + y * r3) / 3, (U - x - y * r3) / 3)
        worst = max(worst, max(abs(p - q) for p, q in zip(back, want)))
    ok = worst <= 1e-9
    return ok, f"iso_check exact; H3 map max error {worst:.2e} over 100 points"


@check(5, "Wedderburn signatures")
def check_signatures(seed: int) -> tuple[bool, str]:
    expected = {("H", 4): (2, 1), ("H", 5): (1, 2), ("C", 4): (0, 2), ("C", 5): (1, 2), ("CC", 2): (0, 2)}
    for (name, n), (m, k) in expected.items():
        ex = exact_signature(name, n)
        nu = numeric_signature(family(name, n).algebra, seed=seed)
        if (ex.m, ex.k) != (m, k) or (nu.m, nu.k) != (m, k):
            return False, f"{name}({n}): exact {ex}, numeric {nu}, expected ({m},{k})"
    return True, "H(4), H(5), C(4), C(5), CC(2) exact and numeric"


@check(6, "degree drop in H[z]")
def check_degree_drop(seed: int) -> tuple[bool, str]:
    P = family("H", 2)
    f, g = parse_apoly(P, "(j-1)*z+1"), parse_apoly(P, "(j+1)*z+1")
    h = pmul(f, g)
    ok = h == parse_apoly(P, "2*j*z+1") and h.degree == 1 and f.degree == g.degree == 1
    return ok, f"({f})({g}) = {h}, degree {h.degree}"


def _division_unique(f: APoly, g: APoly, q: APoly, r: APoly) -> bool:
    """Solve f = Q g + R from scratch and confirm the solution is unique and equal."""
    A = f.parent
    n, dg = A.dim, g.degree
    nq = max(f.degree - dg + 1, 1)
    # unknowns: Q_0..Q_{nq-1}, R_0..R_{dg-1}
    rows_len = max(f.degree, nq - 1 + dg) + 1
    cols = []
    for a in range(nq):
        for t in range(n):
            col = [Fraction(0)] * (rows_len * n)
            e = tuple(Fraction(int(s == t)) for s in range(n))
            for i, b in enumerate(g.coeffs):
                p = _naive_product(A, e, b.coords)
                for s in range(n):
                    col[(a + i) * n + s] += p[s]
            cols.append(col)
    for a in range(dg):
        for t in range(n):
            col = [Fraction(0)] * (rows_len * n)
            col[a * n + t] = Fraction(1)
            cols.append(col)
    M = QMatrix.from_columns(cols, rows=rows_len * n)
    rhs = [Fraction(0)] * (rows_len * n)
    for k, c in enumerate(f.coeffs):
        for s in range(n):
            rhs[k * n + s] = c.coords[s]
    if linalg.kernel_basis(M):
        return False
    sol = linalg.solve(M, rhs)
    if sol is None:
        return False
    Q = APoly.from_coords(A, [sol[a * n : (a + 1) * n] for a in range(nq)])
    R = APoly.from_coords(A, [sol[(nq + a) * n : (nq + a + 1) * n] for a in range(dg)])
    return Q == q and R == r


@check(7, "division algorithm")
def check_division(seed: int) -> tuple[bool, str]:
    rng = random.Random(seed)
    algs = [family("H", 2).algebra, family("G", 3).algebra, family("Xi", 2).algebra]
    for t in range(500):
        A = algs[t % 3]
        f = _rand_poly(A, rng, rng.randint(0, 5))
        dg = rng.randint(1, 3)
        while True:
            g = _rand_poly(A, rng, dg)
            if g.degree == dg and is_unit(g.leading):
                break
        q, r = poly_divmod(f, g)
        lhs = _naive_poly_mul(A, q, g)
        recon = APoly.from_coords(A, lhs) + r if lhs else r
        if recon != f or not (r.is_zero() or r.degree < g.degree):
            return False, f"round trip failed for f={f}, g={g}"
        if t < 100 and not _division_unique(f, g, q, r):
            return False, f"quotient not unique for f={f}, g={g}"
    return True, "500 pairs over H, G(3), Xi(2); uniqueness re-solved on 100"


@check(8, "factor theorem")
def check_factor_theorem(seed: int) -> tuple[bool, str]:
    rng = random.Random(seed)
    algs = [family("H", 2).algebra, family("G", 3).algebra, family("H", 3).algebra]
    planted = 0
    for t in range(500):
        A = algs[t % 3]
        alpha = _rand_elem(A, rng)
        if t % 2 == 0:
            g = _rand_poly(A, rng, rng.randint(0, 3))
            z_minus = APoly(A, (-alpha, A.one()))
            f = APoly.from_coords(A, _naive_poly_mul(A, z_minus, g))
            planted += 1
        else:
            f = _rand_poly(A, rng, rng.randint(1, 4))
        value = peval(f, alpha)
        q, rem = synthetic_division(f, alpha)
        if value.is_zero() != rem.is_zero() or rem != value:
            return False, f"f={f}, alpha={alpha}: f(alpha)={value}, remainder={rem}"
        if t % 2 == 0 and not value.is_zero():
            return False, f"planted root lost: f={f}, alpha={alpha}"
        if rem.is_zero():
            back = APoly.from_coords(A, _naive_poly_mul(A, APoly(A, (-alpha, A.one())), q))
            if back != f:
                return False, f"(z - alpha) q != f for f={f}"
    return True, f"500 cases ({planted} planted) over H, G(3), H3"


@check(9, "polynomial zero divisors")
def check_poly_zd(seed: int) -> tuple[bool, str]:
    RR = direct_product(reals(), reals())
    A = RR.algebra
    e1 = A.element((0, 1))  # (1,0)
    e2 = A.one() - e1
    f = APoly(A, (e2, e1))
    if not common_annihilator(f).is_trivial():
        return False, "Ann(e1) cap Ann(e2) is not {0}"
    rng = random.Random(seed)
    G3, H = family("G", 3), family("H", 2)
    ideals = {
        id(G3.algebra): [G3.gen("e")],
        id(H.algebra): [H.element("1+j"), H.element("1-j")],
    }
    hits = 0
    for t in range(500):
        B = (G3 if t % 2 else H).algebra
        deg = rng.randint(0, 3)
        if rng.random() < 0.5:
            gen = rng.choice(ideals[id(B)])
            f = APoly(B, tuple(gen * _rand_elem(B, rng) for _ in range(deg + 1)))
        else:
            f = _rand_poly(B, rng, deg)
        mine = poly_is_zero_divisor(f)
        if mine != _brute_constant_annihilator(B, f):
            return False, f"disagreement on {f}"
        if mine:
            c = common_annihilator(f).basis[0]
            if any(not (c * a).is_zero() for a in f.coeffs):
                return False, f"annihilator {c} does not kill {f}"
            hits += 1
    return True, f"e1 x + e2 regular; 500 random polynomials agree ({hits} zero divisors)"


def _kernel_partner(p: APoly, deg: int, rng: random.Random) -> APoly | None:
    """Random q of degree <= deg with p q = 0, from the kernel of q -> p q."""
    A = p.parent
    n = A.dim
    rows = (p.degree + deg + 1) * n
    cols = []
    for a in range(deg + 1):
        for t in range(n):
            e = tuple(Fraction(int(s == t)) for s in range(n))
            col = [Fraction(0)] * rows
            for i, c in enumerate(p.coeffs):
                prod = _naive_product(A, c.coords, e)
                for s in range(n):
                    col[(i + a) * n + s] += prod[s]
            cols.append(col)
    ker = linalg.kernel_basis(QMatrix.from_columns(cols, rows=rows))
    if not ker:
        return None
    v = [Fraction(0)] * len(cols)
    while not any(v):
        for k in ker:
            w = rng.randint(-3, 3)
            v = [x + w * y for x, y in zip(v, k)]
    return APoly.from_coords(A, [v[a * n : (a + 1) * n] for a in range(deg + 1)])


@check(10, "Armendariz property of nil chains")
def check_armendariz(seed: int) -> tuple[bool, str]:
    rng = random.Random(seed)
    fams = [family("G", 3), family("G", 4)]
    done = 0
    while done < 1000:
        P = fams[done % 2]
        A = P.algebra
        eps = P.gen("e")
        t = rng.randint(1, P.dim - 1)
        p = _rand_poly(A, rng, rng.randint(0, 3)).scale(eps**t)
        if p.is_zero():
            continue
        q = _kernel_partner(p, rng.randint(0, 3), rng)
        if q is None or q.is_zero():
            continue
        if _naive_poly_mul(A, p, q):
            return False, "kernel sample does not annihilate"
        pairwise = all(not any(_naive_product(A, a.coords, b.coords)) for a in p.coeffs for b in q.coeffs)
        if not pairwise or not armendariz_pair_check(p, q):
            return False, f"counterexample p={p}, q={q}"
        done += 1
    return True, "1000 pairs with pq = 0 over G(3), G(4)"


@check(11, "nilfactorization over G(4)")
def check_nilfactor(seed: int) -> tuple[bool, str]:
    rng = random.Random(seed)
    P = family("G", 4)
    A = P.algebra
    eps = P.gen("e")
    done = spot = 0
    while done < 200:
        f = _rand_poly(A, rng, rng.randint(0, 4)).scale(eps ** rng.randint(1, 3))
        if f.is_zero():
            continue
        nf = nilfactor(f)
        t = len(nf.factors)
        d = A.one()
        for x in nf.factors:
            d = d * x
        if d != eps**t or APoly.from_coords(A, _naive_poly_mul(A, APoly.constant(d), nf.g)) != f:
            return False, f"f != eps^t g for f={f}"
        # g is regular iff some coefficient has nonzero constant term
        if not any(c.coords[A.unit_index] for c in nf.g.coeffs) or poly_is_zero_divisor(nf.g):
            return False, f"g = {nf.g} is a zero divisor"
        if spot < 50:
            ann = annihilator(d)
            for c in ann.basis:
                h = _rand_poly(A, rng, rng.randint(0, 3))
                if _naive_poly_mul(A, h.scale(c), f):
                    return False, f"Ann(eps^{t}) h does not kill f={f}"
            spot += 1
        done += 1
    return True, "200 zero-divisor polynomials; Ann spot-checked with 50 random h"


@check(12, "nil posets")
def check_nil_posets(seed: int) -> tuple[bool, str]:
    for n in range(2, 7):
        N = build_nil_poset(family("G", n).algebra)
        if N.size != n + 1 or not N.is_chain() or not N.check_axioms():
            return False, f"G({n}) poset is not an {n + 1}-chain"
    X = build_nil_poset(family("Xi", 2).algebra)
    diamond = X.size == 4 and len(X.covers) == 4 and not X.is_chain()
    if not diamond:
        return False, "Xi(2) poset is not a diamond"
    T = tensor(family("G", 3), family("G", 3))
    NT = build_nil_poset(T.algebra)
    if NT.size != 10:
        return False, f"G3 x G3 has {NT.size} nodes"
    for i in range(T.dim):
        # oracle: basis elements killed by v_i, by direct multiplication
        B = T.algebra
        killed = [B.basis(k).coords for k in range(B.dim) if (B.basis(i) * B.basis(k)).is_zero()]
        if not annihilator_from_poset(NT, i).equals(Subspace.from_vectors(B, killed)):
            return False, f"poset annihilator wrong at {B.labels[i]}"
        if not annihilator_from_poset(NT, i).equals(annihilator(B.basis(i))):
            return False, f"poset and kernel annihilators differ at {B.labels[i]}"
    C = counterexample_algebra()
    NC = build_nil_poset(C.algebra)
    lat = is_lattice(NC)
    ok = (not lat) and lat.pair == ("epsilon", "gamma") and set(lat.bounds) == {"zeta", "xi"}
    if not ok:
        return False, f"counterexample lattice check gave {lat}"
    return True, "G(2..6) chains, Xi(2) diamond, G3 x G3 with 10 nodes, counterexample not a lattice"


@check(13, "nilradical cross-validation")
def check_nilradical(seed: int) -> tuple[bool, str]:
    cases = {f"G({n})": family("G", n) for n in range(2, 6)}
    cases.update({f"Xi({n})": family("Xi", n) for n in range(1, 4)})
    cases.update({"H": family("H", 2), "C": family("C", 2), "H3": family("H", 3)})
    cases["G3 x G3"] = tensor(family("G", 3), family("G", 3))
    for name, P in cases.items():
        A = P.algebra
        N = nilradical(A)
        for v in N.basis:
            if not (regular_matrix(v) ** A.dim).is_zero():
                return False, f"{name}: {v} is not nilpotent"
        nil_basis = [A.basis(i).coords for i in range(A.dim) if (regular_matrix(A.basis(i)) ** A.dim).is_zero()]
        if not N.equals(Subspace.from_vectors(A, nil_basis)):
            return False, f"{name}: nilradical {N} differs from nilpotent basis span"
        if name in ("H", "C", "H3") and not (N.is_trivial() and is_semisimple(A)):
            return False, f"{name}: expected a trivial nilradical"
    return True, f"{len(cases)} algebras"


@check(14, "monic quadratic splitting")
def check_monic_split(seed: int) -> tuple[bool, str]:
    H = family("H", 2)
    D = family_decomposition("H", 2)
    if monic_split_quadratic(parse_apoly(H, "z^2+j*z+j"), D) is not None:
        return False, "z^2 + jz + j split over H"
    splits = monic_split_quadratic(parse_apoly(H, "z^2-1"), D)
    f = parse_apoly(H, "z^2-1")
    if not splits or not all(s.exact and APoly(H.algebra, (s.alpha, H.algebra.one())) * APoly(H.algebra, (s.beta, H.algebra.one())) == f for s in splits):
        return False, f"z^2 - 1 splits: {splits}"
    G2 = family("G", 2)
    f2 = parse_apoly(G2, "z^2-(1+e)")
    s2 = monic_split_quadratic(f2)
    if not s2 or not s2[0].exact:
        return False, f"z^2 - (1+e) splits: {s2}"
    a, b = s2[0].alpha, s2[0].beta
    one = G2.algebra.one()
    if a != -(one + G2.gen("e") / 2) or APoly(G2.algebra, (a, one)) * APoly(G2.algebra, (b, one)) != f2:
        return False, f"alpha = {a}"
    return True, f"z^2+jz+j: none; z^2-1: {len(splits)} splits; alpha = {a}"


def run_check(number: int, seed: int = 0) -> CheckResult:
    for num, name, fn in CHECKS:
        if num == number:
            t0 = time.perf_counter()
            try:
                ok, detail = fn(seed)
            except Exception as exc:  # a crash is a failure, reported as such
                ok, detail = False, f"{type(exc).__name__}: {exc}"
            return CheckResult(num, name, bool(ok), detail, time.perf_counter() - t0)
    raise KeyError(number)


def run_all(seed: int = 0) -> list[CheckResult]:
    return [run_check(num, seed) for num, _, _ in CHECKS]

"""Presentations R[x_1..x_k]/I and their normalization into structure constants.

The normal-form engine handles the relation shapes that occur in practice:

* elimination relations ``c*x - q(others)`` (x occurs only in that one linear term),
* univariate relations in a single generator (combined by an exact gcd),
* any remaining multivariate relations, used as deg-lex rewrite rules.

After rewriting, the candidate basis is the set of monomials that no rule
can reduce.  The resulting table is accepted only if it is associative and
every original relation evaluates to zero, which certifies that its
dimension equals dim R[x]/I.  Anything else is rejected with
:class:`UnsupportedForm` rather than guessed at.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from . import linalg
from .algebra import Algebra, Element, make_algebra
from .dsl import FamilyNode, ProductNode, Quotient, RealsNode, TensorNode, parse_expr, parse_poly
from .errors import (
    DimensionMismatch,
    Inconsistent,
    InfiniteDimensional,
    NonAssociative,
    NotCommutative,
    UnknownGenerator,
    UnsupportedForm,
)
from .formal import FormalPoly, basis_key, deglex_key, monomial_str
from .linalg import QMatrix

__all__ = [
    "Presentation",
    "PresentedAlgebra",
    "parse",
    "build",
    "load",
    "family",
    "reals",
    "tensor",
    "direct_product",
    "inject_left",
    "inject_right",
    "canonical_basic_presentation",
    "ev",
    "parse_element",
    "is_degenerate",
    "is_basic",
    "iso_check",
    "basis_matching_map",
    "present_table",
    "counterexample_algebra",
]


@dataclass(frozen=True)
class Presentation:
    generators: tuple
    relations: tuple  # FormalPoly, each over ``generators``
    source_text: str = ""

    def __post_init__(self):
        fixed = []
        for r in self.relations:
            extra = set(r.variables()) - set(self.generators)
            if extra:
                raise UnknownGenerator(f"relation {r} uses undeclared {sorted(extra)}")
            if r.gens != self.generators:
                r = r.restrict([g for g in r.gens if g in self.generators]).embed(self.generators)
            fixed.append(r)
        object.__setattr__(self, "relations", tuple(fixed))

    def __str__(self):
        rels = ", ".join(str(r) for r in self.relations)
        return f"R[{','.join(self.generators)}]/<{rels}>"


@dataclass
class PresentedAlgebra:
    """An algebra together with the presentation it came from.

    ``generator_images`` maps each presentation generator to its element;
    ``monomial_basis`` (exponent tuples over ``basis_generators``) is set
    when every basis element is a normal-form monomial.
    """

    presentation: Presentation
    algebra: Algebra
    generator_images: dict
    monomial_basis: tuple | None = None
    basis_generators: tuple = ()
    product_of: tuple | None = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def element(self, text: str) -> Element:
        return parse_element(self, text)

    def gen(self, name: str) -> Element:
        return self.generator_images[name]


def parse(text: str) -> Presentation:
    """Parse a quotient, family or tensor expression into a Presentation."""
    node = parse_expr(text)
    return _presentation_of(node, text)


def _presentation_of(node, text: str = "") -> Presentation:
    if isinstance(node, Quotient):
        return Presentation(node.generators, node.relations, text)
    if isinstance(node, RealsNode):
        return Presentation((), (), text)
    if isinstance(node, FamilyNode):
        return _family_presentation(node.name, node.n)
    if isinstance(node, TensorNode):
        left = _presentation_of(node.left)
        right = _presentation_of(node.right)
        return _union_presentation(left, right)[0]
    raise UnsupportedForm("direct products have no generator/relation form here; use load()")


def _union_presentation(p: Presentation, q: Presentation):
    rename = {}
    taken = set(p.generators)
    for g in q.generators:
        new = g
        k = 2
        while new in taken:
            new = f"{g}_{k}"
            k += 1
        taken.add(new)
        rename[g] = new
    gens = p.generators + tuple(rename[g] for g in q.generators)
    rels = tuple(r.embed(gens) for r in p.relations) + tuple(r.embed(gens, rename) for r in q.relations)
    return Presentation(gens, rels), rename


# ----- the normal-form engine -------------------------------------------------

def _elimination_candidate(r: FormalPoly, alive: Sequence[str]):
    """Generator x (latest first) with r = c*x + (terms free of x), c a nonzero rational."""
    for name in reversed(alive):
        i = r.gens.index(name)
        containing = [(m, c) for m, c in r.terms.items() if m[i]]
        if len(containing) == 1:
            m, c = containing[0]
            if m[i] == 1 and sum(m) == 1:
                return name, c
    return None


def _upoly_gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    def trim(p):
        p = list(p)
        while p and p[-1] == 0:
            p.pop()
        return p

    a, b = trim(a), trim(b)
    while b:
        # a mod b
        a = list(a)
        while len(a) >= len(b) and a:
            f = a[-1] / b[-1]
            shift = len(a) - len(b)
            for k, c in enumerate(b):
                a[shift + k] -= f * c
            a = trim(a)
        a, b = b, a
    if not a:
        return []
    return [c / a[-1] for c in a]


class _Rewriter:
    def __init__(self, gens: tuple, rules: list[tuple[tuple, FormalPoly]]):
        self.gens = gens
        self.rules = rules  # (leading monomial, tail) with LT -> tail

    def reduce(self, p: FormalPoly) -> FormalPoly:
        terms = dict(p.terms)
        while True:
            target = None
            for m in sorted(terms, key=deglex_key, reverse=True):
                for lt, tail in self.rules:
                    if all(a >= b for a, b in zip(m, lt)):
                        target = (m, lt, tail)
                        break
                if target:
                    break
            if target is None:
                return FormalPoly(self.gens, terms)
            m, lt, tail = target
            c = terms.pop(m)
            quot = tuple(a - b for a, b in zip(m, lt))
            for tm, tc in tail.terms.items():
                nm = tuple(a + b for a, b in zip(quot, tm))
                terms[nm] = terms.get(nm, 0) + c * tc
                if terms[nm] == 0:
                    del terms[nm]


def build(p: Presentation) -> PresentedAlgebra:
    """Turn a presentation into a validated structure-constant algebra."""
    gens = tuple(p.generators)
    rels = [r if r.gens == gens else r.embed(gens) for r in p.relations]
    rels = [r for r in rels if not r.is_zero()]
    alive = list(gens)
    substitutions: dict[str, FormalPoly] = {}

    # 1. eliminations
    while True:
        found = None
        for idx, r in enumerate(rels):
            cand = _elimination_candidate(r, alive)
            if cand:
                found = (idx, cand)
                break
        if not found:
            break
        idx, (name, c) = found
        r = rels.pop(idx)
        q = (FormalPoly.var(gens, name) * c - r) * (1 / c)
        rels = [s.subs(name, q) for s in rels]
        rels = [s for s in rels if not s.is_zero()]
        substitutions = {k: v.subs(name, q) for k, v in substitutions.items()}
        substitutions[name] = q
        alive.remove(name)

    for r in rels:
        if r.is_constant():
            raise Inconsistent(f"relations force 1 = 0 (found constant relation {r})")

    alive_t = tuple(alive)
    rels = [r.restrict(alive_t) for r in rels]

    # 2. per-generator gcd of univariate relations
    uni: dict[str, list[Fraction]] = {}
    multi: list[FormalPoly] = []
    for r in rels:
        vs = r.variables()
        if len(vs) == 1:
            coeffs = r.univariate_coeffs(vs[0])
            uni[vs[0]] = _upoly_gcd(uni[vs[0]], coeffs) if vs[0] in uni else [c / coeffs[-1] for c in coeffs]
        else:
            multi.append(r)
    rules: list[tuple[tuple, FormalPoly]] = []
    for name, coeffs in uni.items():
        if len(coeffs) == 1:
            raise Inconsistent(f"univariate relations in {name} have gcd 1")
        i = alive_t.index(name)
        d = len(coeffs) - 1
        lt = tuple(d if k == i else 0 for k in range(len(alive_t)))
        tail = FormalPoly(alive_t, {
            tuple(e if k == i else 0 for k in range(len(alive_t))): -coeffs[e] for e in range(d)
        })
        rules.append((lt, tail))

    # 3. remaining relations become deg-lex rewrite rules
    rw = _Rewriter(alive_t, rules)
    for r in multi:
        r = rw.reduce(r)
        if r.is_zero():
            continue
        if r.is_constant():
            raise Inconsistent("relations force 1 = 0")
        lt, c = r.leading()
        tail = (FormalPoly(alive_t, {lt: c}) - r) * (1 / c)
        rules.append((lt, tail))
        rw = _Rewriter(alive_t, rules)

    # 4. finiteness: every live generator must have a pure-power leading term
    bounds = []
    for i, name in enumerate(alive_t):
        pure = [lt[i] for lt, _ in rules if lt[i] and sum(lt) == lt[i]]
        if not pure:
            raise InfiniteDimensional(f"no relation bounds the powers of {name}")
        bounds.append(min(pure))
    normal = [
        m for m in itertools.product(*[range(b) for b in bounds])
        if not any(all(a >= b for a, b in zip(m, lt)) for lt, _ in rules)
    ]
    normal.sort(key=basis_key)
    if not normal:
        raise Inconsistent("relations force 1 = 0")
    index = {m: k for k, m in enumerate(normal)}
    n = len(normal)

    def coords(poly: FormalPoly) -> list[Fraction]:
        red = rw.reduce(poly)
        out = [Fraction(0)] * n
        for m, c in red.terms.items():
            if m not in index:
                raise UnsupportedForm(f"rewriting left non-normal monomial {monomial_str(alive_t, m)}")
            out[index[m]] = c
        return out

    table = [[None] * n for _ in range(n)]
    for a, ma in enumerate(normal):
        for b in range(a, n):
            mb = normal[b]
            prod = tuple(x + y for x, y in zip(ma, mb))
            row = coords(FormalPoly(alive_t, {prod: 1}))
            table[a][b] = row
            table[b][a] = row
    labels = [monomial_str(alive_t, m) for m in normal]
    try:
        A = make_algebra(n, labels, index[(0,) * len(alive_t)], table)
    except NonAssociative as exc:
        raise UnsupportedForm(
            f"rewrite system is not confluent ({exc}); general Groebner machinery would be needed"
        ) from exc

    images: dict[str, Element] = {}
    for name in alive_t:
        images[name] = A.element(coords(FormalPoly.var(alive_t, name)))
    pa = PresentedAlgebra(p, A, {}, tuple(normal), alive_t)
    for name in gens:
        if name in substitutions:
            q = substitutions[name].restrict(alive_t)
            images[name] = q.evaluate(images, A.one())
        pa.generator_images[name] = images[name]
    for r in p.relations:
        if not ev(pa, r).is_zero():
            raise UnsupportedForm(f"relation {r} does not vanish on the normal-form algebra")
    return pa


# ----- constructors -------------------------------------------------------------

def _family_presentation(name: str, n: int) -> Presentation:
    if n < 1:
        raise ValueError(f"family index must be positive, got {n}")
    if name == "H":
        return parse(f"R[j]/<j^{n} - 1>")
    if name == "C":
        return parse(f"R[i]/<i^{n} + 1>")
    if name == "G":
        return parse(f"R[e]/<e^{n}>")
    if name == "Xi":
        gs = [f"e{k}" for k in range(1, n + 1)]
        rels = [f"{a}*{b}" for a, b in itertools.combinations_with_replacement(gs, 2)]
        return parse(f"R[{','.join(gs)}]/<{', '.join(rels)}>")
    if name == "CC":
        gs = [f"i{k}" for k in range(1, n + 1)]
        return parse(f"R[{','.join(gs)}]/<{', '.join(g + '^2 + 1' for g in gs)}>")
    raise ValueError(f"unknown family {name!r}")


def family(name: str, n: int) -> PresentedAlgebra:
    """H(n)=R[j]/<j^n-1>, C(n)=R[i]/<i^n+1>, G(n)=R[e]/<e^n>, Xi(n), CC(n)=C tensor-power n."""
    return build(_family_presentation(name, n))


def reals() -> PresentedAlgebra:
    return build(Presentation((), ()))


def load(text: str) -> PresentedAlgebra:
    """Evaluate a full algebra expression (quotients, families, tensor, product)."""
    return _load_node(parse_expr(text), text)


def _load_node(node, text: str = "") -> PresentedAlgebra:
    if isinstance(node, Quotient):
        return build(Presentation(node.generators, node.relations, text))
    if isinstance(node, RealsNode):
        return reals()
    if isinstance(node, FamilyNode):
        return family(node.name, node.n)
    if isinstance(node, TensorNode):
        return tensor(_load_node(node.left), _load_node(node.right))
    if isinstance(node, ProductNode):
        return direct_product(_load_node(node.left), _load_node(node.right))
    raise TypeError(node)


def _combine_label(a: str, b: str) -> str:
    if a == "1":
        return b
    if b == "1":
        return a
    return f"{a}*{b}"


def tensor(P: PresentedAlgebra, Q: PresentedAlgebra) -> PresentedAlgebra:
    """Tensor product on the basis u_i (x) w_j, ordered with i outermost."""
    A, B = P.algebra, Q.algebra
    pres, rename = _union_presentation(P.presentation, Q.presentation)
    n, m = A.dim, B.dim
    table = []
    for i, j in itertools.product(range(n), range(m)):
        row = []
        for i2, j2 in itertools.product(range(n), range(m)):
            a = A.table[i][i2]
            b = B.table[j][j2]
            row.append([a[k] * b[l] for k in range(n) for l in range(m)])
        table.append(row)
    if Q.monomial_basis is not None:
        qgens = tuple(rename.get(g, g) for g in Q.basis_generators)
        qlabels = [monomial_str(qgens, mono) for mono in Q.monomial_basis]
    else:
        qlabels = [rename.get(lab, lab) for lab in B.labels]
    labels = [_combine_label(la, lb) for la in A.labels for lb in qlabels]
    if len(set(labels)) != len(labels):
        labels = [_combine_label(la, lb + "'") if lb != "1" else la for la in A.labels for lb in qlabels]
    T = make_algebra(n * m, labels, A.unit_index * m + B.unit_index, table)

    def lift_left(a: Element) -> Element:
        return T.element(a.coords[k] * (1 if l == B.unit_index else 0) for k in range(n) for l in range(m))

    def lift_right(b: Element) -> Element:
        return T.element((1 if k == A.unit_index else 0) * b.coords[l] for k in range(n) for l in range(m))

    images = {g: lift_left(x) for g, x in P.generator_images.items()}
    images.update({rename[g]: lift_right(x) for g, x in Q.generator_images.items()})
    mono = None
    bgens: tuple = ()
    if P.monomial_basis is not None and Q.monomial_basis is not None:
        mono = tuple(a + b for a in P.monomial_basis for b in Q.monomial_basis)
        bgens = tuple(P.basis_generators) + tuple(rename[g] for g in Q.basis_generators)
    return PresentedAlgebra(pres, T, images, mono, bgens)


def _sanitize(label: str) -> str:
    s = re.sub(r"[^A-Za-z0-9_]", "", label)
    if not s or not (s[0].isalpha() or s[0] == "_"):
        s = "v" + s
    return s


def direct_product(P: PresentedAlgebra, Q: PresentedAlgebra) -> PresentedAlgebra:
    """A x B on the basis (1,1), (u_i,0) for every i, (0,w_j) for non-unit j.

    The unit of a product is (1,1), which is not one of the naive basis
    vectors (u_i,0), (0,w_j); this basis keeps it as basis element 0.
    """
    A, B = P.algebra, Q.algebra
    n, m = A.dim, B.dim
    right_idx = [j for j in range(m) if j != B.unit_index]
    dim = n + m

    def coords_of(a: tuple, b: tuple) -> list[Fraction]:
        c0 = b[B.unit_index]
        out = [c0]
        out += [a[i] - (c0 if i == A.unit_index else 0) for i in range(n)]
        out += [b[j] for j in right_idx]
        return out

    def pair_of(k: int) -> tuple[tuple, tuple]:
        za, zb = A.zero().coords, B.zero().coords
        if k == 0:
            return A.one().coords, B.one().coords
        if k <= n:
            return A.basis(k - 1).coords, zb
        return za, B.basis(right_idx[k - n - 1]).coords

    pairs = [pair_of(k) for k in range(dim)]
    table = []
    for k1 in range(dim):
        a1, b1 = pairs[k1]
        row = []
        for k2 in range(dim):
            a2, b2 = pairs[k2]
            row.append(coords_of(A._mul_coords(a1, a2), B._mul_coords(b1, b2)))
        table.append(row)
    labels = ["1"]
    labels += ["id_L" if i == A.unit_index else f"{_sanitize(A.labels[i])}_L" for i in range(n)]
    labels += [f"{_sanitize(B.labels[j])}_R" for j in right_idx]
    out = present_table(make_algebra(dim, labels, 0, table))
    out.product_of = (A, B)
    return out


def inject_left(P: PresentedAlgebra, a: Element) -> Element:
    """(a, 0) in a direct product built by :func:`direct_product`."""
    A, B = P.product_of
    return P.algebra.element([0] + list(a.coords) + [0] * (B.dim - 1))


def inject_right(P: PresentedAlgebra, b: Element) -> Element:
    """(0, b) in a direct product built by :func:`direct_product`."""
    A, B = P.product_of
    c0 = b.coords[B.unit_index]
    left = [-(c0) if i == A.unit_index else 0 for i in range(A.dim)]
    right = [b.coords[j] for j in range(B.dim) if j != B.unit_index]
    return P.algebra.element([c0] + left + right)


def present_table(A: Algebra) -> PresentedAlgebra:
    """Wrap a bare structure-constant algebra, using basis labels as symbols."""
    pres = canonical_basic_presentation(A) if A.commutative else Presentation((), ())
    images = {g: A.basis(i) for g, i in zip(pres.generators, _non_unit(A))}
    return PresentedAlgebra(pres, A, images)


def _non_unit(A: Algebra) -> list[int]:
    return [i for i in range(A.dim) if i != A.unit_index]


def _integer_primitive(r: FormalPoly) -> FormalPoly:
    if r.is_zero():
        return r
    den = lcm(*(c.denominator for c in r.terms.values()))
    r = r * den
    g = 0
    for c in r.terms.values():
        g = gcd(g, int(c))
    r = r * Fraction(1, g)
    if r.leading()[1] < 0:
        r = -r
    return r


def canonical_basic_presentation(A: Algebra, names: Sequence[str] | None = None) -> Presentation:
    """Generators for the non-unit basis elements, relations x_i x_j - sum_k c_ij^k x_k."""
    if not A.commutative:
        raise NotCommutative("canonical basic presentations are built in a commutative polynomial ring")
    idx = _non_unit(A)
    if names is None:
        names, seen = [], set()
        for i in idx:
            base = _sanitize(A.labels[i])
            cand, k = base, 2
            while cand in seen:
                cand, k = f"{base}_{k}", k + 1
            seen.add(cand)
            names.append(cand)
    names = tuple(names)
    if len(names) != len(idx):
        raise DimensionMismatch(f"need {len(idx)} generator names, got {len(names)}")
    var_of = dict(zip(idx, names))
    rels = []
    for a, b in itertools.combinations_with_replacement(range(len(idx)), 2):
        i, j = idx[a], idx[b]
        r = FormalPoly.var(names, names[a]) * FormalPoly.var(names, names[b])
        for k, c in enumerate(A.table[i][j]):
            if not c:
                continue
            r = r - (FormalPoly.constant(names, c) if k == A.unit_index else FormalPoly.var(names, var_of[k]) * c)
        rels.append(_integer_primitive(r))
    return Presentation(names, tuple(rels))


# ----- evaluation and predicates ----------------------------------------------------

def ev(P: PresentedAlgebra, f: FormalPoly) -> Element:
    """Substitute generator images into a formal polynomial (a ring homomorphism)."""
    missing = set(f.variables()) - set(P.generator_images)
    if missing:
        raise UnknownGenerator(f"unknown symbol(s) {sorted(missing)}")
    return f.evaluate(P.generator_images, P.algebra.one())


def parse_element(P: PresentedAlgebra, text: str) -> Element:
    return ev(P, parse_poly(text, list(P.generator_images)))


def _gen_vectors(P: PresentedAlgebra) -> list[tuple]:
    return [P.algebra.one().coords] + [P.generator_images[g].coords for g in P.presentation.generators]


def is_degenerate(P: PresentedAlgebra) -> bool:
    vecs = _gen_vectors(P)
    return linalg.rank(QMatrix(vecs)) < len(vecs)


def is_basic(P: PresentedAlgebra) -> bool:
    vecs = _gen_vectors(P)
    return len(vecs) == P.dim and linalg.rank(QMatrix(vecs)) == P.dim


def iso_check(A: Algebra, B: Algebra, psi: QMatrix) -> bool:
    """Whether the linear map with matrix ``psi`` (columns = images of A's basis) is an isomorphism."""
    psi = psi if isinstance(psi, QMatrix) else QMatrix(psi)
    if A.dim != B.dim or psi.shape != (B.dim, A.dim):
        raise DimensionMismatch(f"map of shape {psi.shape} between dims {A.dim} and {B.dim}")
    if linalg.det(psi) == 0:
        return False
    img = [B.element(psi.column(i)) for i in range(A.dim)]
    if img[A.unit_index] != B.one():
        return False
    for i in range(A.dim):
        for j in range(A.dim):
            lhs = B.element(psi @ A.table[i][j])
            if lhs != img[i] * img[j]:
                return False
    return True


def basis_matching_map(src: PresentedAlgebra, names: Sequence[str], dst: PresentedAlgebra) -> QMatrix:
    """Map sending src's unit to 1 and each non-unit basis element to the named generator of dst."""
    A = src.algebra
    cols = [None] * A.dim
    cols[A.unit_index] = dst.algebra.one().coords
    for i, name in zip(_non_unit(A), names):
        cols[i] = dst.generator_images[name].coords
    return QMatrix.from_columns(cols)


def counterexample_algebra() -> PresentedAlgebra:
    """The 7-dimensional nil algebra whose nil poset is not a lattice.

    R[e,g,d,h,z,x]/<e^2, g^2, d^2, h^2, ed - z, eh - x, gd - x, gh - z>
    on the basis {1, epsilon, gamma, delta, eta, zeta, xi}; every product
    not listed in the presentation is zero.
    """
    labels = ["1", "epsilon", "gamma", "delta", "eta", "zeta", "xi"]
    n = len(labels)
    prods = {
        ("epsilon", "delta"): "zeta",
        ("epsilon", "eta"): "xi",
        ("gamma", "delta"): "xi",
        ("gamma", "eta"): "zeta",
    }
    table = [[[0] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        table[0][i][i] = 1
        table[i][0][i] = 1
    for (a, b), c in prods.items():
        i, j, k = labels.index(a), labels.index(b), labels.index(c)
        table[i][j][k] = 1
        table[j][i][k] = 1
    A = make_algebra(n, labels, 0, table)
    return present_table(A)

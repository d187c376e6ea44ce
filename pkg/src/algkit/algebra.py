"""Finite-dimensional unital associative algebras over Q given by structure constants.

An :class:`Algebra` is fixed by a basis ``v_0 .. v_{n-1}`` (one of which is
the unit) and the table ``c[i][j][k]`` with ``v_i * v_j = sum_k c[i][j][k] v_k``.
Elements are immutable rational coordinate vectors.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import linalg
from .errors import (
    DimensionMismatch,
    NonAssociative,
    NotCommutative,
    ParentMismatch,
    UnitViolation,
)
from .linalg import QMatrix, as_fraction

__all__ = [
    "Algebra",
    "Element",
    "Subspace",
    "make_algebra",
    "mul",
    "regular_matrix",
    "is_zero_divisor",
    "is_nontrivial_zero_divisor",
    "is_unit",
    "inverse",
    "is_nilpotent",
    "annihilator",
    "nilradical",
    "is_semisimple",
    "nil_star",
    "is_unital_nil",
    "random_element",
    "algebra_from_json",
    "algebra_to_json",
    "format_element",
]


class Algebra:
    """Validated structure-constant algebra.  Build through :func:`make_algebra`."""

    def __init__(self, labels: Sequence[str], unit_index: int, table):
        self.dim = len(labels)
        self.labels = tuple(labels)
        self.unit_index = unit_index
        self.table = tuple(
            tuple(tuple(as_fraction(c) for c in table[i][j]) for j in range(self.dim))
            for i in range(self.dim)
        )
        # sparse copy of the table for fast products
        self._sparse = tuple(
            tuple(
                tuple((k, c) for k, c in enumerate(self.table[i][j]) if c)
                for j in range(self.dim)
            )
            for i in range(self.dim)
        )
        self.commutative = all(
            self.table[i][j] == self.table[j][i]
            for i in range(self.dim)
            for j in range(i + 1, self.dim)
        )
        self._hash = hash((self.labels, self.unit_index, self.table))
        self._traces = None

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Algebra):
            return NotImplemented
        return (
            self._hash == other._hash
            and self.labels == other.labels
            and self.unit_index == other.unit_index
            and self.table == other.table
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Algebra(dim={self.dim}, basis={list(self.labels)})"

    # element constructors
    def element(self, coords: Iterable) -> Element:
        return Element(self, tuple(as_fraction(c) for c in coords))

    def basis(self, i: int) -> Element:
        return Element(self, tuple(Fraction(int(k == i)) for k in range(self.dim)))

    def basis_elements(self) -> list[Element]:
        return [self.basis(i) for i in range(self.dim)]

    def one(self) -> Element:
        return self.basis(self.unit_index)

    def zero(self) -> Element:
        return Element(self, (Fraction(0),) * self.dim)

    def scalar(self, c) -> Element:
        return self.one() * as_fraction(c)

    def label_index(self, label: str) -> int:
        return self.labels.index(label)

    def _mul_coords(self, a, b) -> tuple:
        out = [Fraction(0)] * self.dim
        sp = self._sparse
        for i, x in enumerate(a):
            if not x:
                continue
            row = sp[i]
            for j, y in enumerate(b):
                if not y:
                    continue
                xy = x * y
                for k, c in row[j]:
                    out[k] += xy * c
        return tuple(out)

    def traces(self) -> tuple:
        """trace(M(v_k)) for each basis element."""
        if self._traces is None:
            self._traces = tuple(
                sum((self.table[k][l][l] for l in range(self.dim)), Fraction(0))
                for k in range(self.dim)
            )
        return self._traces


@dataclass(frozen=True, eq=False)
class Element:
    parent: Algebra
    coords: tuple

    def __post_init__(self):
        if len(self.coords) != self.parent.dim:
            raise DimensionMismatch(
                f"{len(self.coords)} coordinates for a {self.parent.dim}-dimensional algebra"
            )

    def _check(self, other: Element):
        if not isinstance(other, Element):
            raise TypeError(f"expected an algebra element, got {type(other).__name__}")
        if other.parent is not self.parent and other.parent != self.parent:
            raise ParentMismatch("elements belong to different algebras")

    def __add__(self, other):
        if not isinstance(other, Element):
            other = self.parent.scalar(other)
        self._check(other)
        return Element(self.parent, tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        return Element(self.parent, tuple(-a for a in self.coords))

    def __sub__(self, other):
        if not isinstance(other, Element):
            other = self.parent.scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Element):
            return mul(self, other)
        c = as_fraction(other)
        return Element(self.parent, tuple(c * a for a in self.coords))

    def __rmul__(self, other):
        return self * other

    def __truediv__(self, other):
        if isinstance(other, Element):
            return self * inverse(other)
        return self * (1 / as_fraction(other))

    def __pow__(self, k: int):
        if k < 0:
            return inverse(self) ** (-k)
        result = self.parent.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Element):
            return (other.parent is self.parent or other.parent == self.parent) and self.coords == other.coords
        if isinstance(other, (int, Fraction)):
            return self.coords == self.parent.scalar(other).coords
        return NotImplemented

    def __hash__(self):
        return hash(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __bool__(self):
        return not self.is_zero()

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"Element({format_element(self)})"


def format_element(a: Element) -> str:
    """Render an element as a sum over basis labels, e.g. ``1/2-1/2*j``."""
    parts = []
    A = a.parent
    for k, c in enumerate(a.coords):
        if not c:
            continue
        lab = A.labels[k]
        mag = abs(c)
        if k == A.unit_index:
            body = str(mag)
        elif mag == 1:
            body = lab
        else:
            body = f"{mag}*{lab}"
        parts.append(("-" if c < 0 else "+", body))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += sign + body
    return out


@dataclass(frozen=True)
class Subspace:
    """Subspace of an algebra given by a linearly independent list of elements."""

    parent: Algebra
    basis: tuple

    @classmethod
    def from_vectors(cls, parent: Algebra, vectors) -> Subspace:
        return cls(parent, tuple(parent.element(v) for v in vectors))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def vectors(self) -> list[tuple]:
        return [b.coords for b in self.basis]

    def is_trivial(self) -> bool:
        return not self.basis

    def contains(self, a: Element) -> bool:
        return linalg.span_contains(self.vectors(), a.coords)

    def __contains__(self, a: Element) -> bool:
        return self.contains(a)

    def issubset(self, other: Subspace) -> bool:
        return all(other.contains(b) for b in self.basis)

    def equals(self, other: Subspace) -> bool:
        return self.dim == other.dim and self.issubset(other)

    def __str__(self):
        if not self.basis:
            return "{0}"
        return "span{" + ", ".join(format_element(b) for b in self.basis) + "}"


def make_algebra(dim: int, labels: Sequence[str], unit_index: int, table) -> Algebra:
    """Validate a structure-constant table and return the Algebra.

    Checks shape, the unit law on every basis element and associativity on
    all ``dim**3`` basis triples, exactly.
    """
    labels = list(labels)
    if len(labels) != dim:
        raise DimensionMismatch(f"{len(labels)} labels for dimension {dim}")
    if not 0 <= unit_index < dim:
        raise DimensionMismatch(f"unit index {unit_index} out of range")
    if len(table) != dim or any(len(row) != dim or any(len(c) != dim for c in row) for row in table):
        raise DimensionMismatch("structure-constant table must be dim x dim x dim")
    A = Algebra(labels, unit_index, table)
    u = unit_index
    for i in range(dim):
        e_i = tuple(Fraction(int(k == i)) for k in range(dim))
        if A.table[u][i] != e_i or A.table[i][u] != e_i:
            raise UnitViolation(f"unit {labels[u]!r} does not act as identity on {labels[i]!r}")
    for i in range(dim):
        for j in range(dim):
            vij = A.table[i][j]
            for k in range(dim):
                left = A._mul_coords(vij, A.basis(k).coords)
                right = A._mul_coords(A.basis(i).coords, A.table[j][k])
                if left != right:
                    raise NonAssociative((labels[i], labels[j], labels[k]))
    return A


def mul(a: Element, b: Element) -> Element:
    a._check(b)
    return Element(a.parent, a.parent._mul_coords(a.coords, b.coords))


def regular_matrix(a: Element) -> QMatrix:
    """Matrix of left multiplication by ``a``; column k holds a * v_k."""
    A = a.parent
    cols = [A._mul_coords(a.coords, A.basis(k).coords) for k in range(A.dim)]
    return QMatrix.from_columns(cols)


def _require_commutative(A: Algebra, what: str):
    if not A.commutative:
        raise NotCommutative(f"{what} is only defined here for commutative algebras")


def is_zero_divisor(a: Element) -> bool:
    """True iff det M(a) = 0.  The zero element counts as a (trivial) zero divisor."""
    _require_commutative(a.parent, "zero-divisor testing")
    return linalg.det(regular_matrix(a)) == 0


def is_nontrivial_zero_divisor(a: Element) -> bool:
    return not a.is_zero() and is_zero_divisor(a)


def is_unit(a: Element) -> bool:
    return linalg.det(regular_matrix(a)) != 0


def inverse(a: Element) -> Element:
    x = linalg.solve(regular_matrix(a), a.parent.one().coords)
    if x is None:
        raise ZeroDivisionError(f"{format_element(a)} is not invertible")
    return a.parent.element(x)


def is_nilpotent(a: Element) -> bool:
    return (regular_matrix(a) ** a.parent.dim).is_zero()


def annihilator(a: Element) -> Subspace:
    """Ann(a) = {x : x a = 0}, the null space of M(a); its dimension is the nildegree."""
    _require_commutative(a.parent, "annihilators")
    return Subspace.from_vectors(a.parent, linalg.kernel_basis(regular_matrix(a)))


def trace_form(A: Algebra) -> QMatrix:
    """Gram matrix of T(x, y) = trace M(x y) on the basis."""
    tr = A.traces()
    return QMatrix(
        [
            [sum((c * tr[k] for k, c in A._sparse[i][j]), Fraction(0)) for j in range(A.dim)]
            for i in range(A.dim)
        ]
    )


def nilradical(A: Algebra) -> Subspace:
    # In characteristic zero the radical of the trace form is the nilradical.
    _require_commutative(A, "the nilradical computation")
    return Subspace.from_vectors(A, linalg.kernel_basis(trace_form(A)))


def is_semisimple(A: Algebra) -> bool:
    _require_commutative(A, "semisimplicity testing")
    return linalg.det(trace_form(A)) != 0


def nil_star(A: Algebra) -> Subspace:
    """Smallest unital subalgebra containing the nilradical: span(Nil(A) + {1})."""
    vecs = [A.one().coords] + nilradical(A).vectors()
    return Subspace.from_vectors(A, linalg.row_space_basis(vecs))


def is_unital_nil(A: Algebra) -> bool:
    return nil_star(A).dim == A.dim


def random_element(A: Algebra, rng: random.Random, lo: int = -9, hi: int = 9) -> Element:
    return A.element(Fraction(rng.randint(lo, hi)) for _ in range(A.dim))


# structure-constant JSON
def _frac_str(c: Fraction) -> str:
    return str(c)


def algebra_to_json(A: Algebra, **extra) -> str:
    doc = {
        "dim": A.dim,
        "basis": list(A.labels),
        "unit": A.unit_index,
        "table": [[[_frac_str(c) for c in A.table[i][j]] for j in range(A.dim)] for i in range(A.dim)],
    }
    doc.update(extra)
    return json.dumps(doc)


def algebra_from_json(text_or_doc) -> Algebra:
    doc = json.loads(text_or_doc) if isinstance(text_or_doc, str) else text_or_doc
    table = [[[Fraction(str(c)) for c in cell] for cell in row] for row in doc["table"]]
    return make_algebra(int(doc["dim"]), doc["basis"], int(doc["unit"]), table)

"""Nil posets of unital nil algebras with a multiplicative basis.

Nodes are the basis indices 0..n-1 plus a formal zero node (index n).
v_i <= v_j when some basis product v_i v_k equals c v_j with c != 0, and
every node lies below the zero node.  The order is the transitive closure
of these relations.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .algebra import Algebra, Subspace, annihilator, is_unital_nil
from .errors import NotAntisymmetric, NotMultiplicative, NotUnitalNil

__all__ = [
    "ZERO_LABEL",
    "MultiplicativeCheck",
    "is_multiplicative_basis",
    "NilPoset",
    "build_nil_poset",
    "annihilator_from_poset",
    "annihilator_mismatches",
    "hasse_dot",
    "LatticeCheck",
    "is_lattice",
]

ZERO_LABEL = "0"


def _support(A: Algebra, i: int, j: int) -> tuple[int, Fraction] | None | bool:
    """(k, c) if v_i v_j = c v_k (c != 0), None if the product is zero, False otherwise."""
    nz = [(k, c) for k, c in enumerate(A.table[i][j]) if c]
    if not nz:
        return None
    if len(nz) == 1:
        return nz[0]
    return False


@dataclass(frozen=True)
class MultiplicativeCheck:
    ok: bool
    pair: tuple | None = None  # violating (label_i, label_j)

    def __bool__(self):
        return self.ok


def is_multiplicative_basis(A: Algebra) -> MultiplicativeCheck:
    for i in range(A.dim):
        for j in range(A.dim):
            if _support(A, i, j) is False:
                return MultiplicativeCheck(False, (A.labels[i], A.labels[j]))
    return MultiplicativeCheck(True)


@dataclass(frozen=True)
class NilPoset:
    parent: Algebra
    labels: tuple  # basis labels, then ZERO_LABEL
    leq: tuple  # leq[a][b] = (a <= b)
    covers: tuple  # (lower, upper) node pairs

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def zero_node(self) -> int:
        return len(self.labels) - 1

    @property
    def unit_node(self) -> int:
        return self.parent.unit_index

    def node(self, ref) -> int:
        return self.labels.index(ref) if isinstance(ref, str) else int(ref)

    def le(self, a, b) -> bool:
        return self.leq[self.node(a)][self.node(b)]

    def lt(self, a, b) -> bool:
        a, b = self.node(a), self.node(b)
        return a != b and self.leq[a][b]

    def upper_bounds(self, a, b) -> list[int]:
        a, b = self.node(a), self.node(b)
        return [k for k in range(self.size) if self.leq[a][k] and self.leq[b][k]]

    def lower_bounds(self, a, b) -> list[int]:
        a, b = self.node(a), self.node(b)
        return [k for k in range(self.size) if self.leq[k][a] and self.leq[k][b]]

    def levels(self) -> list[int]:
        """Length of the longest chain from the unit to each node."""
        order = sorted(range(self.size), key=lambda v: sum(self.leq[u][v] for u in range(self.size)))
        lvl = [0] * self.size
        for v in order:
            for lo, hi in self.covers:
                if hi == v:
                    lvl[v] = max(lvl[v], lvl[lo] + 1)
        return lvl

    def is_chain(self) -> bool:
        return all(self.leq[a][b] or self.leq[b][a] for a in range(self.size) for b in range(self.size))

    def check_axioms(self) -> bool:
        n = self.size
        L = self.leq
        refl = all(L[a][a] for a in range(n))
        anti = all(not (L[a][b] and L[b][a]) for a in range(n) for b in range(n) if a != b)
        trans = all(
            L[a][c] for a in range(n) for b in range(n) if L[a][b] for c in range(n) if L[b][c]
        )
        return refl and anti and trans


def build_nil_poset(A: Algebra) -> NilPoset:
    check = is_multiplicative_basis(A)
    if not check:
        raise NotMultiplicative(check.pair)
    if not is_unital_nil(A):
        raise NotUnitalNil("the algebra is not spanned by 1 and its nilradical")
    n = A.dim
    z = n
    rel = [[False] * (n + 1) for _ in range(n + 1)]
    for i in range(n + 1):
        rel[i][i] = True
        rel[i][z] = True
    for i in range(n):
        for k in range(n):
            s = _support(A, i, k)
            if s:
                rel[i][s[0]] = True
    # transitive closure
    for m in range(n + 1):
        for i in range(n + 1):
            if rel[i][m]:
                row_m = rel[m]
                row_i = rel[i]
                for j in range(n + 1):
                    if row_m[j]:
                        row_i[j] = True
    labels = tuple(A.labels) + (ZERO_LABEL,)
    for i in range(n + 1):
        for j in range(i + 1, n + 1):
            if rel[i][j] and rel[j][i]:
                raise NotAntisymmetric((labels[i], labels[j]))
    covers = []
    for a in range(n + 1):
        for b in range(n + 1):
            if a == b or not rel[a][b]:
                continue
            if not any(c not in (a, b) and rel[a][c] and rel[c][b] for c in range(n + 1)):
                covers.append((a, b))
    P = NilPoset(A, labels, tuple(tuple(r) for r in rel), tuple(covers))
    u = A.unit_index
    assert all(P.leq[u][k] for k in range(n + 1)), "unit is not the minimum"
    return P


def annihilator_from_poset(P: NilPoset, node) -> Subspace:
    """Span of the basis elements whose product with the node's basis element vanishes."""
    i = P.node(node)
    if i == P.zero_node:
        raise ValueError("the zero node has no basis element")
    A = P.parent
    vecs = [A.basis(k).coords for k in range(A.dim) if not any(A.table[i][k])]
    return Subspace.from_vectors(A, vecs)


def annihilator_mismatches(P: NilPoset) -> list[str]:
    """Basis nodes where the poset reading differs from the kernel annihilator."""
    A = P.parent
    bad = []
    for i in range(A.dim):
        if not annihilator_from_poset(P, i).equals(annihilator(A.basis(i))):
            bad.append(P.labels[i])
    return bad


def _dot_ids(labels) -> list[str]:
    ids, seen = [], set()
    for lab in labels:
        base = re.sub(r"\W", "_", lab.replace("^", "p"))
        if not base or base[0].isdigit():
            base = "n" + base
        cand, k = base, 2
        while cand in seen:
            cand, k = f"{base}_{k}", k + 1
        seen.add(cand)
        ids.append(cand)
    return ids


def hasse_dot(P: NilPoset, name: str = "nilposet") -> str:
    ids = _dot_ids(P.labels)
    lvl = P.levels()
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for v in range(P.size):
        lab = P.labels[v].replace('"', '\\"')
        lines.append(f'  {ids[v]} [label="{lab}"];')
    for level in sorted(set(lvl)):
        members = sorted(ids[v] for v in range(P.size) if lvl[v] == level)
        if len(members) > 1:
            lines.append("  { rank=same; " + "; ".join(members) + "; }")
    for lo, hi in sorted((ids[a], ids[b]) for a, b in P.covers):
        lines.append(f"  {lo} -> {hi};")
    lines.append("}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class LatticeCheck:
    ok: bool
    pair: tuple | None = None  # labels of the offending pair
    kind: str | None = None  # "join" or "meet"
    bounds: tuple = ()  # labels of the minimal upper (or maximal lower) bounds

    def __bool__(self):
        return self.ok


def _extremal(P: NilPoset, cands: list[int], minimal: bool) -> list[int]:
    if minimal:
        return [c for c in cands if not any(P.lt(d, c) for d in cands)]
    return [c for c in cands if not any(P.lt(c, d) for d in cands)]


def is_lattice(P: NilPoset) -> LatticeCheck:
    """Every pair needs a unique least upper and greatest lower bound."""
    for a in range(P.size):
        for b in range(a + 1, P.size):
            for kind, cands, minimal in (
                ("join", P.upper_bounds(a, b), True),
                ("meet", P.lower_bounds(a, b), False),
            ):
                ext = _extremal(P, cands, minimal)
                if len(ext) != 1:
                    return LatticeCheck(
                        False, (P.labels[a], P.labels[b]), kind, tuple(P.labels[c] for c in ext)
                    )
    return LatticeCheck(True)
